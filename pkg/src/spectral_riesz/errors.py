"""Exception hierarchy shared by all modules."""


class SpectralRieszError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(SpectralRieszError, ValueError):
    """Invalid or degenerate geometry (self-intersecting polygon, collinear hull, ...)."""


class IncompleteSpectrumError(SpectralRieszError):
    """A query needs eigenvalues beyond what was enumerated or computed."""


class ResourceError(SpectralRieszError):
    """Enumeration would exceed the configured eigenvalue-count limit."""


class PreconditionError(SpectralRieszError, ValueError):
    """Inputs violate a stated hypothesis of the operation."""


class InequalityViolation(SpectralRieszError):
    """A proven inequality failed numerically (would falsify the theorem)."""


class DiscretizationError(SpectralRieszError, ValueError):
    """Mesh too coarse or domain not supported by the finite-difference solver."""


class ConvergenceError(SpectralRieszError):
    """Iterative eigensolver did not converge within its iteration cap."""


class RangeError(SpectralRieszError, OverflowError):
    """Parameter outside the range where special functions stay finite."""
