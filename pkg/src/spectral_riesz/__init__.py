"""Laplacian spectra on Euclidean domains and the eigenvalue-mean inequalities they satisfy.

Exact spectra for boxes and products, a finite-difference solver for planar
domains, closed-form Riesz-mean bounds, and property-check suites that pit
each bound against a brute-force oracle.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConvergenceError,
    DiscretizationError,
    GeometryError,
    IncompleteSpectrumError,
    InequalityViolation,
    PreconditionError,
    RangeError,
    ResourceError,
    SpectralRieszError,
)
from .geometry import Box, Disk, Interval, Polygon2D, Product, UnitVector, parse_domain  # noqa: E402
from .spectra_exact import (  # noqa: E402
    BoundaryCondition,
    ExactSpectrum,
    counting,
    eigenvalue_sum,
    enumerate_box,
    riesz_mean,
    spectrum_of,
)
from .spectra_numeric import NumericSpectrum, discretize, lowest_eigenvalues, richardson_refine  # noqa: E402
from .report import CheckResult, VerificationRecord  # noqa: E402

__all__ = [
    "__version__",
    "SpectralRieszError",
    "GeometryError",
    "IncompleteSpectrumError",
    "ResourceError",
    "PreconditionError",
    "InequalityViolation",
    "DiscretizationError",
    "ConvergenceError",
    "RangeError",
    "Interval",
    "Box",
    "Polygon2D",
    "Disk",
    "Product",
    "UnitVector",
    "parse_domain",
    "BoundaryCondition",
    "ExactSpectrum",
    "NumericSpectrum",
    "enumerate_box",
    "spectrum_of",
    "counting",
    "riesz_mean",
    "eigenvalue_sum",
    "discretize",
    "lowest_eigenvalues",
    "richardson_refine",
    "VerificationRecord",
    "CheckResult",
]
