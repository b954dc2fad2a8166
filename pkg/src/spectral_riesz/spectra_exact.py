"""Exact Laplacian spectra of intervals, boxes and their Cartesian products.

Box eigenvalues are pi^2 * sum_a n_a^2 / l_a^2 over the integer lattice
(n_a >= 0 for Neumann, n_a >= 1 for Dirichlet). These enumerations are the
ground truth every bound in the package is checked against.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import geometry
from .errors import IncompleteSpectrumError, ResourceError
from .geometry import Box, Domain, Interval, Product

__all__ = [
    "BoundaryCondition",
    "ExactSpectrum",
    "DEFAULT_LIMIT",
    "enumerate_box",
    "enumerate_box_count",
    "spectrum_of",
    "counting",
    "riesz_mean",
    "eigenvalue_sum",
    "product_spectrum",
]

DEFAULT_LIMIT = 10**8


class BoundaryCondition(str, enum.Enum):
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"

    @classmethod
    def parse(cls, value) -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        v = str(value).strip().lower()
        if v in ("n", "neumann"):
            return cls.NEUMANN
        if v in ("d", "dirichlet"):
            return cls.DIRICHLET
        raise ValueError(f"unknown boundary condition {value!r}")


@dataclass(frozen=True)
class ExactSpectrum:
    """Sorted eigenvalues (with multiplicity) complete below ``cutoff``."""

    eigenvalues: np.ndarray
    cutoff: float
    bc: BoundaryCondition
    domain: Domain | None = field(default=None, compare=False)

    def __post_init__(self):
        ev = np.array(self.eigenvalues, dtype=float)
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "bc", BoundaryCondition.parse(self.bc))
        if ev.size:
            if np.any(np.diff(ev) < 0):
                raise ValueError("eigenvalues must be sorted nondecreasing")
            if self.bc is BoundaryCondition.NEUMANN and ev[0] != 0.0:
                raise ValueError("a Neumann spectrum starts at exactly 0")
            if self.bc is BoundaryCondition.DIRICHLET and ev[0] <= 0.0:
                raise ValueError("Dirichlet eigenvalues are strictly positive")

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def to_csv(self, fh) -> None:
        from .report import write_csv

        write_csv(fh, {"eigenvalue": self.eigenvalues})


def _axis_squares(length: float, bc: BoundaryCondition, cutoff: float) -> np.ndarray:
    # n^2 / l^2 for the admissible range of n, in increasing n
    nmax = math.ceil(length * math.sqrt(cutoff) / math.pi)
    start = 0 if bc is BoundaryCondition.NEUMANN else 1
    n = np.arange(start, nmax + 1, dtype=float)
    return n * n / (length * length)


def enumerate_box(
    lengths: Sequence[float], bc, cutoff: float, limit: int = DEFAULT_LIMIT, domain: Domain | None = None
) -> ExactSpectrum:
    """All box eigenvalues strictly below ``cutoff``, sorted.

    Equal values from distinct lattice points stay as separate entries; ties
    keep lexicographic lattice order.
    """
    bc = BoundaryCondition.parse(bc)
    lengths = tuple(float(x) for x in lengths)
    if cutoff < 0 or not math.isfinite(cutoff):
        raise ValueError(f"cutoff must be finite and nonnegative, got {cutoff!r}")
    if domain is None:
        domain = Interval(lengths[0]) if len(lengths) == 1 else Box(lengths)
    # slack so rounding in pi^2 * q never drops a value just below the cutoff
    bound = cutoff / math.pi**2 * (1 + 1e-12)
    q = np.zeros(1)
    for length in lengths:
        axis = _axis_squares(length, bc, cutoff)
        axis = axis[axis < bound]
        if q.size * axis.size > 4 * limit:
            raise ResourceError(
                f"enumeration below {cutoff:g} needs more than {limit} eigenvalues; raise the limit or the cutoff"
            )
        q = (q[:, None] + axis[None, :]).ravel()
        q = q[q < bound]
    if q.size > limit:
        raise ResourceError(f"{q.size} eigenvalues below {cutoff:g} exceed the limit {limit}")
    ev = math.pi**2 * q[np.argsort(q, kind="stable")]
    ev = ev[ev < cutoff]
    return ExactSpectrum(ev, float(cutoff), bc, domain)


def _weyl_cutoff(lengths, count: int) -> float:
    d = len(lengths)
    vol = math.prod(lengths)
    l0 = 1.0 / ((4 * math.pi) ** (d / 2) * math.gamma(1 + d / 2))
    return (count / (l0 * vol)) ** (2 / d)


def enumerate_box_count(lengths: Sequence[float], bc, count: int, limit: int = DEFAULT_LIMIT) -> ExactSpectrum:
    """Enumerate with a cutoff large enough that at least ``count`` eigenvalues are present."""
    bc = BoundaryCondition.parse(bc)
    if count < 0:
        raise ValueError("count must be nonnegative")
    cutoff = max(_weyl_cutoff(lengths, max(count, 1)) * 1.2, (2 * math.pi / min(lengths)) ** 2 * len(lengths))
    while True:
        spec = enumerate_box(lengths, bc, cutoff, limit=limit)
        if len(spec) >= count:
            return spec
        cutoff *= 1.5


def spectrum_of(domain: Domain, bc, cutoff: float, limit: int = DEFAULT_LIMIT) -> ExactSpectrum:
    """Exact spectrum of an interval, box or product of exactly-solvable factors."""
    bc = BoundaryCondition.parse(bc)
    lengths = geometry.box_lengths(domain)
    if lengths is not None:
        return enumerate_box(lengths, bc, cutoff, limit=limit, domain=domain)
    if isinstance(domain, Product):
        a = spectrum_of(domain.left, bc, cutoff, limit)
        b = spectrum_of(domain.right, bc, cutoff, limit)
        return product_spectrum(a, b, cutoff, limit=limit)
    raise TypeError(f"no exact spectrum for {type(domain).__name__}; use the finite-difference solver")


def _check_complete(spectrum, z) -> None:
    zmax = np.max(z) if np.ndim(z) else z
    if zmax > spectrum.cutoff:
        raise IncompleteSpectrumError(f"z = {zmax:g} exceeds the spectral cutoff {spectrum.cutoff:g}")


def counting(spectrum, z):
    """Number of eigenvalues strictly below ``z`` (vectorised over ``z``)."""
    _check_complete(spectrum, z)
    n = np.searchsorted(spectrum.eigenvalues, z, side="left")
    return int(n) if np.ndim(n) == 0 else n


def riesz_mean(spectrum, z, sigma: float = 1.0):
    """Riesz mean sum_j (z - e_j)_+^sigma; sigma = 0 is the strict counting function."""
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    _check_complete(spectrum, z)
    ev = spectrum.eigenvalues
    if sigma == 0:
        return counting(spectrum, z)
    if np.ndim(z) == 0:
        below = ev[ev < z]
        return float(np.sum((z - below) ** sigma))
    z = np.asarray(z, dtype=float)
    if sigma == 1:
        prefix = np.concatenate([[0.0], np.cumsum(ev)])
        n = np.searchsorted(ev, z, side="left")
        return n * z - prefix[n]
    out = np.empty(z.shape)
    flat = z.ravel()
    res = out.ravel()
    for i, zi in enumerate(flat):
        below = ev[ev < zi]
        res[i] = np.sum((zi - below) ** sigma)
    return out


def eigenvalue_sum(spectrum, k: int) -> float:
    """Sum of the first ``k`` eigenvalues."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > len(spectrum.eigenvalues):
        raise IncompleteSpectrumError(f"need {k} eigenvalues, only {len(spectrum.eigenvalues)} enumerated")
    return float(np.sum(spectrum.eigenvalues[:k]))


def product_spectrum(a: ExactSpectrum, b: ExactSpectrum, cutoff: float, limit: int = DEFAULT_LIMIT) -> ExactSpectrum:
    """Spectrum of a Cartesian product: all pairwise sums below ``cutoff``."""
    if a.bc is not b.bc:
        raise ValueError("both factors need the same boundary condition")
    amin = a.eigenvalues[0] if len(a) else math.inf
    bmin = b.eigenvalues[0] if len(b) else math.inf
    if a.cutoff + bmin < cutoff or b.cutoff + amin < cutoff:
        raise IncompleteSpectrumError("factor spectra are not complete enough for the requested cutoff")
    ea = a.eigenvalues[a.eigenvalues < cutoff - bmin]
    eb = b.eigenvalues[b.eigenvalues < cutoff - amin]
    if ea.size * eb.size > 4 * limit:
        raise ResourceError(f"product enumeration exceeds the limit {limit}")
    s = (ea[:, None] + eb[None, :]).ravel()
    s = s[s < cutoff]
    if s.size > limit:
        raise ResourceError(f"{s.size} eigenvalues below {cutoff:g} exceed the limit {limit}")
    domain = None
    if a.domain is not None and b.domain is not None:
        domain = Product(a.domain, b.domain)
    return ExactSpectrum(np.sort(s, kind="stable"), float(cutoff), a.bc, domain)
