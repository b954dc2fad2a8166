"""Five-point finite-difference Laplacian eigenvalues on planar domains.

Dirichlet unknowns sit on the nodes x0 + i h strictly inside the domain. At
a node whose neighbour lies outside, the default ``boundary="corrected"``
scheme adds 1/theta to the diagonal, where theta h is the distance to the
boundary along that grid line; off-diagonal entries stay -1, so the matrix
is symmetric. On grid-aligned boundaries theta = 1 and this is plain
row/column deletion. ``boundary="staircase"`` always uses theta = 1.

Neumann unknowns sit on cell centres inside the domain; reflecting ghost
values across each cell face turns the stencil into the graph Laplacian of
the active cells, which is symmetric with the constants in its kernel.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as sla

from . import geometry
from .errors import ConvergenceError, DiscretizationError, IncompleteSpectrumError
from .geometry import Box, Disk, Domain, Polygon2D
from .spectra_exact import BoundaryCondition

__all__ = ["GridDiscretization", "NumericSpectrum", "discretize", "lowest_eigenvalues", "richardson_refine", "MAX_EIGENVALUES"]

MAX_EIGENVALUES = 200
_THETA_MIN = 1e-3
_SHIFT = -1.0

_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True)
class GridDiscretization:
    h: float
    interior_mask: np.ndarray
    bc: BoundaryCondition
    index_map: np.ndarray  # lattice point -> matrix row, -1 when inactive
    origin: tuple[float, float]
    matrix: sp.csr_matrix = field(repr=False)  # h^2 times the discrete -Laplacian
    domain: Domain | None = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True)
class NumericSpectrum:
    """Lowest eigenvalues from the finite-difference solver.

    ``error_estimate`` is absolute, |lambda_{h/2} - lambda_h| / 3 for
    Richardson-refined spectra and None for a single grid.
    """

    eigenvalues: np.ndarray
    h: float
    bc: BoundaryCondition
    error_estimate: np.ndarray | None = None
    domain: Domain | None = field(default=None, compare=False)

    def __post_init__(self):
        ev = np.array(self.eigenvalues, dtype=float)
        if np.any(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be sorted")
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        if self.error_estimate is not None:
            err = np.array(self.error_estimate, dtype=float)
            if err.shape != ev.shape or np.any(err < 0):
                raise ValueError("error_estimate must be nonnegative, one per eigenvalue")
            err.setflags(write=False)
            object.__setattr__(self, "error_estimate", err)

    @property
    def cutoff(self) -> float:
        # every eigenvalue below the largest computed one is present
        return float(self.eigenvalues[-1]) if len(self.eigenvalues) else 0.0

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def to_csv(self, fh) -> None:
        from .report import write_csv

        err = self.error_estimate if self.error_estimate is not None else [None] * len(self)
        write_csv(fh, {"eigenvalue": self.eigenvalues, "error_estimate": err})


def _planar(domain: Domain) -> Polygon2D | Disk:
    if isinstance(domain, (Polygon2D, Disk)):
        return domain
    if isinstance(domain, Box) and len(domain.lengths) == 2:
        a, b = domain.lengths
        return Polygon2D([(0, 0), (a, 0), (a, b), (0, b)])
    raise DiscretizationError(f"finite differences support planar polygons, disks and 2D boxes, not {type(domain).__name__}")


def _bounding_box(dom) -> tuple[float, float, float, float]:
    if isinstance(dom, Disk):
        cx, cy = dom.center
        r = dom.radius
        return cx - r, cy - r, cx + r, cy + r
    v = dom.array
    return v[:, 0].min(), v[:, 1].min(), v[:, 0].max(), v[:, 1].max()


def _edge_distance(poly: Polygon2D, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    v = poly.array
    best = np.full(X.shape, np.inf)
    for (x1, y1), (x2, y2) in zip(v, np.roll(v, -1, axis=0)):
        ex, ey = x2 - x1, y2 - y1
        t = np.clip(((X - x1) * ex + (Y - y1) * ey) / (ex * ex + ey * ey), 0.0, 1.0)
        best = np.minimum(best, np.hypot(X - x1 - t * ex, Y - y1 - t * ey))
    return best


def _assemble(mask: np.ndarray, index: np.ndarray, diag: np.ndarray) -> sp.csr_matrix:
    n = int(mask.sum())
    I, J = np.nonzero(mask)
    rows, cols = [], []
    for di, dj in _STEPS:
        p = index[I, J]
        q = index[I + di, J + dj]
        ok = q >= 0
        rows.append(p[ok])
        cols.append(q[ok])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    off = sp.csr_matrix((-np.ones(rows.size), (rows, cols)), shape=(n, n))
    return (off + sp.diags(diag)).tocsr()


def discretize(domain: Domain, h: float, bc, boundary: str = "corrected") -> GridDiscretization:
    """Assemble the (h^2-scaled) five-point matrix on a uniform grid of step ``h``."""
    bc = BoundaryCondition.parse(bc)
    if boundary not in ("corrected", "staircase"):
        raise ValueError(f"boundary must be 'corrected' or 'staircase', got {boundary!r}")
    dom = _planar(domain)
    if not h > 0:
        raise DiscretizationError("h must be positive")
    rin = geometry.inradius(dom)
    if not h < rin / 8:
        raise DiscretizationError(f"h = {h:g} is not below inradius/8 = {rin / 8:g}")
    x0, y0, x1, y1 = _bounding_box(dom)

    if bc is BoundaryCondition.DIRICHLET:
        # nodes x0 + i h, padded by one inactive layer on each side
        nx = int(math.ceil((x1 - x0) / h)) + 1
        ny = int(math.ceil((y1 - y0) / h)) + 1
        origin = (x0 - h, y0 - h)
    else:
        nx = int(math.ceil((x1 - x0) / h))
        ny = int(math.ceil((y1 - y0) / h))
        origin = (x0 - h / 2, y0 - h / 2)
    xs = origin[0] + h * np.arange(nx + 2)
    ys = origin[1] + h * np.arange(ny + 2)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    mask = geometry.contains(dom, X, Y)
    if isinstance(dom, Polygon2D):
        # nodes on an edge are boundary nodes, not unknowns
        mask &= _edge_distance(dom, X, Y) > 1e-9 * h
    mask[0, :] = mask[-1, :] = mask[:, 0] = mask[:, -1] = False
    n = int(mask.sum())
    if n == 0:
        raise DiscretizationError("no grid points inside the domain")
    index = -np.ones(mask.shape, dtype=np.int64)
    index[mask] = np.arange(n)

    I, J = np.nonzero(mask)
    diag = np.zeros(n)
    for di, dj in _STEPS:
        inside = mask[I + di, J + dj]
        if bc is BoundaryCondition.NEUMANN:
            diag += inside
            continue
        diag += inside
        out = ~inside
        if boundary == "staircase":
            diag += out
            continue
        t = geometry.boundary_distance(dom, X[I, J][out], Y[I, J][out], (di, dj))
        theta = np.clip(t / h, _THETA_MIN, 1.0)
        diag[out] += 1.0 / theta
    matrix = _assemble(mask, index, diag)
    return GridDiscretization(float(h), mask, bc, index, origin, matrix, domain)


def _start_vector(n: int, seed: int) -> np.ndarray:
    i = np.arange(n, dtype=float)
    return 1.0 + 0.1 * np.cos(0.7 * i + seed)


def lowest_eigenvalues(disc: GridDiscretization, m: int, seed: int = 0, tol: float = 1e-10) -> NumericSpectrum:
    """The ``m`` smallest eigenvalues of the discrete operator (shift-invert Lanczos)."""
    n = disc.size
    if m < 1:
        raise ValueError("m must be positive")
    if m > MAX_EIGENVALUES or not m < n / 4:
        raise IncompleteSpectrumError(f"m = {m} needs m <= {MAX_EIGENVALUES} and m < n/4 = {n / 4:g}")
    A = disc.matrix / disc.h**2
    try:
        vals = sla.eigsh(
            A,
            k=m,
            sigma=_SHIFT,
            which="LM",
            v0=_start_vector(n, seed),
            tol=tol,
            maxiter=max(50 * m, 1000),
            return_eigenvectors=False,
        )
    except sla.ArpackNoConvergence as exc:
        raise ConvergenceError(f"eigensolver did not converge for m = {m}: {exc}") from exc
    vals = np.sort(vals)
    if disc.bc is BoundaryCondition.NEUMANN:
        vals = np.maximum(vals, 0.0)
    return NumericSpectrum(vals, disc.h, disc.bc, None, disc.domain)


def richardson_refine(
    domain: Domain, h: float, m: int, bc, boundary: str = "corrected", threads: int = 1
) -> NumericSpectrum:
    """Extrapolate (4 lambda_{h/2} - lambda_h) / 3 from grids h and h/2."""

    def solve(step):
        return lowest_eigenvalues(discretize(domain, step, bc, boundary), m).eigenvalues

    if threads > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            coarse, fine = pool.map(solve, (h, h / 2))
    else:
        coarse, fine = solve(h), solve(h / 2)
    ext = (4 * fine - coarse) / 3
    err = np.abs(fine - coarse) / 3
    order = np.argsort(ext, kind="stable")
    ext = ext[order]
    err = err[order]
    if BoundaryCondition.parse(bc) is BoundaryCondition.NEUMANN:
        ext = np.maximum(ext, 0.0)
    return NumericSpectrum(ext, h / 2, BoundaryCondition.parse(bc), err, domain)
