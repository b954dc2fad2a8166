"""Averaged variational principle for finite symmetric matrices.

For a self-adjoint H with eigenpairs (mu_j, psi_j) and a weighted family of
trial vectors f_zeta whose frame operator is the identity,

    sum_j (z - mu_j)_+ sum_zeta w_zeta |<psi_j, f_zeta>|^2
        >= sum_{zeta in M0} w_zeta (z ||f_zeta||^2 - Q(f_zeta, f_zeta)).

Only discrete (atomic) trial measures are representable here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .bounds import kroeger_state
from .errors import PreconditionError
from .report import VerificationRecord
from .spectra_exact import BoundaryCondition, enumerate_box_count

__all__ = [
    "DiscreteOperatorSpec",
    "TrialFamily",
    "AVPResult",
    "avp_check",
    "random_operator",
    "random_parseval_family",
    "eigenbasis_family",
    "kroeger_demo",
]


@dataclass(frozen=True)
class DiscreteOperatorSpec:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns are orthonormal eigenvectors

    def __post_init__(self):
        mu = np.asarray(self.eigenvalues, dtype=float)
        psi = np.asarray(self.eigenvectors, dtype=float)
        n = mu.size
        if psi.shape != (n, n):
            raise ValueError(f"eigenvectors must be {n}x{n}, got {psi.shape}")
        if np.any(np.diff(mu) < 0):
            raise ValueError("eigenvalues must be sorted")
        if np.max(np.abs(psi.T @ psi - np.eye(n)), initial=0.0) > 1e-10:
            raise ValueError("eigenvector matrix is not orthogonal")
        object.__setattr__(self, "eigenvalues", mu)
        object.__setattr__(self, "eigenvectors", psi)

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @classmethod
    def from_matrix(cls, H) -> "DiscreteOperatorSpec":
        H = np.asarray(H, dtype=float)
        if H.ndim != 2 or H.shape[0] != H.shape[1] or not np.allclose(H, H.T, atol=1e-12):
            raise ValueError("H must be a real symmetric matrix")
        mu, psi = np.linalg.eigh(H)
        return cls(mu, psi)


@dataclass(frozen=True)
class TrialFamily:
    vectors: np.ndarray  # rows are the f_zeta
    weights: np.ndarray
    subset: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        f = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (f.shape[0],):
            raise ValueError("one weight per trial vector")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        sub = frozenset(int(i) for i in self.subset)
        if any(i < 0 or i >= f.shape[0] for i in sub):
            raise ValueError("subset indices out of range")
        object.__setattr__(self, "vectors", f)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "subset", sub)

    def frame_operator(self) -> np.ndarray:
        return (self.vectors.T * self.weights) @ self.vectors

    def is_parseval(self, tol: float = 1e-9) -> bool:
        S = self.frame_operator()
        return bool(np.max(np.abs(S - np.eye(S.shape[0]))) <= tol)

    def with_subset(self, subset: Sequence[int]) -> "TrialFamily":
        return TrialFamily(self.vectors, self.weights, frozenset(subset))


class AVPResult(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def avp_check(op: DiscreteOperatorSpec, family: TrialFamily, z: float, mode: str = "theorem") -> AVPResult:
    """Evaluate both sides; ``mode='theorem'`` insists on a Parseval family."""
    if family.vectors.shape[1] != op.n:
        raise ValueError(f"trial vectors have length {family.vectors.shape[1]}, operator has dimension {op.n}")
    if mode == "theorem":
        if not family.is_parseval():
            raise PreconditionError("theorem mode needs a Parseval family (frame operator = identity)")
    elif mode != "permissive":
        raise ValueError("mode must be 'theorem' or 'permissive'")
    coef = family.vectors @ op.eigenvectors  # <psi_j, f_zeta>
    c2 = coef * coef
    mass = family.weights @ c2
    lhs = float(np.sum(np.maximum(z - op.eigenvalues, 0.0) * mass))
    idx = np.array(sorted(family.subset), dtype=int)
    if idx.size:
        norms = c2[idx].sum(axis=1)
        quad = c2[idx] @ op.eigenvalues
        rhs = float(np.sum(family.weights[idx] * (z * norms - quad)))
    else:
        rhs = 0.0
    tol = 1e-9 * max(abs(z), 1.0) * op.n
    return AVPResult(lhs, rhs, lhs >= rhs - tol)


def random_operator(n: int, rng: np.random.Generator) -> DiscreteOperatorSpec:
    A = rng.standard_normal((n, n))
    return DiscreteOperatorSpec.from_matrix((A + A.T) / 2)


def random_parseval_family(n: int, m: int, rng: np.random.Generator) -> TrialFamily:
    """m >= n weighted vectors f_i = Q_i / sqrt(w_i) from an orthonormal-column Q (m x n)."""
    if m < n:
        raise ValueError("a Parseval frame in R^n needs at least n vectors")
    Q, _ = np.linalg.qr(rng.standard_normal((m, n)))
    w = rng.uniform(0.5, 2.0, m)
    subset = np.flatnonzero(rng.random(m) < 0.5)
    return TrialFamily(Q / np.sqrt(w)[:, None], w, frozenset(subset.tolist()))


def eigenbasis_family(op: DiscreteOperatorSpec, z: float) -> TrialFamily:
    """Eigenvectors with unit weights, M0 = {j : mu_j < z}; both sides then agree."""
    return TrialFamily(op.eigenvectors.T, np.ones(op.n), frozenset(np.flatnonzero(op.eigenvalues < z).tolist()))


def kroeger_demo(box_lengths: Sequence[float], k: int, grid_R: np.ndarray) -> list[VerificationRecord]:
    """Check mu_{k+1} R^d - d/(d+2) R^(d+2) <= m_k^(d/2)(mu_{k+1} - mean_{i<=k} mu_i) on an R grid.

    A final record checks the normalised consequence
    (d+2)/d * mean - m_k <= -m_k (x_k - 1)^2 with x_k = mu_{k+1}/m_k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lengths = tuple(float(x) for x in box_lengths)
    d = len(lengths)
    vol = math.prod(lengths)
    spec = enumerate_box_count(lengths, BoundaryCondition.NEUMANN, k + 1)
    state = kroeger_state(spec, k, d, vol)
    mu = spec.eigenvalues
    mean = float(np.mean(mu[:k]))
    nxt = float(mu[k])
    m_k = state.m_k
    rhs = m_k ** (d / 2) * (nxt - mean)
    records = []
    for R in np.asarray(grid_R, dtype=float):
        lhs = nxt * R**d - d / (d + 2) * R ** (d + 2)
        tol = 1e-12 * max(1.0, abs(rhs), abs(nxt * R**d))
        margin = rhs - lhs
        records.append(
            VerificationRecord("kroeger-avp", {"k": k, "R": float(R)}, rhs, lhs, margin, margin >= -tol, tol)
        )
    x_k = nxt / m_k
    left = (d + 2) / d * mean - m_k
    right = -m_k * (x_k - 1) ** 2
    tol = 1e-12 * max(1.0, m_k)
    records.append(
        VerificationRecord("kroeger-normalized", {"k": k, "x_k": x_k}, right, left, right - left, right - left >= -tol, tol)
    )
    return records

