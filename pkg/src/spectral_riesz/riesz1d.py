"""One-dimensional lattice Riesz means sum_{k>=0} (R^2 - k^2)_+^p.

Closed form for p = 1 via the sawtooth psi(t) = t - floor(t) - 1/2, plus
polynomial envelopes for p = 1, p = beta + 1 and p = 1/2. Dirichlet
variants drop the k = 0 term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeError

__all__ = [
    "Riesz1DBounds",
    "sawtooth",
    "sawtooth_excess",
    "riesz1_direct",
    "riesz1_exact",
    "riesz1_bounds",
    "riesz1_beta_bounds",
    "riesz1_sqrt_upper",
    "riesz1_dirichlet",
    "beta_coefficients",
]

MAX_BETA = 150.0


@dataclass(frozen=True)
class Riesz1DBounds:
    lower: float | np.ndarray | None
    upper: float | np.ndarray | None
    exact: float | np.ndarray
    R: float | np.ndarray
    power: float

    @property
    def holds(self) -> bool:
        tol = 1e-12 * np.maximum(1.0, np.abs(self.exact))
        ok_lo = self.lower is None or np.all(self.lower <= self.exact + tol)
        ok_hi = self.upper is None or np.all(self.exact <= self.upper + tol)
        return bool(ok_lo and ok_hi)


def _check_R(R):
    if np.any(np.asarray(R) <= 0):
        raise ValueError("R must be positive")


def sawtooth(t):
    """psi(t) = t - floor(t) - 1/2."""
    return t - np.floor(t) - 0.5


def sawtooth_excess(R):
    """F(R) = (1/4 - psi^2)(1 - psi/(3R)); bounded by 25/96, attained at R = 3/8."""
    psi = sawtooth(R)
    return (0.25 - psi * psi) * (1 - psi / (3 * R))


def riesz1_direct(R, power: float = 1.0):
    """Brute-force sum over k = 0..ceil(R) of (R^2 - k^2)_+^power (vectorised over R)."""
    R = np.asarray(R, dtype=float)
    kmax = int(np.ceil(R.max())) if R.size else 0
    k = np.arange(kmax + 1, dtype=float)
    out = np.empty(R.shape)
    flat_r = R.ravel()
    flat_o = out.reshape(-1)
    chunk = max(1, 2_000_000 // (kmax + 1))
    for i in range(0, flat_r.size, chunk):
        r = flat_r[i : i + chunk, None]
        base = np.maximum(r * r - k * k, 0.0)
        flat_o[i : i + chunk] = (base**power).sum(axis=1)
    return out if out.ndim else float(out)


def riesz1_exact(R):
    """Closed form of sum_{k>=0} (R^2 - k^2)_+ through the sawtooth function."""
    _check_R(R)
    psi = sawtooth(R)
    return 2 * R**3 / 3 + R**2 / 2 - R / 6 + (0.25 - psi * psi) * (R - psi / 3)


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def riesz1_bounds(R) -> Riesz1DBounds:
    """Envelope for sum (R^2 - k^2)_+; scalar or array R, exact value from the closed form."""
    _check_R(R)
    R = _scalar(np.asarray(R, dtype=float))
    lower = np.maximum(2 * R**3 / 3 + R**2 / 2 - R / 6, R**2)
    upper = 2 * R**3 / 3 + R**2 / 2 + 3 * R / 32
    return Riesz1DBounds(_scalar(lower), _scalar(upper), _scalar(riesz1_exact(R)), R, 1.0)


def beta_coefficients(beta: float) -> tuple[float, float, float]:
    """Leading, lower-correction and upper-correction coefficients of the beta envelope."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if beta > MAX_BETA:
        raise RangeError(f"beta = {beta} too large for the gamma ratios (limit {MAX_BETA})")
    sp = math.sqrt(math.pi)
    g2 = math.lgamma(beta + 2)
    lead = sp / 2 * math.exp(g2 - math.lgamma(beta + 2.5))
    ratio = sp * math.exp(g2 - math.lgamma(beta + 1.5))
    return lead, ratio / 12, 3 * ratio / 64


def riesz1_beta_bounds(R, beta: float) -> Riesz1DBounds:
    """Envelope for sum (R^2 - k^2)_+^(beta+1), exact value by direct summation."""
    _check_R(R)
    R = _scalar(np.asarray(R, dtype=float))
    lead, c_lo, c_hi = beta_coefficients(beta)
    main = lead * R ** (2 * beta + 3) + 0.5 * R ** (2 * beta + 2)
    lower = np.maximum(main - c_lo * R ** (2 * beta + 1), R ** (2 * beta + 2))
    upper = main + c_hi * R ** (2 * beta + 1)
    return Riesz1DBounds(_scalar(lower), _scalar(upper), riesz1_direct(R, beta + 1), R, beta + 1)


def riesz1_sqrt_upper(R):
    _check_R(R)
    return math.pi * R**2 / 4 + R / 2 + np.sqrt(2 * R) / 2


def riesz1_dirichlet(R, power: str = "one", beta: float | None = None) -> Riesz1DBounds:
    """Sums over k >= 1: the k = 0 term (R^2, R^(2beta+2) or R) is subtracted from everything."""
    if power == "one":
        b = riesz1_bounds(R)
        k0 = b.R**2
    elif power == "beta":
        if beta is None:
            raise ValueError("power='beta' needs beta")
        b = riesz1_beta_bounds(R, beta)
        k0 = b.R ** (2 * beta + 2)
    elif power == "half":
        _check_R(R)
        R = _scalar(np.asarray(R, dtype=float))
        b = Riesz1DBounds(None, _scalar(riesz1_sqrt_upper(R)), riesz1_direct(R, 0.5), R, 0.5)
        k0 = b.R
    else:
        raise ValueError(f"unknown power {power!r}; use 'one', 'beta' or 'half'")
    lower = None if b.lower is None else b.lower - k0
    # for R <= 1 no k >= 1 contributes; the exact sum is 0, not a rounding residue
    exact = _scalar(np.where(np.asarray(b.R) <= 1, 0.0, b.exact - k0))
    return Riesz1DBounds(lower, b.upper - k0, exact, b.R, b.power)
