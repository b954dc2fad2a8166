"""Refined Young and Hoelder inequalities built on y_p(x) = (p+1)x - p - x^(p+1).

Young forms compare lhs = ab - b^r/r - a^s/s with a correction term; the
Hoelder forms integrate those pointwise statements over a finite weighted
measure for normalised a (in L^s) and b (in L^r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError

__all__ = [
    "y_p",
    "f_p",
    "g_p",
    "ConjugatePair",
    "MeasureVector",
    "normalize",
    "YoungGap",
    "HolderGaps",
    "young_gap",
    "young_arrays",
    "holder_gaps",
    "YOUNG_FORMS",
    "HOLDER_FORMS",
]

YOUNG_FORMS = ("refined1", "reversed1", "refined2", "reversed2")
HOLDER_FORMS = ("1a", "1b", "1c")

_EQ_TOL = 1e-9


def y_p(x, p: float):
    """(p+1)x - p - x^(p+1); nonpositive for p >= 0, nonnegative for -1 < p <= 0."""
    if p <= -1:
        raise ValueError("p must exceed -1")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be nonnegative")
    out = (p + 1) * x - p - x ** (p + 1)
    return out if out.ndim else float(out)


def f_p(x, p: float):
    """y_p(x) + (x^((p+1)/2) - 1)^2, which equals 2 y_{(p-1)/2}(x)."""
    if p <= 0:
        raise ValueError("p must be positive")
    x = np.asarray(x, dtype=float)
    out = y_p(x, p) + (x ** ((p + 1) / 2) - 1) ** 2
    return out if np.ndim(out) else float(out)


def g_p(x, p: float):
    """y_p(x) + p (x - 1)^2, which equals x y_{p-1}(x)."""
    if p <= 0:
        raise ValueError("p must be positive")
    x = np.asarray(x, dtype=float)
    out = y_p(x, p) + p * (x - 1) ** 2
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class ConjugatePair:
    """Hoelder conjugates with s >= 2 >= r > 1; s = p + 1 in the y_p notation."""

    r: float
    s: float

    def __post_init__(self):
        if abs(1 / self.r + 1 / self.s - 1) > 1e-12:
            raise ValueError(f"1/r + 1/s must be 1, got r = {self.r}, s = {self.s}")
        if not (self.s >= 2 >= self.r > 1):
            raise ValueError(f"need s >= 2 >= r > 1, got r = {self.r}, s = {self.s}")

    @classmethod
    def from_s(cls, s: float) -> "ConjugatePair":
        return cls(s / (s - 1), float(s))

    @property
    def p(self) -> float:
        return self.s - 1


@dataclass(frozen=True)
class MeasureVector:
    """A nonnegative function on a finite measure space: values v_i with weights w_i."""

    weights: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if w.shape != v.shape or w.ndim != 1:
            raise ValueError("weights and values must be 1-D of equal length")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        if np.any(v < 0):
            raise ValueError("values must be nonnegative")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "values", v)

    def norm(self, p: float) -> float:
        return float(np.sum(self.weights * self.values**p) ** (1 / p))

    def integral(self, f: np.ndarray) -> float:
        return float(np.sum(self.weights * f))


def normalize(vec: MeasureVector, p: float) -> MeasureVector:
    n = vec.norm(p)
    if n == 0:
        raise ValueError("cannot normalise the zero function")
    return MeasureVector(vec.weights, vec.values / n)


class YoungGap(NamedTuple):
    lhs: object
    bound: object
    holds: object


def _scaled_correction(base, factor, expo):
    # base^2 * factor^expo where factor = 0 and expo < 0 means +inf unless base = 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = np.where(factor > 0, factor**expo, np.where(expo < 0, np.inf, factor**expo))
        # scale before squaring so a tiny base cannot underflow into 0 * inf
        out = (np.abs(base) * np.sqrt(w)) ** 2
    return np.where(base == 0, 0.0, out)


def young_gap(a, b, pair: ConjugatePair, form: str) -> YoungGap:
    """lhs = ab - b^r/r - a^s/s against one of the four refined right-hand sides.

    ``refined*`` are upper bounds for lhs, ``reversed*`` lower bounds. For
    reversed2 at a = 0 < b with s > 2 the bound is -inf and the inequality is
    vacuous; 0 * inf at a = b = 0 counts as 0.
    """
    lhs, bound, holds = young_arrays(a, b, pair.r, pair.s, form)
    if np.ndim(lhs) == 0:
        return YoungGap(float(lhs), float(bound), bool(holds))
    return YoungGap(lhs, bound, holds)


def young_arrays(a, b, r, s, form: str):
    """Vectorised core of ``young_gap``; r and s may be arrays (conjugate, s >= 2)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("a and b must be nonnegative")
    lhs = a * b - b**r / r - a**s / s
    if form == "refined1":
        bound = -((a ** (s / 2) - b ** (r / 2)) ** 2) / s
        holds = lhs <= bound + _tol(a, b, r, s)
    elif form == "reversed1":
        bound = -((a ** (s / 2) - b ** (r / 2)) ** 2) / r
        holds = lhs >= bound - _tol(a, b, r, s)
    elif form == "refined2":
        bound = -_scaled_correction(a - b ** (r - 1), b, 2 - r) / r
        holds = lhs <= bound + _tol(a, b, r, s)
    elif form == "reversed2":
        bound = -_scaled_correction(b - a ** (s - 1), a, 2 - s) / s
        holds = lhs >= bound - _tol(a, b, r, s)
    else:
        raise ValueError(f"unknown Young form {form!r}; use one of {YOUNG_FORMS}")
    return lhs, bound, holds


def _tol(a, b, r, s):
    return 1e-12 * (1 + a * b + b**r / r + a**s / s)


class HolderGaps(NamedTuple):
    lower: float
    middle: float
    upper: float
    holds: bool
    equality: bool  # a_i^s = b_i^r at every atom, within 1e-9
    attained: bool  # both bounds meet the middle value within 1e-9


def holder_gaps(a: MeasureVector, b: MeasureVector, pair: ConjugatePair, form: str) -> HolderGaps:
    """Two-sided refined Hoelder bounds for the integral of ab (forms 1a, 1b, 1c).

    ``equality`` is the pointwise condition a^s = b^r; ``attained`` reports
    that both bounds meet the middle value. Equality implies attainment for
    every form. The converse can fail: at s = 2 every pair attains, and form
    1b also attains when a and b have disjoint supports.
    """
    if not np.array_equal(a.weights, b.weights):
        raise ValueError("a and b must live on the same measure space")
    r, s = pair.r, pair.s
    na, nb = a.norm(s), b.norm(r)
    if abs(na - 1) > 1e-10 or abs(nb - 1) > 1e-10:
        raise PreconditionError(f"need ||a||_s = ||b||_r = 1, got {na!r} and {nb!r}")
    w = a.weights
    av, bv = a.values, b.values
    middle = float(np.sum(w * av * bv))
    if form in ("1a", "1b"):
        dist = float(np.sum(w * (av ** (s / 2) - bv ** (r / 2)) ** 2))
        if form == "1a":
            lower, upper = 1 - dist / r, 1 - dist / s
        else:
            base = max(0.0, 1 - dist / 2)
            lower, upper = base ** (2 / r), base ** (2 / s)
    elif form == "1c":
        low_term = float(np.sum(w * _scaled_correction(bv - av ** (s - 1), av, 2 - s)))
        up_term = float(np.sum(w * _scaled_correction(av - bv ** (r - 1), bv, 2 - r)))
        lower, upper = 1 - low_term / s, 1 - up_term / r
    else:
        raise ValueError(f"unknown Hoelder form {form!r}; use one of {HOLDER_FORMS}")
    tol = 1e-12 * max(1.0, abs(middle))
    holds = lower <= middle + tol and middle <= upper + tol
    attained = math.isclose(lower, middle, rel_tol=0, abs_tol=_EQ_TOL) and math.isclose(
        upper, middle, rel_tol=0, abs_tol=_EQ_TOL
    )
    equality = bool(np.max(np.abs(av**s - bv**r)) <= _EQ_TOL)
    return HolderGaps(lower, middle, upper, holds, equality, attained)
