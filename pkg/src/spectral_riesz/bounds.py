"""Closed-form eigenvalue-mean inequalities for Laplacians on Euclidean domains.

Every evaluator here is a pure function of (z or k, geometry, dimension);
none of them looks at a spectrum, so bound and oracle stay separate. The
exceptions are the few operations whose contract is a comparison against an
exact spectrum (``kroeger_state``, ``rectangle_riesz_bounds``,
``dirichlet_box_domination``); they take the spectrum as an argument or
enumerate it themselves.

Evaluators accept scalar or array ``z``; term values and totals follow the
shape of ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import geometry
from .errors import InequalityViolation, PreconditionError
from .report import VerificationRecord
from .spectra_exact import BoundaryCondition, enumerate_box, eigenvalue_sum, riesz_mean

__all__ = [
    "ball_volume",
    "weyl_constant",
    "classical_constant",
    "ClassicalConstants",
    "BoundEvaluation",
    "KroegerState",
    "weyl_reference",
    "berezin_upper",
    "laptev_lower",
    "kroeger_state",
    "kroeger_profile",
    "eigenvalue_bracket",
    "theorem11_bracket",
    "twoterm_lower",
    "product_twoterm_lower",
    "higher_riesz_lower",
    "polya_counting_lower",
    "weak_twoterm_lower",
    "hull_isoperimetric_lower_2d",
    "rectangle_envelopes",
    "rectangle_riesz_bounds",
    "rectangle_leading",
    "domination_sides",
    "RectangleBounds",
    "dirichlet_box_domination",
    "dirichlet_2d_explicit_upper",
    "asymptotic_reference",
    "polya_reference",
    "BOUND_NAMES",
]


# --- classical constants -----------------------------------------------------


def ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d."""
    return math.pi ** (d / 2) / math.gamma(1 + d / 2)


def weyl_constant(d: int) -> float:
    """C_d = (2 pi)^2 B_d^(-2/d), the Weyl coefficient for individual eigenvalues."""
    return (2 * math.pi) ** 2 * ball_volume(d) ** (-2 / d)


def classical_constant(gamma: float, d: float) -> float:
    """Sharp semiclassical constant Gamma(gamma+1) / ((4 pi)^(d/2) Gamma(gamma+1+d/2))."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    log_ratio = math.lgamma(gamma + 1) - math.lgamma(gamma + 1 + d / 2)
    sign = math.copysign(1.0, math.gamma(gamma + 1 + d / 2)) if gamma + 1 + d / 2 <= 0 else 1.0
    return sign * math.exp(log_ratio) / (4 * math.pi) ** (d / 2)


@dataclass(frozen=True)
class ClassicalConstants:
    d: int

    @property
    def B_d(self) -> float:
        return ball_volume(self.d)

    @property
    def C_d(self) -> float:
        return weyl_constant(self.d)

    def L(self, gamma: float, d: float | None = None) -> float:
        return classical_constant(gamma, self.d if d is None else d)


# --- evaluation record -------------------------------------------------------


@dataclass(frozen=True)
class BoundEvaluation:
    name: str
    side: str
    terms: tuple[tuple[str, object], ...]
    total: object
    validity: str | None = None

    def term(self, label: str):
        for k, v in self.terms:
            if k == label:
                return v
        raise KeyError(label)

    def to_dict(self) -> dict:
        from .report import _jsonable

        return {
            "name": self.name,
            "side": self.side,
            "terms": [[k, _jsonable(v)] for k, v in self.terms],
            "total": _jsonable(self.total),
            "validity": self.validity,
        }


def _evaluation(name: str, side: str, terms: list[tuple[str, object]], validity: str | None = None) -> BoundEvaluation:
    total = terms[0][1]
    for _, v in terms[1:]:
        total = total + v
    if np.ndim(total) == 0:
        total = float(total)
        terms = [(k, float(v)) for k, v in terms]
    return BoundEvaluation(name, side, tuple(terms), total, validity)


def _z(z):
    arr = np.asarray(z, dtype=float)
    if np.any(arr < 0):
        raise ValueError("z must be nonnegative")
    return arr if arr.ndim else float(arr)


def _pow(z, e: float):
    return np.power(z, e) if isinstance(z, np.ndarray) else z**e


def _need_d2(d: int) -> str | None:
    return None if d >= 2 else f"outside hypotheses: requires d >= 2, got d = {d}"


def _positive(name: str, value: float) -> float:
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return float(value)


# --- Weyl / Berezin / Laptev -----------------------------------------------------


def weyl_reference(x, mode: str, d: int, volume: float):
    """Leading Weyl term: eigenvalue mode C_d (j/|V|)^(2/d); counting mode L(0,d)|V| z^(d/2)."""
    x = _z(x)
    if mode == "eigenvalue":
        return weyl_constant(d) * _pow(x / volume, 2 / d)
    if mode == "counting":
        return classical_constant(0, d) * volume * _pow(x, d / 2)
    raise ValueError(f"mode must be 'counting' or 'eigenvalue', got {mode!r}")


def polya_reference(j, d: int, volume: float, bc) -> np.ndarray:
    """Polya's curves: Neumann mu_j <= C_d((j-1)/|V|)^(2/d), Dirichlet lambda_j >= C_d(j/|V|)^(2/d)."""
    bc = BoundaryCondition.parse(bc)
    j = np.asarray(j, dtype=float)
    shift = 1.0 if bc is BoundaryCondition.NEUMANN else 0.0
    return weyl_constant(d) * np.power((j - shift) / volume, 2 / d)


def berezin_upper(z, d: int, volume: float) -> BoundEvaluation:
    """Upper bound L(1,d)|V| z^(1+d/2) for the Dirichlet Riesz mean R_1(z)."""
    z = _z(z)
    lead = classical_constant(1, d) * volume * _pow(z, 1 + d / 2)
    return _evaluation("berezin", "upper", [("weyl", lead)])


def laptev_lower(z, d: int, volume: float) -> BoundEvaluation:
    """Lower bound L(1,d)|V| z^(1+d/2) for the Neumann Riesz mean R_1(z)."""
    z = _z(z)
    lead = classical_constant(1, d) * volume * _pow(z, 1 + d / 2)
    return _evaluation("laptev", "lower", [("weyl", lead)])


# --- Kroeger and the two-sided eigenvalue bracket ----------------------------------


@dataclass(frozen=True)
class KroegerState:
    k: int
    d: int
    volume: float
    m_k: float
    S_k: float

    @property
    def violated(self) -> bool:
        return self.S_k > 1 + 1e-12


def _spectrum_geometry(spectrum, d, volume):
    if d is None or volume is None:
        dom = getattr(spectrum, "domain", None)
        if dom is None:
            raise ValueError("spectrum carries no domain; pass d and volume explicitly")
        d = geometry.dimension(dom) if d is None else d
        volume = geometry.volume(dom) if volume is None else volume
    return int(d), float(volume)


def kroeger_state(spectrum, k: int, d: int | None = None, volume: float | None = None) -> KroegerState:
    """Weyl expression m_k and the normalised eigenvalue average S_k (Kroeger: S_k <= 1)."""
    if k < 1:
        raise ValueError("k must be >= 1 (k = 0 only gives the trivial statement mu_1 = 0)")
    d, volume = _spectrum_geometry(spectrum, d, volume)
    if d < 2:
        raise PreconditionError("the Kroeger bound needs d >= 2")
    if getattr(spectrum, "bc", BoundaryCondition.NEUMANN) is not BoundaryCondition.NEUMANN:
        raise PreconditionError("the Kroeger bound is stated for Neumann spectra")
    total = eigenvalue_sum(spectrum, k)
    m_k = weyl_constant(d) * (k / volume) ** (2 / d)
    S_k = (d + 2) / d * total / k / m_k
    return KroegerState(k, d, volume, m_k, S_k)


def eigenvalue_bracket(state: KroegerState) -> tuple[float, float]:
    """Interval m_k(1 -+ sqrt(1 - S_k)) that must contain mu_{k+1}."""
    if state.violated:
        raise InequalityViolation(f"S_k = {state.S_k!r} > 1 at k = {state.k}: Kroeger's inequality fails")
    root = math.sqrt(max(0.0, 1.0 - state.S_k))
    return state.m_k * (1 - root), state.m_k * (1 + root)


# name kept for interface compatibility
theorem11_bracket = eigenvalue_bracket


def kroeger_profile(eigenvalues: np.ndarray, d: int, volume: float, kmax: int) -> dict[str, np.ndarray]:
    """Vectorised m_k, S_k, bracket and mu_{k+1} for k = 1..kmax."""
    ev = np.asarray(eigenvalues, dtype=float)
    if len(ev) < kmax + 1:
        from .errors import IncompleteSpectrumError

        raise IncompleteSpectrumError(f"need {kmax + 1} eigenvalues, have {len(ev)}")
    k = np.arange(1, kmax + 1, dtype=float)
    m = weyl_constant(d) * np.power(k / volume, 2 / d)
    S = (d + 2) / d * np.cumsum(ev[:kmax]) / k / m
    root = np.sqrt(np.maximum(0.0, 1 - S))
    return {
        "k": k.astype(int),
        "m": m,
        "S": S,
        "lower": m * (1 - root),
        "upper": m * (1 + root),
        "mu_next": ev[1 : kmax + 1],
    }


# --- two-term Riesz mean lower bounds (Neumann) -------------------------------------


def _twoterm_terms(z, d, volume, width, c_width, c_curv):
    lead = classical_constant(1, d) * volume * _pow(z, d / 2 + 1)
    t_width = c_width * classical_constant(1, d - 1) * volume / width * _pow(z, (d + 1) / 2)
    t_curv = -c_curv * (2 * math.pi) ** (2 - d) * ball_volume(d) * volume / width**2 * _pow(z, d / 2)
    return lead, t_width, t_curv


def twoterm_lower(z, d: int, volume: float, width: float, variant: str = "plain") -> BoundEvaluation:
    """Neumann R_1(z) lower bound with a width correction in z^((d+1)/2).

    ``variant='positive_part'`` clamps the sum of the two correction terms at
    zero (it is then never below the pure Weyl term); the clamp shows up as an
    extra nonnegative term so that the total stays the sum of the terms.
    """
    z = _z(z)
    width = _positive("width", width)
    lead, t_width, t_curv = _twoterm_terms(z, d, volume, width, 0.25, 1 / 96)
    terms = [("weyl", lead), ("width", t_width), ("curvature", t_curv)]
    if variant == "positive_part":
        terms.append(("clamp", np.maximum(0.0, -(t_width + t_curv))))
        name = "twoterm-positive-part"
    elif variant == "plain":
        name = "twoterm"
    else:
        raise ValueError(f"variant must be 'plain' or 'positive_part', got {variant!r}")
    return _evaluation(name, "lower", terms, _need_d2(d))


def product_twoterm_lower(z, d: int, volume: float, width: float) -> BoundEvaluation:
    """Sharper two-term bound for products Omega' x [0, width], with width the interval length."""
    z = _z(z)
    width = _positive("width", width)
    lead, t_width, t_curv = _twoterm_terms(z, d, volume, width, 0.5, 1 / 24)
    return _evaluation("product-twoterm", "lower", [("weyl", lead), ("width", t_width), ("curvature", t_curv)], _need_d2(d))


def higher_riesz_lower(z, gamma: float, d: int, volume: float, width: float) -> BoundEvaluation:
    """Lower bound for R_gamma(z), gamma >= 1, obtained by integrating the two-term R_1 bound."""
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    z = _z(z)
    width = _positive("width", width)
    lead = classical_constant(gamma, d) * volume * _pow(z, d / 2 + gamma)
    t_width = classical_constant(gamma, d - 1) * volume / (4 * width) * _pow(z, d / 2 + gamma - 0.5)
    t_curv = -math.pi / 96 * classical_constant(gamma, d - 2) * volume / width**2 * _pow(z, d / 2 + gamma - 1)
    return _evaluation("higher-riesz", "lower", [("weyl", lead), ("width", t_width), ("curvature", t_curv)], _need_d2(d))


def polya_counting_lower(z, d: int, volume: float, width_of_factor: float) -> BoundEvaluation:
    """Counting-function lower bound for Omega_1 x Omega_2 with Polya's inequality on Omega_1.

    Evaluates 1 + |V| L(0,d) z^(d/2) + |V|( L(0,d+1)/(4 sqrt(4 pi) w) z^((d-1)/2)
    - L(0,d+2)/(384 w^2) z^(d/2-1) )_+ with w the width of the second factor.
    """
    z = _z(z)
    w = _positive("width_of_factor", width_of_factor)
    lead = classical_constant(0, d) * volume * _pow(z, d / 2)
    t_width = volume * classical_constant(0, d + 1) / (math.sqrt(4 * math.pi) * 4 * w) * _pow(z, (d - 1) / 2)
    t_curv = -volume * classical_constant(0, d + 2) / (384 * w**2) * _pow(z, d / 2 - 1)
    clamp = np.maximum(0.0, -(t_width + t_curv))
    one = np.ones_like(z) if isinstance(z, np.ndarray) else 1.0
    validity = None if d >= 3 else f"outside hypotheses: needs a factor of dimension >= 2 and total d >= 3, got d = {d}"
    return _evaluation(
        "polya-product",
        "lower",
        [("constant", one), ("weyl", lead), ("width", t_width), ("curvature", t_curv), ("clamp", clamp)],
        validity,
    )


def weak_twoterm_lower(z, d: int, volume: float, width: float) -> BoundEvaluation:
    """Two-term Neumann bound without the negative z^(d/2) term (width coefficient 1/6)."""
    z = _z(z)
    width = _positive("width", width)
    lead = classical_constant(1, d) * volume * _pow(z, d / 2 + 1)
    t_width = classical_constant(1, d - 1) * volume / (6 * width) * _pow(z, (d + 1) / 2)
    return _evaluation("weak-twoterm", "lower", [("weyl", lead), ("width", t_width)], _need_d2(d))


def hull_isoperimetric_lower_2d(z, volume: float, hull_perimeter: float) -> BoundEvaluation:
    """Planar weak bound with the width replaced by the mean width |hull boundary| / pi."""
    z = _z(z)
    hull_perimeter = _positive("hull_perimeter", hull_perimeter)
    lead = classical_constant(1, 2) * volume * _pow(z, 2.0)
    t_hull = classical_constant(1, 1) * math.pi * volume / (6 * hull_perimeter) * _pow(z, 1.5)
    return _evaluation("hull-isoperimetric", "lower", [("weyl", lead), ("hull", t_hull)])


# --- rectangles ---------------------------------------------------------------------


def _check_rectangle(l1: float, l2: float) -> None:
    if not (l1 > 0 and l2 > 0):
        raise ValueError("rectangle sides must be positive")
    if l1 > l2:
        raise ValueError(f"need l1 <= l2, got l1 = {l1}, l2 = {l2}")


def _rectangle_upper_terms(l1, l2, z, bc):
    s = l2 / l1 + l1 / l2
    quarter = 3 * math.pi**1.5 * math.sqrt(2) / (64 * l2 * math.sqrt(l1))
    linear = 3 * math.pi / 128 * (s + 32 / (3 * math.pi))
    if bc is BoundaryCondition.NEUMANN:
        root = 3 * math.pi / 64 * (1 / l1 + 1 / l2)
    else:
        root = math.pi / 12 * (1 / l2 - 9 / (16 * l1))
    return [("linear", linear * z), ("sqrt", root * _pow(z, 0.5)), ("quarter", quarter * _pow(z, 0.25))]


def _rectangle_lower_terms(l1, l2, z, bc):
    s = l2 / l1 + l1 / l2
    quarter = -(math.pi**1.5) * math.sqrt(2) / (12 * l2 * math.sqrt(l1))
    linear = -math.pi / 24 * (s - 6 / math.pi)
    if bc is BoundaryCondition.NEUMANN:
        root = -math.pi / 12 * (1 / l1 + 1 / l2)
    else:
        root = math.pi / 12 * (1 / l1 - 9 / (16 * l2))
    return [("linear", linear * z), ("sqrt", root * _pow(z, 0.5)), ("quarter", quarter * _pow(z, 0.25))]


def rectangle_envelopes(l1: float, l2: float, z, bc) -> tuple[BoundEvaluation, BoundEvaluation]:
    """Envelopes for R_1(z) - |R| z^2/(8 pi) -+ |dR| z^(3/2)/(6 pi) on [0,l1] x [0,l2], l1 <= l2.

    The sign of the perimeter term is - for Neumann and + for Dirichlet.
    """
    _check_rectangle(l1, l2)
    bc = BoundaryCondition.parse(bc)
    z = _z(z)
    tag = bc.value
    lower = _evaluation(f"rectangle-{tag}", "lower", _rectangle_lower_terms(l1, l2, z, bc))
    upper = _evaluation(f"rectangle-{tag}", "upper", _rectangle_upper_terms(l1, l2, z, bc))
    return lower, upper


def rectangle_leading(l1: float, l2: float, z, bc):
    """The two subtracted leading terms |R| z^2/(8 pi) and the signed perimeter term."""
    bc = BoundaryCondition.parse(bc)
    sign = 1.0 if bc is BoundaryCondition.NEUMANN else -1.0
    return l1 * l2 / (8 * math.pi) * _pow(z, 2.0) + sign * 2 * (l1 + l2) / (6 * math.pi) * _pow(z, 1.5)


@dataclass(frozen=True)
class RectangleBounds:
    lower: BoundEvaluation
    upper: BoundEvaluation
    center: object

    @property
    def holds(self) -> bool:
        c = np.asarray(self.center)
        scale = 1e-9 * np.maximum(1.0, np.abs(c))
        return bool(np.all(np.asarray(self.lower.total) <= c + scale) and np.all(c <= np.asarray(self.upper.total) + scale))


def rectangle_riesz_bounds(l1: float, l2: float, z, bc, spectrum=None) -> RectangleBounds:
    """Sandwich of the centred rectangle Riesz mean; ``center`` uses the exact spectrum."""
    _check_rectangle(l1, l2)
    bc = BoundaryCondition.parse(bc)
    z = _z(z)
    lower, upper = rectangle_envelopes(l1, l2, z, bc)
    if spectrum is None:
        spectrum = enumerate_box((l1, l2), bc, float(np.max(z)) if np.size(z) else 0.0)
    center = riesz_mean(spectrum, z, 1.0) - rectangle_leading(l1, l2, z, bc)
    return RectangleBounds(lower, upper, center if np.ndim(center) else float(center))


# --- Dirichlet domination by an enclosing box -----------------------------------------


def _box_sides(box) -> tuple[float, ...]:
    if isinstance(box, geometry.Box):
        return box.lengths
    if isinstance(box, geometry.Interval):
        return (box.length,)
    return tuple(float(x) for x in box)


def _check_enclosure(omega_domain, sides: Sequence[float]) -> None:
    d = geometry.dimension(omega_domain)
    if d != len(sides):
        raise PreconditionError(f"box has dimension {len(sides)}, domain has {d}")
    for a, side in enumerate(sides):
        w = geometry.width(omega_domain, geometry.UnitVector.axis(d, a))
        if side < 2 * w * (1 - 1e-12):
            raise PreconditionError(f"box side {side} along axis {a} is less than twice the domain width {w}")


def _riesz1_error(spectrum, z):
    err = getattr(spectrum, "error_estimate", None)
    if err is None:
        return None
    ev = spectrum.eigenvalues
    z = np.asarray(z, dtype=float)
    cum = np.concatenate([[0.0], np.cumsum(err)])
    return cum[np.searchsorted(ev, z, side="left")]


def domination_sides(omega_spectrum, box, z, omega_volume: float | None = None):
    """Both sides (|Omega|/|B|) R_1^B(z) and R_1^Omega(z), plus the tolerance, vectorised in z."""
    sides = _box_sides(box)
    dom = getattr(omega_spectrum, "domain", None)
    if dom is not None:
        _check_enclosure(dom, sides)
        if omega_volume is None:
            omega_volume = geometry.volume(dom)
    if omega_volume is None:
        raise ValueError("need the domain volume (spectrum carries no domain)")
    z = np.asarray(z, dtype=float)
    box_spec = enumerate_box(sides, BoundaryCondition.DIRICHLET, float(z.max()) if z.size else 0.0)
    left = omega_volume / math.prod(sides) * riesz_mean(box_spec, z, 1.0)
    right = riesz_mean(omega_spectrum, z, 1.0)
    err = _riesz1_error(omega_spectrum, z)
    tol = 1e-9 * np.maximum(1.0, np.abs(left)) if err is None else 3 * err + 1e-9 * np.maximum(1.0, np.abs(left))
    return left, right, tol


def dirichlet_box_domination(omega_spectrum, box, z: float, omega_volume: float | None = None) -> VerificationRecord:
    """Check (|Omega|/|B|) R_1^B(z) >= R_1^Omega(z) for Dirichlet spectra.

    Every box side must be at least twice the width of Omega along that axis.
    Spectra with an ``error_estimate`` pass when the margin is at least minus
    three times the propagated estimate.
    """
    left, right, tol = domination_sides(omega_spectrum, box, z, omega_volume)
    left, right, tol = float(left), float(right), float(tol)
    margin = left - right
    return VerificationRecord(
        "dirichlet-box-domination",
        {"z": float(z), "box": "x".join(format(s, "g") for s in _box_sides(box))},
        left,
        right,
        margin,
        margin >= -tol,
        tol,
    )


def dirichlet_2d_explicit_upper(z, omega_volume: float, box) -> BoundEvaluation:
    """Upper bound for the Dirichlet R_1 of a planar domain enclosed in a box [0,l1] x [0,l2].

    The lower-order part is the Dirichlet rectangle upper envelope divided by
    |B|, so the bound equals (|Omega|/|B|) times the box's upper envelope.
    """
    sides = sorted(_box_sides(box))
    if len(sides) != 2:
        raise ValueError("the explicit bound is planar; box needs two sides")
    l1, l2 = sides
    z = _z(z)
    area = l1 * l2
    perim = 2 * (l1 + l2)
    lead = classical_constant(1, 2) * omega_volume * _pow(z, 2.0)
    edge = -0.25 * classical_constant(1, 1) * perim * omega_volume / area * _pow(z, 1.5)
    lower_order = [(f"F-{k}", v * omega_volume / area) for k, v in _rectangle_upper_terms(l1, l2, z, BoundaryCondition.DIRICHLET)]
    return _evaluation("dirichlet-2d-explicit", "upper", [("weyl", lead), ("box-perimeter", edge)] + lower_order)


# --- two-term asymptotic references ----------------------------------------------------


def asymptotic_reference(z, d: int, volume: float, boundary_measure: float, bc="neumann"):
    """Two-term Weyl expansions (reference curves, not bounds) for N(z) and R_1(z).

    The boundary term enters with + for Neumann and - for Dirichlet.
    """
    z = _z(z)
    sign = 1.0 if BoundaryCondition.parse(bc) is BoundaryCondition.NEUMANN else -1.0
    counting = classical_constant(0, d) * volume * _pow(z, d / 2) + sign * 0.25 * classical_constant(
        0, d - 1
    ) * boundary_measure * _pow(z, (d - 1) / 2)
    riesz1 = classical_constant(1, d) * volume * _pow(z, 1 + d / 2) + sign * 0.25 * classical_constant(
        1, d - 1
    ) * boundary_measure * _pow(z, (d + 1) / 2)
    return counting, riesz1


BOUND_NAMES = (
    "berezin",
    "laptev",
    "twoterm",
    "twoterm-positive-part",
    "product-twoterm",
    "higher-riesz",
    "polya-product",
    "weak-twoterm",
    "hull-isoperimetric",
    "rectangle-lower",
    "rectangle-upper",
    "dirichlet-2d-explicit",
)
