import math

import numpy as np
import pytest

import oracles
from spectral_riesz import bounds
from spectral_riesz.errors import InequalityViolation, PreconditionError
from spectral_riesz.geometry import Box, Disk
from spectral_riesz.spectra_exact import ExactSpectrum, enumerate_box, enumerate_box_count, riesz_mean


def test_classical_constants():
    assert bounds.classical_constant(1, 2) == pytest.approx(1 / (8 * math.pi), rel=1e-15)
    assert bounds.classical_constant(1, 1) == pytest.approx(2 / (3 * math.pi), rel=1e-15)
    assert bounds.classical_constant(0, 2) == pytest.approx(1 / (4 * math.pi), rel=1e-15)
    assert bounds.weyl_constant(2) == pytest.approx(4 * math.pi)
    assert bounds.ball_volume(3) == pytest.approx(4 * math.pi / 3)
    c = bounds.ClassicalConstants(3)
    assert c.C_d == pytest.approx((2 * math.pi) ** 2 * c.B_d ** (-2 / 3))
    assert c.L(1) == pytest.approx(bounds.classical_constant(1, 3))


def test_weyl_constant_from_classical():
    # C_d = (L(0,d))^(-2/d), both routes
    for d in (1, 2, 3, 5):
        assert bounds.weyl_constant(d) == pytest.approx(bounds.classical_constant(0, d) ** (-2 / d))


def test_twoterm_frozen_terms():
    ev = bounds.twoterm_lower(100.0, 2, 1.0, 1.0)
    assert [v for _, v in ev.terms] == pytest.approx(oracles.TWOTERM_TERMS_100, rel=1e-14)
    assert ev.total == pytest.approx(sum(oracles.TWOTERM_TERMS_100), rel=1e-14)
    assert ev.validity is None


def test_other_frozen_bounds():
    assert bounds.product_twoterm_lower(100.0, 2, 1.0, 1.0).total == pytest.approx(oracles.PRODUCT_TWOTERM_100, rel=1e-14)
    assert bounds.weak_twoterm_lower(100.0, 2, 1.0, 1.0).total == pytest.approx(oracles.WEAK_TWOTERM_100, rel=1e-14)
    assert bounds.hull_isoperimetric_lower_2d(100.0, 1.0, 4.0).total == pytest.approx(oracles.HULL_ISOPERIMETRIC_100, rel=1e-14)
    assert bounds.laptev_lower(50.0, 3, 1.0).total == pytest.approx(oracles.LAPTEV_CUBE_50, rel=1e-14)


def test_hull_bound_is_weak_bound_at_mean_width():
    a = bounds.hull_isoperimetric_lower_2d(37.0, 1.0, 4.0).total
    b = bounds.weak_twoterm_lower(37.0, 2, 1.0, 4 / math.pi).total
    assert a == pytest.approx(b)


def test_positive_part_never_below_weyl():
    z = np.geomspace(0.1, 1e4, 50)
    pos = bounds.twoterm_lower(z, 2, 1.0, 0.05, "positive_part")
    assert np.all(pos.total >= pos.term("weyl") - 1e-12)
    assert np.all(pos.term("clamp") >= 0)
    with pytest.raises(ValueError):
        bounds.twoterm_lower(1.0, 2, 1.0, 1.0, "other")


def test_validity_notes():
    assert bounds.twoterm_lower(1.0, 1, 1.0, 1.0).validity is not None
    assert bounds.polya_counting_lower(1.0, 2, 1.0, 1.0).validity is not None
    assert bounds.polya_counting_lower(1.0, 3, 1.0, 1.0).validity is None


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        bounds.berezin_upper(-1.0, 2, 1.0)
    with pytest.raises(ValueError):
        bounds.weak_twoterm_lower(1.0, 2, 1.0, 0.0)
    with pytest.raises(ValueError):
        bounds.higher_riesz_lower(1.0, 0.5, 2, 1.0, 1.0)


def test_higher_riesz_below_exact():
    spec = enumerate_box((1, 1), "neumann", 2000)
    z = np.linspace(1, 2000, 60)
    for gamma in (1.0, 2.0):
        low = bounds.higher_riesz_lower(z, gamma, 2, 1.0, 1.0).total
        assert np.all(low <= riesz_mean(spec, z, gamma) * (1 + 1e-12))
    # gamma = 1 reproduces the plain two-term bound
    assert bounds.higher_riesz_lower(z, 1.0, 2, 1.0, 1.0).total == pytest.approx(bounds.twoterm_lower(z, 2, 1.0, 1.0).total)


def test_kroeger_bracket_frozen():
    spec = enumerate_box_count((1, 1), "neumann", 10)
    st = bounds.kroeger_state(spec, 2)
    assert st.S_k == pytest.approx(math.pi / 8, rel=1e-14)
    lo, hi = bounds.eigenvalue_bracket(st)
    assert (lo, hi) == pytest.approx(oracles.BRACKET_K2, rel=1e-14)
    assert lo <= spec.eigenvalues[2] <= hi
    assert bounds.theorem11_bracket is bounds.eigenvalue_bracket


def test_kroeger_preconditions():
    spec = enumerate_box_count((1, 1), "neumann", 10)
    with pytest.raises(ValueError):
        bounds.kroeger_state(spec, 0)
    with pytest.raises(PreconditionError):
        bounds.kroeger_state(enumerate_box_count((1, 1), "dirichlet", 10), 2)
    with pytest.raises(PreconditionError):
        bounds.kroeger_state(enumerate_box_count((1,), "neumann", 10), 2)


def test_bracket_rejects_violation():
    fake = ExactSpectrum([0.0, 100.0, 100.0], 200.0, "neumann")
    st = bounds.kroeger_state(fake, 3, d=2, volume=1.0)
    assert st.violated
    with pytest.raises(InequalityViolation):
        bounds.eigenvalue_bracket(st)


def test_kroeger_profile_matches_state():
    spec = enumerate_box_count((1, 2, 0.5), "neumann", 300)
    prof = bounds.kroeger_profile(spec.eigenvalues, 3, 1.0, 200)
    st = bounds.kroeger_state(spec, 137)
    assert prof["S"][136] == pytest.approx(st.S_k)
    assert np.all(prof["S"] <= 1)


def test_rectangle_frozen_spot():
    rb = bounds.rectangle_riesz_bounds(1.0, 1.0, 100.0, "neumann")
    assert rb.center == pytest.approx(oracles.RECT_CENTER_UNIT_SQUARE_100, abs=1e-9)
    assert rb.lower.total == pytest.approx(oracles.RECT_LOWER_UNIT_SQUARE_100, rel=1e-14)
    assert rb.upper.total == pytest.approx(oracles.RECT_UPPER_UNIT_SQUARE_100, rel=1e-14)
    assert rb.holds


def test_rectangle_center_definition():
    center = bounds.rectangle_riesz_bounds(1.0, 1.0, 100.0, "dirichlet").center
    lead = 100.0**2 / (8 * math.pi) - 4 * 100.0**1.5 / (6 * math.pi)
    assert center == pytest.approx(oracles.R1_UNIT_SQUARE_DIRICHLET_100 - lead)


def test_rectangle_side_order():
    with pytest.raises(ValueError):
        bounds.rectangle_riesz_bounds(2.0, 1.0, 10.0, "neumann")


def test_polya_curves_on_square():
    spec = enumerate_box((1, 1), "neumann", 2000)
    j = np.arange(1, len(spec) + 1)
    assert np.all(spec.eigenvalues <= bounds.polya_reference(j, 2, 1.0, "neumann") + 1e-9)
    spec = enumerate_box((1, 1), "dirichlet", 2000)
    j = np.arange(1, len(spec) + 1)
    assert np.all(spec.eigenvalues >= bounds.polya_reference(j, 2, 1.0, "dirichlet") - 1e-9)


def test_polya_product_below_second_eigenvalue_exceeds_count():
    # below mu_2 = pi^2 the count is 1 while the stated bound is above 1
    ev = bounds.polya_counting_lower(5.0, 3, 0.25, 0.25)
    assert ev.term("constant") == 1.0
    assert ev.total > 1.0


def test_domination_subrectangle():
    spec = enumerate_box((0.4, 0.3), "dirichlet", 600)
    rec = bounds.dirichlet_box_domination(spec, Box((1.0, 1.0)), 500.0)
    assert rec.passed
    assert rec.oracle == pytest.approx(oracles.R1_SUBRECT_DIRICHLET_500, rel=1e-13)
    assert rec.bound == pytest.approx(0.12 * oracles.R1_UNIT_SQUARE_DIRICHLET_500, rel=1e-13)


def test_domination_needs_enclosure():
    spec = enumerate_box((0.6, 0.3), "dirichlet", 100)
    with pytest.raises(PreconditionError):
        bounds.dirichlet_box_domination(spec, Box((1.0, 1.0)), 50.0)


def test_explicit_upper_is_scaled_box_envelope():
    z = np.linspace(10, 500, 20)
    up = bounds.dirichlet_2d_explicit_upper(z, 0.12, (1.0, 1.0)).total
    env = bounds.rectangle_envelopes(1.0, 1.0, z, "dirichlet")[1].total + bounds.rectangle_leading(1.0, 1.0, z, "dirichlet")
    assert up == pytest.approx(0.12 * env)


def test_asymptotic_reference_counts():
    n_ref, _ = bounds.asymptotic_reference(1e4, 2, 1.0, 4.0)
    assert n_ref == pytest.approx(oracles.N_UNIT_SQUARE_NEUMANN_1E4, rel=2e-3)


def test_evaluation_serialises():
    d = bounds.twoterm_lower(np.array([1.0, 2.0]), 2, 1.0, 1.0).to_dict()
    assert d["name"] == "twoterm" and len(d["total"]) == 2
