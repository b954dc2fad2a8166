import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from spectral_riesz.errors import IncompleteSpectrumError, ResourceError
from spectral_riesz.geometry import Box, Disk, Interval, Product
from spectral_riesz.spectra_exact import (
    BoundaryCondition,
    counting,
    eigenvalue_sum,
    enumerate_box,
    enumerate_box_count,
    product_spectrum,
    riesz_mean,
    spectrum_of,
)


def test_unit_square_neumann_first_values():
    spec = enumerate_box((1, 1), "neumann", 30)
    assert spec.eigenvalues.tolist() == pytest.approx([0, math.pi**2, math.pi**2, 2 * math.pi**2])


def test_multiplicity_kept_and_strict_cutoff():
    spec = enumerate_box((1, 1), "dirichlet", 5 * math.pi**2)
    # 2pi^2, then 5pi^2 twice is excluded by the strict cutoff
    assert spec.eigenvalues.tolist() == pytest.approx([2 * math.pi**2])
    spec = enumerate_box((1, 1), "dirichlet", 5 * math.pi**2 + 1e-9)
    assert len(spec) == 3


def test_zero_cutoff_empty():
    assert len(enumerate_box((1, 1), "neumann", 0.0)) == 0


@pytest.mark.parametrize("lengths", [(1.0,), (1.0, 1.0), (1.0, math.sqrt(2)), (1.0, 2.0, 0.5)])
@pytest.mark.parametrize("bc", ["neumann", "dirichlet"])
def test_enumeration_matches_brute_loop(lengths, bc):
    spec = enumerate_box(lengths, bc, 400.0)
    assert spec.eigenvalues == pytest.approx(oracles.brute_box_eigenvalues(lengths, bc, 400.0))


def test_frozen_riesz_means():
    n = enumerate_box((1, 1), "neumann", 200)
    d = enumerate_box((1, 1), "dirichlet", 600)
    assert riesz_mean(n, 100.0) == pytest.approx(oracles.R1_UNIT_SQUARE_NEUMANN_100, rel=1e-13)
    assert riesz_mean(d, 100.0) == pytest.approx(oracles.R1_UNIT_SQUARE_DIRICHLET_100, rel=1e-13)
    assert riesz_mean(d, 500.0) == pytest.approx(oracles.R1_UNIT_SQUARE_DIRICHLET_500, rel=1e-13)
    assert riesz_mean(n, 100.0, 2.0) == pytest.approx(oracles.R2_UNIT_SQUARE_NEUMANN_100, rel=1e-13)
    cube = enumerate_box((1, 1, 1), "neumann", 50)
    assert riesz_mean(cube, 50.0) == pytest.approx(oracles.R1_UNIT_CUBE_NEUMANN_50, rel=1e-13)
    sub = enumerate_box((0.4, 0.3), "dirichlet", 500)
    assert riesz_mean(sub, 500.0) == pytest.approx(oracles.R1_SUBRECT_DIRICHLET_500, rel=1e-13)


def test_counting_is_strict():
    spec = enumerate_box((1, 1), "neumann", 1e4)
    assert counting(spec, 0.0) == 0
    assert counting(spec, math.pi**2) == 1
    assert counting(spec, math.pi**2 + 1e-9) == 3
    assert counting(spec, 1e4) == oracles.N_UNIT_SQUARE_NEUMANN_1E4
    assert riesz_mean(spec, 1e4, 0) == oracles.N_UNIT_SQUARE_NEUMANN_1E4


def test_vectorised_matches_scalar():
    spec = enumerate_box((1, 2), "dirichlet", 300)
    z = np.linspace(1, 300, 37)
    for sigma in (0.5, 1.0, 2.0):
        vec = riesz_mean(spec, z, sigma)
        assert vec == pytest.approx([riesz_mean(spec, float(x), sigma) for x in z])


def test_beyond_cutoff_raises():
    spec = enumerate_box((1, 1), "neumann", 100)
    with pytest.raises(IncompleteSpectrumError):
        riesz_mean(spec, 101.0)
    with pytest.raises(IncompleteSpectrumError):
        eigenvalue_sum(spec, 10_000)


def test_resource_limit():
    with pytest.raises(ResourceError):
        enumerate_box((1, 1, 1), "neumann", 1e6, limit=1000)


def test_enumerate_box_count():
    spec = enumerate_box_count((1, 1), "neumann", 500)
    assert len(spec) >= 500
    assert eigenvalue_sum(spec, 3) == pytest.approx(2 * math.pi**2)


def test_product_spectrum_equals_box():
    a = spectrum_of(Interval(1.0), "neumann", 300)
    b = spectrum_of(Box((1.0, 0.5)), "neumann", 300)
    prod = product_spectrum(a, b, 300)
    direct = enumerate_box((1.0, 1.0, 0.5), "neumann", 300)
    assert prod.eigenvalues == pytest.approx(direct.eigenvalues)
    via = spectrum_of(Product(Interval(1.0), Box((1.0, 0.5))), "neumann", 300)
    assert via.eigenvalues == pytest.approx(direct.eigenvalues)


def test_no_exact_spectrum_for_disk():
    with pytest.raises(TypeError):
        spectrum_of(Disk(1.0), "dirichlet", 10)


def test_boundary_condition_parse():
    assert BoundaryCondition.parse("N") is BoundaryCondition.NEUMANN
    assert BoundaryCondition.parse("Dirichlet") is BoundaryCondition.DIRICHLET
    with pytest.raises(ValueError):
        BoundaryCondition.parse("robin")


@settings(max_examples=40, deadline=None)
@given(st.floats(0.3, 3), st.floats(0.3, 3), st.floats(1, 300), st.sampled_from(["neumann", "dirichlet"]))
def test_riesz_mean_against_brute(l1, l2, z, bc):
    spec = enumerate_box((l1, l2), bc, 300)
    assert riesz_mean(spec, z) == pytest.approx(oracles.brute_box_riesz((l1, l2), bc, z), rel=1e-10, abs=1e-9)
    assert counting(spec, z) == oracles.brute_box_riesz((l1, l2), bc, z, 0)
