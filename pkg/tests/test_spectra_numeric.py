import io
import math

import numpy as np
import pytest

import oracles
from spectral_riesz.errors import DiscretizationError, IncompleteSpectrumError
from spectral_riesz.geometry import Box, Disk, Polygon2D
from spectral_riesz.spectra_exact import enumerate_box
from spectral_riesz.spectra_numeric import discretize, lowest_eigenvalues, richardson_refine


def test_unknown_counts_on_square():
    assert discretize(Box((1, 1)), 1 / 64, "dirichlet").size == 63**2
    assert discretize(Box((1, 1)), 1 / 64, "neumann").size == 64**2


def test_step_too_coarse():
    with pytest.raises(DiscretizationError):
        discretize(Box((1, 1)), 0.1, "dirichlet")


def test_square_dirichlet_matches_exact():
    spec = richardson_refine(Box((1, 1)), 1 / 32, 6, "dirichlet")
    exact = enumerate_box((1, 1), "dirichlet", 200).eigenvalues[:6]
    assert spec.eigenvalues == pytest.approx(exact, rel=1e-4)
    assert spec.error_estimate is not None and len(spec.error_estimate) == 6


def test_square_neumann_first_modes():
    spec = lowest_eigenvalues(discretize(Box((1, 1)), 1 / 64, "neumann"), 4)
    assert spec.eigenvalues[0] == pytest.approx(0, abs=1e-8)
    assert spec.eigenvalues[1:3] == pytest.approx([math.pi**2] * 2, rel=1e-3)


def test_right_triangle():
    tri = Polygon2D([(0, 0), (1, 0), (0, 1)])
    spec = richardson_refine(tri, 1 / 64, 1, "dirichlet")
    assert spec.eigenvalues[0] == pytest.approx(5 * math.pi**2, rel=1e-3)


def test_disk_against_bessel_zero():
    j01 = oracles.bessel_j0_first_zero()
    spec = richardson_refine(Disk(1.0), 1 / 64, 1, "dirichlet")
    assert spec.eigenvalues[0] == pytest.approx(j01**2, rel=3e-3)


def test_staircase_option_is_cruder():
    j01sq = oracles.bessel_j0_first_zero() ** 2
    corr = lowest_eigenvalues(discretize(Disk(1.0), 1 / 32, "dirichlet"), 1).eigenvalues[0]
    stair = lowest_eigenvalues(discretize(Disk(1.0), 1 / 32, "dirichlet", boundary="staircase"), 1).eigenvalues[0]
    assert abs(corr - j01sq) < abs(stair - j01sq)


def test_request_too_many():
    disc = discretize(Box((1, 1)), 1 / 32, "dirichlet")
    with pytest.raises(IncompleteSpectrumError):
        lowest_eigenvalues(disc, 201)


def test_csv_output_and_cutoff():
    spec = richardson_refine(Box((1, 1)), 1 / 32, 3, "dirichlet")
    assert spec.cutoff == spec.eigenvalues[-1]
    buf = io.StringIO()
    spec.to_csv(buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0].startswith("eigenvalue") and len(lines) == 4


@pytest.mark.slow
def test_threads_give_same_result():
    a = richardson_refine(Disk(0.25, (0.5, 0.5)), 1 / 128, 10, "dirichlet", threads=1)
    b = richardson_refine(Disk(0.25, (0.5, 0.5)), 1 / 128, 10, "dirichlet", threads=2)
    assert a.eigenvalues == pytest.approx(b.eigenvalues, rel=1e-9)
