"""The twelve acceptance criteria, each with its tolerance and runtime budget.

Every test records one PASS/FAIL line; conftest prints them at the end of the run.
"""

import math
import time

import numpy as np
import pytest

import oracles
from spectral_riesz import suites
from spectral_riesz.geometry import Box, Disk
from spectral_riesz.spectra_numeric import richardson_refine

ACCEPTANCE_LINES: list[str] = []


def _run(label: str, budget: float, fn):
    t0 = time.perf_counter()
    checks = fn()
    elapsed = time.perf_counter() - t0
    bad = [c for c in checks if not c.ok]
    ok = not bad and elapsed < budget
    detail = f"{sum(c.count for c in checks)} points in {len(checks)} checks, {elapsed:.1f}s (budget {budget:g}s)"
    if bad:
        detail += "; failing: " + ", ".join(f"{c.name} ({c.failures}/{c.count}, worst {c.worst_margin:.4g})" for c in bad)
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return checks, bad, elapsed


def _assert(checks, bad, elapsed, budget):
    if bad:
        pytest.fail("; ".join(c.summary() for c in bad), pytrace=False)
    assert elapsed < budget


def test_c01_riesz1d_sandwich():
    res = _run("1 one-dimensional sandwich", 5, suites.suite_riesz1d)
    _assert(*res, 5)
    names = {c.name for c in res[0]}
    assert {"riesz1d-lower", "riesz1d-upper", "riesz1d-lower-equality", "riesz1d-below-one", "sawtooth-excess-3/8"} <= names


def test_c02_sawtooth_identity():
    _assert(*_run("2 sawtooth identity", 5, suites.suite_sawtooth), 5)


def test_c03_beta_means():
    _assert(*_run("3 beta Riesz means", 10, suites.suite_beta), 10)


def test_c04_kroeger_bracket():
    _assert(*_run("4 Kroeger sums and eigenvalue bracket, k <= 1e4", 30, suites.suite_kroeger), 30)


def test_c05_twoterm_chain():
    _assert(*_run("5 two-term Riesz-mean chain", 60, suites.suite_twoterm), 60)


def test_c06_rectangle_sandwich():
    checks, bad, elapsed = _run("6 rectangle sandwich", 60, suites.suite_rectangle)
    _assert(checks, bad, elapsed, 60)
    from spectral_riesz.bounds import rectangle_riesz_bounds

    center = rectangle_riesz_bounds(1.0, 1.0, 100.0, "neumann").center
    assert abs(center - oracles.RECT_CENTER_UNIT_SQUARE_100) < 1e-6


def test_c07_berezin_and_polya_curves():
    _assert(*_run("7 Berezin and Polya curves", 60, lambda: suites.suite_polya(deltas=())), 60)


def test_c08_product_counting_bound():
    # Implemented as stated; it exceeds N(z) = 1 below the second eigenvalue, see the analysis notes.
    _assert(*_run("8 product counting lower bound", 30, suites.suite_polya_product), 30)


def test_c09_dirichlet_domination():
    _assert(*_run("9 Dirichlet box domination", 300, suites.suite_dirichlet_box), 300)


def test_c10_solver_calibration():
    j01 = oracles.bessel_j0_first_zero()

    def checks():
        from spectral_riesz.report import CheckResult

        sq = richardson_refine(Box((1.0, 1.0)), 1 / 64, 1, "dirichlet").eigenvalues[0]
        dk = richardson_refine(Disk(1.0), 1 / 64, 1, "dirichlet").eigenvalues[0]
        return [
            CheckResult("square-lambda1", {"h": [1 / 64]}, [2 * math.pi**2], [sq], [5e-4 - abs(sq / (2 * math.pi**2) - 1)]),
            CheckResult("disk-lambda1", {"h": [1 / 64]}, [j01**2], [dk], [3e-3 - abs(dk / j01**2 - 1)]),
        ]

    _assert(*_run("10 finite-difference calibration", 120, checks), 120)


def test_c11_young_and_holder():
    checks, bad, elapsed = _run("11 refined Young and Hoelder", 20, suites.suite_ineq)
    _assert(checks, bad, elapsed, 20)
    young = [c for c in checks if c.name.startswith("young-")]
    assert len(young) == 4 and all(c.count == 100_000 for c in young)
    assert sum(c.count for c in checks if c.name.startswith("holder-1a-lower")) == 10_000


def test_c12_avp():
    _assert(*_run("12 averaged variational principle", 30, suites.suite_avp), 30)


def test_criterion8_failures_confined_below_second_eigenvalue():
    """Informational: the only violations sit where N(z) = 1, i.e. z <= pi^2."""
    for c in suites.suite_polya_product():
        z = np.asarray(c.inputs["z"], float)
        failing = np.asarray(c.margin) < -np.asarray(c.tolerance)
        assert np.all(z[failing] <= math.pi**2 * (1 + 1e-12))
        assert np.all(np.asarray(c.oracle)[failing] == 1)
