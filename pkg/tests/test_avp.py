import math

import numpy as np
import pytest

from spectral_riesz import avp
from spectral_riesz.errors import PreconditionError


def test_parseval_family_and_check():
    rng = np.random.default_rng(1)
    op = avp.random_operator(8, rng)
    fam = avp.random_parseval_family(8, 13, rng)
    assert fam.is_parseval()
    for z in np.linspace(op.eigenvalues[0] - 1, op.eigenvalues[-1] + 1, 25):
        assert avp.avp_check(op, fam, z).holds


def test_eigenbasis_equality():
    rng = np.random.default_rng(2)
    op = avp.random_operator(10, rng)
    z = float(np.median(op.eigenvalues))
    res = avp.avp_check(op, avp.eigenbasis_family(op, z), z)
    assert res.lhs == pytest.approx(res.rhs, abs=1e-10)


def test_diagonal_examples():
    op = avp.DiscreteOperatorSpec.from_matrix(np.diag([1.0, 2.0, 3.0]))
    fam = avp.TrialFamily(np.eye(3), np.ones(3), {0, 1})
    res = avp.avp_check(op, fam, 2.5)
    assert res.lhs == pytest.approx(2.0) and res.rhs == pytest.approx(2.0) and res.holds
    res = avp.avp_check(op, fam.with_subset([0, 1, 2]), 2.5)
    assert res.rhs == pytest.approx(1.5) and res.lhs == pytest.approx(2.0)


def test_theorem_mode_rejects_non_parseval():
    op = avp.DiscreteOperatorSpec.from_matrix(np.diag([1.0, 2.0]))
    fam = avp.TrialFamily(np.eye(2) * 2, np.ones(2), {0})
    with pytest.raises(PreconditionError):
        avp.avp_check(op, fam, 3.0)
    res = avp.avp_check(op, fam, 3.0, mode="permissive")
    assert res.lhs == pytest.approx(12.0) and res.rhs == pytest.approx(8.0)
    with pytest.raises(ValueError):
        avp.avp_check(op, fam, 3.0, mode="loose")


def test_dimension_mismatch():
    op = avp.DiscreteOperatorSpec.from_matrix(np.eye(3))
    with pytest.raises(ValueError):
        avp.avp_check(op, avp.TrialFamily(np.eye(2), np.ones(2)), 1.0)


def test_validation():
    with pytest.raises(ValueError):
        avp.DiscreteOperatorSpec.from_matrix([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        avp.TrialFamily(np.eye(2), np.ones(2), {5})
    with pytest.raises(ValueError):
        avp.random_parseval_family(5, 3, np.random.default_rng(0))


def test_kroeger_demo_unit_square():
    recs = avp.kroeger_demo((1.0, 1.0), 5, np.linspace(0.1, 3 * math.sqrt(20 * math.pi), 50))
    assert len(recs) == 51 and all(r.passed for r in recs)
    assert recs[-1].name == "kroeger-normalized"


def test_kroeger_demo_k_positive():
    with pytest.raises(ValueError):
        avp.kroeger_demo((1.0, 1.0), 0, [1.0])
