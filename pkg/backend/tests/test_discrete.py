import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from app.exceptions.exception import SemigroupOverflowException, ValidationException
from app.modules.discrete import DiscreteCouple, DiscreteOperator
from app.modules.discrete.dal.expm_dal import expm_taylor


def test_hand_example(discrete_repo):
    couple = DiscreteCouple(w0=[1.0, 4.0], w1=[1.0, 1.0], p0=2.0, p1=2.0)
    check = discrete_repo.sw_equality_check(couple, 0.5, [1.0, 1.0])
    assert check.target == pytest.approx(math.sqrt(3.0))
    assert check.achieved == pytest.approx(math.sqrt(3.0))
    assert check.relative_gap <= 1e-12
    assert check.through_phi <= 1e-15


def test_zero_vector(discrete_repo):
    couple = DiscreteCouple(w0=[1.0, 2.0, 3.0], w1=[3.0, 2.0, 1.0], p0=1.5, p1=1.5)
    check = discrete_repo.sw_equality_check(couple, 0.3, [0.0, 0.0, 0.0])
    assert check.target == 0.0
    assert check.achieved == 0.0
    assert check.relative_gap == 0.0


@pytest.mark.parametrize("n", [2, 8])
@pytest.mark.parametrize("p", [1.0, 3.0])
def test_random_suite_equality(discrete_repo, n, p):
    checks = discrete_repo.random_sw_suite(n, p, 50, seed=123)
    assert len(checks) == 50
    assert max(c.relative_gap for c in checks) <= 1e-10


def test_random_suite_is_reproducible(discrete_repo):
    first = discrete_repo.random_sw_suite(4, 2.0, 5, seed=9)
    second = discrete_repo.random_sw_suite(4, 2.0, 5, seed=9)
    assert [c.target for c in first] == [c.target for c in second]


def test_equality_check_needs_equal_exponents(discrete_repo):
    couple = DiscreteCouple(w0=[1.0], w1=[2.0], p0=1.0, p1=2.0)
    with pytest.raises(ValidationException):
        discrete_repo.sw_equality_check(couple, 0.5, [1.0])


def test_mixed_exponent_family(discrete_repo):
    rng = np.random.default_rng(4)
    couple = DiscreteCouple(w0=np.exp(rng.normal(size=5)), w1=np.exp(rng.normal(size=5)), p0=1.0, p1=3.0)
    phi = rng.normal(size=5) + 1j * rng.normal(size=5)
    check = discrete_repo.calderon_family_check(couple, 0.4, phi)
    p_theta, _w = discrete_repo.sw_weight(couple, 0.4)
    assert check.p == pytest.approx(p_theta)
    assert check.relative_gap <= 1e-10
    assert check.through_phi <= 1e-10 * max(1.0, check.target)


def test_sw_weight_equal_exponents(discrete_repo):
    couple = DiscreteCouple(w0=[1.0, 4.0], w1=[4.0, 1.0], p0=2.0, p1=2.0)
    p_theta, w = discrete_repo.sw_weight(couple, 0.5)
    assert p_theta == pytest.approx(2.0)
    assert w == pytest.approx([2.0, 2.0])


@pytest.mark.parametrize(
    "kwargs",
    [{"w0": [1.0, -1.0], "w1": [1.0, 1.0]}, {"w0": [1.0], "w1": [1.0, 1.0]}, {"w0": [], "w1": []}, {"w0": [1.0], "w1": [1.0], "p0": 0.5}],
)
def test_couple_validation(kwargs):
    with pytest.raises(ValidationException):
        DiscreteCouple(**kwargs)


def test_operator_validation():
    with pytest.raises(ValidationException):
        DiscreteOperator(matrix=np.ones((2, 3)))
    with pytest.raises(ValidationException):
        DiscreteOperator(matrix=[[np.nan]])


@pytest.mark.parametrize(
    "matrix, w, expected",
    [(np.eye(3), [1.0, 5.0, 2.0], 1.0), (np.diag([2.0, 3.0]), [1.0, 7.0], 3.0), ([[0.0, 1.0], [0.0, 0.0]], [1.0, 2.0], 0.5)],
)
def test_weighted_l1_opnorm(discrete_repo, matrix, w, expected):
    assert discrete_repo.weighted_l1_opnorm(np.asarray(matrix), np.asarray(w)) == pytest.approx(expected)


@pytest.mark.parametrize("signed", [False, True])
def test_opnorm_interpolation_suite(discrete_repo, signed):
    checks = discrete_repo.random_opnorm_suite(100, 5, [0.25, 0.5, 0.75], seed=77, signed=signed)
    assert len(checks) == 300
    assert all(c.holds for c in checks)
    assert all(c.name == "opnorm_interpolation" for c in checks)


def test_opnorm_needs_l1(discrete_repo):
    couple = DiscreteCouple(w0=[1.0, 2.0], w1=[2.0, 1.0], p0=2.0, p1=2.0)
    with pytest.raises(ValidationException):
        discrete_repo.opnorm_interpolation_check(DiscreteOperator(matrix=np.eye(2)), couple, 0.5)


def test_expm_known_matrices():
    assert np.allclose(expm_taylor(np.zeros((3, 3))), np.eye(3))
    assert np.allclose(expm_taylor(np.diag([1.0, -2.0])), np.diag([math.e, math.exp(-2.0)]), rtol=1e-11)
    assert np.allclose(expm_taylor(np.array([[0.0, 1.0], [0.0, 0.0]])), [[1.0, 1.0], [0.0, 1.0]])
    assert np.allclose(expm_taylor(30.0 * np.eye(2)), math.exp(30.0) * np.eye(2), rtol=1e-10)


def test_expm_semigroup_property(discrete_repo):
    lap = discrete_repo.discrete_laplacian(6)
    combined = discrete_repo.expm(lap, 1.5)
    split = discrete_repo.expm(lap, 0.5) @ discrete_repo.expm(lap, 1.0)
    assert np.allclose(combined, split, rtol=1e-10, atol=1e-13)


@pytest.mark.parametrize("matrix", [1e6 * np.eye(2), np.array([[np.inf]])])
def test_expm_overflow(matrix):
    with pytest.raises(SemigroupOverflowException):
        expm_taylor(matrix)


def test_discrete_laplacian(discrete_repo):
    lap = discrete_repo.discrete_laplacian(3)
    assert lap.matrix.tolist() == [[-2.0, 1.0, 0.0], [1.0, -2.0, 1.0], [0.0, 1.0, -2.0]]
    with pytest.raises(ValidationException):
        discrete_repo.discrete_laplacian(0)


def test_semigroup_decay_bound(discrete_repo):
    n = 16
    w1 = np.exp(-np.abs(np.arange(n) - n / 2) / 4.0)
    g = np.zeros(n)
    g[n // 2] = 1.0
    report = discrete_repo.semigroup_decay_study(discrete_repo.discrete_laplacian(n), np.ones(n), w1, 0.5, 0.5, [1.0, 2.0, 4.0], g)
    assert [pt.t for pt in report.points] == [1.0, 2.0, 4.0]
    assert report.all_hold
    assert report.initial > 0


def test_zero_generator_is_an_equality(discrete_repo):
    n = 4
    g = np.array([1.0, 2.0, 0.5, 1.0])
    report = discrete_repo.semigroup_decay_study(DiscreteOperator(matrix=np.zeros((n, n))), np.ones(n), np.full(n, 2.0), 0.5, 0.5, [1.0, 3.0], g)
    for pt in report.points:
        assert pt.measured == pytest.approx(pt.bound, rel=1e-12)
        assert pt.holds


def test_semigroup_times_after_t0(discrete_repo):
    with pytest.raises(ValidationException):
        discrete_repo.semigroup_decay_study(discrete_repo.discrete_laplacian(2), [1.0, 1.0], [1.0, 1.0], 0.5, 1.0, [0.5], [1.0, 0.0])


weights = st.lists(st.floats(0.1, 10.0), min_size=3, max_size=3)


@hypothesis_settings(max_examples=50, deadline=None)
@given(w0=weights, w1=weights, phi=st.lists(st.floats(-5.0, 5.0), min_size=3, max_size=3), p=st.sampled_from([1.0, 2.0, 4.0]))
def test_lp_norms_are_log_convex(discrete_repo, w0, w1, phi, p):
    couple = DiscreteCouple(w0=w0, w1=w1, p0=p, p1=p)
    points = discrete_repo.lp_logconvexity_sweep(couple, np.asarray(phi), [0.1, 0.5, 0.9])
    assert all(pt.holds for pt in points)
