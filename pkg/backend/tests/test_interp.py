import math

import pytest

from app.exceptions.exception import ValidationException
from app.modules.interp import FamilyParams, cp_objective, sandwich_catalog
from app.utils.golden_section import golden_section_maximize, golden_section_minimize


@pytest.fixture
def one_gauss(weight_repo):
    return weight_repo.pair_from_specs("one", "gauss:a=1", 1)


def test_cp_objective_closed_form():
    assert cp_objective(1.0, 1.0) == pytest.approx(2.0 * math.e * math.sqrt(math.e / 2.0))
    # e^beta / (p sqrt(2 beta e)) < 1 for large p
    assert cp_objective(0.5, 100.0) == pytest.approx(2.0 * math.exp(0.5))


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 4.0, 10.0])
def test_cp_matches_grid_oracle(interp_repo, p):
    result = interp_repo.cp_minimizer(p)
    oracle = interp_repo.cp_grid_oracle(p, 1e-5)
    assert result.value <= oracle.value + 1e-10
    assert oracle.value - result.value <= 3e-5
    assert result.value > 2.0


def test_cp_is_non_increasing(interp_repo):
    values = [interp_repo.cp_constant(p) for p in (1.0, 2.0, 4.0, 8.0)]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_golden_section_on_parabola():
    result = golden_section_minimize(lambda x: (x - 0.3) ** 2, -1.0, 2.0, tol=1e-10)
    assert result.converged
    assert result.argmin == pytest.approx(0.3, abs=1e-8)
    assert golden_section_maximize(lambda x: -((x - 0.3) ** 2) + 1.0, -1.0, 2.0).minimum == pytest.approx(1.0)


def test_golden_section_monotone_returns_endpoint():
    result = golden_section_minimize(lambda x: x, 1.0, 3.0)
    assert result.argmin == 1.0


@pytest.mark.parametrize("beta, theta, p", [(0.0, 0.5, 1.0), (1.0, 0.0, 1.0), (1.0, 0.5, 0.5), (math.inf, 0.5, 1.0)])
def test_family_params_validation(beta, theta, p):
    with pytest.raises(ValidationException):
        FamilyParams(beta=beta, theta=theta, p=p)


def test_family_passes_through_phi(interp_repo, bump_1d, one_gauss):
    params = FamilyParams(beta=0.7, theta=0.4, p=2.0)
    assert interp_repo.family_eval(bump_1d, one_gauss, params, 0.3, complex(0.4, 0.0)) == pytest.approx(bump_1d(0.3))


def test_family_outside_strip(interp_repo, bump_1d, one_gauss):
    with pytest.raises(ValidationException):
        interp_repo.family_eval(bump_1d, one_gauss, FamilyParams(beta=1.0, theta=0.5, p=1.0), 0.0, complex(1.5, 0.0))


def test_family_norm_bounds_interpolation_norm(interp_repo, norm_repo, weight_repo, bump_1d, one_gauss):
    upper = interp_repo.interp_upper_bound(bump_1d, one_gauss, 0.5, 1.0)
    omega = weight_repo.omega_theta(one_gauss, 0.5)
    lower = norm_repo.w1p_norm(bump_1d, omega, 1.0)
    assert lower.value <= upper.value * (1.0 + 1e-8)
    assert upper.argmin_beta > 0


@pytest.mark.parametrize("p, theta", [(1.0, 0.5), (2.0, 0.25)])
def test_sandwich_holds(interp_repo, bump_1d, one_gauss, p, theta):
    report = interp_repo.sandwich_check(bump_1d, one_gauss, theta, p, seed=5)
    assert report.verdict_left
    assert report.verdict_right
    assert report.lower <= report.family_upper * (1.0 + 1e-8) <= report.cp * report.wcal * (1.0 + 1e-7)


def test_logconvexity_sweep(interp_repo, bump_1d, one_gauss):
    points = interp_repo.logconvexity_sweep(bump_1d, one_gauss, 1.0, thetas=[0.2, 0.5, 0.8])
    assert [pt.theta for pt in points] == [0.2, 0.5, 0.8]
    assert all(pt.holds for pt in points)


def test_smaller_space_needs_q_above_p(interp_repo, bump_1d, one_gauss):
    with pytest.raises(ValidationException):
        interp_repo.smaller_space_check(bump_1d, one_gauss, 0.5, 2.0, 1.0)


@pytest.mark.parametrize("theta", [0.3, 0.5])
def test_family_norm_is_symmetric_under_swapping_the_pair(interp_repo, weight_repo, bump_1d, theta):
    pair = weight_repo.pair_from_specs("one", "gauss:a=1", 1)
    swapped = weight_repo.pair_from_specs("gauss:a=1", "one", 1)
    value = interp_repo.family_fnorm(bump_1d, pair, FamilyParams(beta=0.6, theta=theta, p=1.5))
    mirrored = interp_repo.family_fnorm(bump_1d, swapped, FamilyParams(beta=0.6, theta=1.0 - theta, p=1.5))
    assert mirrored == pytest.approx(value, rel=1e-8)


def test_boundary_norm_decays_in_t(interp_repo, bump_1d, one_gauss):
    samples = interp_repo.sample_family(bump_1d, one_gauss)
    params = FamilyParams(beta=1.0, theta=0.5, p=1.0)
    for j in (0, 1):
        norms = [interp_repo.boundary_norm(samples, params, j, t) for t in (2.0, 4.0, 8.0)]
        assert norms[0] > norms[1] > norms[2]
        assert norms[2] < 1e-20 * interp_repo.boundary_norm(samples, params, j, 0.0)
        assert interp_repo.boundary_norm(samples, params, j, -3.0) == pytest.approx(interp_repo.boundary_norm(samples, params, j, 3.0), rel=1e-12)
        sup = interp_repo.boundary_sup(samples, params, j)
        assert abs(sup.t) <= sup.horizon
        assert sup.value >= interp_repo.boundary_norm(samples, params, j, 0.0) * (1.0 - 1e-12)


@pytest.mark.parametrize("p", [1.0, 2.0])
def test_family_at_cp_beta_is_bounded_by_cp_wcal(interp_repo, norm_repo, bump_1d, one_gauss, p):
    spec = interp_repo.quadrature.default_spec(1)
    cp = interp_repo.cp_minimizer(p)
    value = interp_repo.family_fnorm(bump_1d, one_gauss, FamilyParams(beta=cp.beta, theta=0.5, p=p), spec)
    wcal = norm_repo.wcal_norm(bump_1d, one_gauss, 0.5, p, spec)
    assert value <= cp.value * wcal.value * (1.0 + 1e-9)


def test_equal_weights_reduce_to_the_sobolev_norm(interp_repo, norm_repo, weight_repo, bump_1d):
    pair = weight_repo.pair_from_specs("one", "one", 1)
    upper = interp_repo.interp_upper_bound(bump_1d, pair, 0.5, 1.0)
    w1p = norm_repo.w1p_norm(bump_1d, weight_repo.make_catalog_weight("one"), 1.0)
    assert upper.value >= w1p.value * (1.0 - 1e-10)
    assert upper.value == pytest.approx(w1p.value, rel=1e-3)


def test_sandwich_catalog_shape():
    cases = sandwich_catalog()
    assert len(cases) == 20
    assert {(c.w0, c.w1) for c in cases} == {
        ("one", "exp_lin:a=2"),
        ("one", "gauss:a=1"),
        ("one", "appendix_osc"),
        ("poly:alpha=1", "poly:alpha=3"),
    }
    assert {c.dim for c in cases} == {1, 2}
