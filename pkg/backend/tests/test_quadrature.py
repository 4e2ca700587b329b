import math

import numpy as np
import pytest

from app.core.base_enums import IntegralStatus
from app.exceptions.exception import QuadratureException, ValidationException
from app.modules.quadrature import QuadratureOverride, QuadratureSpec, check_finite
from app.modules.quadrature.dal.rule_dal import gauss_legendre, oscillation_breakpoints, shell_boxes
from app.modules.weights import Box


@pytest.mark.parametrize("n", [2, 8, 64])
def test_gauss_legendre_integrates_cubics(n):
    nodes, weights = gauss_legendre(n)
    assert np.dot(weights, nodes**2 + nodes**3) == pytest.approx(2.0 / 3.0)


@pytest.mark.parametrize("dim, count", [(1, 2), (2, 8), (3, 26)])
def test_shell_boxes_tile_the_annulus(dim, count):
    boxes = shell_boxes(1.0, 2.0, dim)
    assert len(boxes) == count
    volume = sum(float(np.prod(hi - lo)) for lo, hi in boxes)
    assert volume == pytest.approx(4.0**dim - 2.0**dim)


def test_oscillation_breakpoints():
    points = oscillation_breakpoints(1.0, 10.0)
    assert points[0] == 1.0 and points[-1] == 10.0
    assert np.allclose(points[1:-1], (np.arange(3) + 0.5) * math.pi)


def test_compact_integral(quadrature_repo):
    result = quadrature_repo.integrate(lambda x: x[:, 0] ** 2, 1, support=Box(lo=(0.0,), hi=(1.0,)))
    assert result.status == IntegralStatus.CONVERGED
    assert result.value == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert result.error_estimate < 1e-12


@pytest.mark.parametrize("dim", [1, 2])
def test_gaussian_over_whole_space(quadrature_repo, dim):
    result = quadrature_repo.integrate(lambda x: np.exp(-np.sum(x * x, axis=1)), dim)
    assert result.status == IntegralStatus.CONVERGED
    assert result.value == pytest.approx(math.pi ** (dim / 2.0), rel=1e-9)
    assert result.trace[0][0] == 1.0


def test_mass_beyond_the_first_shells_is_found(quadrature_repo):
    def far(x):
        r = np.abs(x[:, 0])
        return np.where(r > 4.0, np.exp(-(r - 4.0)), 0.0)

    result = quadrature_repo.integrate(far, 1)
    assert result.status == IntegralStatus.CONVERGED
    assert result.value == pytest.approx(2.0, rel=1e-9)
    assert [v for _r, v in result.trace[:3]] == [0.0, 0.0, 0.0]


def test_zero_integrand_converges_to_zero(quadrature_repo):
    result = quadrature_repo.integrate(lambda x: np.zeros(len(x)), 2)
    assert result.status == IntegralStatus.CONVERGED
    assert result.value == 0.0
    assert result.error_estimate == 0.0


def test_slowly_decaying_integrand_is_divergent(quadrature_repo):
    result = quadrature_repo.integrate(lambda x: (1.0 + x[:, 0] ** 2) ** -0.25, 1)
    assert result.status == IntegralStatus.DIVERGENT
    assert result.to_quantity().value is not None
    assert result.to_quantity().model_dump(mode="json")["value"] is None


def test_power_tail_is_extrapolated(quadrature_repo):
    result = quadrature_repo.integrate_radial_1d(lambda r: r**-2.0)
    assert result.status == IntegralStatus.CONVERGED
    assert result.extrapolated
    assert result.tail_slope == pytest.approx(-1.0, abs=1e-6)
    assert result.value == pytest.approx(1.0, rel=1e-8)


def test_log_growth_is_divergent(quadrature_repo):
    result = quadrature_repo.integrate_radial_1d(lambda r: np.abs(np.cos(r)) / r)
    assert result.status == IntegralStatus.DIVERGENT


def test_non_finite_integrand_names_the_node(quadrature_repo):
    with pytest.raises(QuadratureException) as excinfo:
        quadrature_repo.integrate(lambda x: np.where(x[:, 0] < 0.0, np.nan, 1.0), 1, support=Box(lo=(-1.0,), hi=(1.0,)))
    assert len(excinfo.value.node) == 1 and excinfo.value.node[0] < 0.0
    assert excinfo.value.exit_code == 3


def test_check_finite_passes_finite_values():
    values = check_finite(np.array([1.0, 2.0]), np.array([[0.0], [1.0]]))
    assert values.tolist() == [1.0, 2.0]


def test_spec_overrides(quadrature_repo, settings):
    spec = quadrature_repo.spec_for(2, QuadratureOverride(points_per_axis=8, max_radius_exponent=4))
    assert spec.points_per_axis == 8
    assert spec.radii == (1.0, 2.0, 4.0, 8.0, 16.0)
    assert spec.rel_tol == settings.QUAD_REL_TOL
    assert quadrature_repo.with_rel_tol(spec, 1e-4).rel_tol == 1e-4


@pytest.mark.parametrize(
    "update",
    [{"radii": (1.0,)}, {"radii": (2.0, 1.0)}, {"rel_tol": 0.5}, {"growth_threshold": 1.0}, {"points_per_axis": 1}],
)
def test_spec_validation(update):
    base = {"radii": (1.0, 2.0), "points_per_axis": 8, "rel_tol": 1e-6, "growth_threshold": 1.5}
    with pytest.raises(ValidationException):
        QuadratureSpec(**{**base, **update})


def test_coarse_rule_halves_points(quadrature_repo):
    box = Box(lo=(0.0,), hi=(2.0,))
    fine = quadrature_repo.compact_rule(box)
    coarse = quadrature_repo.compact_rule(box, coarse=True)
    assert fine.size == 2 * coarse.size
    assert fine.integrate(np.ones(fine.size)) == pytest.approx(2.0)
