import numpy as np
import pytest

from app.exceptions.exception import NotFoundException, ValidationException
from app.modules.fields import TestFunction as CompactField
from app.modules.weights import Box


def test_bump_value_and_gradient(field_repo):
    bump = field_repo.make_bump(0.0, 1.0, dim=1)
    assert bump(0.0) == pytest.approx(1.0)
    assert bump(1.0) == 0.0
    assert bump(2.0) == 0.0
    assert bump.grad(0.5)[0] == pytest.approx(-1.5)
    assert bump.support.lo == (-1.0,)


def test_bump_in_two_dimensions(field_repo):
    bump = field_repo.make_bump([1.0, -1.0], 2.0, height=3.0)
    assert bump.dim == 2
    assert bump([1.0, -1.0]) == pytest.approx(3.0)
    assert bump([1.0, 1.0]) == 0.0


def test_hat(field_repo):
    hat = field_repo.make_hat(0.0, plateau=1.0, ramp=2.0, dim=1)
    assert hat(0.5) == pytest.approx(1.0)
    assert hat(2.0) == pytest.approx(0.5)
    assert hat(4.0) == 0.0
    assert hat.grad(2.0)[0] == pytest.approx(-0.5)
    assert hat.grad(-2.0)[0] == pytest.approx(0.5)
    assert hat.lipschitz_bound == pytest.approx(0.5)


@pytest.mark.parametrize("x, value, slope", [(2.0, 1.0, 0.0), (6.0, 0.5, -0.25), (9.0, 0.0, 0.0)])
def test_cutoff(field_repo, x, value, slope):
    xi = field_repo.cutoff_xi(4, 1)
    assert xi(x) == pytest.approx(value)
    assert xi.grad(x)[0] == pytest.approx(slope)


def test_cutoff_needs_positive_index(field_repo):
    with pytest.raises(ValidationException):
        field_repo.cutoff_xi(0, 1)


def test_product_rule(field_repo):
    hat = field_repo.make_hat(0.0, plateau=2.0, ramp=10.0, dim=1)
    xi = field_repo.cutoff_xi(3, 1)
    product = field_repo.multiply(hat, xi)
    x = 4.0
    assert product(x) == pytest.approx(hat(x) * xi(x))
    expected = xi(x) * hat.grad(x)[0] + hat(x) * xi.grad(x)[0]
    assert product.grad(x)[0] == pytest.approx(expected)


def test_kinks_are_recorded_in_one_dimension(field_repo):
    hat = field_repo.make_hat(1.0, plateau=2.0, ramp=10.0, dim=1)
    assert hat.breakpoints == pytest.approx((-11.0, -1.0, 3.0, 13.0))
    assert field_repo.cutoff_xi(3, 1).breakpoints == pytest.approx((-6.0, -3.0, 3.0, 6.0))
    assert field_repo.multiply(hat, field_repo.cutoff_xi(3, 1)).breakpoints == pytest.approx((-11.0, -6.0, -3.0, -1.0, 3.0, 6.0, 13.0))
    assert field_repo.make_hat(0.0, plateau=0.0, ramp=1.0, dim=1).breakpoints == pytest.approx((-1.0, 0.0, 1.0))
    assert field_repo.make_hat(0.0, plateau=1.0, ramp=1.0, dim=2).breakpoints == ()
    assert field_repo.make_bump(0.0, 1.0, dim=1).breakpoints == ()


def test_product_dimension_mismatch(field_repo):
    with pytest.raises(ValidationException):
        field_repo.multiply(field_repo.make_bump(0.0, 1.0, dim=1), field_repo.cutoff_xi(2, 2))


def test_mollified_plateau_is_unchanged(field_repo):
    hat = field_repo.make_hat(0.0, plateau=1.0, ramp=1.0, dim=1)
    smooth = field_repo.mollify(hat, 4, 1.0 / 64)
    assert smooth(0.0) == pytest.approx(1.0, abs=1e-9)
    assert smooth(0.3) == pytest.approx(1.0, abs=1e-9)
    assert smooth(3.0) == 0.0


def test_mollified_bump_is_close(field_repo):
    bump = field_repo.make_bump(0.0, 1.0, dim=1)
    smooth = field_repo.mollify(bump, 16, 1.0 / 256)
    x = np.linspace(-1.2, 1.2, 41)
    assert np.max(np.abs(smooth(x) - bump(x))) < 2e-2


@pytest.mark.parametrize("n, step", [(4, 0.5), (0, 0.01), (2, 0.0)])
def test_mollify_rejects_bad_grids(field_repo, n, step):
    with pytest.raises(ValidationException):
        field_repo.mollify(field_repo.make_bump(0.0, 1.0, dim=1), n, step)


def test_mollify_dimension_limit(field_repo):
    with pytest.raises(ValidationException):
        field_repo.mollify(field_repo.make_bump(0.0, 1.0, dim=3), 2, 0.01)


def test_test_function_from_spec(field_repo):
    hat = field_repo.test_function_from_spec("hat:plateau=2,ramp=1", 1)
    assert hat(2.5) == pytest.approx(0.5)
    assert field_repo.test_function_from_spec("cutoff:n=2", 2).dim == 2
    with pytest.raises(NotFoundException):
        field_repo.test_function_from_spec("triangle", 1)
    with pytest.raises(ValidationException):
        field_repo.test_function_from_spec("bump:radius=-1", 1)


def test_negative_lipschitz_bound():
    with pytest.raises(ValidationException):
        CompactField(dim=1, value=lambda x: x[:, 0], support=Box.cube(1.0, 1), lipschitz_bound=-1.0)
