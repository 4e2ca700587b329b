import logging
import math
from typing import Any, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.signal import fftconvolve

from app.core.config import Settings, get_settings
from app.exceptions.exception import NotFoundException, ValidationException
from app.middlewares.translation_manager import _
from app.modules.fields.models.field_model import TestFunction
from app.modules.weights.models.weight_model import Box, ScalarField
from app.modules.weights.schemas.weight_schemas import CatalogSpec, parse_catalog_spec

logger = logging.getLogger(__name__)

Center = Union[float, Sequence[float]]


def _center_array(center: Center, dim: Optional[int]) -> np.ndarray:
    c = np.atleast_1d(np.asarray(center, dtype=float))
    if dim is not None and c.size == 1 and dim > 1:
        c = np.full(dim, float(c[0]))
    if dim is not None and c.size != dim:
        raise ValidationException(_("fields.validation.point_dim", dim=dim))
    return c


def _radial(x: np.ndarray, c: np.ndarray):
    diff = x - c
    r = np.linalg.norm(diff, axis=1)
    safe = np.where(r > 0, r, 1.0)
    unit = np.where((r > 0)[:, None], diff / safe[:, None], 0.0)
    return r, unit


def _radial_breakpoints(c: np.ndarray, radii: Sequence[float]) -> Tuple[float, ...]:
    """Points at distance `radii` from c on the line; empty above one dimension"""
    if c.size != 1:
        return ()
    return tuple(sorted({float(c[0]) + s * r for r in radii for s in (-1.0, 1.0)}))


def _standard_kernel(z2: np.ndarray) -> np.ndarray:
    """exp(-1/(1-|z|^2)) on the open unit ball"""
    inside = z2 < 1.0
    out = np.zeros_like(z2)
    out[inside] = np.exp(-1.0 / (1.0 - z2[inside]))
    return out


class FieldRepo:
    """Repository layer for test functions, cutoffs and mollification"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def make_bump(self, center: Center, radius: float, height: float = 1.0, dim: Optional[int] = None) -> TestFunction:
        """height * (1 - |x-c|^2/radius^2)^2 inside the ball, 0 outside"""
        if not radius > 0:
            raise ValidationException(_("fields.validation.radius_positive"))
        c = _center_array(center, dim)
        rho2 = radius * radius

        def value(x):
            s = np.sum((x - c) ** 2, axis=1) / rho2
            return np.where(s < 1.0, height * (1.0 - s) ** 2, 0.0)

        def gradient(x):
            s = np.sum((x - c) ** 2, axis=1) / rho2
            factor = np.where(s < 1.0, -4.0 * height * (1.0 - s) / rho2, 0.0)
            return factor[:, None] * (x - c)

        return TestFunction(
            dim=c.size,
            value=value,
            gradient=gradient,
            support=Box(lo=tuple(c - radius), hi=tuple(c + radius)),
            lipschitz_bound=8.0 * abs(height) / (3.0 * math.sqrt(3.0) * radius),
            label=f"bump(r={radius:g},h={height:g})",
        )

    def make_hat(self, center: Center, plateau: float, ramp: float, height: float = 1.0, dim: Optional[int] = None) -> TestFunction:
        """Radial plateau of value `height` up to `plateau`, linear to 0 over `ramp`"""
        if plateau < 0 or not ramp > 0:
            raise ValidationException(_("fields.validation.hat_params"))
        c = _center_array(center, dim)
        outer = plateau + ramp

        def value(x):
            r = np.linalg.norm(x - c, axis=1)
            return height * np.clip((outer - r) / ramp, 0.0, 1.0)

        def gradient(x):
            r, unit = _radial(x, c)
            on_ramp = (r > plateau) & (r < outer)
            return np.where(on_ramp[:, None], -(height / ramp) * unit, 0.0)

        return TestFunction(
            dim=c.size,
            value=value,
            gradient=gradient,
            support=Box(lo=tuple(c - outer), hi=tuple(c + outer)),
            lipschitz_bound=abs(height) / ramp,
            breakpoints=_radial_breakpoints(c, (plateau, outer)),
            label=f"hat(R={plateau:g},ramp={ramp:g},h={height:g})",
        )

    def cutoff_xi(self, n: int, d: int) -> TestFunction:
        """1 on |x|<n, 2-|x|/n on n<|x|<2n, 0 beyond"""
        if n < 1:
            raise ValidationException(_("fields.validation.cutoff_n"))
        origin = np.zeros(d)

        def value(x):
            r = np.linalg.norm(x, axis=1)
            return np.clip(2.0 - r / n, 0.0, 1.0)

        def gradient(x):
            r, unit = _radial(x, origin)
            annulus = (r > n) & (r < 2 * n)
            return np.where(annulus[:, None], -unit / n, 0.0)

        return TestFunction(
            dim=d,
            value=value,
            gradient=gradient,
            support=Box.cube(2.0 * n, d),
            lipschitz_bound=1.0 / n,
            breakpoints=_radial_breakpoints(origin, (n, 2.0 * n)),
            label=f"xi_{n}",
        )

    def multiply(self, phi: TestFunction, xi: ScalarField) -> TestFunction:
        """Pointwise product with gradient xi*grad(phi) + phi*grad(xi)"""
        if xi.dim != phi.dim:
            raise ValidationException(_("fields.validation.dim_mismatch"))

        def value(x):
            return phi.evaluate(x) * xi.evaluate(x)

        def gradient(x):
            return xi.evaluate(x)[:, None] * phi.evaluate_gradient(x) + phi.evaluate(x)[:, None] * xi.evaluate_gradient(x)

        kinks = tuple(sorted(set(phi.breakpoints) | set(getattr(xi, "breakpoints", ()))))
        return TestFunction(dim=phi.dim, value=value, gradient=gradient, support=phi.support, breakpoints=kinks, label=f"{phi.label}*{xi.label}")

    def mollify(self, phi: TestFunction, n: int, grid_step: float) -> TestFunction:
        """Grid convolution of phi with the rescaled standard kernel eta_n"""
        d = phi.dim
        if d > 2:
            raise ValidationException(_("fields.validation.mollify_dim"))
        if n < 1 or not grid_step > 0:
            raise ValidationException(_("fields.validation.mollify_params"))
        if grid_step > 1.0 / (4 * n):
            raise ValidationException(_("fields.validation.grid_too_coarse", step=grid_step, limit=1.0 / (4 * n)))

        h = grid_step
        box = phi.support.expanded(1.0 / n + h)
        counts = [int(math.ceil(w / h)) + 1 for w in box.widths]
        axes = [lo + h * np.arange(m) for lo, m in zip(box.lo, counts)]
        mesh = np.meshgrid(*axes, indexing="ij")
        nodes = np.stack([m.ravel() for m in mesh], axis=1)
        samples = phi.evaluate(nodes).reshape(mesh[0].shape)

        # Kernel on the offsets k*h with |k*h| <= 1/n; odd length keeps mode="same" centred.
        k = int(math.floor(1.0 / (n * h)))
        offsets = h * np.arange(-k, k + 1)
        kmesh = np.meshgrid(*([offsets] * d), indexing="ij")
        z = [n * m for m in kmesh]
        z2 = sum(c * c for c in z)
        eta = _standard_kernel(z2)
        scale = n**d / (np.sum(n**d * eta) * h**d)
        kernel = scale * eta
        with np.errstate(divide="ignore", invalid="ignore"):
            dfactor = np.where(z2 < 1.0, -2.0 / (1.0 - z2) ** 2, 0.0)
        grad_kernels = [kernel * dfactor * z[i] * n for i in range(d)]

        smoothed = fftconvolve(samples, kernel, mode="same") * h**d
        smoothed_grads = [fftconvolve(samples, gk, mode="same") * h**d for gk in grad_kernels]

        value_interp = RegularGridInterpolator(axes, smoothed, method="linear", bounds_error=False, fill_value=0.0)
        grad_interps = [RegularGridInterpolator(axes, g, method="linear", bounds_error=False, fill_value=0.0) for g in smoothed_grads]
        logger.debug(f"Mollified {phi.label} with n={n} on a {'x'.join(map(str, counts))} grid")

        return TestFunction(
            dim=d,
            value=lambda x: value_interp(x),
            gradient=lambda x: np.stack([gi(x) for gi in grad_interps], axis=1),
            support=box,
            lipschitz_bound=phi.lipschitz_bound,
            label=f"{phi.label}*eta_{n}",
        )

    def test_function_from_spec(self, spec: Union[str, Mapping[str, Any], CatalogSpec], dim: int) -> TestFunction:
        """Build "bump:center=0,radius=1,height=1", "hat:plateau=4,ramp=1" or "cutoff:n=4" """
        parsed = parse_catalog_spec(spec)
        params = dict(parsed.params)
        params.pop("_positional", None)
        try:
            if parsed.name == "bump":
                return self.make_bump(params.get("center", 0.0), float(params.get("radius", 1.0)), float(params.get("height", 1.0)), dim)
            if parsed.name == "hat":
                return self.make_hat(
                    params.get("center", 0.0),
                    float(params.get("plateau", 0.0)),
                    float(params.get("ramp", 1.0)),
                    float(params.get("height", 1.0)),
                    dim,
                )
            if parsed.name == "cutoff":
                return self.cutoff_xi(int(params.get("n", 1)), dim)
        except (TypeError, ValueError):
            raise ValidationException(_("fields.validation.bad_params", name=parsed.name))
        raise NotFoundException(_("fields.validation.unknown_name", name=parsed.name))
