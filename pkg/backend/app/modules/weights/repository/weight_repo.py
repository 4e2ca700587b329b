import logging
import math
from typing import Any, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from app.core.config import Settings, get_settings
from app.exceptions.exception import NotFoundException, ValidationException
from app.middlewares.translation_manager import _
from app.modules.weights.dal.catalog_dal import CATALOG
from app.modules.weights.models.weight_model import Box, ScalarField, VectorField, Weight, WeightPair
from app.modules.weights.schemas.weight_schemas import CatalogSpec, parse_catalog_spec
from app.utils.sampling import box_vertices_and_center, halton_points, seed_from_label

logger = logging.getLogger(__name__)

Params = Union[Sequence[float], Mapping[str, Any], None]

# Offsets of the Lipschitz pairs, as fractions of the box diameter.
_LIPSCHITZ_LADDER = np.logspace(-6.0, -0.3, 12)


class SampledRange(NamedTuple):
    low: float
    high: float

    @property
    def satisfied(self) -> bool:
        """Compact boundedness on the sampled box: 0 < m and M < inf"""
        return self.low > 0 and math.isfinite(self.high)


class WeightRepo:
    """Repository layer for weight construction and sampling checks"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def _resolve_params(self, name: str, params: Params) -> list[float]:
        entry = CATALOG[name]
        if params is None:
            values: list[Any] = []
        elif isinstance(params, Mapping):
            positional = list(params.get("_positional", []))
            values = []
            for i, key in enumerate(entry.params):
                if key in params:
                    values.append(params[key])
                elif i < len(positional):
                    values.append(positional[i])
                else:
                    raise ValidationException(_("weights.validation.missing_param", name=name, param=key))
            unknown = set(params) - set(entry.params) - {"_positional"}
            if unknown:
                raise ValidationException(_("weights.validation.unknown_param", name=name, param=sorted(unknown)[0]))
        else:
            values = list(params)
        if len(values) != len(entry.params):
            raise ValidationException(_("weights.validation.param_count", name=name, count=len(entry.params)))
        try:
            resolved = [float(v) for v in values]
        except (TypeError, ValueError):
            raise ValidationException(_("weights.validation.param_not_number", name=name))
        if not all(math.isfinite(v) for v in resolved):
            raise ValidationException(_("weights.validation.param_not_number", name=name))
        return resolved

    def _validate_catalog_params(self, name: str, values: list[float], dim: int) -> None:
        entry = CATALOG[name]
        if entry.dims is not None and dim not in entry.dims:
            raise ValidationException(_("weights.validation.dim_not_supported", name=name, dim=dim))
        if name == "poly" and values[0] <= 0:
            raise ValidationException(_("weights.validation.poly_alpha"))
        if name == "oscillatory" and (values[0] <= 0 or values[1] <= 0):
            raise ValidationException(_("weights.validation.oscillatory_params"))

    def make_catalog_weight(self, name: str, params: Params = None, dim: int = 1) -> Weight:
        """Build a catalog weight from its name and parameters"""
        if name not in CATALOG:
            raise NotFoundException(_("weights.validation.unknown_name", name=name))
        if dim < 1:
            raise ValidationException(_("fields.validation.dim_positive"))
        values = self._resolve_params(name, params)
        self._validate_catalog_params(name, values, dim)
        log_value, grad_log = CATALOG[name].builder(*values)
        label = name if not values else f"{name}({','.join(f'{v:g}' for v in values)})"
        return Weight(log_density=ScalarField(dim=dim, value=log_value, gradient=grad_log, label=f"log {label}"), label=label)

    def weight_from_spec(self, spec: Union[str, Mapping[str, Any], CatalogSpec], dim: int) -> Weight:
        parsed = parse_catalog_spec(spec)
        return self.make_catalog_weight(parsed.name, parsed.params, dim)

    def pair_from_specs(self, w0: Any, w1: Any, dim: int) -> WeightPair:
        return WeightPair(w0=self.weight_from_spec(w0, dim), w1=self.weight_from_spec(w1, dim))

    @staticmethod
    def _check_theta(theta: float) -> None:
        if not (0.0 < theta < 1.0):
            raise ValidationException(_("interp.validation.theta_open", theta=theta))

    @staticmethod
    def _combine(weights: Sequence[Weight], coefficients: Sequence[float], shift: float, label: str) -> Weight:
        """exp(shift + sum c_k log w_k); the gradient exists when every factor has one"""
        dim = weights[0].dim
        if any(w.dim != dim for w in weights):
            raise ValidationException(_("weights.validation.pair_dim_mismatch"))

        def log_value(x):
            total = np.full(x.shape[0], shift, dtype=float)
            for w, c in zip(weights, coefficients):
                if c != 0.0:
                    total = total + c * w.log(x)
            return total

        gradient = None
        if all(w.has_gradient for w in weights):

            def gradient(x):
                total = np.zeros_like(x, dtype=float)
                for w, c in zip(weights, coefficients):
                    if c != 0.0:
                        total = total + c * w.grad_log(x)
                return total

        return Weight(log_density=ScalarField(dim=dim, value=log_value, gradient=gradient, label=f"log {label}"), label=label)

    def omega_theta(self, pair: WeightPair, theta: float) -> Weight:
        """Intermediate weight w0^(1-theta) * w1^theta"""
        self._check_theta(theta)
        return self._combine([pair.w0, pair.w1], [1.0 - theta, theta], 0.0, f"{pair.w0.label}^{1 - theta:g}*{pair.w1.label}^{theta:g}")

    def omega_endpoint_or_theta(self, pair: WeightPair, theta: float) -> Weight:
        """omega_theta extended to theta in [0, 1]"""
        if theta == 0.0:
            return pair.w0
        if theta == 1.0:
            return pair.w1
        return self.omega_theta(pair, theta)

    def weight_power(self, w: Weight, s: float) -> Weight:
        return self._combine([w], [s], 0.0, f"{w.label}^{s:g}")

    def weight_product(self, w: Weight, v: Weight) -> Weight:
        return self._combine([w, v], [1.0, 1.0], 0.0, f"{w.label}*{v.label}")

    def weight_quotient(self, w: Weight, v: Weight) -> Weight:
        return self._combine([w, v], [1.0, -1.0], 0.0, f"{w.label}/{v.label}")

    def weight_scale(self, w: Weight, c: float) -> Weight:
        if not c > 0:
            raise ValidationException(_("weights.validation.scale_positive"))
        return self._combine([w], [1.0], math.log(c), f"{c:g}*{w.label}")

    def log_ratio(self, pair: WeightPair) -> ScalarField:
        """log r = log w0 - log w1"""
        w0, w1 = pair.w0, pair.w1
        gradient = None
        if w0.has_gradient and w1.has_gradient:

            def gradient(x):
                return w0.grad_log(x) - w1.grad_log(x)

        return ScalarField(dim=pair.dim, value=lambda x: w0.log(x) - w1.log(x), gradient=gradient, label=f"log r{pair.label}")

    def log_ratio_grad(self, pair: WeightPair) -> VectorField:
        """x -> grad w0/w0 - grad w1/w1 (finite differences where no formula exists)"""
        log_r = self.log_ratio(pair)
        return VectorField(dim=pair.dim, value=log_r.evaluate_gradient, label=f"grad log r{pair.label}")

    def _sample_points(self, K: Box, n_samples: int, seed: Optional[int], tag: str) -> np.ndarray:
        if n_samples < 1:
            raise ValidationException(_("weights.validation.samples_positive"))
        if seed is None:
            seed = seed_from_label(f"{tag}:{K.lo}:{K.hi}", self.settings.DEFAULT_SEED)
        return np.vstack([halton_points(K.lo, K.hi, n_samples, seed), box_vertices_and_center(K.lo, K.hi)])

    def check_compact_boundedness(self, w: Weight, K: Box, n_samples: int, seed: Optional[int] = None) -> SampledRange:
        """Sampled (min, max) of w over K"""
        if K.dim != w.dim:
            raise ValidationException(_("weights.validation.box_dim_mismatch"))
        values = w.evaluate(self._sample_points(K, n_samples, seed, f"cbc:{w.label}"))
        result = SampledRange(float(np.min(values)), float(np.max(values)))
        logger.debug(f"Compact boundedness of {w.label} on {K.lo}..{K.hi}: m={result.low:.6g}, M={result.high:.6g}")
        return result

    def check_equivalence(self, w: Weight, rho: Weight, K: Box, n_samples: int, seed: Optional[int] = None) -> SampledRange:
        """Sampled (min, max) of w / rho over K"""
        if w.dim != rho.dim or K.dim != w.dim:
            raise ValidationException(_("weights.validation.box_dim_mismatch"))
        pts = self._sample_points(K, n_samples, seed, f"equiv:{w.label}:{rho.label}")
        ratio = np.exp(w.log(pts) - rho.log(pts))
        return SampledRange(float(np.min(ratio)), float(np.max(ratio)))

    def estimate_lipschitz(self, f: ScalarField, K: Box, n_pairs: int, seed: Optional[int] = None) -> float:
        """Lower estimate of the Lipschitz constant of f on K from sampled pairs (x, x + delta*u)"""
        if K.dim != f.dim:
            raise ValidationException(_("weights.validation.box_dim_mismatch"))
        if n_pairs < 1:
            raise ValidationException(_("weights.validation.samples_positive"))
        if seed is None:
            seed = seed_from_label(f"lip:{f.label}:{K.lo}:{K.hi}", self.settings.DEFAULT_SEED)
        x = halton_points(K.lo, K.hi, n_pairs, seed)
        rng = np.random.default_rng(seed)
        u = rng.standard_normal(x.shape)
        u /= np.maximum(np.linalg.norm(u, axis=1), 1e-300)[:, None]
        diameter = float(np.linalg.norm(K.widths))
        delta = diameter * np.resize(_LIPSCHITZ_LADDER, n_pairs)
        y = np.clip(x + delta[:, None] * u, K.lo_array, K.hi_array)
        dist = np.linalg.norm(x - y, axis=1)
        keep = dist > 0
        if not np.any(keep):
            return 0.0
        diffs = np.abs(f.evaluate(x[keep]) - f.evaluate(y[keep]))
        return float(np.max(diffs / dist[keep]))
