from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import field_validator, model_validator

from app.core.base_model import DomainModel
from app.core.config import get_settings
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.utils.sampling import grid_points


def as_points(x, dim: int) -> Tuple[np.ndarray, bool]:
    """Normalize x to an (N, dim) array; the flag tells whether x was a single point"""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if dim != 1:
            raise ValidationException(_("fields.validation.point_dim", dim=dim))
        return arr.reshape(1, 1), True
    if arr.ndim == 1:
        if dim == 1:
            return arr.reshape(-1, 1), False
        if arr.size != dim:
            raise ValidationException(_("fields.validation.point_dim", dim=dim))
        return arr.reshape(1, dim), True
    if arr.shape[1] != dim:
        raise ValidationException(_("fields.validation.point_dim", dim=dim))
    return arr, False


class Box(DomainModel):
    """Axis-aligned box [lo, hi]"""

    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_bounds(self) -> "Box":
        if len(self.lo) != len(self.hi) or len(self.lo) == 0:
            raise ValidationException(_("boxes.validation.dimension_mismatch"))
        if any(not (a < b) for a, b in zip(self.lo, self.hi)):
            raise ValidationException(_("boxes.validation.empty"), detail={"lo": self.lo, "hi": self.hi})
        return self

    @classmethod
    def cube(cls, half_width: float, dim: int, center: float | Tuple[float, ...] = 0.0) -> "Box":
        c = np.broadcast_to(np.asarray(center, dtype=float), (dim,))
        return cls(lo=tuple(float(v) for v in c - half_width), hi=tuple(float(v) for v in c + half_width))

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def lo_array(self) -> np.ndarray:
        return np.asarray(self.lo, dtype=float)

    @property
    def hi_array(self) -> np.ndarray:
        return np.asarray(self.hi, dtype=float)

    @property
    def widths(self) -> np.ndarray:
        return self.hi_array - self.lo_array

    @property
    def radius(self) -> float:
        """Smallest R with the box inside [-R, R]^d"""
        return float(np.max(np.maximum(np.abs(self.lo_array), np.abs(self.hi_array))))

    def contains(self, pts: np.ndarray) -> np.ndarray:
        return np.all((pts >= self.lo_array) & (pts <= self.hi_array), axis=1)

    def expanded(self, margin: float) -> "Box":
        return Box(lo=tuple(float(v) for v in self.lo_array - margin), hi=tuple(float(v) for v in self.hi_array + margin))


class ScalarField(DomainModel):
    """Vectorized scalar function on R^d.

    `value` maps an (N, d) array to N values; `gradient`, when present, maps it
    to an (N, d) array. Outside `support` both are exactly zero.
    """

    dim: int
    value: Callable[[np.ndarray], np.ndarray]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    support: Optional[Box] = None
    label: str = ""

    @field_validator("dim")
    @classmethod
    def _positive_dim(cls, v: int) -> int:
        if v < 1:
            raise ValidationException(_("fields.validation.dim_positive"))
        return v

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        vals = np.asarray(self.value(pts))
        vals = np.broadcast_to(vals, (pts.shape[0],)) if vals.ndim == 0 else vals
        if self.support is not None:
            vals = np.where(self.support.contains(pts), vals, 0.0)
        return vals

    def evaluate_gradient(self, pts: np.ndarray) -> np.ndarray:
        if self.gradient is not None:
            grads = np.asarray(self.gradient(pts), dtype=float).reshape(pts.shape[0], self.dim)
        else:
            grads = self._finite_difference_gradient(pts)
        if self.support is not None:
            grads = np.where(self.support.contains(pts)[:, None], grads, 0.0)
        return grads

    def _finite_difference_gradient(self, pts: np.ndarray) -> np.ndarray:
        h = get_settings().FD_STEP_SCALE * (1.0 + np.linalg.norm(pts, axis=1))
        grads = np.empty(pts.shape, dtype=float)
        for i in range(self.dim):
            step = np.zeros_like(pts)
            step[:, i] = h
            grads[:, i] = (np.real(self.evaluate(pts + step)) - np.real(self.evaluate(pts - step))) / (2.0 * h)
        return grads

    def __call__(self, x):
        pts, single = as_points(x, self.dim)
        vals = self.evaluate(pts)
        return vals[0] if single else vals

    def grad(self, x):
        pts, single = as_points(x, self.dim)
        grads = self.evaluate_gradient(pts)
        return grads[0] if single else grads


class VectorField(DomainModel):
    """Vectorized map R^d -> R^d"""

    dim: int
    value: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        return np.asarray(self.value(pts), dtype=float).reshape(pts.shape[0], self.dim)

    def __call__(self, x):
        pts, single = as_points(x, self.dim)
        vals = self.evaluate(pts)
        return vals[0] if single else vals


class Weight(DomainModel):
    """Strictly positive weight stored through its logarithm"""

    log_density: ScalarField
    label: str = ""

    @model_validator(mode="after")
    def _check_positive(self) -> "Weight":
        settings = get_settings()
        half = settings.PROBE_HALF_WIDTH
        probe = grid_points([-half] * self.dim, [half] * self.dim, settings.PROBE_POINTS_PER_AXIS)
        logs = self.log_density.evaluate(probe)
        values = np.exp(logs)
        if not np.all(np.isfinite(logs)) or not np.all(values > 0):
            raise ValidationException(_("weights.validation.not_positive", label=self.label))
        return self

    @property
    def dim(self) -> int:
        return self.log_density.dim

    @property
    def has_gradient(self) -> bool:
        return self.log_density.gradient is not None

    def log(self, pts: np.ndarray) -> np.ndarray:
        return self.log_density.evaluate(pts)

    def grad_log(self, pts: np.ndarray) -> np.ndarray:
        return self.log_density.evaluate_gradient(pts)

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        return np.exp(self.log(pts))

    def evaluate_gradient(self, pts: np.ndarray) -> np.ndarray:
        return self.evaluate(pts)[:, None] * self.grad_log(pts)

    @property
    def field(self) -> ScalarField:
        gradient = self.evaluate_gradient if self.has_gradient else None
        return ScalarField(dim=self.dim, value=self.evaluate, gradient=gradient, label=self.label)

    def __call__(self, x):
        pts, single = as_points(x, self.dim)
        vals = self.evaluate(pts)
        return vals[0] if single else vals


class WeightPair(DomainModel):
    """The couple (w0, w1) defining r = w0 / w1"""

    w0: Weight
    w1: Weight

    @model_validator(mode="after")
    def _same_dim(self) -> "WeightPair":
        if self.w0.dim != self.w1.dim:
            raise ValidationException(_("weights.validation.pair_dim_mismatch"))
        return self

    @property
    def dim(self) -> int:
        return self.w0.dim

    @property
    def label(self) -> str:
        return f"({self.w0.label},{self.w1.label})"

    def swapped(self) -> "WeightPair":
        return WeightPair(w0=self.w1, w1=self.w0)
