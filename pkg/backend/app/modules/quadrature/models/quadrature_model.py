import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.core.base_enums import IntegralStatus
from app.core.base_model import DomainModel, Quantity
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.weights.models.weight_model import Box


class QuadratureSpec(BaseModel):
    """Truncation radii and rule sizes for integration over R^d"""

    model_config = ConfigDict(frozen=True)

    radii: Tuple[float, ...]
    points_per_axis: int
    rel_tol: float
    growth_threshold: float
    decay_slope_tol: float = 0.02
    compact_panel_width: float = 1.0
    radial_panel_points: int = 16

    @field_validator("radii")
    @classmethod
    def _increasing(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(v) < 2 or v[0] <= 0 or any(b <= a for a, b in zip(v, v[1:])):
            raise ValidationException(_("quadrature.validation.radii"))
        return v

    @model_validator(mode="after")
    def _check_ranges(self) -> "QuadratureSpec":
        if not (0.0 < self.rel_tol <= 1e-2):
            raise ValidationException(_("quadrature.validation.rel_tol"))
        if not self.growth_threshold > 1.0:
            raise ValidationException(_("quadrature.validation.growth"))
        if self.points_per_axis < 2 or self.radial_panel_points < 2:
            raise ValidationException(_("quadrature.validation.points"))
        if not self.compact_panel_width > 0:
            raise ValidationException(_("quadrature.validation.panel_width"))
        return self


class IntegralResult(BaseModel):
    """Value, error estimate, status and the partial-value trace"""

    model_config = ConfigDict(frozen=True)

    value: float
    error_estimate: float
    status: IntegralStatus
    trace: List[Tuple[float, float]]
    extrapolated: bool = False
    tail_slope: Optional[float] = None

    @property
    def converged(self) -> bool:
        return self.status == IntegralStatus.CONVERGED

    @property
    def divergent(self) -> bool:
        return self.status == IntegralStatus.DIVERGENT

    def to_quantity(self, with_trace: bool = True) -> Quantity:
        value = self.value if self.status != IntegralStatus.DIVERGENT else math.inf
        return Quantity(
            value=value,
            status=self.status,
            error_estimate=self.error_estimate,
            trace=[[r, v] for r, v in self.trace] if with_trace else [],
        )


class QuadratureRule(DomainModel):
    """Fixed nodes (N, d) and positive weights (N,) on a box"""

    nodes: np.ndarray
    weights: np.ndarray
    box: Box

    @property
    def size(self) -> int:
        return int(self.weights.size)

    def integrate(self, values: np.ndarray) -> float:
        # fixed summation order over nodes
        return float(np.dot(self.weights, values))
