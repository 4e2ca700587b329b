from typing import Any, Dict, List, Optional, Union

from pydantic import Field, model_validator

from app.core.base_model import RequestSchema
from app.modules.quadrature.schemas.quadrature_schemas import QuadratureOverride

CatalogRef = Union[str, Dict[str, Any]]


class CounterexampleParams(RequestSchema):
    """Parameters of a `counterexample` scenario"""

    alpha: float = Field(gt=0.0)
    beta: float = Field(gt=0.0)
    dim: int = Field(default=1, ge=1)
    p: float = Field(default=1.0, ge=1.0)
    quadrature: Optional[QuadratureOverride] = None


class AppendixOscParams(RequestSchema):
    """Parameters of an `appendix-osc` scenario"""

    p: float = Field(default=1.0, ge=1.0)
    theta: float = Field(default=0.5, gt=0.0, lt=1.0)
    equivalence_half_widths: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0])
    n_samples: int = Field(default=2500, ge=1)
    lipschitz_half_widths: List[float] = Field(default_factory=lambda: [2.0, 4.0, 8.0])
    n_pairs: int = Field(default=4000, ge=1)
    radii: List[float] = Field(default_factory=lambda: [2.0, 4.0, 8.0, 16.0])
    ramp: float = Field(default=1.0, gt=0.0)


class Homog1dParams(RequestSchema):
    """Parameters of a `homog1d` scenario"""

    g: CatalogRef = "bump:radius=1"
    weight: CatalogRef = "one"
    p: float = Field(default=1.0, ge=1.0)
    grid_step: float = Field(default=1e-3, gt=0.0)
    tolerance: float = Field(default=1e-6, gt=0.0)
    refine: bool = True


class ApproxSweepParams(RequestSchema):
    """Parameters of an `approx-sweep` scenario"""

    phi: CatalogRef = "hat:plateau=20,ramp=10"
    weights: List[CatalogRef] = Field(default_factory=lambda: ["one", "gauss:a=1"])
    p: float = Field(default=1.0, ge=1.0)
    dim: int = Field(default=1, ge=1, le=2)
    ns: List[int] = Field(default_factory=lambda: [4, 8, 16, 32])
    smooth_phi: Optional[CatalogRef] = "bump:radius=1"
    mollify_ns: List[int] = Field(default_factory=lambda: [4, 8, 16, 32])
    grid_step: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _positive_ns(self) -> "ApproxSweepParams":
        if not self.ns or any(n < 1 for n in self.ns + self.mollify_ns):
            raise ValueError("every n must be a positive integer")
        return self
