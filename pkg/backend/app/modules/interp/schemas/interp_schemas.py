from typing import Any, Dict, List, Optional, Union

from pydantic import Field, field_validator

from app.core.base_model import RequestSchema
from app.modules.quadrature.schemas.quadrature_schemas import QuadratureOverride

CatalogRef = Union[str, Dict[str, Any]]


class VerifyMainParams(RequestSchema):
    """Parameters of a `verify-main` scenario"""

    w0: CatalogRef
    w1: CatalogRef
    phi: CatalogRef = "bump:radius=1"
    p: float = Field(default=1.0, ge=1.0)
    theta: float = Field(default=0.5, gt=0.0, lt=1.0)
    dim: int = Field(default=1, ge=1, le=3)
    q: Optional[float] = Field(default=None, ge=1.0)
    logconvexity: bool = True
    boundary_ts: List[float] = Field(default_factory=lambda: [0.0, 0.5, 1.0, 2.0, 4.0])
    quadrature: Optional[QuadratureOverride] = None


class CpParams(RequestSchema):
    """Parameters of a `cp` scenario"""

    ps: List[float] = Field(default_factory=lambda: [1.0])
    grid_step: float = Field(default=1e-5, gt=0.0)
    grid_tolerance: float = Field(default=3e-5, gt=0.0)

    @field_validator("ps")
    @classmethod
    def _exponents(cls, v: List[float]) -> List[float]:
        if not v or any(not (1.0 <= p < float("inf")) for p in v):
            raise ValueError("every p must lie in [1, inf)")
        return v
