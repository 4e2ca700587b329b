from typing import Any, Dict, List, Optional, Union

from pydantic import Field, field_validator

from app.core.base_enums import NormKind
from app.core.base_model import RequestSchema
from app.modules.quadrature.schemas.quadrature_schemas import QuadratureOverride

CatalogRef = Union[str, Dict[str, Any]]


class NormScenarioParams(RequestSchema):
    """Parameters of a `norm` scenario"""

    norm: NormKind
    dim: int = Field(default=1, ge=1, le=3)
    p: float = Field(default=1.0, ge=1.0)
    theta: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    q: Optional[float] = Field(default=None, ge=1.0)
    phi: Optional[CatalogRef] = None
    weight: Optional[CatalogRef] = None
    w0: Optional[CatalogRef] = None
    w1: Optional[CatalogRef] = None
    quadrature: Optional[QuadratureOverride] = None
    # Mtq only: check M(theta, q) <= M(0, q)^(1-theta) M(1, q)^theta on these thetas
    sweep_thetas: Optional[List[float]] = None

    @field_validator("p", "q")
    @classmethod
    def _finite(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v == float("inf"):
            raise ValueError("p = inf is not supported")
        return v
