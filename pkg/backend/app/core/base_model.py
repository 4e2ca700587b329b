import math
from typing import Dict, Generic, List, Optional, TypeVar

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from app.core.base_enums import IntegralStatus


# Base for in-memory domain objects (fields, weights, rules)
class DomainModel(BaseModel):
    """Immutable domain object; may hold callables and arrays"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# Request Schema Base Classes
class RequestSchema(BaseModel):
    """Base class for config schemas"""

    model_config = ConfigDict(extra="forbid")


# Response Schema Base Classes
class ResponseSchema(BaseModel):
    """Base class for report schemas"""

    model_config = ConfigDict(from_attributes=True)


class Quantity(ResponseSchema):
    """A reported number together with its quadrature status"""

    value: Optional[float]
    status: IntegralStatus = IntegralStatus.CONVERGED
    error_estimate: Optional[float] = None
    trace: List[List[float]] = Field(default_factory=list)

    @field_serializer("value", "error_estimate")
    def _finite_or_null(self, v: Optional[float]) -> Optional[float]:
        if v is None or not math.isfinite(v):
            return None
        return v


class Claim(ResponseSchema):
    text: str
    verdict: bool
    backed_by: List[str] = Field(default_factory=list)


class ScenarioReport(ResponseSchema):
    """Per-scenario JSON report"""

    id: str
    kind: str
    version: str
    seed: int
    parameters: Dict[str, object] = Field(default_factory=dict)
    quantities: Dict[str, Quantity] = Field(default_factory=dict)
    verdicts: Dict[str, bool] = Field(default_factory=dict)
    claims: List[Claim] = Field(default_factory=list)


T = TypeVar("T")


class LabResponse(BaseModel, Generic[T]):
    """Standard command output envelope"""

    error_code: int = 0
    message: str = "success"
    data: Optional[T] = None

    @classmethod
    def success(cls, data: Optional[T] = None, message: str = "success") -> "LabResponse[T]":
        """Create success response"""
        return cls(error_code=0, message=message, data=data)

    @classmethod
    def error(cls, error_code: int, message: str, data: Optional[T] = None) -> "LabResponse[T]":
        """Create error response"""
        return cls(error_code=error_code, message=message, data=data)
