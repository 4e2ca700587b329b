import math
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.core.base_enums import IntegralStatus, NormKind
from app.core.base_model import Quantity


class NormReport(BaseModel):
    """A weighted norm with its named parts; components hold p-th roots of the partial integrals"""

    model_config = ConfigDict(frozen=True)

    kind: NormKind
    p: float
    value: float
    status: IntegralStatus
    components: Dict[str, float] = Field(default_factory=dict)
    error_estimate: float = 0.0
    trace: List[Tuple[float, float]] = Field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status == IntegralStatus.CONVERGED

    @property
    def finite(self) -> bool:
        return self.status != IntegralStatus.DIVERGENT and math.isfinite(self.value)

    def to_quantity(self) -> Quantity:
        return Quantity(
            value=self.value,
            status=self.status,
            error_estimate=self.error_estimate,
            trace=[[r, v] for r, v in self.trace],
        )


class InequalityCheck(BaseModel):
    """lhs <= rhs with relative slack; holds is None when an input did not converge"""

    model_config = ConfigDict(frozen=True)

    name: str
    lhs: float
    rhs: float
    holds: Optional[bool]
    status: IntegralStatus = IntegralStatus.CONVERGED
    parameter: Optional[float] = None

    @property
    def ratio(self) -> float:
        if self.rhs == 0.0:
            return 0.0 if self.lhs == 0.0 else math.inf
        return self.lhs / self.rhs

    @property
    def verdict(self) -> bool:
        return bool(self.holds)
