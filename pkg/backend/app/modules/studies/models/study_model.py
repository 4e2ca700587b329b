from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.base_model import Claim, Quantity
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _


class StudyReport(BaseModel):
    """Named quantities of one worked example and the claims they back"""

    model_config = ConfigDict(frozen=True)

    study: str
    quantities: Dict[str, Quantity] = Field(default_factory=dict)
    claims: List[Claim] = Field(default_factory=list)

    @model_validator(mode="after")
    def _claims_backed(self) -> "StudyReport":
        for claim in self.claims:
            missing = [name for name in claim.backed_by if name not in self.quantities]
            if not claim.backed_by or missing:
                raise ValidationException(_("studies.validation.unbacked_claim", claim=claim.text))
        return self

    @property
    def verdicts(self) -> Dict[str, bool]:
        return {c.text.split(":", 1)[0]: c.verdict for c in self.claims}


class HomogeneousCheck(BaseModel):
    """||G'||_{L^p(w)} against ||g||_{L^p(w)} for G = integral of g"""

    model_config = ConfigDict(frozen=True)

    derivative_norm: float
    function_norm: float
    residual: float
    grid_step: float

    @property
    def relative_gap(self) -> float:
        if self.function_norm == 0.0:
            return abs(self.derivative_norm)
        return abs(self.derivative_norm - self.function_norm) / self.function_norm
