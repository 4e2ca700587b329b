import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.core.base_enums import IntegralStatus
from app.core.base_model import DomainModel
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.quadrature.models.quadrature_model import QuadratureRule


class FamilyParams(BaseModel):
    """Parameters of the analytic family through phi at z = theta"""

    model_config = ConfigDict(frozen=True)

    beta: float
    theta: float
    p: float

    @model_validator(mode="after")
    def _check(self) -> "FamilyParams":
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValidationException(_("interp.validation.beta_positive", beta=self.beta))
        if not (0.0 < self.theta < 1.0):
            raise ValidationException(_("interp.validation.theta_open", theta=self.theta))
        if not (1.0 <= self.p < math.inf):
            raise ValidationException(_("norms.validation.p_range", p=self.p))
        return self


class FamilySamples(DomainModel):
    """phi, log r and log w_j sampled once on the quadrature rule of phi's support"""

    rule: QuadratureRule
    phi: np.ndarray
    grad_phi: np.ndarray
    log_r: np.ndarray
    grad_log_r: np.ndarray
    log_w0: np.ndarray
    log_w1: np.ndarray

    def log_weight(self, j: int) -> np.ndarray:
        return self.log_w0 if j == 0 else self.log_w1


class BoundaryParts(BaseModel):
    """p-th powers of the function and gradient parts of a boundary norm"""

    model_config = ConfigDict(frozen=True)

    function: float
    gradient: float

    def norm(self, p: float) -> float:
        return (self.function + self.gradient) ** (1.0 / p)


class SupResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    t: float
    value: float
    horizon: float


class CpResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: float
    beta: float
    value: float


class UpperBound(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    argmin_beta: float
    evaluations: int


class SandwichReport(BaseModel):
    """lower <= family_upper <= cp * wcal"""

    model_config = ConfigDict(frozen=True)

    lower: float
    family_upper: float
    argmin_beta: float
    cp: float
    wcal: float
    verdict_left: bool
    verdict_right: bool
    status: IntegralStatus = IntegralStatus.CONVERGED
    seminorm: Optional[float] = None
    lipschitz_log_r: Optional[float] = None


class SandwichCase(BaseModel):
    model_config = ConfigDict(frozen=True)

    w0: str
    w1: str
    phi: str
    p: float
    theta: float
    dim: int


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta: float
    lhs: float
    rhs: float
    ratio: float
    holds: Optional[bool]


SweepResult = List[SweepPoint]
