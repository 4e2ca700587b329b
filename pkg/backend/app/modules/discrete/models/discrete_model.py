import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.core.base_model import DomainModel
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _


class DiscreteCouple(DomainModel):
    """Weights w0, w1 on {0, ..., n-1} with exponents p0, p1"""

    w0: np.ndarray
    w1: np.ndarray
    p0: float = 1.0
    p1: float = 1.0

    @field_validator("w0", "w1", mode="before")
    @classmethod
    def _as_array(cls, v) -> np.ndarray:
        arr = np.asarray(v, dtype=float).ravel()
        if arr.size == 0 or not np.all(np.isfinite(arr)) or not np.all(arr > 0):
            raise ValidationException(_("discrete.validation.weights_positive"))
        return arr

    @model_validator(mode="after")
    def _check(self) -> "DiscreteCouple":
        if self.w0.size != self.w1.size:
            raise ValidationException(_("discrete.validation.size_mismatch"))
        for p in (self.p0, self.p1):
            if not (1.0 <= p < math.inf):
                raise ValidationException(_("norms.validation.p_range", p=p))
        return self

    @property
    def n(self) -> int:
        return int(self.w0.size)

    @property
    def equal_exponents(self) -> bool:
        return self.p0 == self.p1


class DiscreteOperator(DomainModel):
    """Square matrix acting on C^n"""

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_matrix(cls, v) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationException(_("discrete.validation.not_square"))
        if not np.all(np.isfinite(arr)):
            raise ValidationException(_("discrete.validation.not_finite"))
        return arr

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])


class SteinWeissCheck(BaseModel):
    """target = ||phi||_{l^p(w_theta)}; achieved = family norm of the explicit family"""

    model_config = ConfigDict(frozen=True)

    p: float
    theta: float
    target: float
    achieved: float
    boundary0: float
    boundary1: float
    through_phi: float = 0.0

    @property
    def relative_gap(self) -> float:
        if self.target == 0.0:
            return abs(self.achieved)
        return abs(self.target - self.achieved) / self.target


class SemigroupPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    measured: float
    bound: float
    holds: bool


class SemigroupReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta: float
    t0: float
    points: List[SemigroupPoint]
    initial: float

    @property
    def all_hold(self) -> bool:
        return all(pt.holds for pt in self.points)


class LpSweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta: float
    norm: float
    bound: float
    holds: bool
    log_norm: Optional[float] = None
