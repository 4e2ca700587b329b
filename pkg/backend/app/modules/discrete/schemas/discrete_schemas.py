from typing import List, Optional

from pydantic import Field, field_validator, model_validator

from app.core.base_enums import BaseEnum
from app.core.base_model import RequestSchema


class GeneratorKind(str, BaseEnum):
    LAPLACIAN = "laplacian"
    ZERO = "zero"
    NEG_IDENTITY = "neg_identity"


def _thetas_open(v: List[float]) -> List[float]:
    if not v or any(not (0.0 < t < 1.0) for t in v):
        raise ValueError("every theta must lie in (0, 1)")
    return v


class SteinWeissParams(RequestSchema):
    """Parameters of a `steinweiss-discrete` scenario.

    Without an explicit couple a randomized suite runs over sizes x exponents.
    """

    sizes: List[int] = Field(default_factory=lambda: [2, 4, 8, 16])
    ps: List[float] = Field(default_factory=lambda: [1.0, 2.0, 3.0])
    count: int = Field(default=100, ge=1)
    tolerance: float = Field(default=1e-10, gt=0.0)
    w0: Optional[List[float]] = None
    w1: Optional[List[float]] = None
    p0: float = Field(default=1.0, ge=1.0)
    p1: float = Field(default=1.0, ge=1.0)
    theta: float = Field(default=0.5, gt=0.0, lt=1.0)
    phi_re: Optional[List[float]] = None
    phi_im: Optional[List[float]] = None
    sweep_thetas: List[float] = Field(default_factory=lambda: [0.1 * k for k in range(1, 10)])

    @field_validator("sweep_thetas")
    @classmethod
    def _sweep(cls, v: List[float]) -> List[float]:
        return _thetas_open(v)

    @field_validator("sizes")
    @classmethod
    def _sizes(cls, v: List[int]) -> List[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("sizes must be positive")
        return v

    @model_validator(mode="after")
    def _explicit_couple(self) -> "SteinWeissParams":
        if (self.w0 is None) != (self.w1 is None):
            raise ValueError("w0 and w1 must be given together")
        if self.w0 is not None and self.phi_re is None:
            raise ValueError("an explicit couple needs phi_re")
        return self

    @property
    def explicit(self) -> bool:
        return self.w0 is not None


class OpnormParams(RequestSchema):
    """Parameters of an `opnorm-interp` scenario"""

    count: int = Field(default=1000, ge=1)
    n: int = Field(default=6, ge=1)
    thetas: List[float] = Field(default_factory=lambda: [0.25, 0.5, 0.75])
    signed: bool = False

    @field_validator("thetas")
    @classmethod
    def _thetas(cls, v: List[float]) -> List[float]:
        return _thetas_open(v)


class SemigroupParams(RequestSchema):
    """Parameters of a `semigroup` scenario; w1 defaults to exp(-|i - n/2| / decay_length)"""

    n: int = Field(default=32, ge=1)
    generator: GeneratorKind = GeneratorKind.LAPLACIAN
    matrix: Optional[List[List[float]]] = None
    w0: Optional[List[float]] = None
    w1: Optional[List[float]] = None
    decay_length: float = Field(default=8.0, gt=0.0)
    theta: float = Field(default=0.5, gt=0.0, lt=1.0)
    t0: float = Field(default=0.5, gt=0.0)
    times: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0, 16.0])
    g: Optional[List[float]] = None

    @model_validator(mode="after")
    def _times_after_t0(self) -> "SemigroupParams":
        if not self.times or any(t <= self.t0 for t in self.times):
            raise ValueError("every time must exceed t0")
        return self
