from typing import Optional, Tuple

from pydantic import field_validator

from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.weights.models.weight_model import Box, ScalarField


class TestFunction(ScalarField):
    """Compactly supported Lipschitz function; value and gradient vanish outside `support`

    `breakpoints` lists the 1-D points where the gradient jumps, sorted.
    """

    __test__ = False  # not a pytest class

    support: Box
    lipschitz_bound: Optional[float] = None
    breakpoints: Tuple[float, ...] = ()

    @field_validator("lipschitz_bound")
    @classmethod
    def _non_negative(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v < 0:
            raise ValidationException(_("fields.validation.lipschitz_negative"))
        return v
