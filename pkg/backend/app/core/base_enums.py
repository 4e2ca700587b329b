import enum
from enum import Enum
from typing import Any


class BaseEnum(Enum):
    """Enum looked up by its config-file value"""

    @classmethod
    def from_value(cls, value: Any):
        for item in cls:
            if item.value == value:
                return item
        raise ValueError(f"'{value}' is not a valid {cls.__name__}")

    def __str__(self) -> str:
        return str(self.value)


class IntegralStatus(str, BaseEnum):
    CONVERGED = "converged"
    DIVERGENT = "divergent"
    INCONCLUSIVE = "inconclusive"


class NormKind(str, BaseEnum):
    LP = "Lp"
    W1P = "W1p"
    WCAL = "Wcal"
    SEMINORM = "seminorm"
    MTQ = "Mtq"


class ScenarioKind(str, BaseEnum):
    NORM = "norm"
    VERIFY_MAIN = "verify-main"
    CP = "cp"
    STEINWEISS_DISCRETE = "steinweiss-discrete"
    OPNORM_INTERP = "opnorm-interp"
    SEMIGROUP = "semigroup"
    COUNTEREXAMPLE = "counterexample"
    APPENDIX_OSC = "appendix-osc"
    HOMOG1D = "homog1d"
    APPROX_SWEEP = "approx-sweep"


class ExitCode(enum.IntEnum):
    OK = 0
    VERDICT_FAILURE = 1
    PARSE_ERROR = 2
    EVALUATION_ERROR = 3


_STATUS_RANK = {"converged": 0, "inconclusive": 1, "divergent": 2}


def worst_status(*statuses: IntegralStatus) -> IntegralStatus:
    """divergent > inconclusive > converged"""
    if not statuses:
        return IntegralStatus.CONVERGED
    return max(statuses, key=lambda s: _STATUS_RANK[s.value])
