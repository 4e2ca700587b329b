"""Matrix exponential by Taylor series with scaling and squaring."""

import math

import numpy as np

from app.exceptions.exception import SemigroupOverflowException
from app.middlewares.translation_manager import _

EXPM_TOL = 1e-13
MAX_TAYLOR_TERMS = 60
# ||A / 2^s||_1 is brought below this before the series is summed.
SCALED_NORM = 0.5


def onenorm(a: np.ndarray) -> float:
    """max column sum of |a|"""
    return float(np.max(np.sum(np.abs(a), axis=0))) if a.size else 0.0


def expm_taylor(a: np.ndarray, tol: float = EXPM_TOL) -> np.ndarray:
    """exp(a) for a square real matrix; deterministic for a given input"""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    identity = np.eye(n)
    norm = onenorm(a)
    if not math.isfinite(norm):
        raise SemigroupOverflowException(_("discrete.errors.expm_overflow"))
    squarings = max(0, int(math.ceil(math.log2(norm / SCALED_NORM)))) if norm > 0 else 0
    scaled = a / 2.0**squarings

    result = identity.copy()
    term = identity.copy()
    for k in range(1, MAX_TAYLOR_TERMS + 1):
        term = term @ scaled / k
        result = result + term
        if onenorm(term) <= tol * onenorm(result):
            break

    with np.errstate(over="ignore", invalid="ignore"):
        for _step in range(squarings):
            result = result @ result
            if not np.all(np.isfinite(result)):
                raise SemigroupOverflowException(_("discrete.errors.expm_overflow"), detail={"norm": norm, "squarings": squarings})
    return result
