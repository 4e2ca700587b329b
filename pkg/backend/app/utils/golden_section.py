import math
from typing import Callable

from pydantic import BaseModel

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


class GoldenSectionResult(BaseModel):
    argmin: float
    minimum: float
    iterations: int
    converged: bool


def golden_section_minimize(f: Callable[[float], float], a: float, b: float, tol: float = 1e-8) -> GoldenSectionResult:
    """
    Golden-section search for a unimodal f on [a, b].

    The bracket shrinks until its width is at most tol; the endpoints are
    compared with the interior estimate so that monotone functions return
    the boundary minimum.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    fa, fb = f(a), f(b)
    if h <= tol:
        return GoldenSectionResult(argmin=a if fa <= fb else b, minimum=min(fa, fb), iterations=0, converged=True)

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    x, y = (c, yc) if yc < yd else (d, yd)
    if fa < y:
        x, y = a, fa
    if fb < y:
        x, y = b, fb
    converged = not (math.isnan(yc) or math.isnan(yd))
    return GoldenSectionResult(argmin=x, minimum=y, iterations=max(n - 1, 0), converged=converged)


def golden_section_maximize(f: Callable[[float], float], a: float, b: float, tol: float = 1e-8) -> GoldenSectionResult:
    """Maximize by minimizing -f; the result carries the maximum in `minimum`"""
    result = golden_section_minimize(lambda x: -f(x), a, b, tol)
    return GoldenSectionResult(argmin=result.argmin, minimum=-result.minimum, iterations=result.iterations, converged=result.converged)
