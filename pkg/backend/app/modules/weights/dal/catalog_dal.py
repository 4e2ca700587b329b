"""Closed-form log-densities of the catalog weights.

Every builder returns a pair (log_value, grad_log_value) of vectorized
callables on (N, d) arrays; grad_log_value is None where the formula is
not differentiable.
"""

from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

LogForm = Tuple[Callable[[np.ndarray], np.ndarray], Optional[Callable[[np.ndarray], np.ndarray]]]

# Phase argument of appendix_osc is frozen beyond |x|^2 = 700 (exp overflows past ~709).
APPENDIX_PHASE_CLAMP = 700.0


def _r2(x: np.ndarray) -> np.ndarray:
    return np.sum(x * x, axis=1)


def _unit(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    r = np.sqrt(_r2(x))
    safe = np.where(r > 0, r, 1.0)
    return r, np.where((r > 0)[:, None], x / safe[:, None], 0.0)


def one() -> LogForm:
    return (lambda x: np.zeros(x.shape[0]), lambda x: np.zeros_like(x))


def gauss(a: float) -> LogForm:
    return (lambda x: -a * _r2(x), lambda x: -2.0 * a * x)


def exp_lin(a: float) -> LogForm:
    def log_value(x):
        return -a * np.sqrt(_r2(x))

    def grad(x):
        _r, u = _unit(x)
        return -a * u

    return log_value, grad


def exp_norm() -> LogForm:
    return (
        lambda x: -np.sqrt(1.0 + _r2(x)),
        lambda x: -x / np.sqrt(1.0 + _r2(x))[:, None],
    )


def poly(alpha: float) -> LogForm:
    return (
        lambda x: -alpha * np.log1p(_r2(x)),
        lambda x: -2.0 * alpha * x / (1.0 + _r2(x))[:, None],
    )


def oscillatory(alpha: float, beta: float) -> LogForm:
    """(1+|x|^2)^-alpha * (1 + sin(|x|^beta) + 1/(1+|x|^2))"""

    def bracket(x):
        r2 = _r2(x)
        return 1.0 + np.sin(np.sqrt(r2) ** beta) + 1.0 / (1.0 + r2)

    def log_value(x):
        return -alpha * np.log1p(_r2(x)) + np.log(bracket(x))

    def grad(x):
        r2 = _r2(x)
        r, u = _unit(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            radial = np.where(r > 0, beta * r ** (beta - 1.0) * np.cos(r**beta), 0.0)
        d_bracket = radial[:, None] * u - 2.0 * x / ((1.0 + r2) ** 2)[:, None]
        return -2.0 * alpha * x / (1.0 + r2)[:, None] + d_bracket / bracket(x)[:, None]

    return log_value, grad


def appendix_osc() -> LogForm:
    """exp(-sqrt(1+|x|^2) - sin(exp(|x|^2)))"""

    def log_value(x):
        r2 = _r2(x)
        return -np.sqrt(1.0 + r2) - np.sin(np.exp(np.minimum(r2, APPENDIX_PHASE_CLAMP)))

    def grad(x):
        r2 = _r2(x)
        phase = np.exp(np.minimum(r2, APPENDIX_PHASE_CLAMP))
        d_phase = np.where(r2 < APPENDIX_PHASE_CLAMP, 2.0 * phase * np.cos(phase), 0.0)
        return -x / np.sqrt(1.0 + r2)[:, None] - d_phase[:, None] * x

    return log_value, grad


def staircase() -> LogForm:
    """(n+1) on (2n, 2n+1], (n+1)^2 on (2n+1, 2n+2], 1 for x <= 0"""

    def log_value(x):
        t = x[:, 0]
        n = np.maximum(np.ceil(t / 2.0) - 1.0, 0.0)
        level = np.where(t <= 2.0 * n + 1.0, np.log(n + 1.0), 2.0 * np.log(n + 1.0))
        return np.where(t <= 0.0, 0.0, level)

    return log_value, None


class CatalogEntry(NamedTuple):
    params: List[str]
    builder: Callable[..., LogForm]
    dims: Optional[Tuple[int, ...]] = None


CATALOG: Dict[str, CatalogEntry] = {
    "one": CatalogEntry([], one),
    "gauss": CatalogEntry(["a"], gauss),
    "exp_lin": CatalogEntry(["a"], exp_lin),
    "exp_norm": CatalogEntry([], exp_norm),
    "poly": CatalogEntry(["alpha"], poly),
    "oscillatory": CatalogEntry(["alpha", "beta"], oscillatory),
    "appendix_osc": CatalogEntry([], appendix_osc),
    "staircase": CatalogEntry([], staircase, dims=(1,)),
}
