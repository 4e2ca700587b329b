import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from app.core.base_enums import IntegralStatus
from app.core.config import Settings, get_settings
from app.exceptions.exception import QuadratureException
from app.middlewares.translation_manager import _
from app.modules.quadrature.dal.rule_dal import (
    breakpoint_rule_1d,
    box_rule,
    cached_box_rule,
    capped_panels,
    oscillation_breakpoints,
    shell_boxes,
)
from app.modules.quadrature.models.quadrature_model import IntegralResult, QuadratureRule, QuadratureSpec
from app.modules.quadrature.schemas.quadrature_schemas import QuadratureOverride
from app.modules.weights.models.weight_model import Box

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# Shells used to fit the tail slope of the increments.
_SLOPE_WINDOW = 5
# Shells needed before a truncation sequence may be declared converged.
_MIN_SHELLS = 3


def check_finite(values: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Raise on the first node with a non-finite integrand value"""
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = int(np.argmax(bad))
        node = np.atleast_1d(nodes[idx]).tolist()
        raise QuadratureException(_("quadrature.errors.non_finite", node=node), node=node)
    return values


class QuadratureRepo:
    """Integration over boxes, over R^d by nested truncation, and along rays"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def _points_for_dim(self, dim: int) -> int:
        if dim == 1:
            return self.settings.QUAD_POINTS_1D
        if dim == 2:
            return self.settings.QUAD_POINTS_2D
        return self.settings.QUAD_POINTS_3D

    def default_spec(self, dim: int) -> QuadratureSpec:
        return self.spec_for(dim)

    def spec_for(self, dim: int, override: Optional[QuadratureOverride] = None) -> QuadratureSpec:
        """Default spec for dimension dim with scenario overrides applied"""
        s = self.settings
        o = override or QuadratureOverride()
        max_exp = o.max_radius_exponent if o.max_radius_exponent is not None else s.QUAD_MAX_RADIUS_EXPONENT
        return QuadratureSpec(
            radii=tuple(float(2**k) for k in range(max_exp + 1)),
            points_per_axis=o.points_per_axis or self._points_for_dim(dim),
            rel_tol=o.rel_tol or s.QUAD_REL_TOL,
            growth_threshold=o.growth_threshold or s.QUAD_GROWTH_THRESHOLD,
            decay_slope_tol=o.decay_slope_tol or s.QUAD_DECAY_SLOPE_TOL,
            compact_panel_width=o.compact_panel_width or s.QUAD_COMPACT_PANEL_WIDTH,
            radial_panel_points=o.radial_panel_points or s.QUAD_RADIAL_PANEL_POINTS,
        )

    def with_rel_tol(self, spec: QuadratureSpec, rel_tol: float) -> QuadratureSpec:
        return spec.model_copy(update={"rel_tol": rel_tol})

    def compact_rule(self, box: Box, spec: Optional[QuadratureSpec] = None, coarse: bool = False) -> QuadratureRule:
        """Composite tensor Gauss rule on a box; the coarse variant halves the points per panel"""
        spec = spec or self.default_spec(box.dim)
        n = max(2, spec.points_per_axis // 2) if coarse else spec.points_per_axis
        panels = capped_panels(box.widths, spec.compact_panel_width, n, 2 if box.dim == 1 else 1)
        nodes, weights = cached_box_rule(box.lo, box.hi, n, tuple(panels))
        return QuadratureRule(nodes=nodes, weights=weights, box=box)

    def integrate_on_rule(self, rule: QuadratureRule, values: np.ndarray) -> float:
        return rule.integrate(check_finite(values, rule.nodes))

    def _integrate_compact(self, f: Integrand, support: Box, spec: QuadratureSpec) -> IntegralResult:
        fine = self.compact_rule(support, spec)
        coarse = self.compact_rule(support, spec, coarse=True)
        value = self.integrate_on_rule(fine, f(fine.nodes))
        rough = self.integrate_on_rule(coarse, f(coarse.nodes))
        return IntegralResult(
            value=value,
            error_estimate=abs(value - rough),
            status=IntegralStatus.CONVERGED,
            trace=[(support.radius, value)],
        )

    def _box_integral(self, f: Integrand, lo: np.ndarray, hi: np.ndarray, n: int) -> float:
        nodes, weights = box_rule(lo, hi, n)
        return float(np.dot(weights, check_finite(f(nodes), nodes)))

    def integrate(
        self,
        f: Integrand,
        dim: int,
        spec: Optional[QuadratureSpec] = None,
        support: Optional[Box] = None,
    ) -> IntegralResult:
        """Integral of a nonnegative vectorized integrand over R^d.

        With a compact support box a single composite rule is used. Otherwise
        the integral is accumulated over nested boxes [-R_k, R_k]^d, one shell
        at a time, and the trace (R_k, S_k) is classified when the radii run out.
        Shells are not declared converged while the running total is still zero.
        """
        spec = spec or self.default_spec(dim)
        if support is not None:
            return self._integrate_compact(f, support, spec)

        n = spec.points_per_axis
        total = 0.0
        trace: List[Tuple[float, float]] = []
        increments: List[float] = []
        previous = 0.0
        for k, radius in enumerate(spec.radii):
            if k == 0:
                increment = self._box_integral(f, np.full(dim, -radius), np.full(dim, radius), n)
            else:
                increment = sum(self._box_integral(f, lo, hi, n) for lo, hi in shell_boxes(previous, radius, dim))
            total += increment
            trace.append((radius, total))
            increments.append(increment)
            previous = radius
            if not math.isfinite(total):
                break
            if total != 0.0 and len(trace) >= _MIN_SHELLS and abs(increment) <= spec.rel_tol * abs(total):
                return IntegralResult(
                    value=total,
                    error_estimate=abs(increment),
                    status=IntegralStatus.CONVERGED,
                    trace=trace,
                )
        return self.classify_trace(trace, increments, spec)

    def integrate_radial_1d(
        self,
        g: Callable[[np.ndarray], np.ndarray],
        spec: Optional[QuadratureSpec] = None,
        start: float = 1.0,
    ) -> IntegralResult:
        """Integral of g over [start, inf) with panels broken at (k + 1/2) pi"""
        spec = spec or self.default_spec(1)
        edges = [start] + [r for r in spec.radii if r > start]
        total = 0.0
        trace: List[Tuple[float, float]] = []
        increments: List[float] = []
        for a, b in zip(edges, edges[1:]):
            nodes, weights = breakpoint_rule_1d(oscillation_breakpoints(a, b), spec.radial_panel_points)
            increment = float(np.dot(weights, check_finite(g(nodes), nodes)))
            total += increment
            trace.append((b, total))
            increments.append(increment)
            if not math.isfinite(total):
                break
            if total != 0.0 and len(trace) >= _MIN_SHELLS and abs(increment) <= spec.rel_tol * abs(total):
                return IntegralResult(
                    value=total,
                    error_estimate=abs(increment),
                    status=IntegralStatus.CONVERGED,
                    trace=trace,
                )
        return self.classify_trace(trace, increments, spec)

    @staticmethod
    def tail_slope(trace: Sequence[Tuple[float, float]], increments: Sequence[float]) -> Optional[float]:
        """Least-squares slope of log increment against log radius over the last shells"""
        m = min(_SLOPE_WINDOW, len(increments) - 1)
        if m < 2:
            return None
        radii = np.array([r for r, _v in trace[-m:]])
        inc = np.array(increments[-m:])
        if np.any(inc <= 0) or not np.all(np.isfinite(inc)):
            return None
        slope, _intercept = np.polyfit(np.log(radii), np.log(inc), 1)
        return float(slope)

    def classify_trace(
        self,
        trace: List[Tuple[float, float]],
        increments: List[float],
        spec: QuadratureSpec,
    ) -> IntegralResult:
        """Status of a truncation sequence that did not meet the increment test"""
        values = [v for _r, v in trace]
        last = values[-1]
        if not math.isfinite(last):
            logger.info(f"Truncation sequence overflowed at R={trace[-1][0]:g}")
            return IntegralResult(value=math.inf, error_estimate=math.inf, status=IntegralStatus.DIVERGENT, trace=trace)
        if all(inc == 0.0 for inc in increments):
            return IntegralResult(value=0.0, error_estimate=0.0, status=IntegralStatus.CONVERGED, trace=trace)

        grew = len(values) >= 4 and values[-4] > 0 and last >= spec.growth_threshold * values[-4]
        slope = self.tail_slope(trace, increments)
        if grew or (slope is not None and slope >= -spec.decay_slope_tol):
            logger.info(f"Truncation sequence divergent: S={last:.6g}, tail slope={slope}")
            return IntegralResult(
                value=last,
                error_estimate=math.inf,
                status=IntegralStatus.DIVERGENT,
                trace=trace,
                tail_slope=slope,
            )
        if slope is None:
            return IntegralResult(
                value=last,
                error_estimate=abs(increments[-1]),
                status=IntegralStatus.INCONCLUSIVE,
                trace=trace,
            )

        # Geometric tail with ratio q per doubling of the radius.
        q = (trace[-1][0] / trace[-2][0]) ** slope
        factor = q / (1.0 - q)
        extrapolated = last + increments[-1] * factor
        previous = values[-2] + increments[-2] * factor
        gap = abs(extrapolated - previous)
        status = IntegralStatus.CONVERGED if gap <= spec.rel_tol * abs(extrapolated) else IntegralStatus.INCONCLUSIVE
        logger.debug(f"Tail extrapolation: slope={slope:.4f}, value={extrapolated:.10g}, gap={gap:.3g} ({status})")
        return IntegralResult(
            value=extrapolated,
            error_estimate=max(gap, abs(increments[-1] * factor)) if status != IntegralStatus.CONVERGED else gap,
            status=status,
            trace=trace,
            extrapolated=True,
            tail_slope=slope,
        )
