import logging
import math
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.core.base_enums import IntegralStatus, worst_status
from app.core.config import Settings, get_settings
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.fields.models.field_model import TestFunction
from app.modules.interp.models.interp_model import (
    BoundaryParts,
    CpResult,
    FamilyParams,
    FamilySamples,
    SandwichCase,
    SandwichReport,
    SupResult,
    SweepPoint,
    UpperBound,
)
from app.modules.norms.models.norm_model import InequalityCheck
from app.modules.norms.repository.norm_repo import NormRepo, check_exponent
from app.modules.quadrature.models.quadrature_model import QuadratureSpec
from app.modules.quadrature.repository.quadrature_repo import check_finite
from app.modules.weights.models.weight_model import WeightPair, as_points
from app.utils.golden_section import golden_section_maximize, golden_section_minimize

logger = logging.getLogger(__name__)

# Bracket width (in log beta) of the beta search and the t refinement.
BETA_SEARCH_TOL = 1e-3
T_REFINE_TOL = 1e-7
# Horizon ladder stops here even if the decay target is not met.
MAX_T_HORIZON = 2.0**20


def cp_objective(beta: float, p: float) -> float:
    """2 e^beta max{1, e^beta / (p sqrt(2 beta e))}"""
    return 2.0 * math.exp(beta) * max(1.0, math.exp(beta) / (p * math.sqrt(2.0 * beta * math.e)))


@lru_cache(maxsize=128)
def _cp_minimizer(p: float, beta_min: float, beta_max: float) -> Tuple[float, float]:
    # log C is convex in log beta, so golden section finds the global minimum.
    result = golden_section_minimize(lambda u: cp_objective(math.exp(u), p), math.log(beta_min), math.log(beta_max), tol=1e-12)
    beta = math.exp(result.argmin)
    return beta, cp_objective(beta, p)


class InterpRepo:
    """The analytic family through phi, its boundary norms and the C_p bracket"""

    def __init__(self, settings: Optional[Settings] = None, norm_repo: Optional[NormRepo] = None):
        self.settings = settings or get_settings()
        self.norms = norm_repo or NormRepo(self.settings)
        self.weights = self.norms.weights
        self.quadrature = self.norms.quadrature

    @staticmethod
    def validate_theta_p(theta: float, p: float) -> None:
        FamilyParams(beta=1.0, theta=theta, p=p)

    def cp_minimizer(self, p: float) -> CpResult:
        check_exponent(p)
        beta, value = _cp_minimizer(float(p), self.settings.CP_BETA_MIN, self.settings.CP_BETA_MAX)
        return CpResult(p=p, beta=beta, value=value)

    def cp_constant(self, p: float) -> float:
        return self.cp_minimizer(p).value

    def cp_grid_oracle(self, p: float, step: float = 1e-5) -> CpResult:
        """Brute-force minimum of the C_p objective on a uniform beta grid"""
        check_exponent(p)
        beta = np.arange(self.settings.CP_BETA_MIN, self.settings.CP_BETA_MAX + step, step)
        values = 2.0 * np.exp(beta) * np.maximum(1.0, np.exp(beta) / (p * np.sqrt(2.0 * beta * math.e)))
        k = int(np.argmin(values))
        return CpResult(p=p, beta=float(beta[k]), value=float(values[k]))

    def family_eval(self, phi: TestFunction, pair: WeightPair, params: FamilyParams, x, z: complex):
        """exp(((z - theta)/p) log r(x) + beta (z - theta)^2) phi(x)"""
        z = complex(z)
        if not (0.0 <= z.real <= 1.0):
            raise ValidationException(_("interp.validation.strip", z=str(z)))
        pts, single = as_points(x, phi.dim)
        log_r = pair.w0.log(pts) - pair.w1.log(pts)
        shift = z - params.theta
        values = np.exp(shift / params.p * log_r + params.beta * shift * shift) * phi.evaluate(pts)
        return values[0] if single else values

    def sample_family(self, phi: TestFunction, pair: WeightPair, spec: Optional[QuadratureSpec] = None) -> FamilySamples:
        """Evaluate everything the boundary norms need on the rule of phi's support"""
        if pair.dim != phi.dim:
            raise ValidationException(_("weights.validation.pair_dim_mismatch"))
        rule = self.quadrature.compact_rule(phi.support, spec)
        x = rule.nodes
        grad_log_r = self.weights.log_ratio_grad(pair).evaluate(x)
        grad_phi = phi.evaluate_gradient(x)
        check_finite(np.sum(grad_log_r, axis=1), x)
        check_finite(np.sum(grad_phi, axis=1), x)
        log_w0 = check_finite(pair.w0.log(x), x)
        log_w1 = check_finite(pair.w1.log(x), x)
        return FamilySamples(
            rule=rule,
            phi=check_finite(np.real(phi.evaluate(x)), x),
            grad_phi=grad_phi,
            log_r=log_w0 - log_w1,
            grad_log_r=grad_log_r,
            log_w0=log_w0,
            log_w1=log_w1,
        )

    def boundary_parts(self, samples: FamilySamples, params: FamilyParams, j: int, t: float) -> BoundaryParts:
        """p-th powers of the L^p(w_j) and gradient parts of f(., j + it)"""
        if j not in (0, 1):
            raise ValidationException(_("interp.validation.boundary_index", j=j))
        p, beta = params.p, params.beta
        a = j - params.theta
        # log(|E|^p w_j), E the exponential prefactor
        density = np.exp(a * samples.log_r + samples.log_weight(j) + p * beta * (a * a - t * t))
        rule = samples.rule
        function = rule.integrate(check_finite(np.abs(samples.phi) ** p * density, rule.nodes))
        c = complex(a, t) / p
        grad = samples.grad_phi + c * samples.phi[:, None] * samples.grad_log_r
        gradient = rule.integrate(check_finite(np.sum(np.abs(grad) ** p, axis=1) * density, rule.nodes))
        return BoundaryParts(function=function, gradient=gradient)

    def boundary_norm(self, samples: FamilySamples, params: FamilyParams, j: int, t: float) -> float:
        return self.boundary_parts(samples, params, j, t).norm(params.p)

    def family_boundary_norm(
        self,
        phi: TestFunction,
        pair: WeightPair,
        params: FamilyParams,
        j: int,
        t: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> float:
        """||f(., j + it)||_{W^{1,p}(w_j)}"""
        return self.boundary_norm(self.sample_family(phi, pair, spec), params, j, t)

    def t_horizon(self, params: FamilyParams) -> float:
        """Smallest T = 2^k with exp(-p beta T^2) (1 + T^2)^(p/2) below the decay target"""
        target = math.log(self.settings.T_DECAY_TARGET)
        p, beta = params.p, params.beta
        horizon = 1.0
        while -p * beta * horizon * horizon + 0.5 * p * math.log1p(horizon * horizon) >= target and horizon < MAX_T_HORIZON:
            horizon *= 2.0
        return horizon

    def boundary_sup(self, samples: FamilySamples, params: FamilyParams, j: int) -> SupResult:
        """sup over t of the boundary norm: symmetric grid, then golden section around the grid max"""
        horizon = self.t_horizon(params)
        grid = np.linspace(-horizon, horizon, self.settings.T_GRID_POINTS)
        values = np.array([self.boundary_norm(samples, params, j, float(t)) for t in grid])
        k = int(np.argmax(values))
        best_t, best = float(grid[k]), float(values[k])
        lo, hi = float(grid[max(k - 1, 0)]), float(grid[min(k + 1, grid.size - 1)])
        refined = golden_section_maximize(lambda t: self.boundary_norm(samples, params, j, t), lo, hi, tol=T_REFINE_TOL * horizon)
        if refined.minimum > best:
            best_t, best = refined.argmin, refined.minimum
        return SupResult(j=j, t=best_t, value=best, horizon=horizon)

    def fnorm_on_samples(self, samples: FamilySamples, params: FamilyParams) -> Tuple[float, List[SupResult]]:
        sups = [self.boundary_sup(samples, params, j) for j in (0, 1)]
        return max(s.value for s in sups), sups

    def family_fnorm(self, phi: TestFunction, pair: WeightPair, params: FamilyParams, spec: Optional[QuadratureSpec] = None) -> float:
        """max over j of sup over t of ||f(., j + it)||_{W^{1,p}(w_j)}"""
        value, _sups = self.fnorm_on_samples(self.sample_family(phi, pair, spec), params)
        return value

    def upper_bound_on_samples(self, samples: FamilySamples, theta: float, p: float) -> UpperBound:
        s = self.settings
        evaluations = 0

        def objective(u: float) -> float:
            nonlocal evaluations
            evaluations += 1
            value, _sups = self.fnorm_on_samples(samples, FamilyParams(beta=math.exp(u), theta=theta, p=p))
            return value

        search = golden_section_minimize(objective, math.log(s.BETA_MIN), math.log(s.BETA_MAX), tol=BETA_SEARCH_TOL)
        best_beta, best = math.exp(search.argmin), search.minimum
        beta_cp = min(max(self.cp_minimizer(p).beta, s.BETA_MIN), s.BETA_MAX)
        at_cp = objective(math.log(beta_cp))
        if at_cp < best:
            best_beta, best = beta_cp, at_cp
        logger.debug(f"Upper bound {best:.10g} at beta={best_beta:.6g} after {evaluations} family norms")
        return UpperBound(value=best, argmin_beta=best_beta, evaluations=evaluations)

    def interp_upper_bound(
        self,
        phi: TestFunction,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> UpperBound:
        """min over beta of the family norm: an upper bound for the interpolation norm of phi"""
        self.validate_theta_p(theta, p)
        return self.upper_bound_on_samples(self.sample_family(phi, pair, spec), theta, p)

    def _check_preconditions(self, phi: TestFunction, pair: WeightPair, seed: Optional[int]) -> float:
        samples = max(64, 16 * 2**phi.dim)
        for w in (pair.w0, pair.w1):
            if not self.weights.check_compact_boundedness(w, phi.support, samples, seed).satisfied:
                raise ValidationException(_("interp.validation.not_compactly_bounded", label=w.label))
        lipschitz = self.weights.estimate_lipschitz(self.weights.log_ratio(pair), phi.support, 4 * samples, seed)
        if not math.isfinite(lipschitz):
            raise ValidationException(_("interp.validation.log_ratio_not_lipschitz", label=pair.label))
        return lipschitz

    def sandwich_check(
        self,
        phi: TestFunction,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
        seed: Optional[int] = None,
    ) -> SandwichReport:
        """lower = ||phi||_{W^{1,p}(w_theta)} <= family_upper <= C_p ||phi||_Wcal.

        Every quantity is integrated on the same rule, so both inequalities
        hold for the discrete measure and not only up to quadrature error.
        """
        self.validate_theta_p(theta, p)
        spec = spec or self.quadrature.default_spec(phi.dim)
        lipschitz = self._check_preconditions(phi, pair, seed)
        omega = self.weights.omega_theta(pair, theta)
        lower = self.norms.w1p_norm(phi, omega, p, spec)
        wcal = self.norms.wcal_norm(phi, pair, theta, p, spec)
        cp = self.cp_constant(p)
        status = worst_status(lower.status, wcal.status)
        if status != IntegralStatus.CONVERGED:
            return SandwichReport(
                lower=lower.value,
                family_upper=math.inf,
                argmin_beta=math.nan,
                cp=cp,
                wcal=wcal.value,
                verdict_left=False,
                verdict_right=False,
                status=IntegralStatus.INCONCLUSIVE,
                lipschitz_log_r=lipschitz,
            )
        upper = self.upper_bound_on_samples(self.sample_family(phi, pair, spec), theta, p)
        slack = 1.0 + self.settings.VERDICT_SLACK
        report = SandwichReport(
            lower=lower.value,
            family_upper=upper.value,
            argmin_beta=upper.argmin_beta,
            cp=cp,
            wcal=wcal.value,
            verdict_left=bool(lower.value <= upper.value * slack),
            verdict_right=bool(upper.value <= cp * wcal.value * slack),
            status=status,
            seminorm=wcal.components.get("seminorm"),
            lipschitz_log_r=lipschitz,
        )
        logger.info(
            f"Sandwich {pair.label}, theta={theta:g}, p={p:g}: {report.lower:.6g} <= {report.family_upper:.6g} <= {cp * report.wcal:.6g}"
        )
        return report

    def logconvexity_check(
        self,
        phi: TestFunction,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> InequalityCheck:
        """||phi||_{W^{1,p}(w_theta)} <= ||phi||_{W^{1,p}(w0)}^(1-theta) ||phi||_{W^{1,p}(w1)}^theta"""
        self.validate_theta_p(theta, p)
        return self.norms.logconvexity_lp_check(phi, pair, theta, p, spec, sobolev=True)

    def logconvexity_sweep(
        self,
        phi: TestFunction,
        pair: WeightPair,
        p: float,
        thetas: Sequence[float] = tuple(k / 10 for k in range(1, 10)),
        spec: Optional[QuadratureSpec] = None,
    ) -> List[SweepPoint]:
        points = []
        for theta in thetas:
            check = self.logconvexity_check(phi, pair, theta, p, spec)
            points.append(SweepPoint(theta=theta, lhs=check.lhs, rhs=check.rhs, ratio=check.ratio, holds=check.holds))
        return points

    def smaller_space_check(
        self,
        phi: TestFunction,
        pair: WeightPair,
        theta: float,
        p: float,
        q: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> InequalityCheck:
        """family_upper <= C_p (||phi||_{W^{1,p}(w_theta)}^p + M(theta,q)^p ||phi||_{L^{qp/(q-p)}(w_theta)}^p)^(1/p)"""
        if not q > p:
            raise ValidationException(_("norms.validation.q_above_p", p=p, q=q))
        spec = spec or self.quadrature.default_spec(phi.dim)
        omega = self.weights.omega_theta(pair, theta)
        sobolev = self.norms.w1p_norm(phi, omega, p, spec)
        moment = self.norms.m_theta_q(pair, theta, q, spec)
        lebesgue = self.norms.lp_norm(phi, omega, q * p / (q - p), spec)
        status = worst_status(sobolev.status, moment.status, lebesgue.status)
        if status != IntegralStatus.CONVERGED:
            return InequalityCheck(name="smaller_space", lhs=math.nan, rhs=math.inf, holds=None, status=status)
        upper = self.interp_upper_bound(phi, pair, theta, p, spec)
        rhs = self.cp_constant(p) * (sobolev.value**p + (moment.value * lebesgue.value) ** p) ** (1.0 / p)
        return self.norms.compare("smaller_space", upper.value, rhs, status)


def sandwich_catalog() -> List[SandwichCase]:
    """The shipped sandwich scenarios: 4 pairs x 5 (phi, p, theta, d) combinations"""
    pairs = [
        ("one", "exp_lin:a=2"),
        ("one", "gauss:a=1"),
        ("one", "appendix_osc"),
        ("poly:alpha=1", "poly:alpha=3"),
    ]
    combos = [
        ("bump:radius=1", 1.0, 0.5, 1),
        ("hat:plateau=0.5,ramp=1", 2.0, 0.25, 1),
        ("bump:radius=1", 2.0, 0.75, 1),
        ("bump:radius=1", 1.0, 0.25, 2),
        ("hat:plateau=0.5,ramp=1", 2.0, 0.5, 2),
    ]
    return [SandwichCase(w0=w0, w1=w1, phi=phi, p=p, theta=theta, dim=dim) for w0, w1 in pairs for phi, p, theta, dim in combos]
