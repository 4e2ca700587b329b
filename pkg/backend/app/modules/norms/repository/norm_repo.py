import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from app.core.base_enums import IntegralStatus, NormKind, worst_status
from app.core.config import Settings, get_settings
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.norms.models.norm_model import InequalityCheck, NormReport
from app.modules.quadrature.models.quadrature_model import IntegralResult, QuadratureSpec
from app.modules.quadrature.repository.quadrature_repo import QuadratureRepo
from app.modules.weights.models.weight_model import ScalarField, VectorField, Weight, WeightPair
from app.modules.weights.repository.weight_repo import WeightRepo

logger = logging.getLogger(__name__)

Field = Union[ScalarField, VectorField]


def _root(total: float, p: float) -> float:
    if not math.isfinite(total):
        return math.inf
    return max(total, 0.0) ** (1.0 / p)


def check_exponent(p: float) -> None:
    if not (1.0 <= p < math.inf):
        raise ValidationException(_("norms.validation.p_range", p=p))


class NormRepo:
    """Weighted L^p, W^{1,p} and seminorm quantities on R^d"""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        quadrature_repo: Optional[QuadratureRepo] = None,
        weight_repo: Optional[WeightRepo] = None,
    ):
        self.settings = settings or get_settings()
        self.quadrature = quadrature_repo or QuadratureRepo(self.settings)
        self.weights = weight_repo or WeightRepo(self.settings)

    def _integrate(self, integrand: Callable[[np.ndarray], np.ndarray], phi: Field, spec: Optional[QuadratureSpec]) -> IntegralResult:
        support = getattr(phi, "support", None)
        return self.quadrature.integrate(integrand, phi.dim, spec=spec, support=support)

    @staticmethod
    def abs_power_sum(values: np.ndarray, p: float) -> np.ndarray:
        """sum_i |v_i|^p over the last axis for (N, m) values, |v|^p for (N,)"""
        mod = np.abs(values)
        if mod.ndim == 1:
            return mod**p
        return np.sum(mod**p, axis=1)

    def lp_integral(self, phi: Field, w: Weight, p: float, spec: Optional[QuadratureSpec] = None) -> IntegralResult:
        """sum_i integral |phi_i|^p w dx"""
        check_exponent(p)
        return self._integrate(lambda x: self.abs_power_sum(phi.evaluate(x), p) * w.evaluate(x), phi, spec)

    def gradient_integral(self, phi: ScalarField, w: Weight, p: float, spec: Optional[QuadratureSpec] = None) -> IntegralResult:
        """sum_i integral |d_i phi|^p w dx"""
        check_exponent(p)
        return self._integrate(lambda x: self.abs_power_sum(phi.evaluate_gradient(x), p) * w.evaluate(x), phi, spec)

    def seminorm_integral(
        self,
        phi: ScalarField,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> IntegralResult:
        """integral |phi|^p |grad log r|^p w_theta dx"""
        check_exponent(p)
        omega = self.weights.omega_theta(pair, theta)
        log_r_grad = self.weights.log_ratio_grad(pair)

        def integrand(x):
            grad_norm = np.linalg.norm(log_r_grad.evaluate(x), axis=1)
            return np.abs(phi.evaluate(x)) ** p * grad_norm**p * omega.evaluate(x)

        return self._integrate(integrand, phi, spec)

    @staticmethod
    def _from_parts(kind: NormKind, p: float, parts: Dict[str, IntegralResult]) -> NormReport:
        status = worst_status(*(r.status for r in parts.values()))
        if status == IntegralStatus.DIVERGENT:
            total = math.inf
        else:
            total = math.fsum(r.value for r in parts.values())
        main = next(iter(parts.values()))
        value = _root(total, p)
        # d(S^(1/p)) = S^(1/p - 1)/p dS
        error = math.fsum(r.error_estimate for r in parts.values())
        if math.isfinite(value) and total > 0:
            error = value / (p * total) * error
        return NormReport(
            kind=kind,
            p=p,
            value=value,
            status=status,
            components={name: _root(r.value if not r.divergent else math.inf, p) for name, r in parts.items()},
            error_estimate=error,
            trace=main.trace,
        )

    def lp_norm(self, phi: Field, w: Weight, p: float, spec: Optional[QuadratureSpec] = None) -> NormReport:
        """(sum_i integral |phi_i|^p w dx)^(1/p)"""
        return self._from_parts(NormKind.LP, p, {"function": self.lp_integral(phi, w, p, spec)})

    def w1p_norm(self, phi: ScalarField, w: Weight, p: float, spec: Optional[QuadratureSpec] = None) -> NormReport:
        """(||phi||_{L^p(w)}^p + ||grad phi||_{L^p(w)}^p)^(1/p)"""
        return self._from_parts(
            NormKind.W1P,
            p,
            {
                "function": self.lp_integral(phi, w, p, spec),
                "gradient": self.gradient_integral(phi, w, p, spec),
            },
        )

    def grad_seminorm(
        self,
        phi: ScalarField,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> NormReport:
        return self._from_parts(NormKind.SEMINORM, p, {"seminorm": self.seminorm_integral(phi, pair, theta, p, spec)})

    def wcal_norm(
        self,
        phi: ScalarField,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> NormReport:
        """(||phi||_{W^{1,p}(w_theta)}^p + seminorm^p)^(1/p)"""
        omega = self.weights.omega_theta(pair, theta)
        return self._from_parts(
            NormKind.WCAL,
            p,
            {
                "function": self.lp_integral(phi, omega, p, spec),
                "gradient": self.gradient_integral(phi, omega, p, spec),
                "seminorm": self.seminorm_integral(phi, pair, theta, p, spec),
            },
        )

    def m_theta_q(self, pair: WeightPair, theta: float, q: float, spec: Optional[QuadratureSpec] = None) -> NormReport:
        """(integral |grad log r|^q w_theta dx)^(1/q); theta may be 0 or 1"""
        check_exponent(q)
        if not (0.0 <= theta <= 1.0):
            raise ValidationException(_("norms.validation.theta_closed", theta=theta))
        omega = self.weights.omega_endpoint_or_theta(pair, theta)
        log_r_grad = self.weights.log_ratio_grad(pair)

        def integrand(x):
            return np.linalg.norm(log_r_grad.evaluate(x), axis=1) ** q * omega.evaluate(x)

        result = self.quadrature.integrate(integrand, pair.dim, spec=spec)
        logger.debug(f"M({theta:g},{q:g}) for {pair.label}: {result.status}, S={result.value:.10g}")
        return self._from_parts(NormKind.MTQ, q, {"moment": result})

    def compare(self, name: str, lhs: NormReport | float, rhs: float, status: IntegralStatus, parameter: Optional[float] = None) -> InequalityCheck:
        """lhs <= rhs * (1 + VERDICT_SLACK); undecided unless every input converged"""
        left = lhs.value if isinstance(lhs, NormReport) else lhs
        holds: Optional[bool] = None
        if status == IntegralStatus.CONVERGED:
            holds = bool(left <= rhs * (1.0 + self.settings.VERDICT_SLACK))
        return InequalityCheck(name=name, lhs=left, rhs=rhs, holds=holds, status=status, parameter=parameter)

    def holder_embedding_check(
        self,
        phi: ScalarField,
        pair: WeightPair,
        theta: float,
        p: float,
        q: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> InequalityCheck:
        """seminorm <= M(theta, q) * ||phi||_{L^{qp/(q-p)}(w_theta)}"""
        if not q > p:
            raise ValidationException(_("norms.validation.q_above_p", p=p, q=q))
        moment = self.m_theta_q(pair, theta, q, spec)
        seminorm = self.grad_seminorm(phi, pair, theta, p, spec)
        r = q * p / (q - p)
        lp = self.lp_norm(phi, self.weights.omega_theta(pair, theta), r, spec)
        status = worst_status(moment.status, seminorm.status, lp.status)
        rhs = moment.value * lp.value if status == IntegralStatus.CONVERGED else math.inf
        return self.compare("holder_embedding", seminorm, rhs, status)

    def logconvexity_lp_check(
        self,
        phi: ScalarField,
        pair: WeightPair,
        theta: float,
        p: float,
        spec: Optional[QuadratureSpec] = None,
        sobolev: bool = False,
    ) -> InequalityCheck:
        """||phi||_{X(w_theta)} <= ||phi||_{X(w0)}^(1-theta) ||phi||_{X(w1)}^theta, X = L^p or W^{1,p}"""
        norm = self.w1p_norm if sobolev else self.lp_norm
        mid = norm(phi, self.weights.omega_theta(pair, theta), p, spec)
        left = norm(phi, pair.w0, p, spec)
        right = norm(phi, pair.w1, p, spec)
        status = worst_status(mid.status, left.status, right.status)
        rhs = left.value ** (1.0 - theta) * right.value**theta
        return self.compare("w1p_logconvexity" if sobolev else "lp_logconvexity", mid, rhs, status, parameter=theta)

    def m_theta_q_logconvexity(
        self,
        pair: WeightPair,
        q: float,
        thetas: Sequence[float],
        spec: Optional[QuadratureSpec] = None,
    ) -> List[InequalityCheck]:
        """M(theta, q) <= M(0, q)^(1-theta) M(1, q)^theta along a theta sweep.

        A divergent endpoint makes the right side infinite and the check holds
        trivially; an inconclusive one leaves it undecided.
        """
        m0 = self.m_theta_q(pair, 0.0, q, spec)
        m1 = self.m_theta_q(pair, 1.0, q, spec)
        checks = []
        for theta in thetas:
            mid = self.m_theta_q(pair, theta, q, spec)
            if IntegralStatus.DIVERGENT in (m0.status, m1.status) and mid.status != IntegralStatus.DIVERGENT:
                checks.append(InequalityCheck(name="mtq_logconvexity", lhs=mid.value, rhs=math.inf, holds=True, status=IntegralStatus.CONVERGED, parameter=theta))
                continue
            status = worst_status(m0.status, m1.status, mid.status)
            rhs = m0.value ** (1.0 - theta) * m1.value**theta
            checks.append(self.compare("mtq_logconvexity", mid, rhs, status, parameter=theta))
        return checks
