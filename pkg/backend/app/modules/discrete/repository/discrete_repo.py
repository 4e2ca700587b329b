import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import Settings, get_settings
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.discrete.dal.expm_dal import expm_taylor
from app.modules.discrete.models.discrete_model import (
    DiscreteCouple,
    DiscreteOperator,
    LpSweepPoint,
    SemigroupPoint,
    SemigroupReport,
    SteinWeissCheck,
)
from app.modules.norms.models.norm_model import InequalityCheck
from app.utils.sampling import spawn_generators

logger = logging.getLogger(__name__)

# Absolute slack of the operator-norm inequality, scaled by max(1, rhs).
OPNORM_SLACK = 1e-12
SEMIGROUP_SLACK = 1e-10
# Boundary lines are sampled at these t; the explicit families are t-independent there.
BOUNDARY_TS = (0.0, 1.0, -3.7)


def _check_theta(theta: float) -> None:
    if not (0.0 < theta < 1.0):
        raise ValidationException(_("interp.validation.theta_open", theta=theta))


class DiscreteRepo:
    """Exact interpolation checks on finite weighted measure spaces"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    @staticmethod
    def sw_weight(couple: DiscreteCouple, theta: float) -> Tuple[float, np.ndarray]:
        """1/p_theta = (1-theta)/p0 + theta/p1, w_theta^(1/p_theta) = w0^((1-theta)/p0) w1^(theta/p1)"""
        _check_theta(theta)
        inv_p = (1.0 - theta) / couple.p0 + theta / couple.p1
        p_theta = 1.0 / inv_p
        log_w = p_theta * ((1.0 - theta) / couple.p0 * np.log(couple.w0) + theta / couple.p1 * np.log(couple.w1))
        return p_theta, np.exp(log_w)

    @staticmethod
    def weighted_lp_norm(phi: np.ndarray, w: np.ndarray, p: float) -> float:
        """(sum_k |phi_k|^p w_k)^(1/p)"""
        return float(np.sum(np.abs(np.asarray(phi)) ** p * w) ** (1.0 / p))

    def sw_equality_check(self, couple: DiscreteCouple, theta: float, phi: Sequence[complex]) -> SteinWeissCheck:
        """Norm of phi in l^p(w_theta) against the family phi (w0/w1)^((z-theta)/p)"""
        if not couple.equal_exponents:
            raise ValidationException(_("discrete.validation.equal_exponents"))
        phi = np.asarray(phi, dtype=complex)
        if phi.size != couple.n:
            raise ValidationException(_("discrete.validation.size_mismatch"))
        p = couple.p0
        _p_theta, w_theta = self.sw_weight(couple, theta)
        target = self.weighted_lp_norm(phi, w_theta, p)
        log_ratio = np.log(couple.w0) - np.log(couple.w1)

        def family(z: complex) -> np.ndarray:
            return phi * np.exp((z - theta) / p * log_ratio)

        boundary = [max(self.weighted_lp_norm(family(complex(j, t)), w, p) for t in BOUNDARY_TS) for j, w in ((0, couple.w0), (1, couple.w1))]
        through = float(np.max(np.abs(family(complex(theta, 0.0)) - phi))) if phi.size else 0.0
        return SteinWeissCheck(
            p=p,
            theta=theta,
            target=target,
            achieved=max(boundary),
            boundary0=boundary[0],
            boundary1=boundary[1],
            through_phi=through,
        )

    def calderon_family_check(self, couple: DiscreteCouple, theta: float, phi: Sequence[complex]) -> SteinWeissCheck:
        """Explicit family for p0 != p1 with both boundary norms equal to ||phi||_{l^{p_theta}(w_theta)}.

        f(z)_k = ||phi|| sgn(u_k) |u_k|^(p_theta/p(z)) w_theta^(1/p(z)) w0^(-(1-z)/p0) w1^(-z/p1),
        u = phi / ||phi||, 1/p(z) = (1-z)/p0 + z/p1.
        """
        phi = np.asarray(phi, dtype=complex)
        if phi.size != couple.n:
            raise ValidationException(_("discrete.validation.size_mismatch"))
        p_theta, w_theta = self.sw_weight(couple, theta)
        target = self.weighted_lp_norm(phi, w_theta, p_theta)
        if target == 0.0:
            return SteinWeissCheck(p=p_theta, theta=theta, target=0.0, achieved=0.0, boundary0=0.0, boundary1=0.0)

        u = phi / target
        mod = np.abs(u)
        nonzero = mod > 0
        log_mod = np.log(np.where(nonzero, mod, 1.0))
        phase = np.where(nonzero, u / np.where(nonzero, mod, 1.0), 0.0)
        log_w0, log_w1, log_wt = np.log(couple.w0), np.log(couple.w1), np.log(w_theta)

        def family(z: complex) -> np.ndarray:
            inv_p = (1.0 - z) / couple.p0 + z / couple.p1
            log_f = p_theta * inv_p * log_mod + inv_p * log_wt - (1.0 - z) / couple.p0 * log_w0 - z / couple.p1 * log_w1
            return target * np.where(nonzero, phase * np.exp(log_f), 0.0)

        b0 = max(self.weighted_lp_norm(family(complex(0.0, t)), couple.w0, couple.p0) for t in BOUNDARY_TS)
        b1 = max(self.weighted_lp_norm(family(complex(1.0, t)), couple.w1, couple.p1) for t in BOUNDARY_TS)
        through = float(np.max(np.abs(family(complex(theta, 0.0)) - phi)))
        return SteinWeissCheck(p=p_theta, theta=theta, target=target, achieved=max(b0, b1), boundary0=b0, boundary1=b1, through_phi=through)

    @staticmethod
    def weighted_l1_opnorm(operator: DiscreteOperator | np.ndarray, w: np.ndarray) -> float:
        """Induced norm on l^1(w): max_j (1/w_j) sum_i |T_ij| w_i"""
        t = operator.matrix if isinstance(operator, DiscreteOperator) else np.asarray(operator, dtype=float)
        w = np.asarray(w, dtype=float)
        return float(np.max(np.abs(t).T @ w / w))

    def opnorm_interpolation_check(self, operator: DiscreteOperator, couple: DiscreteCouple, theta: float) -> InequalityCheck:
        """||T||_{l^1(w_theta)} <= ||T||_{l^1(w0)}^(1-theta) ||T||_{l^1(w1)}^theta"""
        if couple.p0 != 1.0 or couple.p1 != 1.0:
            raise ValidationException(_("discrete.validation.l1_only"))
        if operator.n != couple.n:
            raise ValidationException(_("discrete.validation.size_mismatch"))
        _p, w_theta = self.sw_weight(couple, theta)
        lhs = self.weighted_l1_opnorm(operator, w_theta)
        rhs = self.weighted_l1_opnorm(operator, couple.w0) ** (1.0 - theta) * self.weighted_l1_opnorm(operator, couple.w1) ** theta
        return InequalityCheck(name="opnorm_interpolation", lhs=lhs, rhs=rhs, holds=bool(lhs <= rhs + OPNORM_SLACK * max(1.0, rhs)), parameter=theta)

    @staticmethod
    def expm(operator: DiscreteOperator | np.ndarray, t: float = 1.0) -> np.ndarray:
        m = operator.matrix if isinstance(operator, DiscreteOperator) else np.asarray(operator, dtype=float)
        return expm_taylor(t * m)

    def semigroup_decay_study(
        self,
        generator: DiscreteOperator,
        w0: Sequence[float],
        w1: Sequence[float],
        theta: float,
        t0: float,
        times: Sequence[float],
        g: Sequence[float],
    ) -> SemigroupReport:
        """||T(t) g||_{w_theta} against ||T(t-t0)||_{w0}^(1-theta) ||T(t-t0)||_{w1}^theta ||T(t0) g||_{w_theta}"""
        couple = DiscreteCouple(w0=w0, w1=w1)
        g = np.asarray(g, dtype=float)
        if generator.n != couple.n or g.size != couple.n:
            raise ValidationException(_("discrete.validation.size_mismatch"))
        if not t0 > 0 or any(t <= t0 for t in times):
            raise ValidationException(_("discrete.validation.times_after_t0", t0=t0))
        _p, w_theta = self.sw_weight(couple, theta)
        initial = self.weighted_lp_norm(self.expm(generator, t0) @ g, w_theta, 1.0)
        points = []
        for t in times:
            measured = self.weighted_lp_norm(self.expm(generator, t) @ g, w_theta, 1.0)
            step = self.expm(generator, t - t0)
            bound = self.weighted_l1_opnorm(step, couple.w0) ** (1.0 - theta) * self.weighted_l1_opnorm(step, couple.w1) ** theta * initial
            points.append(SemigroupPoint(t=t, measured=measured, bound=bound, holds=bool(measured <= bound * (1.0 + SEMIGROUP_SLACK))))
        logger.debug(f"Semigroup study over {len(points)} times, theta={theta:g}: {sum(p.holds for p in points)} pass")
        return SemigroupReport(theta=theta, t0=t0, points=points, initial=initial)

    @staticmethod
    def discrete_laplacian(n: int) -> DiscreteOperator:
        """Tridiagonal (1, -2, 1) with Dirichlet ends"""
        if n < 1:
            raise ValidationException(_("discrete.validation.size_positive"))
        m = -2.0 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1)
        return DiscreteOperator(matrix=m)

    def random_sw_suite(self, n: int, p: float, count: int, seed: int) -> List[SteinWeissCheck]:
        """Random log-normal couples, theta and complex phi, one generator per instance"""
        checks = []
        for rng in spawn_generators(seed, count):
            couple = DiscreteCouple(w0=np.exp(rng.normal(size=n)), w1=np.exp(rng.normal(size=n)), p0=p, p1=p)
            theta = float(rng.uniform(0.05, 0.95))
            phi = rng.normal(size=n) + 1j * rng.normal(size=n)
            checks.append(self.sw_equality_check(couple, theta, phi))
        return checks

    def random_opnorm_suite(
        self,
        count: int,
        n: int,
        thetas: Sequence[float],
        seed: int,
        signed: bool = False,
    ) -> List[InequalityCheck]:
        checks = []
        for rng in spawn_generators(seed, count):
            matrix = rng.normal(size=(n, n)) if signed else rng.uniform(size=(n, n))
            couple = DiscreteCouple(w0=np.exp(rng.normal(size=n)), w1=np.exp(rng.normal(size=n)))
            operator = DiscreteOperator(matrix=matrix)
            checks.extend(self.opnorm_interpolation_check(operator, couple, theta) for theta in thetas)
        return checks

    def lp_logconvexity_sweep(self, couple: DiscreteCouple, phi: Sequence[complex], thetas: Sequence[float]) -> List[LpSweepPoint]:
        """||phi||_{l^p(w_theta)} <= ||phi||_{l^p(w0)}^(1-theta) ||phi||_{l^p(w1)}^theta"""
        if not couple.equal_exponents:
            raise ValidationException(_("discrete.validation.equal_exponents"))
        p = couple.p0
        n0 = self.weighted_lp_norm(phi, couple.w0, p)
        n1 = self.weighted_lp_norm(phi, couple.w1, p)
        points = []
        for theta in thetas:
            _p, w_theta = self.sw_weight(couple, theta)
            norm = self.weighted_lp_norm(phi, w_theta, p)
            bound = n0 ** (1.0 - theta) * n1**theta
            points.append(
                LpSweepPoint(
                    theta=theta,
                    norm=norm,
                    bound=bound,
                    holds=bool(norm <= bound * (1.0 + self.settings.VERDICT_SLACK)),
                    log_norm=math.log(norm) if norm > 0 else None,
                )
            )
        return points
