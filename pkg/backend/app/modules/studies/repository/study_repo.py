import logging
import math
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.special import gamma

from app.core.base_enums import IntegralStatus
from app.core.base_model import Claim, Quantity
from app.core.config import Settings, get_settings
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.fields.models.field_model import TestFunction
from app.modules.fields.repository.field_repo import FieldRepo
from app.modules.norms.repository.norm_repo import NormRepo, check_exponent
from app.modules.quadrature.models.quadrature_model import QuadratureSpec
from app.modules.quadrature.repository.quadrature_repo import QuadratureRepo
from app.modules.studies.models.study_model import HomogeneousCheck, StudyReport
from app.modules.weights.models.weight_model import Box, ScalarField, Weight, WeightPair
from app.modules.weights.repository.weight_repo import WeightRepo
from app.utils.sampling import seed_from_label

logger = logging.getLogger(__name__)

# Largest reconstruction residual accepted by the 1-D isometry check.
MAX_RECONSTRUCTION_RESIDUAL = 1e-3
LOG_FLOAT_MAX = math.log(sys.float_info.max)
CUTOFF_VANISH_RATIO = 1e-3
# Residuals below this are treated as exact reconstruction.
EXACT_RESIDUAL = 1e-10


def _backed(key: str, text: str, verdict: bool, *quantities: str) -> Claim:
    return Claim(text=f"{key}: {text}", verdict=bool(verdict), backed_by=list(quantities))


def _non_increasing(values: Sequence[float], slack: float) -> bool:
    return all(b <= a * (1.0 + slack) + 1e-300 for a, b in zip(values, values[1:]))


def _grid_through(lo: float, hi: float, breakpoints: Sequence[float], h: float) -> np.ndarray:
    """Nodes from lo to hi, step at most h, with every breakpoint inside (lo, hi) a node"""
    edges = [lo, *sorted(b for b in breakpoints if lo < b < hi), hi]
    pieces = []
    for a, b in zip(edges, edges[1:]):
        count = max(1, int(math.ceil((b - a) / h)))
        pieces.append(np.linspace(a, b, count + 1)[:-1])
    pieces.append(np.array([hi]))
    return np.concatenate(pieces)


class StudyRepo:
    """Worked examples: the oscillatory counterexample, the appendix pair, the 1-D isometry, approximation sweeps"""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        norm_repo: Optional[NormRepo] = None,
        field_repo: Optional[FieldRepo] = None,
    ):
        self.settings = settings or get_settings()
        self.norms = norm_repo or NormRepo(self.settings)
        self.fields = field_repo or FieldRepo(self.settings)

    @property
    def quadrature(self) -> QuadratureRepo:
        return self.norms.quadrature

    @property
    def weights(self) -> WeightRepo:
        return self.norms.weights

    @staticmethod
    def gradient_exponent(alpha: float, beta: float, d: int, p: float) -> float:
        """Power of y in the radial reduction of integral |grad w|^p w^(1-p) for the oscillatory weight"""
        return (p * (beta - 1.0) + d - 2.0 * alpha) / beta - 1.0

    def _radial_weight_integral(self, omega: Weight, d: int, spec: QuadratureSpec):
        """|S^(d-1)| integral_0^inf r^(d-1) w(r e_1) dr"""
        area = 2.0 * math.pi ** (d / 2.0) / gamma(d / 2.0)

        def g(r):
            pts = np.zeros((r.size, d))
            pts[:, 0] = r
            return area * r ** (d - 1) * omega.evaluate(pts)

        return self.quadrature.integrate_radial_1d(g, spec, start=0.0)

    def counterexample_study(
        self,
        alpha: float,
        beta: float,
        d: int,
        p: float = 1.0,
        spec: Optional[QuadratureSpec] = None,
    ) -> StudyReport:
        """Integrability of the oscillatory weight against divergence of its gradient integral"""
        if not (alpha > 0 and beta > 0) or d < 1:
            raise ValidationException(_("studies.validation.counterexample_params", alpha=alpha, beta=beta, d=d))
        check_exponent(p)
        omega = self.weights.make_catalog_weight("oscillatory", {"alpha": alpha, "beta": beta}, d)
        radial_spec = spec or self.quadrature.default_spec(1)
        direct = d <= 3
        direct_spec = self.quadrature.with_rel_tol(spec or self.quadrature.default_spec(min(d, 3)), self.settings.STUDY_REL_TOL)

        if direct:
            omega_integral = self.quadrature.integrate(omega.evaluate, d, spec=direct_spec)
        else:
            omega_integral = self._radial_weight_integral(omega, d, self.quadrature.with_rel_tol(radial_spec, self.settings.STUDY_REL_TOL))

        exponent = self.gradient_exponent(alpha, beta, d, p)
        radial = self.quadrature.integrate_radial_1d(lambda y: y**exponent * np.abs(np.cos(y)) ** p, radial_spec)

        quantities: Dict[str, Quantity] = {
            "omega_integral": omega_integral.to_quantity(),
            "gradient_radial": radial.to_quantity(),
            "radial_exponent": Quantity(value=exponent),
        }
        if direct:

            def gradient_integrand(x):
                return np.linalg.norm(omega.grad_log(x), axis=1) ** p * omega.evaluate(x)

            quantities["gradient_direct"] = self.quadrature.integrate(gradient_integrand, d, spec=direct_spec).to_quantity()

        integrable = omega_integral.status == IntegralStatus.CONVERGED
        divergent = radial.divergent
        consistent = integrable == (alpha > d / 2.0) and divergent == (exponent >= -1.0)
        logger.info(f"Counterexample alpha={alpha:g}, beta={beta:g}, d={d}: omega {omega_integral.status}, gradient {radial.status}")
        return StudyReport(
            study="counterexample",
            quantities=quantities,
            claims=[
                _backed("omega_integrable", "integral of w over R^d is finite", integrable, "omega_integral"),
                _backed("gradient_divergent", "integral of |grad w|^p w^(1-p) is infinite", divergent, "gradient_radial"),
                _backed("is_counterexample", "w is integrable while its gradient integral diverges", integrable and divergent, "omega_integral", "gradient_radial"),
                _backed(
                    "classification_consistent",
                    "integrable iff alpha > d/2, gradient divergent iff exponent >= -1",
                    consistent,
                    "omega_integral",
                    "gradient_radial",
                    "radial_exponent",
                ),
            ],
        )

    def appendix_osc_study(
        self,
        p: float = 1.0,
        theta: float = 0.5,
        seed: Optional[int] = None,
        equivalence_half_widths: Sequence[float] = (1.0, 2.0, 4.0, 8.0),
        n_samples: int = 2500,
        lipschitz_half_widths: Sequence[float] = (2.0, 4.0, 8.0),
        n_pairs: int = 4000,
        radii: Sequence[float] = (2.0, 4.0, 8.0, 16.0),
        ramp: float = 1.0,
    ) -> StudyReport:
        """Equivalent weights whose log-ratio is not Lipschitz, and the strict-inclusion signature of the hat sweep"""
        check_exponent(p)
        if not (0.0 < theta < 1.0):
            raise ValidationException(_("interp.validation.theta_open", theta=theta))
        seed = self.settings.DEFAULT_SEED if seed is None else seed
        pair = WeightPair(w0=self.weights.make_catalog_weight("one"), w1=self.weights.make_catalog_weight("appendix_osc"))
        rho = self.weights.make_catalog_weight("exp_norm")
        quantities: Dict[str, Quantity] = {}

        low, high = math.inf, 0.0
        for hw in equivalence_half_widths:
            sampled = self.weights.check_equivalence(pair.w1, rho, Box.cube(hw, 1), n_samples, seed=seed_from_label(f"equiv:{hw:g}", seed))
            low, high = min(low, sampled.low), max(high, sampled.high)
        quantities["equivalence_min"] = Quantity(value=low)
        quantities["equivalence_max"] = Quantity(value=high)
        equivalent = low >= math.exp(-1.0) * (1.0 - 1e-12) and high <= math.e * (1.0 + 1e-12)

        log_r = self.weights.log_ratio(pair)
        lips = []
        for hw in lipschitz_half_widths:
            lip = self.weights.estimate_lipschitz(log_r, Box.cube(hw, 1), n_pairs, seed=seed_from_label(f"lip:{hw:g}", seed))
            quantities[f"lipschitz@{hw:g}"] = Quantity(value=lip)
            lips.append(lip)
        # sampled constants need not be monotone in the box; compare the extremes only
        unbounded = len(lips) >= 2 and lips[-1] >= 10.0 * lips[0]

        omega = self.weights.omega_theta(pair, theta)
        omega_integral = self.quadrature.integrate(omega.evaluate, 1)
        quantities["omega_theta_integral"] = omega_integral.to_quantity()

        seminorms, w1ps, kept = [], [], []
        for radius in radii:
            outer = radius + ramp
            # |grad log r| ~ 2x exp(x^2) on the ramp
            if p * (outer * outer + math.log(2.0 * outer)) >= LOG_FLOAT_MAX:
                logger.info(f"Dropping R={radius:g}: |grad log r|^p overflows")
                continue
            hat = self.fields.make_hat(0.0, radius, ramp, dim=1)
            seminorm = self.norms.grad_seminorm(hat, pair, theta, p)
            w1p = self.norms.w1p_norm(hat, omega, p)
            quantities[f"seminorm@{radius:g}"] = seminorm.to_quantity()
            quantities[f"w1p@{radius:g}"] = w1p.to_quantity()
            seminorms.append(seminorm.value)
            w1ps.append(w1p.value)
            kept.append(radius)

        grows = len(seminorms) >= 2 and all(b > a for a, b in zip(seminorms, seminorms[1:]))
        stabilizes = False
        sweep_keys = [k for k in quantities if k.startswith(("seminorm@", "w1p@"))]
        if kept:
            # integral_{|x|>R} w_theta <= 2 e^theta exp(-theta R) / theta
            tail = 2.0 * math.exp(theta) * math.exp(-theta * kept[-1]) / theta
            quantities["tail_bound"] = Quantity(value=tail)
            stabilizes = tail < 0.01 * w1ps[-1] ** p
            sweep_keys.append("tail_bound")

        return StudyReport(
            study="appendix-osc",
            quantities=quantities,
            claims=[
                _backed("equivalent", "ratio to exp(-sqrt(1+x^2)) stays in [1/e, e]", equivalent, "equivalence_min", "equivalence_max"),
                _backed("log_ratio_not_lipschitz", "sampled Lipschitz constant of log r at the largest box exceeds 10x the smallest", unbounded, *[f"lipschitz@{hw:g}" for hw in lipschitz_half_widths]),
                _backed("omega_theta_integrable", "w_theta is integrable", omega_integral.converged, "omega_theta_integral"),
                _backed("seminorm_grows", "seminorm of hat_R increases with R", grows, *(sweep_keys or ["omega_theta_integral"])),
                _backed("w1p_stabilizes", "W^{1,p}(w_theta) norm of hat_R is within 1% of its limit", stabilizes, *(sweep_keys or ["omega_theta_integral"])),
                _backed("strict_inclusion", "the extra seminorm is unbounded where the W^{1,p} norm is not", grows and stabilizes, *(sweep_keys or ["omega_theta_integral"])),
            ],
        )

    def homogeneous_isometry(self, g: TestFunction, w: Weight, p: float, grid_step: float) -> HomogeneousCheck:
        """G = cumulative integral of g on a grid of step at most grid_step; G' by forward differences at the midpoints"""
        if g.dim != 1 or w.dim != 1:
            raise ValidationException(_("studies.validation.one_dimensional"))
        check_exponent(p)
        if not grid_step > 0:
            raise ValidationException(_("studies.validation.grid_step_positive"))
        h = grid_step
        x = _grid_through(g.support.lo[0] - 2.0 * h, g.support.hi[0] + 2.0 * h, g.breakpoints, h)
        dx = np.diff(x)
        big_g = cumulative_trapezoid(g.evaluate(x[:, None]), x, initial=0.0)
        derivative = np.diff(big_g) / dx
        mid = 0.5 * (x[1:] + x[:-1])
        g_mid = g.evaluate(mid[:, None])
        w_mid = w.evaluate(mid[:, None])

        residual = float(np.max(np.abs(derivative - g_mid)))
        if residual > MAX_RECONSTRUCTION_RESIDUAL:
            raise ValidationException(_("studies.validation.grid_too_coarse", residual=residual, step=h))
        derivative_norm = float(np.sum(dx * np.abs(derivative) ** p * w_mid)) ** (1.0 / p)
        function_norm = float(np.sum(dx * np.abs(g_mid) ** p * w_mid)) ** (1.0 / p)
        return HomogeneousCheck(derivative_norm=derivative_norm, function_norm=function_norm, residual=residual, grid_step=h)

    def homog1d_check(
        self,
        g: TestFunction,
        w: Weight,
        p: float,
        grid_step: float,
        tolerance: float = 1e-6,
        refine: bool = True,
    ) -> StudyReport:
        """||G'||_{L^p(w)} = ||g||_{L^p(w)} up to grid error, and its quadratic decay under refinement"""
        check = self.homogeneous_isometry(g, w, p, grid_step)
        quantities = {
            "derivative_norm": Quantity(value=check.derivative_norm),
            "function_norm": Quantity(value=check.function_norm),
            "relative_gap": Quantity(value=check.relative_gap),
            "residual": Quantity(value=check.residual),
        }
        claims = [_backed("isometry", "||G'||_{L^p(w)} equals ||g||_{L^p(w)}", check.relative_gap < tolerance, "derivative_norm", "function_norm", "relative_gap")]
        if refine:
            finer = self.homogeneous_isometry(g, w, p, grid_step / 2.0)
            quantities["residual_half_step"] = Quantity(value=finer.residual)
            if check.residual < EXACT_RESIDUAL:
                quadratic = True
            else:
                ratio = check.residual / max(finer.residual, sys.float_info.min)
                quantities["refinement_ratio"] = Quantity(value=ratio)
                quadratic = ratio >= 3.5
            claims.append(_backed("quadratic_refinement", "residual drops at least 3.5x when the grid step halves", quadratic, "residual", "residual_half_step"))
        return StudyReport(study="homog1d", quantities=quantities, claims=claims)

    def cutoff_remainder(self, phi: TestFunction, n: int) -> TestFunction:
        """phi - phi xi_n"""
        xi = self.fields.cutoff_xi(n, phi.dim)
        complement = ScalarField(
            dim=phi.dim,
            value=lambda x: 1.0 - xi.evaluate(x),
            gradient=lambda x: -xi.evaluate_gradient(x),
            label=f"1-{xi.label}",
        )
        return self.fields.multiply(phi, complement)

    def mollifier_error(self, phi: TestFunction, n: int, grid_step: float) -> float:
        """||phi - phi * eta_n||_{L^1}"""
        smooth = self.fields.mollify(phi, n, grid_step)
        diff = TestFunction(
            dim=phi.dim,
            value=lambda x: phi.evaluate(x) - smooth.evaluate(x),
            gradient=lambda x: phi.evaluate_gradient(x) - smooth.evaluate_gradient(x),
            support=smooth.support,
            label=f"{phi.label}-{smooth.label}",
        )
        one = self.weights.make_catalog_weight("one", dim=phi.dim)
        return self.norms.lp_norm(diff, one, 1.0).value

    def approx_sweep(
        self,
        phi: TestFunction,
        weights: Dict[str, Weight],
        p: float,
        ns: Sequence[int],
        smooth_phi: Optional[TestFunction] = None,
        mollify_ns: Sequence[int] = (),
        grid_step: Optional[float] = None,
    ) -> StudyReport:
        """Cutoff remainders ||phi - phi xi_n||_{W^{1,p}(nu)} and mollifier L^1 errors along n"""
        quantities: Dict[str, Quantity] = {}
        claims: List[Claim] = []
        for label, nu in weights.items():
            values = []
            for n in ns:
                report = self.norms.w1p_norm(self.cutoff_remainder(phi, n), nu, p)
                quantities[f"cutoff.{label}@{n}"] = report.to_quantity()
                values.append(report.value)
            keys = [f"cutoff.{label}@{n}" for n in ns]
            first, last = values[0], values[-1]
            claims.append(_backed(f"cutoff_non_increasing.{label}", "remainder norm does not increase with n", _non_increasing(values, self.settings.VERDICT_SLACK), *keys))
            claims.append(_backed(f"cutoff_vanishes.{label}", "last remainder is below 1e-3 of the first", first == 0.0 or last < CUTOFF_VANISH_RATIO * first, *keys))

        if smooth_phi is not None and mollify_ns:
            step = grid_step or 1.0 / (16 * max(mollify_ns))
            errors = []
            for n in mollify_ns:
                err = self.mollifier_error(smooth_phi, n, step)
                quantities[f"mollifier@{n}"] = Quantity(value=err)
                errors.append(err)
            halves = all(b <= 0.5 * a for a, b in zip(errors, errors[1:]))
            claims.append(_backed("mollifier_halves", "L^1 mollification error at least halves from n to 2n", halves, *[f"mollifier@{n}" for n in mollify_ns]))
        return StudyReport(study="approx-sweep", quantities=quantities, claims=claims)
