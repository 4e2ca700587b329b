import math

from app.core.base_enums import IntegralStatus, ScenarioKind
from app.core.base_model import Claim, Quantity
from app.core.router import ScenarioContext, ScenarioOutcome, ScenarioRouter
from app.modules.fields.repository.field_repo import FieldRepo
from app.modules.interp.dependencies import get_interp_repo
from app.modules.interp.models.interp_model import FamilyParams
from app.modules.interp.schemas.interp_schemas import CpParams, VerifyMainParams

router = ScenarioRouter(tags=["interp"])

# Relative tolerance of the algebraic boundary identity.
IDENTITY_TOL = 1e-10


@router.scenario(ScenarioKind.VERIFY_MAIN, VerifyMainParams)
def verify_main(params: VerifyMainParams, context: ScenarioContext) -> ScenarioOutcome:
    """lower <= family_upper <= C_p * wcal for one (phi, pair, theta, p)"""
    repo = get_interp_repo(context.settings)
    spec = repo.quadrature.spec_for(params.dim, params.quadrature)
    phi = FieldRepo(context.settings).test_function_from_spec(params.phi, params.dim)
    pair = repo.weights.pair_from_specs(params.w0, params.w1, params.dim)
    report = repo.sandwich_check(phi, pair, params.theta, params.p, spec, seed=context.seed)

    status = report.status
    quantities = {
        "lower": Quantity(value=report.lower, status=status),
        "family_upper": Quantity(value=report.family_upper, status=status),
        "argmin_beta": Quantity(value=report.argmin_beta, status=status),
        "cp": Quantity(value=report.cp),
        "wcal": Quantity(value=report.wcal, status=status),
        "cp_wcal": Quantity(value=report.cp * report.wcal, status=status),
        "lipschitz_log_r": Quantity(value=report.lipschitz_log_r),
    }
    verdicts = {"verdict_left": report.verdict_left, "verdict_right": report.verdict_right}
    claims = [
        Claim(text="lower <= family_upper", verdict=report.verdict_left, backed_by=["lower", "family_upper"]),
        Claim(text="family_upper <= cp * wcal", verdict=report.verdict_right, backed_by=["family_upper", "cp_wcal"]),
    ]

    if status == IntegralStatus.CONVERGED:
        samples = repo.sample_family(phi, pair, spec)
        family = FamilyParams(beta=report.argmin_beta, theta=params.theta, p=params.p)
        omega = repo.weights.omega_theta(pair, params.theta)
        base = repo.norms.lp_integral(phi, omega, params.p, spec).value
        worst = 0.0
        for j in (0, 1):
            a = j - params.theta
            for t in params.boundary_ts:
                expected = math.exp(params.p * family.beta * (a * a - t * t)) * base
                got = repo.boundary_parts(samples, family, j, t).function
                worst = max(worst, abs(got - expected) / expected if expected > 0 else abs(got))
        quantities["boundary_identity_residual"] = Quantity(value=worst)
        verdicts["boundary_identity"] = worst <= IDENTITY_TOL
        claims.append(Claim(text="L^p part of the boundary norm is exp(p beta ((j-theta)^2 - t^2)) ||phi||^p", verdict=verdicts["boundary_identity"], backed_by=["boundary_identity_residual"]))

    if params.logconvexity:
        check = repo.logconvexity_check(phi, pair, params.theta, params.p, spec)
        quantities["w1p_theta"] = Quantity(value=check.lhs, status=check.status)
        quantities["w1p_geometric_mean"] = Quantity(value=check.rhs, status=check.status)
        verdicts["logconvexity"] = check.verdict
        claims.append(Claim(text="W^{1,p}(w_theta) <= W^{1,p}(w0)^(1-theta) W^{1,p}(w1)^theta", verdict=check.verdict, backed_by=["w1p_theta", "w1p_geometric_mean"]))

    if params.q is not None:
        check = repo.smaller_space_check(phi, pair, params.theta, params.p, params.q, spec)
        quantities["smaller_space_bound"] = Quantity(value=check.rhs, status=check.status)
        verdicts["smaller_space"] = check.verdict
        claims.append(Claim(text="family_upper <= C_p (w1p^p + M(theta,q)^p ||phi||^p)^(1/p)", verdict=check.verdict, backed_by=["family_upper", "smaller_space_bound"]))

    return ScenarioOutcome(
        quantities=quantities,
        verdicts=verdicts,
        claims=claims,
        summary={"lower": report.lower, "family_upper": report.family_upper, "cp_wcal": report.cp * report.wcal},
    )


@router.scenario(ScenarioKind.CP, CpParams)
def cp_scenario(params: CpParams, context: ScenarioContext) -> ScenarioOutcome:
    """C_p by golden section against a dense beta grid"""
    repo = get_interp_repo(context.settings)
    quantities = {}
    agree = True
    above_two = True
    values = []
    for p in params.ps:
        result = repo.cp_minimizer(p)
        oracle = repo.cp_grid_oracle(p, params.grid_step)
        values.append(result.value)
        quantities[f"cp[{p:g}]"] = Quantity(value=result.value)
        quantities[f"beta[{p:g}]"] = Quantity(value=result.beta)
        quantities[f"grid[{p:g}]"] = Quantity(value=oracle.value)
        # the grid never undercuts the true minimum
        agree = agree and result.value <= oracle.value + 1e-10 and oracle.value - result.value <= params.grid_tolerance
        above_two = above_two and result.value > 2.0
    monotone = all(b <= a + 1e-12 for a, b in zip(values, values[1:])) if sorted(params.ps) == list(params.ps) else True
    verdicts = {"grid_agreement": agree, "above_two": above_two, "non_increasing": monotone}
    return ScenarioOutcome(
        quantities=quantities,
        verdicts=verdicts,
        claims=[Claim(text=f"C_p > 2 for p in {params.ps}", verdict=above_two, backed_by=[k for k in quantities if k.startswith("cp[")])],
        summary={"cp": values[0] if len(values) == 1 else values},
    )
