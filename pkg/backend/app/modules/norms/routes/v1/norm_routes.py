from app.core.base_enums import IntegralStatus, NormKind, ScenarioKind
from app.core.base_model import Claim, Quantity
from app.core.router import ScenarioContext, ScenarioOutcome, ScenarioRouter
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _
from app.modules.fields.repository.field_repo import FieldRepo
from app.modules.norms.dependencies import get_norm_repo
from app.modules.norms.models.norm_model import NormReport
from app.modules.norms.schemas.norm_schemas import NormScenarioParams

router = ScenarioRouter(tags=["norms"])


def _require(value, name: str):
    if value is None:
        raise ValidationException(_("scenarios.validation.missing_param", param=name))
    return value


def _compute(params: NormScenarioParams, context: ScenarioContext) -> NormReport:
    repo = get_norm_repo(context.settings)
    spec = repo.quadrature.spec_for(params.dim, params.quadrature)
    if params.norm == NormKind.MTQ:
        pair = repo.weights.pair_from_specs(_require(params.w0, "w0"), _require(params.w1, "w1"), params.dim)
        return repo.m_theta_q(pair, _require(params.theta, "theta"), _require(params.q, "q"), spec)

    phi = FieldRepo(context.settings).test_function_from_spec(_require(params.phi, "phi"), params.dim)
    if params.norm == NormKind.LP:
        return repo.lp_norm(phi, repo.weights.weight_from_spec(_require(params.weight, "weight"), params.dim), params.p, spec)
    if params.norm == NormKind.W1P:
        return repo.w1p_norm(phi, repo.weights.weight_from_spec(_require(params.weight, "weight"), params.dim), params.p, spec)

    pair = repo.weights.pair_from_specs(_require(params.w0, "w0"), _require(params.w1, "w1"), params.dim)
    theta = _require(params.theta, "theta")
    if params.norm == NormKind.SEMINORM:
        return repo.grad_seminorm(phi, pair, theta, params.p, spec)
    return repo.wcal_norm(phi, pair, theta, params.p, spec)


@router.scenario(ScenarioKind.NORM, NormScenarioParams)
def norm_scenario(params: NormScenarioParams, context: ScenarioContext) -> ScenarioOutcome:
    """Evaluate one weighted norm or M(theta, q)"""
    report = _compute(params, context)
    quantities = {"norm": report.to_quantity()}
    for name, value in report.components.items():
        quantities[f"component.{name}"] = Quantity(value=value, status=report.status)
    verdicts = {"finite": report.status != IntegralStatus.DIVERGENT}
    claims = []
    if params.norm == NormKind.MTQ and params.sweep_thetas:
        repo = get_norm_repo(context.settings)
        pair = repo.weights.pair_from_specs(params.w0, params.w1, params.dim)
        spec = repo.quadrature.spec_for(params.dim, params.quadrature)
        checks = repo.m_theta_q_logconvexity(pair, params.q, params.sweep_thetas, spec)
        for check in checks:
            quantities[f"sweep.mtq@{check.parameter:g}"] = Quantity(value=check.lhs, status=check.status)
            quantities[f"sweep.bound@{check.parameter:g}"] = Quantity(value=check.rhs, status=check.status)
        verdicts["mtq_logconvexity"] = all(c.verdict for c in checks)
        claims.append(Claim(text="M(theta, q) <= M(0, q)^(1-theta) M(1, q)^theta", verdict=verdicts["mtq_logconvexity"], backed_by=[k for k in quantities if k.startswith("sweep.")]))
    return ScenarioOutcome(
        quantities=quantities,
        verdicts=verdicts,
        claims=claims,
        summary={"norm": report.value, "status": report.status.value},
    )
