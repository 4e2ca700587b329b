import numpy as np

from app.core.base_enums import ScenarioKind
from app.core.base_model import Claim, Quantity
from app.core.router import ScenarioContext, ScenarioOutcome, ScenarioRouter
from app.modules.discrete.dependencies import get_discrete_repo
from app.modules.discrete.models.discrete_model import DiscreteCouple, DiscreteOperator
from app.modules.discrete.schemas.discrete_schemas import GeneratorKind, OpnormParams, SemigroupParams, SteinWeissParams

router = ScenarioRouter(tags=["discrete"])


def _explicit_steinweiss(params: SteinWeissParams, context: ScenarioContext) -> ScenarioOutcome:
    repo = get_discrete_repo(context.settings)
    couple = DiscreteCouple(w0=params.w0, w1=params.w1, p0=params.p0, p1=params.p1)
    phi = np.asarray(params.phi_re, dtype=float) + 1j * np.asarray(params.phi_im or np.zeros(len(params.phi_re)), dtype=float)
    if couple.equal_exponents:
        check = repo.sw_equality_check(couple, params.theta, phi)
    else:
        check = repo.calderon_family_check(couple, params.theta, phi)
    p_theta, _w = repo.sw_weight(couple, params.theta)
    quantities = {
        "p_theta": Quantity(value=p_theta),
        "target": Quantity(value=check.target),
        "achieved": Quantity(value=check.achieved),
        "relative_gap": Quantity(value=check.relative_gap),
        "through_phi": Quantity(value=check.through_phi),
    }
    verdicts = {"equality": check.relative_gap <= params.tolerance, "passes_through_phi": check.through_phi <= params.tolerance * max(1.0, check.target)}
    claims = [Claim(text="family norm of the explicit family equals the l^p(w_theta) norm", verdict=verdicts["equality"], backed_by=["target", "achieved", "relative_gap"])]

    if couple.equal_exponents:
        sweep = repo.lp_logconvexity_sweep(couple, phi, params.sweep_thetas)
        verdicts["logconvexity"] = all(pt.holds for pt in sweep)
        for pt in sweep:
            quantities[f"sweep.norm@{pt.theta:.4g}"] = Quantity(value=pt.norm)
            quantities[f"sweep.bound@{pt.theta:.4g}"] = Quantity(value=pt.bound)
        claims.append(Claim(text="theta -> log ||phi||_{l^p(w_theta)} is convex", verdict=verdicts["logconvexity"], backed_by=[k for k in quantities if k.startswith("sweep.")]))
    return ScenarioOutcome(quantities=quantities, verdicts=verdicts, claims=claims, summary={"target": check.target, "achieved": check.achieved})


@router.scenario(ScenarioKind.STEINWEISS_DISCRETE, SteinWeissParams)
def steinweiss_scenario(params: SteinWeissParams, context: ScenarioContext) -> ScenarioOutcome:
    """Stein-Weiss equality of norms on finite weighted spaces"""
    if params.explicit:
        return _explicit_steinweiss(params, context)

    repo = get_discrete_repo(context.settings)
    quantities = {}
    worst = 0.0
    instances = 0
    for i, n in enumerate(params.sizes):
        for k, p in enumerate(params.ps):
            checks = repo.random_sw_suite(n, p, params.count, seed=context.seed + 1000 * i + k)
            gap = max(c.relative_gap for c in checks)
            quantities[f"max_gap.n{n}.p{p:g}"] = Quantity(value=gap)
            worst = max(worst, gap)
            instances += len(checks)
    quantities["max_relative_gap"] = Quantity(value=worst)
    quantities["instances"] = Quantity(value=float(instances))
    equality = worst <= params.tolerance
    return ScenarioOutcome(
        quantities=quantities,
        verdicts={"equality": equality},
        claims=[Claim(text=f"target = achieved to {params.tolerance:g} relative on every random instance", verdict=equality, backed_by=["max_relative_gap"])],
        summary={"instances": instances, "max_relative_gap": worst},
    )


@router.scenario(ScenarioKind.OPNORM_INTERP, OpnormParams)
def opnorm_scenario(params: OpnormParams, context: ScenarioContext) -> ScenarioOutcome:
    """Weighted l^1 operator norms interpolate log-convexly"""
    checks = get_discrete_repo(context.settings).random_opnorm_suite(params.count, params.n, params.thetas, seed=context.seed, signed=params.signed)
    failures = sum(1 for c in checks if not c.holds)
    worst_ratio = max(c.ratio for c in checks)
    holds = failures == 0
    return ScenarioOutcome(
        quantities={
            "checks": Quantity(value=float(len(checks))),
            "failures": Quantity(value=float(failures)),
            "max_ratio": Quantity(value=worst_ratio),
        },
        verdicts={"interpolation": holds},
        claims=[Claim(text="||T||_{w_theta} <= ||T||_{w0}^(1-theta) ||T||_{w1}^theta", verdict=holds, backed_by=["failures", "max_ratio"])],
        summary={"checks": len(checks), "failures": failures, "max_ratio": worst_ratio},
    )


def _generator(params: SemigroupParams, context: ScenarioContext) -> DiscreteOperator:
    repo = get_discrete_repo(context.settings)
    if params.matrix is not None:
        return DiscreteOperator(matrix=params.matrix)
    if params.generator == GeneratorKind.ZERO:
        return DiscreteOperator(matrix=np.zeros((params.n, params.n)))
    if params.generator == GeneratorKind.NEG_IDENTITY:
        return DiscreteOperator(matrix=-np.eye(params.n))
    return repo.discrete_laplacian(params.n)


@router.scenario(ScenarioKind.SEMIGROUP, SemigroupParams)
def semigroup_scenario(params: SemigroupParams, context: ScenarioContext) -> ScenarioOutcome:
    """Decay of e^{tL} g on the intermediate space against the interpolated bound"""
    generator = _generator(params, context)
    n = generator.n
    idx = np.arange(n)
    w0 = params.w0 if params.w0 is not None else np.ones(n)
    w1 = params.w1 if params.w1 is not None else np.exp(-np.abs(idx - n / 2) / params.decay_length)
    # default initial datum: unit mass at the centre
    g = params.g if params.g is not None else (idx == n // 2).astype(float)
    report = get_discrete_repo(context.settings).semigroup_decay_study(generator, w0, w1, params.theta, params.t0, params.times, g)

    quantities = {"initial": Quantity(value=report.initial)}
    for pt in report.points:
        quantities[f"measured@{pt.t:g}"] = Quantity(value=pt.measured)
        quantities[f"bound@{pt.t:g}"] = Quantity(value=pt.bound)
    return ScenarioOutcome(
        quantities=quantities,
        verdicts={"decay_bound": report.all_hold},
        claims=[Claim(text="||T(t)g||_{w_theta} <= ||T(t-t0)||_{w0}^(1-theta) ||T(t-t0)||_{w1}^theta ||T(t0)g||_{w_theta}", verdict=report.all_hold, backed_by=list(quantities))],
        summary={"times": len(report.points), "all_hold": report.all_hold},
    )
