from app.core.base_enums import ScenarioKind
from app.core.router import ScenarioContext, ScenarioOutcome, ScenarioRouter
from app.modules.studies.dependencies import get_study_repo
from app.modules.studies.models.study_model import StudyReport
from app.modules.studies.schemas.study_schemas import AppendixOscParams, ApproxSweepParams, CounterexampleParams, Homog1dParams

router = ScenarioRouter(tags=["studies"])


def _outcome(report: StudyReport) -> ScenarioOutcome:
    verdicts = report.verdicts
    return ScenarioOutcome(
        quantities=dict(report.quantities),
        verdicts=verdicts,
        claims=list(report.claims),
        summary={"study": report.study, "claims_true": sum(verdicts.values()), "claims": len(verdicts)},
    )


@router.scenario(ScenarioKind.COUNTEREXAMPLE, CounterexampleParams)
def counterexample_scenario(params: CounterexampleParams, context: ScenarioContext) -> ScenarioOutcome:
    """Integrable oscillatory weight whose gradient integral diverges"""
    repo = get_study_repo(context.settings)
    spec = repo.quadrature.spec_for(min(params.dim, 3), params.quadrature) if params.quadrature else None
    return _outcome(repo.counterexample_study(params.alpha, params.beta, params.dim, params.p, spec))


@router.scenario(ScenarioKind.APPENDIX_OSC, AppendixOscParams)
def appendix_osc_scenario(params: AppendixOscParams, context: ScenarioContext) -> ScenarioOutcome:
    """Equivalent weights with a non-Lipschitz log-ratio"""
    report = get_study_repo(context.settings).appendix_osc_study(
        p=params.p,
        theta=params.theta,
        seed=context.seed,
        equivalence_half_widths=params.equivalence_half_widths,
        n_samples=params.n_samples,
        lipschitz_half_widths=params.lipschitz_half_widths,
        n_pairs=params.n_pairs,
        radii=params.radii,
        ramp=params.ramp,
    )
    return _outcome(report)


@router.scenario(ScenarioKind.HOMOG1D, Homog1dParams)
def homog1d_scenario(params: Homog1dParams, context: ScenarioContext) -> ScenarioOutcome:
    """Antiderivative map is an isometry onto the homogeneous space"""
    repo = get_study_repo(context.settings)
    g = repo.fields.test_function_from_spec(params.g, 1)
    w = repo.weights.weight_from_spec(params.weight, 1)
    return _outcome(repo.homog1d_check(g, w, params.p, params.grid_step, tolerance=params.tolerance, refine=params.refine))


@router.scenario(ScenarioKind.APPROX_SWEEP, ApproxSweepParams)
def approx_sweep_scenario(params: ApproxSweepParams, context: ScenarioContext) -> ScenarioOutcome:
    """Cutoff and mollifier convergence along n"""
    repo = get_study_repo(context.settings)
    phi = repo.fields.test_function_from_spec(params.phi, params.dim)
    weights = {}
    for ref in params.weights:
        w = repo.weights.weight_from_spec(ref, params.dim)
        weights[w.label] = w
    smooth = repo.fields.test_function_from_spec(params.smooth_phi, params.dim) if params.smooth_phi is not None else None
    report = repo.approx_sweep(phi, weights, params.p, params.ns, smooth_phi=smooth, mollify_ns=params.mollify_ns, grid_step=params.grid_step)
    return _outcome(report)
