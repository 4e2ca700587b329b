import asyncio
import logging
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.core.base_enums import ExitCode
from app.core.base_model import ScenarioReport
from app.core.config import Settings, get_settings
from app.core.router import ScenarioContext, ScenarioRegistry
from app.exceptions.exception import EvaluationException, LabException, ValidationException, VerdictFailureException
from app.middlewares.logging_middleware import scenario_logging
from app.middlewares.translation_manager import _
from app.modules.scenarios.dal.report_dal import load_config, summary_row, write_report, write_summary
from app.modules.scenarios.models.scenario_model import ScenarioRun, ScenarioStatus
from app.modules.scenarios.schemas.scenario_schemas import Scenario

logger = logging.getLogger(__name__)


def check_expectations(scenario: Scenario, report: ScenarioReport) -> List[str]:
    """Verdicts must equal their expected value (true when unlisted); listed quantities must carry the expected status"""
    failures = []
    for name, verdict in report.verdicts.items():
        expected = scenario.expect.verdicts.get(name, True)
        if verdict != expected:
            failures.append(f"verdict {name} is {str(verdict).lower()}, expected {str(expected).lower()}")
    for name in scenario.expect.verdicts:
        if name not in report.verdicts:
            failures.append(f"verdict {name} missing")
    for name, status in scenario.expect.statuses.items():
        quantity = report.quantities.get(name)
        if quantity is None:
            failures.append(f"quantity {name} missing")
        elif quantity.status != status:
            failures.append(f"quantity {name} is {quantity.status.value}, expected {status.value}")
    return failures


class ScenarioRunner:
    """Validates, executes and reports a list of scenarios"""

    def __init__(self, registry: ScenarioRegistry, settings: Optional[Settings] = None):
        self.registry = registry
        self.settings = settings or get_settings()

    def seed_for(self, scenario: Scenario, run_seed: Optional[int]) -> int:
        if scenario.seed is not None:
            return scenario.seed
        return self.settings.DEFAULT_SEED if run_seed is None else run_seed

    def validate(self, scenarios: Sequence[Scenario]) -> None:
        """Resolve every scenario's parameters before anything runs"""
        for scenario in scenarios:
            route = self.registry.get(scenario.kind)
            try:
                route.resolve(scenario.parameters)
            except ValidationError as e:
                raise ValidationException(_("scenarios.validation.invalid_params", id=scenario.id, error=str(e)))

    @scenario_logging
    def evaluate(self, scenario: Scenario, seed: int) -> Tuple[ScenarioReport, Dict[str, Any]]:
        route = self.registry.get(scenario.kind)
        outcome = route.run(scenario.parameters, ScenarioContext(seed=seed, settings=self.settings))
        return ScenarioReport(
            id=scenario.id,
            kind=scenario.kind.value,
            version=self.settings.ARTIFACT_VERSION,
            seed=seed,
            parameters=route.resolve(scenario.parameters),
            quantities=outcome.quantities,
            verdicts=outcome.verdicts,
            claims=outcome.claims,
        ), outcome.summary

    def execute(self, scenario: Scenario, run_seed: Optional[int]) -> ScenarioRun:
        run = ScenarioRun(id=scenario.id, kind=scenario.kind.value)
        run.start()
        try:
            report, summary = self.evaluate(scenario, self.seed_for(scenario, run_seed))
        except LabException as e:
            run.fail(e.message, e.exit_code)
            return run
        except ValidationError as e:
            run.fail(str(e), int(ExitCode.PARSE_ERROR))
            return run
        except Exception as e:
            logger.error(f"Traceback: {traceback.format_exc()}")
            run.fail(str(e), int(ExitCode.EVALUATION_ERROR))
            return run
        run.complete(report, summary, check_expectations(scenario, report))
        return run

    async def run_scenarios(self, scenarios: Sequence[Scenario], jobs: int = 1, run_seed: Optional[int] = None) -> List[ScenarioRun]:
        """Execute scenarios on a thread pool; results keep the input order"""
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
            futures = [loop.run_in_executor(executor, self.execute, scenario, run_seed) for scenario in scenarios]
            return list(await asyncio.gather(*futures))

    @staticmethod
    def exit_code(runs: Sequence[ScenarioRun]) -> ExitCode:
        codes = {run.exit_code for run in runs}
        for code in (ExitCode.PARSE_ERROR, ExitCode.EVALUATION_ERROR, ExitCode.VERDICT_FAILURE):
            if int(code) in codes:
                return code
        return ExitCode.OK

    def write_outputs(self, runs: Sequence[ScenarioRun], out_dir: str) -> None:
        """Serial report writing after all scenarios finished"""
        rows = []
        for run in runs:
            if run.report is not None:
                write_report(out_dir, run.report)
            rows.append(summary_row(run.id, run.kind, run.status.value, run.passed, run.summary))
        write_summary(out_dir, rows)

    def run(self, config_path: str, out_dir: Optional[str] = None, jobs: Optional[int] = None, seed: Optional[int] = None) -> ExitCode:
        config = load_config(config_path)
        self.validate(config.scenarios)
        run_seed = seed if seed is not None else config.seed
        out_dir = out_dir or self.settings.REPORT_DIR
        runs = asyncio.run(self.run_scenarios(config.scenarios, jobs or self.settings.DEFAULT_JOBS, run_seed))
        self.write_outputs(runs, out_dir)

        for run in runs:
            if run.status == ScenarioStatus.FAILED:
                logger.error(f"Scenario {run.id} raised: {run.error_message}")
            for failure in run.expectation_failures:
                logger.warning(f"Scenario {run.id}: {failure}")
        code = self.exit_code(runs)
        logger.info(f"Ran {len(runs)} scenarios into {out_dir}: exit {int(code)}")
        offending = [run.id for run in runs if not run.passed]
        detail = {"ids": offending}
        if code == ExitCode.PARSE_ERROR:
            raise ValidationException(_("scenarios.errors.invalid", ids=", ".join(offending)), detail=detail)
        if code == ExitCode.EVALUATION_ERROR:
            raise EvaluationException(_("scenarios.errors.evaluation_failed", ids=", ".join(offending)), detail=detail)
        if code == ExitCode.VERDICT_FAILURE:
            raise VerdictFailureException(_("scenarios.errors.verdict_failure", ids=", ".join(offending)), detail=detail)
        return code
