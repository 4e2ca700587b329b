from app.modules.scenarios.models.scenario_model import ScenarioRun, ScenarioStatus
from app.modules.scenarios.repository.runner_repo import ScenarioRunner, check_expectations
from app.modules.scenarios.schemas.scenario_schemas import Expect, Scenario, ScenarioConfig

__all__ = ["ScenarioRun", "ScenarioStatus", "ScenarioRunner", "check_expectations", "Expect", "Scenario", "ScenarioConfig"]
