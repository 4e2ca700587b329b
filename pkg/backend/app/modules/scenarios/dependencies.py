from app.core.config import get_settings
from app.core.router import ScenarioRegistry
from app.modules.scenarios.repository.runner_repo import ScenarioRunner


def get_runner(registry: ScenarioRegistry) -> ScenarioRunner:
    return ScenarioRunner(registry, get_settings())
