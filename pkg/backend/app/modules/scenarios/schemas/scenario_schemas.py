from typing import Any, Dict, List, Optional

from pydantic import Field, model_validator

from app.core.base_enums import IntegralStatus, ScenarioKind
from app.core.base_model import RequestSchema


class Expect(RequestSchema):
    """Expected verdicts and quantity statuses; verdicts not listed must be true"""

    verdicts: Dict[str, bool] = Field(default_factory=dict)
    statuses: Dict[str, IntegralStatus] = Field(default_factory=dict)


class Scenario(RequestSchema):
    id: str = Field(min_length=1)
    kind: ScenarioKind
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    expect: Expect = Field(default_factory=Expect)


class ScenarioConfig(RequestSchema):
    """Top-level config file: a flat scenario list"""

    seed: Optional[int] = None
    scenarios: List[Scenario] = Field(default_factory=list)

    @model_validator(mode="after")
    def _unique_ids(self) -> "ScenarioConfig":
        seen = set()
        for scenario in self.scenarios:
            if scenario.id in seen:
                raise ValueError(f"duplicate scenario id '{scenario.id}'")
            seen.add(scenario.id)
        return self
