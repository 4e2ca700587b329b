from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.core.base_enums import BaseEnum, ExitCode
from app.core.base_model import ScenarioReport


class ScenarioStatus(str, BaseEnum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class ScenarioRun(BaseModel):
    """Execution record of one scenario within a run"""

    id: str
    kind: str
    status: ScenarioStatus = ScenarioStatus.PENDING
    report: Optional[ScenarioReport] = None
    summary: Dict[str, Any] = Field(default_factory=dict)
    expectation_failures: List[str] = Field(default_factory=list)
    error_message: Optional[str] = None
    exit_code: int = int(ExitCode.OK)

    def start(self) -> None:
        self.status = ScenarioStatus.RUNNING

    def complete(self, report: ScenarioReport, summary: Dict[str, Any], failures: List[str]) -> None:
        self.status = ScenarioStatus.COMPLETED
        self.report = report
        self.summary = summary
        self.expectation_failures = failures
        if failures:
            self.exit_code = int(ExitCode.VERDICT_FAILURE)

    def fail(self, error_message: str, exit_code: int) -> None:
        self.status = ScenarioStatus.FAILED
        self.error_message = error_message
        self.exit_code = exit_code

    def is_finished(self) -> bool:
        return self.status in (ScenarioStatus.COMPLETED, ScenarioStatus.FAILED)

    @property
    def passed(self) -> bool:
        return self.status == ScenarioStatus.COMPLETED and not self.expectation_failures
