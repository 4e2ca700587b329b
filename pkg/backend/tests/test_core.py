import json

import pytest
from pydantic import BaseModel, ValidationError, field_validator

from app.core.base_enums import ExitCode, IntegralStatus, ScenarioKind, worst_status
from app.core.config import Settings
from app.exceptions.exception import QuadratureException, ValidationException, VerdictFailureException
from app.exceptions.handlers import handle_exceptions
from app.middlewares.translation_manager import _


def test_translation_formats_arguments():
    assert _("weights.validation.unknown_name", name="foo") == "Unknown weight 'foo'"


def test_translation_falls_back_to_key():
    assert _("no.such.key") == "no.such.key"
    assert _("weights.validation") == "weights.validation"


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("QUAD_REL_TOL", "1e-6")
    monkeypatch.setenv("DEFAULT_JOBS", "4")
    settings = Settings()
    assert settings.QUAD_REL_TOL == 1e-6
    assert settings.DEFAULT_JOBS == 4


def test_worst_status():
    assert worst_status() == IntegralStatus.CONVERGED
    assert worst_status(IntegralStatus.CONVERGED, IntegralStatus.INCONCLUSIVE) == IntegralStatus.INCONCLUSIVE
    assert worst_status(IntegralStatus.DIVERGENT, IntegralStatus.INCONCLUSIVE) == IntegralStatus.DIVERGENT


def test_scenario_kind_from_value():
    assert ScenarioKind.from_value("verify-main") == ScenarioKind.VERIFY_MAIN
    with pytest.raises(ValueError):
        ScenarioKind.from_value("verify_main")


def test_quadrature_exception_carries_node():
    e = QuadratureException("bad", node=[0.5])
    assert e.node == [0.5]
    assert e.detail == {"node": [0.5]}
    assert e.exit_code == ExitCode.EVALUATION_ERROR


class _Positive(BaseModel):
    x: float

    @field_validator("x")
    @classmethod
    def _positive(cls, v: float) -> float:
        if v <= 0:
            raise ValidationException("x must be positive")
        return v


@pytest.mark.parametrize(
    "error, expected",
    [
        (ValidationException("bad"), ExitCode.PARSE_ERROR),
        (VerdictFailureException("off", detail={"ids": ["a"]}), ExitCode.VERDICT_FAILURE),
        (RuntimeError("boom"), ExitCode.EVALUATION_ERROR),
    ],
)
def test_handle_exceptions_maps_exit_codes(capsys, error, expected):
    @handle_exceptions
    def command():
        raise error

    assert command() == int(expected)
    envelope = json.loads(capsys.readouterr().out)
    assert envelope["error_code"] == int(expected)


def test_handle_exceptions_maps_validation_errors(capsys):
    @handle_exceptions
    def command():
        _Positive(x="not a number")

    assert command() == int(ExitCode.PARSE_ERROR)
    with pytest.raises(ValidationError):
        _Positive(x="not a number")


def test_lab_exceptions_pass_through_models():
    with pytest.raises(ValidationException):
        _Positive(x=-1.0)


def test_handle_exceptions_passes_results():
    @handle_exceptions
    def command():
        return ExitCode.VERDICT_FAILURE

    assert command() == 1
