import json

import pytest

from app.core.base_enums import ScenarioKind
from app.exceptions.exception import ValidationException
from app.main import build_parser, collect_params, main, parse_param

HAND_ARGS = ["--param", "w0=[1, 4]", "--param", "w1=[1, 1]", "--param", "p0=2", "--param", "p1=2", "--param", "phi_re=[1, 1]", "--theta", "0.5"]


@pytest.mark.parametrize(
    "item, expected",
    [("p=2", ("p", 2)), ("ps=[1, 2.5]", ("ps", [1, 2.5])), ("w0=one", ("w0", "one")), ("signed=true", ("signed", True)), ("w1=gauss:a=1", ("w1", "gauss:a=1"))],
)
def test_parse_param(item, expected):
    assert parse_param(item) == expected


@pytest.mark.parametrize("item", ["noequals", "=3"])
def test_parse_param_rejects(item):
    with pytest.raises(ValidationException):
        parse_param(item)


def test_p_shortcut_becomes_ps_for_cp():
    args = build_parser().parse_args(["cp", "--p", "2"])
    assert collect_params(ScenarioKind.CP, args) == {"ps": [2.0]}


def test_unsupported_shortcut():
    args = build_parser().parse_args(["opnorm-interp", "--dim", "2"])
    with pytest.raises(ValidationException):
        collect_params(ScenarioKind.OPNORM_INTERP, args)


def test_every_kind_has_a_subcommand():
    parser = build_parser()
    for kind in ScenarioKind:
        assert parser.parse_args([kind.value]).kind == kind.value


def test_scenario_subcommand(capsys, tmp_path):
    out = tmp_path / "out"
    assert main(["steinweiss-discrete", *HAND_ARGS, "--id", "hand", "--out", str(out)]) == 0
    envelope = json.loads(capsys.readouterr().out)
    assert envelope["error_code"] == 0
    assert envelope["data"]["verdicts"]["equality"] is True
    assert envelope["data"]["parameters"]["theta"] == 0.5
    assert (out / "hand.report.json").exists()
    assert (out / "summary.csv").exists()


def test_scenario_subcommand_rejects_parameters(capsys):
    assert main(["cp", "--param", "ps=[0.5]"]) == 2
    assert json.loads(capsys.readouterr().out)["error_code"] == 2


def test_run_subcommand(write_config, tmp_path):
    config = write_config([{"id": "hand", "kind": "steinweiss-discrete", "parameters": {"w0": [1, 4], "w1": [1, 1], "p0": 2, "p1": 2, "phi_re": [1, 1]}}])
    assert main(["run", config, "--out", str(tmp_path / "out"), "--jobs", "2"]) == 0
    assert (tmp_path / "out" / "hand.report.json").exists()


def test_run_missing_config(capsys, tmp_path):
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    assert json.loads(capsys.readouterr().out)["error_code"] == 2
