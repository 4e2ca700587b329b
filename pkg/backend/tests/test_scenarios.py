import json
import os

import pytest

from app.core.base_enums import ExitCode, IntegralStatus, ScenarioKind
from app.core.base_model import Quantity, ScenarioReport
from app.core.router import ScenarioContext
from app.exceptions.exception import ConfigParseException, NotFoundException, ValidationException, VerdictFailureException
from app.modules.norms.dependencies import get_norm_repo
from app.modules.scenarios import Expect, Scenario, ScenarioRun, ScenarioStatus, check_expectations
from app.modules.scenarios.dal.report_dal import SUMMARY_COLUMNS, dumps_report, load_config, read_summary

HAND = {"w0": [1.0, 4.0], "w1": [1.0, 1.0], "p0": 2.0, "p1": 2.0, "theta": 0.5, "phi_re": [1.0, 1.0]}


def hand_scenario(scenario_id="hand", **kwargs):
    return {"id": scenario_id, "kind": "steinweiss-discrete", "parameters": HAND, **kwargs}


def test_registry_serves_every_kind(registry):
    assert set(registry.kinds) == set(ScenarioKind)
    with pytest.raises(NotFoundException):
        registry.get("no-such-kind")


def test_check_expectations():
    report = ScenarioReport(
        id="x",
        kind="norm",
        version="0",
        seed=1,
        quantities={"m": Quantity(value=None, status=IntegralStatus.DIVERGENT)},
        verdicts={"a": True, "b": False},
    )
    assert check_expectations(Scenario(id="x", kind="norm", expect=Expect(verdicts={"b": False})), report) == []
    failures = check_expectations(Scenario(id="x", kind="norm"), report)
    assert failures == ["verdict b is false, expected true"]
    failures = check_expectations(Scenario(id="x", kind="norm", expect=Expect(verdicts={"b": False, "c": True}, statuses={"m": "converged"})), report)
    assert failures == ["verdict c missing", "quantity m is divergent, expected converged"]


def test_evaluate_is_deterministic(runner):
    scenario = Scenario.model_validate({"id": "sw", "kind": "steinweiss-discrete", "parameters": {"sizes": [3], "ps": [2.0], "count": 5}})
    first, _summary = runner.evaluate(scenario, 42)
    second, _summary = runner.evaluate(scenario, 42)
    assert dumps_report(first) == dumps_report(second)
    assert first.seed == 42
    assert first.parameters["count"] == 5
    assert first.parameters["tolerance"] == 1e-10


def test_seed_precedence(runner, settings):
    own = Scenario(id="a", kind="cp", seed=7)
    other = Scenario(id="b", kind="cp")
    assert runner.seed_for(own, 99) == 7
    assert runner.seed_for(other, 99) == 99
    assert runner.seed_for(other, None) == settings.DEFAULT_SEED


def test_execute_records_failures(runner):
    run = runner.execute(Scenario(id="bad", kind="semigroup", parameters={"generator": "zero", "n": 2, "t0": 0.5, "times": [0.25]}), None)
    assert run.status == ScenarioStatus.FAILED
    assert run.exit_code == int(ExitCode.PARSE_ERROR)
    assert run.report is None
    assert run.is_finished()


@pytest.mark.asyncio
async def test_run_scenarios_keeps_order(runner):
    scenarios = [
        Scenario.model_validate(hand_scenario("first")),
        Scenario.model_validate({"id": "second", "kind": "cp", "parameters": {"ps": [2.0]}}),
        Scenario.model_validate({"id": "third", "kind": "opnorm-interp", "parameters": {"count": 20, "n": 3}}),
    ]
    runs = await runner.run_scenarios(scenarios, jobs=3, run_seed=5)
    assert [run.id for run in runs] == ["first", "second", "third"]
    assert all(run.passed for run in runs)
    assert runner.exit_code(runs) == ExitCode.OK


@pytest.mark.asyncio
async def test_parallel_and_serial_reports_match(runner):
    scenarios = [Scenario.model_validate({"id": f"op{k}", "kind": "opnorm-interp", "parameters": {"count": 10, "n": 3}, "seed": k}) for k in range(3)]
    serial = await runner.run_scenarios(scenarios, jobs=1)
    parallel = await runner.run_scenarios(scenarios, jobs=3)
    assert [dumps_report(r.report) for r in serial] == [dumps_report(r.report) for r in parallel]


@pytest.mark.parametrize(
    "codes, expected",
    [
        ([0, 0], ExitCode.OK),
        ([0, 1], ExitCode.VERDICT_FAILURE),
        ([1, 3], ExitCode.EVALUATION_ERROR),
        ([3, 2, 1], ExitCode.PARSE_ERROR),
    ],
)
def test_exit_code_priority(runner, codes, expected):
    runs = [ScenarioRun(id=str(i), kind="cp", exit_code=code) for i, code in enumerate(codes)]
    assert runner.exit_code(runs) == expected


def test_empty_config(runner, write_config, tmp_path):
    out = tmp_path / "out"
    assert runner.run(write_config([]), out_dir=str(out)) == ExitCode.OK
    assert read_summary(str(out / "summary.csv")) == []
    with open(out / "summary.csv", encoding="utf-8") as f:
        assert f.readline().strip() == ",".join(SUMMARY_COLUMNS)


def test_run_writes_reports(runner, write_config, tmp_path):
    out = tmp_path / "out"
    assert runner.run(write_config([hand_scenario()], seed=11), out_dir=str(out), jobs=2) == ExitCode.OK
    with open(out / "hand.report.json", encoding="utf-8") as f:
        report = json.load(f)
    assert report["seed"] == 11
    assert report["verdicts"]["equality"] is True
    assert list(report) == sorted(report)
    rows = read_summary(str(out / "summary.csv"))
    assert rows[0]["id"] == "hand"
    assert rows[0]["verdict"] == "true"
    assert "target=1.732050808" in rows[0]["key_quantities"]


def test_negative_control_fails_the_run(runner, write_config, tmp_path):
    out = tmp_path / "out"
    config = write_config([hand_scenario("ok"), hand_scenario("negative", expect={"verdicts": {"equality": False}})])
    with pytest.raises(VerdictFailureException) as excinfo:
        runner.run(config, out_dir=str(out))
    assert excinfo.value.exit_code == 1
    assert excinfo.value.detail == {"ids": ["negative"]}
    assert os.path.exists(out / "negative.report.json")
    assert [row["verdict"] for row in read_summary(str(out / "summary.csv"))] == ["true", "false"]


def test_invalid_parameters_stop_the_run(runner, write_config, tmp_path):
    out = tmp_path / "out"
    with pytest.raises(ValidationException):
        runner.run(write_config([{"id": "x", "kind": "cp", "parameters": {"ps": [0.5]}}]), out_dir=str(out))
    assert not os.path.exists(out)


@pytest.mark.parametrize(
    "raw",
    [
        "{not json",
        json.dumps({"scenarios": [{"id": "a", "kind": "cp"}, {"id": "a", "kind": "cp"}]}),
        json.dumps({"scenarios": [{"id": "a", "kind": "unknown"}]}),
        json.dumps({"scenarios": [{"id": "a", "kind": "cp", "extra": 1}]}),
    ],
)
def test_config_parse_errors(write_config, raw):
    with pytest.raises(ConfigParseException) as excinfo:
        load_config(write_config(None, raw=raw))
    assert excinfo.value.exit_code == 2


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigParseException):
        load_config(str(tmp_path / "missing.json"))


def test_non_finite_values_serialize_as_null():
    report = ScenarioReport(id="x", kind="norm", version="0", seed=0, quantities={"m": Quantity(value=float("inf"), status=IntegralStatus.DIVERGENT)})
    assert json.loads(dumps_report(report))["quantities"]["m"]["value"] is None


def test_default_suite_parses():
    path = os.path.join(os.path.dirname(__file__), "..", "..", "configs", "default_suite.json")
    config = load_config(path)
    assert len(config.scenarios) == 42
    assert {s.kind for s in config.scenarios} == set(ScenarioKind)


def test_routes_use_the_context_settings(registry, settings):
    narrow = settings.model_copy(update={"CP_BETA_MAX": 0.01})
    route = registry.get(ScenarioKind.CP)
    default = route.run({"ps": [2.0]}, ScenarioContext(seed=1, settings=settings))
    restricted = route.run({"ps": [2.0]}, ScenarioContext(seed=1, settings=narrow))
    assert default.quantities["beta[2]"].value > 0.04
    assert restricted.quantities["beta[2]"].value <= 0.01
    assert restricted.quantities["cp[2]"].value > default.quantities["cp[2]"].value
    assert restricted.verdicts["grid_agreement"] is True


def test_repository_dependencies_accept_settings(settings):
    custom = settings.model_copy(update={"QUAD_MAX_RADIUS_EXPONENT": 6})
    repo = get_norm_repo(custom)
    assert repo.settings is custom
    assert repo.quadrature.default_spec(1).radii[-1] == 64.0
    assert get_norm_repo().settings is settings


DEFAULT_SUITE = os.path.join(os.path.dirname(__file__), "..", "..", "configs", "default_suite.json")
SUITE_SAMPLE = [
    "sandwich-06",
    "cp-constants",
    "norm-lp-gauss",
    "norm-mtq-endpoint-divergent",
    "steinweiss-hand",
    "opnorm-signed",
    "semigroup-scalar",
    "counterexample-d1",
    "counterexample-not-integrable",
    "appendix-osc",
    "homog1d-hat",
    "homog1d-bump-gauss",
    "approx-sweep",
]


def test_default_suite_sample_passes_for_any_job_count(runner, write_config, tmp_path):
    with open(DEFAULT_SUITE, encoding="utf-8") as f:
        suite = json.load(f)
    scenarios = [s for s in suite["scenarios"] if s["id"] in SUITE_SAMPLE]
    assert {s["kind"] for s in scenarios} == {k.value for k in ScenarioKind}
    config = write_config(scenarios, seed=suite["seed"])

    outputs = {}
    for jobs in (1, 2):
        out = tmp_path / f"jobs{jobs}"
        assert runner.run(config, out_dir=str(out), jobs=jobs) == ExitCode.OK
        outputs[jobs] = {name: (out / name).read_bytes() for name in sorted(os.listdir(out))}

    assert len(outputs[1]) == len(SUITE_SAMPLE) + 1
    assert outputs[1] == outputs[2]
    rows = read_summary(str(tmp_path / "jobs1" / "summary.csv"))
    assert [row["id"] for row in rows] == [s["id"] for s in scenarios]
    assert all(row["verdict"] == "true" for row in rows)
