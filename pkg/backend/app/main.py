import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from app.core.base_enums import ExitCode, ScenarioKind
from app.core.base_model import LabResponse
from app.core.config import get_settings
from app.core.router import ScenarioRegistry
from app.exceptions.exception import ValidationException
from app.exceptions.handlers import handle_exceptions
from app.middlewares.logging_middleware import setup_logging
from app.middlewares.translation_manager import _
from app.modules.discrete.routes import discrete_router
from app.modules.interp.routes import interp_router
from app.modules.norms.routes import norm_router
from app.modules.scenarios.dal.report_dal import summary_row, write_report, write_summary
from app.modules.scenarios.dependencies import get_runner
from app.modules.scenarios.schemas.scenario_schemas import Scenario
from app.modules.studies.routes import study_router


def create_registry() -> ScenarioRegistry:
    registry = ScenarioRegistry()
    registry.include_router(norm_router)
    registry.include_router(interp_router)
    registry.include_router(discrete_router)
    registry.include_router(study_router)
    return registry


registry = create_registry()

# Shortcut flags of the alias subcommands, forwarded when the scenario kind accepts them
_SHORTCUTS = {"p": float, "theta": float, "dim": int, "q": float}


def parse_param(item: str) -> tuple[str, Any]:
    """key=value with a JSON-decoded value; bare strings stay strings"""
    key, sep, raw = item.partition("=")
    if not sep or not key:
        raise ValidationException(_("cli.validation.param_format", item=item))
    try:
        return key, json.loads(raw)
    except json.JSONDecodeError:
        return key, raw


def collect_params(kind: ScenarioKind, args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = dict(parse_param(item) for item in args.param or [])
    fields = registry.get(kind).params_schema.model_fields
    for name in _SHORTCUTS:
        value = getattr(args, name, None)
        if value is None:
            continue
        if name == "p" and "ps" in fields and "p" not in fields:
            params["ps"] = [value]
        elif name in fields:
            params[name] = value
        else:
            raise ValidationException(_("cli.validation.flag_not_supported", flag=name, kind=kind.value))
    return params


@handle_exceptions
def run_command(args: argparse.Namespace) -> int:
    return get_runner(registry).run(args.config, out_dir=args.out, jobs=args.jobs, seed=args.seed)


@handle_exceptions
def scenario_command(args: argparse.Namespace) -> int:
    kind = ScenarioKind.from_value(args.kind)
    scenario = Scenario(id=args.id or kind.value, kind=kind, parameters=collect_params(kind, args), seed=args.seed)
    runner = get_runner(registry)
    runner.validate([scenario])
    run = runner.execute(scenario, args.seed)
    if run.report is None:
        print(LabResponse.error(error_code=run.exit_code, message=run.error_message or _("internal_error")).model_dump_json(indent=2))
        return run.exit_code
    if args.out:
        write_report(args.out, run.report)
        write_summary(args.out, [summary_row(run.id, run.kind, run.status.value, run.passed, run.summary)])
    print(LabResponse.success(data=run.report.model_dump(mode="json")).model_dump_json(indent=2))
    return int(ExitCode.OK if run.passed else ExitCode.VERDICT_FAILURE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lab", description="Numerical checks for complex interpolation of weighted Sobolev spaces")
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run every scenario of a JSON config")
    run_parser.add_argument("config", help="Path to the scenario config")
    run_parser.add_argument("--out", default=None, help="Report directory")
    run_parser.add_argument("--jobs", type=int, default=None, help="Parallel scenarios")
    run_parser.add_argument("--seed", type=int, default=None, help="Run seed for scenarios without their own")
    run_parser.set_defaults(func=run_command)

    for kind in registry.kinds:
        route = registry.get(kind)
        alias = subparsers.add_parser(kind.value, help=route.summary or None)
        alias.add_argument("--param", action="append", metavar="KEY=VALUE", help="Scenario parameter (JSON value)")
        alias.add_argument("--id", default=None)
        alias.add_argument("--seed", type=int, default=None)
        alias.add_argument("--out", default=None, help="Also write the report and summary here")
        for name, cast in _SHORTCUTS.items():
            alias.add_argument(f"--{name}", type=cast, default=None)
        alias.set_defaults(func=scenario_command, kind=kind.value)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level or get_settings().LOG_LEVEL)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
