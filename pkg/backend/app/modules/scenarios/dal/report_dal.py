import csv
import json
import os
from typing import Any, Dict, Iterable, List

from pydantic import ValidationError

from app.core.base_model import ScenarioReport
from app.exceptions.exception import ConfigParseException
from app.middlewares.translation_manager import _
from app.modules.scenarios.schemas.scenario_schemas import ScenarioConfig

SUMMARY_COLUMNS = ["id", "kind", "status", "verdict", "key_quantities"]


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigParseException(_("config.parse_error", path=path, error=str(e)))
    try:
        return ScenarioConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigParseException(_("config.parse_error", path=path, error=str(e)))


def dumps_report(report: ScenarioReport) -> str:
    """Canonical JSON text of a report; identical inputs give identical bytes"""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def write_report(out_dir: str, report: ScenarioReport) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{report.id}.report.json")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_report(report))
    return path


def _format_quantities(summary: Dict[str, Any]) -> str:
    parts = []
    for key in sorted(summary):
        value = summary[key]
        parts.append(f"{key}={value:.10g}" if isinstance(value, float) else f"{key}={value}")
    return ";".join(parts)


def write_summary(out_dir: str, rows: Iterable[Dict[str, Any]]) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "summary.csv")
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({**row, "key_quantities": _format_quantities(row.get("key_quantities", {}))})
    return path


def summary_row(scenario_id: str, kind: str, status: str, verdict: bool, key_quantities: Dict[str, Any]) -> Dict[str, Any]:
    return {"id": scenario_id, "kind": kind, "status": status, "verdict": str(verdict).lower(), "key_quantities": key_quantities}


def read_summary(path: str) -> List[Dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
