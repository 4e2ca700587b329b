import json
from typing import Any, Dict, Union

from pydantic import Field

from app.core.base_model import RequestSchema
from app.exceptions.exception import ValidationException
from app.middlewares.translation_manager import _


class CatalogSpec(RequestSchema):
    """A catalog entry addressed as "name:key=value,..." or as a mapping"""

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)

    def to_text(self) -> str:
        if not self.params:
            return self.name
        body = ",".join(f"{k}={json.dumps(v)}" for k, v in sorted(self.params.items()))
        return f"{self.name}:{body}"


def _parse_value(raw: str) -> Any:
    raw = raw.strip()
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def parse_catalog_spec(spec: Union[str, Dict[str, Any], CatalogSpec]) -> CatalogSpec:
    """Parse "oscillatory:alpha=1,beta=2", "gauss:1" or {"name": "gauss", "a": 1}"""
    if isinstance(spec, CatalogSpec):
        return spec
    if isinstance(spec, dict):
        data = dict(spec)
        if "name" not in data:
            raise ValidationException(_("catalog.validation.missing_name"), detail=spec)
        name = str(data.pop("name"))
        params = data.pop("params", None) or {}
        params.update(data)
        return CatalogSpec(name=name, params=params)
    if not isinstance(spec, str) or not spec.strip():
        raise ValidationException(_("catalog.validation.malformed", spec=spec))

    name, _sep, body = spec.strip().partition(":")
    params: Dict[str, Any] = {}
    positional = []
    if body.strip():
        for item in body.split(","):
            if not item.strip():
                continue
            if "=" in item:
                key, value = item.split("=", 1)
                params[key.strip()] = _parse_value(value)
            else:
                positional.append(_parse_value(item))
    if positional:
        params["_positional"] = positional
    return CatalogSpec(name=name.strip(), params=params)
