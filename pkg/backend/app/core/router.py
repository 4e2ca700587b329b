from typing import Any, Callable, Dict, List, Optional, Type

from pydantic import BaseModel, ConfigDict, Field

from app.core.base_enums import ScenarioKind
from app.core.base_model import Claim, DomainModel, Quantity, RequestSchema
from app.core.config import Settings, get_settings
from app.exceptions.exception import NotFoundException
from app.middlewares.translation_manager import _


class ScenarioContext(DomainModel):
    """What a handler may depend on besides its parameters"""

    seed: int
    settings: Settings = Field(default_factory=get_settings)


class ScenarioOutcome(BaseModel):
    """Handler result; the runner adds id, kind, version, seed and parameters"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    quantities: Dict[str, Quantity] = Field(default_factory=dict)
    verdicts: Dict[str, bool] = Field(default_factory=dict)
    claims: List[Claim] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)


Handler = Callable[[Any, ScenarioContext], ScenarioOutcome]


class ScenarioRoute(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: ScenarioKind
    params_schema: Type[RequestSchema]
    handler: Handler
    summary: str = ""

    def run(self, raw_params: Dict[str, Any], context: ScenarioContext) -> ScenarioOutcome:
        params = self.params_schema.model_validate(raw_params)
        return self.handler(params, context)

    def resolve(self, raw_params: Dict[str, Any]) -> Dict[str, Any]:
        """Full parameter set with defaults, as written into reports"""
        return self.params_schema.model_validate(raw_params).model_dump(mode="json")


class ScenarioRouter:
    """Groups the scenario kinds served by one module"""

    def __init__(self, tags: Optional[List[str]] = None):
        self.tags = tags or []
        self.routes: Dict[ScenarioKind, ScenarioRoute] = {}

    def scenario(self, kind: ScenarioKind, params_schema: Type[RequestSchema], summary: str = "") -> Callable[[Handler], Handler]:
        def decorator(func: Handler) -> Handler:
            self.routes[kind] = ScenarioRoute(kind=kind, params_schema=params_schema, handler=func, summary=summary or (func.__doc__ or "").strip())
            return func

        return decorator


class ScenarioRegistry:
    """Kind -> route table assembled from module routers"""

    def __init__(self):
        self.routes: Dict[ScenarioKind, ScenarioRoute] = {}

    def include_router(self, router: ScenarioRouter) -> None:
        self.routes.update(router.routes)

    def get(self, kind: str | ScenarioKind) -> ScenarioRoute:
        try:
            key = ScenarioKind.from_value(kind if isinstance(kind, str) else kind.value)
        except ValueError:
            raise NotFoundException(_("scenarios.errors.unknown_kind", kind=kind))
        if key not in self.routes:
            raise NotFoundException(_("scenarios.errors.unknown_kind", kind=kind))
        return self.routes[key]

    @property
    def kinds(self) -> List[ScenarioKind]:
        return sorted(self.routes, key=lambda k: k.value)
