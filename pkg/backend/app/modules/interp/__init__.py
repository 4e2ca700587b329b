from app.modules.interp.models.interp_model import FamilyParams, SandwichReport
from app.modules.interp.repository.interp_repo import InterpRepo, cp_objective, sandwich_catalog

__all__ = ["FamilyParams", "SandwichReport", "InterpRepo", "cp_objective", "sandwich_catalog"]
