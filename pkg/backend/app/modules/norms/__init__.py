from app.modules.norms.models.norm_model import InequalityCheck, NormReport
from app.modules.norms.repository.norm_repo import NormRepo

__all__ = ["InequalityCheck", "NormReport", "NormRepo"]
