from app.modules.studies.models.study_model import HomogeneousCheck, StudyReport
from app.modules.studies.repository.study_repo import StudyRepo

__all__ = ["HomogeneousCheck", "StudyReport", "StudyRepo"]
