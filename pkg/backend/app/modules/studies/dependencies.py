from typing import Optional

from app.core.config import Settings, get_settings
from app.modules.studies.repository.study_repo import StudyRepo


def get_study_repo(settings: Optional[Settings] = None) -> StudyRepo:
    return StudyRepo(settings or get_settings())
