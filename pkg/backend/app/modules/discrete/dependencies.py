from typing import Optional

from app.core.config import Settings, get_settings
from app.modules.discrete.repository.discrete_repo import DiscreteRepo


def get_discrete_repo(settings: Optional[Settings] = None) -> DiscreteRepo:
    return DiscreteRepo(settings or get_settings())
