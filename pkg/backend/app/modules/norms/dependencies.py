from typing import Optional

from app.core.config import Settings, get_settings
from app.modules.norms.repository.norm_repo import NormRepo


def get_norm_repo(settings: Optional[Settings] = None) -> NormRepo:
    """NormRepo wired to the current settings"""
    return NormRepo(settings or get_settings())
