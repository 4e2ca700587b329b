from typing import Optional

from app.core.config import Settings, get_settings
from app.modules.interp.repository.interp_repo import InterpRepo


def get_interp_repo(settings: Optional[Settings] = None) -> InterpRepo:
    """InterpRepo wired to the current settings"""
    return InterpRepo(settings or get_settings())
