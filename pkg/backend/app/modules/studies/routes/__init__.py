from .v1 import study_router

__all__ = ["study_router"]
