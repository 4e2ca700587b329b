from .v1 import interp_router

__all__ = ["interp_router"]
