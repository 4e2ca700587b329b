from .v1 import norm_router

__all__ = ["norm_router"]
