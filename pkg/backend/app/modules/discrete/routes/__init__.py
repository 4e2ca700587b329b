from .v1 import discrete_router

__all__ = ["discrete_router"]
