from .norm_routes import router as norm_router

__all__ = ["norm_router"]
