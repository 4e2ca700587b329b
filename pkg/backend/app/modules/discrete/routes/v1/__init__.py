from .discrete_routes import router as discrete_router

__all__ = ["discrete_router"]
