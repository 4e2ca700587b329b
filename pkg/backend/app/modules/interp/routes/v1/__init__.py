from .interp_routes import router as interp_router

__all__ = ["interp_router"]
