from .study_routes import router as study_router

__all__ = ["study_router"]
