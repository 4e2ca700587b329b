from .models.field_model import TestFunction
from .repository.field_repo import FieldRepo

__all__ = ["TestFunction", "FieldRepo"]
