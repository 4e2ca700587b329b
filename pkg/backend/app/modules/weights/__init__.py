from .models.weight_model import Box, ScalarField, VectorField, Weight, WeightPair
from .repository.weight_repo import SampledRange, WeightRepo
from .schemas.weight_schemas import CatalogSpec, parse_catalog_spec

__all__ = [
    # Models
    "Box",
    "ScalarField",
    "VectorField",
    "Weight",
    "WeightPair",
    # Repository
    "WeightRepo",
    "SampledRange",
    # Schemas
    "CatalogSpec",
    "parse_catalog_spec",
]
