from app.modules.quadrature.models.quadrature_model import IntegralResult, QuadratureRule, QuadratureSpec
from app.modules.quadrature.repository.quadrature_repo import QuadratureRepo, check_finite
from app.modules.quadrature.schemas.quadrature_schemas import QuadratureOverride

__all__ = ["IntegralResult", "QuadratureRule", "QuadratureSpec", "QuadratureRepo", "QuadratureOverride", "check_finite"]
