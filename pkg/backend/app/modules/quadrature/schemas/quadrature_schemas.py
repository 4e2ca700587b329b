from typing import Optional

from pydantic import Field

from app.core.base_model import RequestSchema


class QuadratureOverride(RequestSchema):
    """Per-scenario overrides of the default quadrature spec"""

    points_per_axis: Optional[int] = Field(default=None, ge=2)
    rel_tol: Optional[float] = Field(default=None, gt=0, le=1e-2)
    growth_threshold: Optional[float] = Field(default=None, gt=1)
    max_radius_exponent: Optional[int] = Field(default=None, ge=1, le=40)
    decay_slope_tol: Optional[float] = Field(default=None, gt=0)
    compact_panel_width: Optional[float] = Field(default=None, gt=0)
    radial_panel_points: Optional[int] = Field(default=None, ge=2)
