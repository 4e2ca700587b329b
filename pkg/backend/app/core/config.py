from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    LOG_LEVEL: str = "INFO"
    ARTIFACT_VERSION: str = "0.1.0"
    DEFAULT_SEED: int = 20240901
    DEFAULT_JOBS: int = 1
    REPORT_DIR: str = "reports"

    # Finite differences and probing
    FD_STEP_SCALE: float = 1e-5  # h = scale * (1 + |x|) per axis
    PROBE_HALF_WIDTH: float = 4.0
    PROBE_POINTS_PER_AXIS: int = 9

    # Quadrature defaults
    QUAD_MAX_RADIUS_EXPONENT: int = 20  # radii 2^0 .. 2^20
    QUAD_POINTS_1D: int = 64
    QUAD_POINTS_2D: int = 48
    QUAD_POINTS_3D: int = 24
    QUAD_REL_TOL: float = 1e-8
    QUAD_GROWTH_THRESHOLD: float = 1.5
    QUAD_DECAY_SLOPE_TOL: float = 0.02
    QUAD_COMPACT_PANEL_WIDTH: float = 1.0
    QUAD_RADIAL_PANEL_POINTS: int = 16
    STUDY_REL_TOL: float = 1e-4

    # Interpolation bounds
    VERDICT_SLACK: float = 1e-8
    BETA_MIN: float = 1e-3
    BETA_MAX: float = 5.0
    CP_BETA_MIN: float = 1e-4
    CP_BETA_MAX: float = 10.0
    T_GRID_POINTS: int = 81
    T_DECAY_TARGET: float = 1e-4


settings = Settings()


def get_settings() -> Settings:
    """Get settings instance"""
    return settings
