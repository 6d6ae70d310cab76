from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration settings."""
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # Logging Configuration
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"  # empty string disables the file handler
    LOG_MAX_BYTES: int = 10485760  # 10MB
    LOG_BACKUP_COUNT: int = 5

    # Output
    OUTPUT_DIR: str = "."

    # Experiment cells run on a thread pool; results are gathered in submission order
    MAX_WORKERS: int = Field(default=4, ge=1)

    def resolve_output(self, path: str) -> str:
        """Resolve a relative output path against OUTPUT_DIR."""
        candidate = Path(path)
        if candidate.is_absolute():
            return str(candidate)
        return str(Path(self.OUTPUT_DIR) / candidate)


class NumericsPolicy(BaseModel):
    """
    Numerical constants shared by every module.

    Deliberately not a BaseSettings: no result may depend on the environment.
    """
    model_config = ConfigDict(frozen=True)

    noise_floor: float = 1e-13
    grid_divisor: int = 20  # evaluation step is q / grid_divisor
    central_fraction: float = 0.5  # errors are measured on the central half of the span
    band_cutoff_max: float = 1e-14
    sinc_series_cutoff: float = 1e-6
    fd_step: float = 1e-6
    derivative_floor: float = 1e-12
    envelope_factor: float = 10.0
    envelope_rate_scale: float = 0.8
    lp_growth_tolerance: float = 0.2
    boundedness_spread_cap: float = 10.0
    lambda_ceiling: float = 1.0


settings = Settings()
numerics = NumericsPolicy()
