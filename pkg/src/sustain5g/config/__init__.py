from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="SUSTAIN5G_")

    threads: int = Field(1, ge=1, description="Cap on parallel sweep/Monte Carlo lanes")
    quad_tolerance: float = Field(1e-10, gt=0)
    max_evaluations: int = Field(1_000_000, ge=21)
    mc_block_size: int = Field(65_536, ge=1, description="Trials per deterministic Monte Carlo lane")
    log_level: str = Field("WARNING")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings are read from the environment once per process."""
    return Settings()
