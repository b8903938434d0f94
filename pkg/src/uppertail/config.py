"""Configuration for the uppertail toolkit."""

from enum import Enum
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class LogFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class LPBackendName(str, Enum):
    TABLEAU = "tableau"
    HIGHS = "highs"


class Settings(BaseSettings):
    """Toolkit configuration, read from ``UPTAIL_*`` environment variables or ``.env``."""

    model_config = SettingsConfigDict(
        env_prefix="UPTAIL_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # Ignore unrelated entries sharing the .env file
    )

    # Logging
    log_level: str = "INFO"
    log_format: LogFormat = LogFormat.TEXT

    # Execution
    threads: int = 1

    # Linear programming
    lp_backend: LPBackendName = LPBackendName.TABLEAU
    lp_max_iterations: int = 10_000
    lp_float_tolerance: float = 1e-9

    # Enumeration guards
    oracle_max_vertices: int = 6
    oracle_max_dim: int = 2
    subcomplex_max_vertices: int = 10
    subcomplex_max_labeled: int = 200_000

    # Sampling
    uniform_chunk: int = 1 << 20

    # M* search
    mstar_max_probes: int = 64

    # Output
    csv_schema: str = "uppertail/1"


@lru_cache()
def get_settings() -> Settings:
    return Settings()
