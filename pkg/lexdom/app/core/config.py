from pathlib import Path
from typing import List, Optional, Union

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # App Settings
    APP_NAME: str = "lexdom"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # Execution Settings
    WORKERS: int = 1
    SHOW_PROGRESS: bool = False

    # Size caps
    GRAPH_CAP: int = 64  # hard: adjacency rows are single 64-bit words
    ENUMERATION_CAP: int = 6
    PRODUCT_CAP: int = 36
    FUNCTION_PRODUCT_CAP: int = 12
    MIN_SET_PRODUCT_CAP: int = 20

    # Default corpus
    CORPUS_G_N_MAX: int = 4
    CORPUS_H_N_MAX: int = 3
    CORPUS_SINGLE_N_MAX: int = 5
    FAMILY_N_MIN: int = 3
    FAMILY_N_MAX: int = 10
    FAMILY_H_POOL: List[str] = [
        "complete:2",
        "path:3",
        "path:4",
        "cycle:4",
        "empty:2",
        "empty:3",
        "star:3",
    ]
    GRID_TARGET_LIMIT: int = 10
    HUNT_N_MAX: int = 5

    # Memo
    CACHE_MAX_ENTRIES: int = 4096

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="LEXDOM_",
        extra="ignore",
    )


def load_settings(env_file: Optional[Union[str, Path]] = None) -> Settings:
    """Build settings from the environment plus an optional key=value file"""
    if env_file is None:
        return Settings()
    path = Path(env_file)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    return Settings(_env_file=path)


settings = Settings()


def apply_settings(overrides: Settings) -> None:
    """Copy every field of ``overrides`` onto the shared settings instance"""
    for name in Settings.model_fields:
        setattr(settings, name, getattr(overrides, name))
