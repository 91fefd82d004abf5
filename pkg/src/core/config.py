"""
Settings - Environment-driven configuration.

Values come from the process environment (optionally seeded from a .env
file through python-dotenv); CLI flags override them per invocation.
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, validator


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


class Settings(BaseModel):
    """Runtime settings shared by the CLI, the services and the API."""

    log_level: str = Field(default="WARNING", description="Root log level")
    threads: int = Field(default=1, ge=1, description="Worker upper bound")
    progress: bool = Field(default=True, description="Show stderr progress bars")
    host: str = Field(default="127.0.0.1", description="API bind host")
    port: int = Field(default=8000, ge=1, le=65535, description="API bind port")

    @validator("log_level")
    def validate_log_level(cls, v):
        """Normalize and check the log level name."""
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from the environment.

        Returns:
            Settings populated from CHOW_* and FASTAPI_* variables.
        """
        load_dotenv()
        return cls(
            log_level=os.getenv("CHOW_LOG_LEVEL", "WARNING"),
            threads=int(os.getenv("CHOW_THREADS", "1")),
            progress=_env_flag("CHOW_PROGRESS", True),
            host=os.getenv("FASTAPI_HOST", "127.0.0.1"),
            port=int(os.getenv("FASTAPI_PORT", "8000")),
        )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the process-wide settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def override_settings(**changes) -> Settings:
    """
    Replace selected fields of the process-wide settings.

    Args:
        **changes: Field values to override (None values are ignored).

    Returns:
        The updated settings instance.
    """
    global _settings
    current = get_settings()
    updates = {k: v for k, v in changes.items() if v is not None}
    _settings = Settings.model_validate({**current.model_dump(), **updates})
    return _settings
