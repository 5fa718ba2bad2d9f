"""Configuration management for q-Rational Explorer."""

import os
from pathlib import Path
from typing import Any
from unittest.mock import patch

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=False)

    @classmethod
    def for_testing(
        cls,
        use_env_vars: bool = True,
        **overrides: Any,
    ) -> "Settings":
        """Create Settings instance for testing with .env file disabled.

        Args:
            use_env_vars: Whether to use environment variables (default: True)
            **overrides: Override specific settings values
        """
        kwargs = {"_env_file": None}

        if use_env_vars:
            instance = cls(**kwargs)  # type: ignore
        else:
            # A cleared environment yields the declared defaults
            with patch.dict(os.environ, {}, clear=True):
                instance = cls(**kwargs)  # type: ignore

        for key, value in overrides.items():
            if hasattr(instance, key):
                setattr(instance, key, value)

        return instance

    output_dir: Path = Field(
        default=Path("."),
        alias="QRAT_OUTPUT_DIR",
        description="Directory receiving scan output files",
    )
    default_jobs: int = Field(
        default=1, ge=1, alias="QRAT_JOBS", description="Default scan worker count"
    )
    trace_iteration_cap: int = Field(
        default=64,
        ge=1,
        alias="QRAT_TRACE_ITERATION_CAP",
        description="Round limit of the trace-type reduction",
    )
    brute_force_max_vertices: int = Field(
        default=24,
        ge=0,
        alias="QRAT_BRUTE_FORCE_MAX_VERTICES",
        description="Largest quiver handled by brute-force closure enumeration",
    )
    shard_size: int = Field(
        default=256, ge=1, alias="QRAT_SHARD_SIZE", description="Inputs per scan shard"
    )
    random_seed: int = Field(
        default=20240611, alias="QRAT_SEED", description="Seed of random word suites"
    )
    log_level: str = Field(
        default="WARNING", alias="QRAT_LOG_LEVEL", description="Default log level"
    )

    def resolve_output(self, out: str | None, default_name: str) -> Path:
        """Place bare file names (or the default name) under output_dir."""
        path = Path(out) if out else Path(default_name)
        if path.is_absolute() or path.parent != Path("."):
            return path
        return self.output_dir / path
