import os
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field

ENV_PREFIX = "KERNELWEDGE_"


class Settings(BaseModel):
    """Process-wide defaults. CLI flags override these."""

    tol: float = Field(default=1e-12, ge=0.0, description="Comparison tolerance for Sf <= f and classification.")
    violation_tol: float = Field(default=1e-10, gt=0.0, description="Largest violation a property trial may report and still pass.")
    seed: int = Field(default=42, ge=0, lt=2**64)
    trials: int = Field(default=1000, ge=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"


def load_settings(env_file: str = None) -> Settings:
    """Read settings from the environment, loading a .env file first if present."""
    load_dotenv(env_file)
    overrides = {}
    for name in Settings.model_fields:
        value = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if value is not None and value != "":
            overrides[name] = value.upper() if name == "log_level" else value
    return Settings.model_validate(overrides)
