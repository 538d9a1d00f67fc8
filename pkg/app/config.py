#!/usr/bin/env python3
"""
Engine Settings
Tunable constants for searches, Fourier truncation and rendering.
Every field has a default; SPECTRAL_* environment variables or a .env file
may override them.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class EngineSettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="SPECTRAL_", env_file=".env", extra="ignore")

    # Hadamard witness search
    search_bound_factor: int = Field(default=3, ge=1)

    # Fourier transform truncation
    mu_hat_eps: float = Field(default=1e-12, gt=0)
    max_truncation_depth: int = Field(default=200, ge=1)

    # Numeric verification
    residual_depth: int = Field(default=4, ge=1)
    completeness_depth: int = Field(default=6, ge=0)
    completeness_grid: int = Field(default=5, ge=1)
    completeness_threshold: float = 0.98

    # Rendering
    attractor_depth: int = Field(default=8, ge=1)
    attractor_max_points: int = 10**7
    svg_viewport: int = 1024
    heatmap_size: int = 512
    heatmap_box: tuple[float, float, float, float] = (-4.0, 4.0, -4.0, 4.0)

    float_digits: int = 12
    log_level: str = "WARNING"


@lru_cache
def get_settings() -> EngineSettings:
    return EngineSettings()
