"""
Configuration management for the laboratory.
Loads defaults from config/config.yaml and overrides from environment variables.
"""

from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "config.yaml"


class GeometryConfig(BaseModel):
    """Tolerance policy shared by the floating-point modules."""

    eps: float = Field(default=1e-9, gt=0.0, lt=1.0)
    solver_residual: float = Field(default=1e-12, gt=0.0)


class DynamicsConfig(BaseModel):
    """Douglas-Rachford iteration and flow defaults."""

    relaxation: float = Field(default=0.5, gt=0.0, le=1.0)
    stop_tol: float = Field(default=1e-10, gt=0.0)
    max_iter: int = Field(default=10_000, ge=1)
    step_size: float = Field(default=1e-2, gt=0.0)
    t_max: float = Field(default=50.0, gt=0.0)
    divergence_bound: float = 1e8
    cluster_factor: float = 100.0


class TransformConfig(BaseModel):
    """Polytope-family transform and cycle search defaults."""

    max_steps: int = Field(default=10_000, ge=1)
    coord_bound: int = Field(default=5, ge=1)
    max_members: int = Field(default=4, ge=1)
    max_vertices: int = Field(default=6, ge=1)
    sampled_directions: int = Field(default=2000, ge=1)


class EnclosingConfig(BaseModel):
    """Minimal enclosing ball defaults."""

    brute_force_limit: int = 12
    contact_tol: float = 1e-7


class LinkageConfig(BaseModel):
    """Disjoint-path search budgets."""

    node_budget: int = Field(default=10_000_000, ge=1)
    pairing_cap: int = Field(default=100_000, ge=1)


class UnfoldingConfig(BaseModel):
    """Net search defaults."""

    budget: int = Field(default=500, ge=1)
    tol: float = Field(default=1e-9, gt=0.0, lt=1.0)


class LabConfig(BaseModel):
    """All module sections of the YAML configuration."""

    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    dynamics: DynamicsConfig = Field(default_factory=DynamicsConfig)
    transform: TransformConfig = Field(default_factory=TransformConfig)
    enclosing: EnclosingConfig = Field(default_factory=EnclosingConfig)
    linkage: LinkageConfig = Field(default_factory=LinkageConfig)
    unfolding: UnfoldingConfig = Field(default_factory=UnfoldingConfig)


class Settings(BaseSettings):
    """Process settings loaded from environment and .env."""

    seed: int = Field(default=0, alias="VADU_SEED")
    jobs: int = Field(default=1, ge=1, alias="VADU_JOBS")
    log_level: str = Field(default="INFO", alias="VADU_LOG_LEVEL")
    config_path: Optional[Path] = Field(default=None, alias="VADU_CONFIG")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


def load_config(config_path: Optional[Path] = None) -> LabConfig:
    """
    Load configuration from YAML file.

    Args:
        config_path: Path to config file (defaults to config/config.yaml)

    Returns:
        Parsed configuration

    Raises:
        FileNotFoundError: If the file does not exist
    """
    if config_path is None:
        config_path = DEFAULT_CONFIG_PATH

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, "r") as f:
        raw = yaml.safe_load(f) or {}

    return LabConfig.model_validate(raw)


def get_settings() -> Settings:
    """Get application settings."""
    return Settings()
