#!/usr/bin/env python3
"""
Configuration management for the Volterra toolkit.
Defaults come from config.yaml; environment variables (optionally from .env)
override them.
"""

import os
import logging
import pathlib
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

# Load environment variables from .env file at the project root
config_dir = pathlib.Path(__file__).parent
project_root = config_dir.parent
env_file = project_root / ".env"
load_dotenv(str(env_file))

DEFAULT_CONFIG_PATH = config_dir / "config.yaml"

logger = logging.getLogger(__name__)


def _load_yaml(path: pathlib.Path) -> Dict[str, Any]:
    """Load the yaml defaults; a missing file yields an empty mapping"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    except FileNotFoundError:
        logger.warning(f"Config file not found: {path}; using built-in defaults")
        return {}


def _env_int(name: str, fallback: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return fallback
    try:
        return int(raw.strip())
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


class Settings:
    """Toolkit settings with yaml defaults and environment overrides"""

    def __init__(self, config_path: Optional[str] = None):
        path = pathlib.Path(config_path or os.getenv("VOLTERRA_CONFIG") or DEFAULT_CONFIG_PATH)
        self.config_path = path
        config = _load_yaml(path)

        logging_cfg = config.get("logging", {}) or {}
        limits = config.get("limits", {}) or {}
        probe = config.get("probe", {}) or {}
        dynamics = config.get("dynamics", {}) or {}
        corpus = config.get("corpus", {}) or {}
        workers = config.get("workers", {}) or {}

        # Logging
        self.log_level = os.getenv("VOLTERRA_LOG_LEVEL", str(logging_cfg.get("level", "INFO"))).upper()

        # Enumeration and solver caps
        self.character_enumeration_cap = _env_int(
            "VOLTERRA_CHARACTER_CAP", int(limits.get("character_enumeration_cap", 20))
        )
        self.isomorphism_cap = _env_int("VOLTERRA_ISOMORPHISM_CAP", int(limits.get("isomorphism_cap", 8)))
        self.derivation_solver_cap = _env_int("VOLTERRA_SOLVER_CAP", int(limits.get("derivation_solver_cap", 12)))
        self.extremal_exhaustive_cap = int(limits.get("extremal_exhaustive_cap", 6))
        self.witness_cap = int(limits.get("witness_cap", 10))
        self.exact_bit_cap = int(limits.get("exact_bit_cap", 8 * 1024 * 1024))

        # Local-derivation probe
        self.probe_samples = int(probe.get("samples", 200))
        self.probe_denominator_bound = int(probe.get("denominator_bound", 97))

        # Float dynamics
        self.simplex_tolerance = float(dynamics.get("simplex_tolerance", 1e-12))
        self.clamp_threshold = float(dynamics.get("clamp_threshold", 1e-15))

        # Corpus generation
        self.random_denominator = int(corpus.get("random_denominator", 64))

        # Worker pool
        self.threads = _env_int("VOLTERRA_THREADS", int(workers.get("threads", 4)))


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get toolkit settings"""
    return settings


def reload_settings(config_path: Optional[str] = None) -> Settings:
    """Rebuild the global settings (after env changes or with another file)"""
    global settings
    settings = Settings(config_path)
    validate_settings()
    return settings


def validate_settings():
    """Validate settings ranges"""
    if settings.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ValueError(f"Unknown log level: {settings.log_level}")
    for name in (
        "character_enumeration_cap",
        "isomorphism_cap",
        "derivation_solver_cap",
        "extremal_exhaustive_cap",
        "exact_bit_cap",
        "probe_samples",
        "random_denominator",
        "threads",
    ):
        if getattr(settings, name) < 1:
            raise ValueError(f"{name} must be positive, got {getattr(settings, name)}")
    if settings.witness_cap < 0:
        raise ValueError("witness_cap must be non-negative")
    if settings.probe_denominator_bound < 2:
        raise ValueError("probe denominator bound must be at least 2")
    if not (0 < settings.clamp_threshold <= settings.simplex_tolerance):
        raise ValueError("clamp_threshold must lie in (0, simplex_tolerance]")


# Validate on import
validate_settings()
