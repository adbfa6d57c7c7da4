"""
Configuration
-------------
Run settings assembled from a .env file, an optional JSON config file,
POLYVERIFY_* environment variables and explicit overrides, later sources
winning.
"""

import json
import logging
import os
from typing import Any, Dict, Optional

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "POLYVERIFY_"
ENV_FIELDS = ("workers", "digits", "output_dir")


class Settings(BaseModel):
    """Enumeration budgets, precision and output location."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    workers: int = Field(1, ge=1)
    digits: int = Field(60, ge=30)
    verify_max: int = Field(100000, ge=1)
    kmax: int = Field(100, ge=1)
    series_length: int = Field(5000, ge=1)
    cusp_budget: int = Field(400, ge=1)
    output_dir: str = "./reports"


def _read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}", source=path)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {e}", source=path)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", source=path)
    return data


def _read_environment() -> Dict[str, Any]:
    values = {}
    for name in ENV_FIELDS:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is None or raw == "":
            continue
        if name == "output_dir":
            values[name] = raw
            continue
        try:
            values[name] = int(raw)
        except ValueError:
            raise ConfigError(f"{ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}", source="environment")
    return values


def load_settings(config_path: Optional[str] = None, **overrides: Any) -> Settings:
    """
    Build Settings from every configuration source.

    Args:
        config_path: Optional JSON file with Settings fields
        **overrides: Explicit values (CLI flags); None values are ignored

    Returns:
        Validated Settings

    Raises:
        ConfigError: On unreadable files, malformed values or unknown keys
    """
    load_dotenv(find_dotenv(usecwd=True))
    data: Dict[str, Any] = {}
    if config_path:
        data.update(_read_config_file(config_path))
    data.update(_read_environment())
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        settings = Settings(**data)
    except ValidationError as e:
        raise ConfigError(f"invalid settings: {e}", source=config_path or "environment")
    logger.debug("settings: %s", settings.model_dump())
    return settings
