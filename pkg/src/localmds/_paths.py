"""Centralized path resolution for the localmds package.

This is the ONLY module that touches __file__ or computes directory paths.
Every other module imports from here.

Environment variables:
    LOCALMDS_LOG_DIR — Directory for JSONL run logs. When unset, the
        ``defaults.log_directory`` config value is used; an empty value
        disables run logging.
"""

import os
from pathlib import Path

_PACKAGE_DIR = Path(__file__).resolve().parent


def _cfg(key: str) -> str:
    """Lazy config accessor to avoid circular imports at module level.

    Args:
        key: Dotted config key.

    Returns:
        The string config value.
    """
    from localmds.lib.config import get_str

    return get_str(key)


def cli_dir() -> Path:
    """Return the cli/ directory path."""
    return _PACKAGE_DIR / _cfg("directories.cli")


def defaults_path() -> Path:
    """Return the path to config/defaults.yaml.

    Resolved without the config layer, which loads from it.
    """
    return _PACKAGE_DIR / "config" / "defaults.yaml"


def theme_path() -> Path:
    """Return the path to cli/theme.yaml."""
    return cli_dir() / _cfg("filenames.theme")


def log_dir(explicit: "str | None" = None) -> str:
    """Return the run-log directory: explicit flag, then env, then config."""
    if explicit:
        return explicit
    env = os.environ.get(_cfg("env_vars.log_dir"))
    if env:
        return env
    return _cfg("defaults.log_directory")
