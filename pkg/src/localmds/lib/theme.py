"""theme — ANSI colour roles for CLI output.

Colour definitions live in ``cli/theme.yaml`` and are read on first use.
Nothing is coloured when the target stream is not a TTY, so piped output
(CSV sweeps, JSON) stays byte-clean.
"""

from __future__ import annotations

import sys
from typing import Any, Optional

from localmds._paths import theme_path
from localmds.lib.yaml_loader import load_yaml

_PLAIN_KEYS = ("bold", "dim", "reset")


class Theme:
    """Role-to-ANSI mapping loaded lazily from the theme file."""

    def __init__(self) -> None:
        self._resolved: Optional[dict[str, str]] = None

    def _load(self) -> dict[str, str]:
        path = theme_path()
        raw = load_yaml(path) if path.is_file() else None
        if not raw:
            return {}
        ansi: dict[str, str] = raw.get("ansi", {})
        resolved = {role: ansi.get(name, "") for role, name in raw.get("roles", {}).items()}
        for key in _PLAIN_KEYS:
            resolved[key] = ansi.get(key, "")
        return resolved

    @property
    def resolved(self) -> dict[str, str]:
        """The role-to-code mapping, loaded on first access."""
        if self._resolved is None:
            self._resolved = self._load()
        return self._resolved

    @staticmethod
    def _is_tty(stream: Any) -> bool:
        target = stream or sys.stderr
        return hasattr(target, "isatty") and target.isatty()

    def colorize(self, text: str, role: str, *, stream: Any = None) -> str:
        """Wrap ``text`` in the codes for ``role`` when ``stream`` is a TTY.

        Args:
            text: Text to colour.
            role: Semantic role such as 'error' or 'success'.
            stream: Stream checked for TTY; defaults to sys.stderr.

        Returns:
            The coloured or unchanged text.
        """
        code = self.resolved.get(role, "") if self._is_tty(stream) else ""
        if not code:
            return text
        return f"{code}{text}{self.resolved.get('reset', '')}"


_theme = Theme()


def colorize(text: str, role: str, *, stream: Any = None) -> str:
    """Colour text using the process-wide theme."""
    return _theme.colorize(text, role, stream=stream)
