"""Small helpers shared by the engines, reports and CLI."""

from __future__ import annotations

import logging
import re
from pathlib import Path

LOGGER = logging.getLogger(__name__)

_DIGITS = re.compile(r"(\d+)")


def ensure_directory(path: Path) -> None:
    """Ensure a directory exists."""

    if not path.exists():
        LOGGER.debug("Creating directory %s", path)
        path.mkdir(parents=True, exist_ok=True)


def natural_key(text: str) -> tuple[tuple[int, int | str], ...]:
    """Sort key treating digit runs as numbers, so ``r2`` sorts before ``r10``."""

    parts = _DIGITS.split(text)
    return tuple((0, int(part)) if part.isdigit() else (1, part) for part in parts if part)


def format_offset(offset: tuple[int, int]) -> str:
    return f"{offset[0]},{offset[1]}"


def sanitize_filename(name: str) -> str:
    """Return a filesystem-safe filename component."""

    invalid = set('<>:"/\\|?* ')
    sanitized = "".join("_" if ch in invalid else ch for ch in name)
    return sanitized.strip("_") or "report"


__all__ = ["ensure_directory", "natural_key", "format_offset", "sanitize_filename"]
