"""Configuration schema and loading utilities."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

from platformdirs import PlatformDirs

LOGGER = logging.getLogger(__name__)

DEFAULT_PALETTE = (
    "#e6194b",
    "#3cb44b",
    "#ffe119",
    "#4363d8",
    "#f58231",
    "#911eb4",
    "#42d4f4",
    "#f032e6",
    "#bfef45",
)
_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")
_SECTIONS = ("arithmetic", "search", "render")


@dataclass
class ArithmeticSettings:
    refinement_bits: int = 256
    max_refinement_bits: int = 4096

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ArithmeticSettings":
        bits = int(data.get("refinement_bits", 256))
        if bits < 8:
            bits = 8
        max_bits = int(data.get("max_refinement_bits", 4096))
        if max_bits < bits:
            max_bits = bits
        return cls(refinement_bits=bits, max_refinement_bits=max_bits)


@dataclass
class SearchSettings:
    kmax: int = 12
    extra_translate_steps: int = 0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SearchSettings":
        kmax = int(data.get("kmax", 12))
        if kmax < 1:
            kmax = 1
        extra = int(data.get("extra_translate_steps", 0))
        if extra < 0:
            extra = 0
        return cls(kmax=kmax, extra_translate_steps=extra)


@dataclass
class RenderSettings:
    palette: tuple[str, ...] = DEFAULT_PALETTE
    scale: float = 80.0
    stroke_width: float = 1.0
    window_margin: str = "1/2"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RenderSettings":
        palette = tuple(str(c) for c in data.get("palette", DEFAULT_PALETTE))
        if len(palette) != len(DEFAULT_PALETTE) or not all(_HEX_COLOR.match(c) for c in palette):
            LOGGER.warning("Ignoring invalid palette %s", list(palette))
            palette = DEFAULT_PALETTE
        scale = float(data.get("scale", 80.0))
        if scale <= 0:
            scale = 80.0
        stroke = float(data.get("stroke_width", 1.0))
        if stroke < 0:
            stroke = 1.0
        margin = str(data.get("window_margin", "1/2"))
        try:
            if Fraction(margin) < 0:
                margin = "0"
        except (ValueError, ZeroDivisionError):
            LOGGER.warning("Ignoring invalid window margin %r", margin)
            margin = "1/2"
        return cls(palette=palette, scale=scale, stroke_width=stroke, window_margin=margin)

    @property
    def margin(self) -> Fraction:
        return Fraction(self.window_margin)


@dataclass
class AppConfig:
    reports_root: str
    arithmetic: ArithmeticSettings = field(default_factory=ArithmeticSettings)
    search: SearchSettings = field(default_factory=SearchSettings)
    render: RenderSettings = field(default_factory=RenderSettings)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AppConfig":
        return cls(
            reports_root=str(Path(data.get("reports_root", "~/Hadwiger/Reports")).expanduser()),
            arithmetic=ArithmeticSettings.from_dict(data.get("arithmetic", {})),
            search=SearchSettings.from_dict(data.get("search", {})),
            render=RenderSettings.from_dict(data.get("render", {})),
        )

    @property
    def reports_dir(self) -> Path:
        return Path(self.reports_root).expanduser()

    def to_dict(self) -> Dict[str, Any]:
        render = dict(self.render.__dict__)
        render["palette"] = list(self.render.palette)
        return {
            "reports_root": self.reports_root,
            "arithmetic": dict(self.arithmetic.__dict__),
            "search": dict(self.search.__dict__),
            "render": render,
        }

    def json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def defaults_path() -> Path:
    return Path(__file__).with_name("defaults.json")


def config_dir() -> Path:
    dirs = PlatformDirs(appname="hadwiger", appauthor="hadwiger")
    return Path(dirs.user_config_dir)


def load_config(user_config: Path | None = None) -> AppConfig:
    defaults = json.loads(defaults_path().read_text(encoding="utf-8"))
    config_data: Dict[str, Any] = dict(defaults)
    path = user_config or config_dir() / "config.json"
    if path.exists():
        try:
            user_data = json.loads(path.read_text(encoding="utf-8"))
            merged = {**defaults, **user_data}
            # nested sections merge key by key
            for key in _SECTIONS:
                if key in user_data:
                    merged[key] = {**defaults.get(key, {}), **user_data.get(key, {})}
            config_data = merged
        except json.JSONDecodeError as exc:
            LOGGER.error("Invalid JSON in %s: %s", path, exc)
    return AppConfig.from_dict(config_data)


__all__ = [
    "AppConfig",
    "ArithmeticSettings",
    "SearchSettings",
    "RenderSettings",
    "DEFAULT_PALETTE",
    "load_config",
    "config_dir",
    "defaults_path",
]
