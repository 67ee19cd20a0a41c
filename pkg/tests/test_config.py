import json
import logging
from fractions import Fraction
from pathlib import Path

from hadwiger.config.schema import (
    DEFAULT_PALETTE,
    AppConfig,
    ArithmeticSettings,
    RenderSettings,
    SearchSettings,
    config_dir,
    load_config,
)


def test_defaults_load_without_user_file(tmp_path: Path) -> None:
    config = load_config(tmp_path / "missing.json")
    assert config.arithmetic.refinement_bits == 256
    assert config.search.kmax == 12
    assert config.render.palette == DEFAULT_PALETTE
    assert config.render.margin == Fraction(1, 2)
    assert config.reports_dir.name == "Reports"


def test_config_dir_follows_xdg(tmp_path: Path) -> None:
    assert str(config_dir()).startswith(str(tmp_path / "config"))


def test_user_sections_merge_key_by_key(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"search": {"kmax": 9}, "reports_root": str(tmp_path / "out")}), encoding="utf-8")
    config = load_config(path)
    assert config.search.kmax == 9
    assert config.search.extra_translate_steps == 0
    assert config.reports_dir == tmp_path / "out"
    assert config.render.scale == 80.0


def test_invalid_json_falls_back_to_defaults(tmp_path: Path, caplog) -> None:
    path = tmp_path / "config.json"
    path.write_text("{not json", encoding="utf-8")
    with caplog.at_level(logging.ERROR):
        config = load_config(path)
    assert config.search.kmax == 12
    assert "Invalid JSON" in caplog.text


def test_numeric_settings_are_clamped() -> None:
    arithmetic = ArithmeticSettings.from_dict({"refinement_bits": 2, "max_refinement_bits": 4})
    assert (arithmetic.refinement_bits, arithmetic.max_refinement_bits) == (8, 8)
    search = SearchSettings.from_dict({"kmax": 0, "extra_translate_steps": -3})
    assert (search.kmax, search.extra_translate_steps) == (1, 0)
    render = RenderSettings.from_dict({"scale": -1, "stroke_width": -2, "window_margin": "-1/3"})
    assert (render.scale, render.stroke_width, render.margin) == (80.0, 1.0, Fraction(0))


def test_invalid_palette_is_replaced(caplog) -> None:
    with caplog.at_level(logging.WARNING):
        render = RenderSettings.from_dict({"palette": ["red", "blue"]})
    assert render.palette == DEFAULT_PALETTE
    assert "invalid palette" in caplog.text


def test_bad_margin_is_replaced(caplog) -> None:
    with caplog.at_level(logging.WARNING):
        render = RenderSettings.from_dict({"window_margin": "half"})
    assert render.window_margin == "1/2"


def test_to_dict_round_trips(app_config: AppConfig) -> None:
    again = AppConfig.from_dict(json.loads(app_config.json()))
    assert again == app_config
