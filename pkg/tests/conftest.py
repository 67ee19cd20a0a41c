import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Generator, Sequence

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from hadwiger.config.schema import AppConfig, ArithmeticSettings, RenderSettings, SearchSettings
from hadwiger.core.generators import FixtureName, gen_builtin
from hadwiger.core.geometry import Point
from hadwiger.core.pct import parse_pct
from hadwiger.core.plane import Tiling, build_tiling


@pytest.fixture(autouse=True)
def _set_env(tmp_path: Path) -> Generator[None, None, None]:
    data_home = tmp_path / "data"
    config_home = tmp_path / "config"
    os.environ["XDG_DATA_HOME"] = str(data_home)
    os.environ["XDG_CONFIG_HOME"] = str(config_home)
    yield
    for key in ["XDG_DATA_HOME", "XDG_CONFIG_HOME"]:
        os.environ.pop(key, None)


@pytest.fixture()
def app_config(tmp_path: Path) -> AppConfig:
    reports = tmp_path / "Reports"
    reports.mkdir(parents=True, exist_ok=True)
    return AppConfig(
        reports_root=str(reports),
        arithmetic=ArithmeticSettings(refinement_bits=256, max_refinement_bits=4096),
        search=SearchSettings(kmax=12, extra_translate_steps=0),
        render=RenderSettings(),
    )


def pct_text(
    vertices: dict[str, tuple[Fraction | int, Fraction | int]],
    regions: Sequence[tuple[str, int, Sequence[str]]],
) -> str:
    """Small PCT document with rational coordinates."""

    lines = ["pct 1", "ownership above-right"]
    for vid, (x, y) in vertices.items():
        xf, yf = Fraction(x), Fraction(y)
        lines.append(f"vertex {vid} {_rational(xf)} 0 0 0 {_rational(yf)} 0 0 0")
    for rid, color, loop in regions:
        lines.append(f"region {rid} {color} {' '.join(loop)}")
    return "\n".join(lines) + "\n"


def _rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def tiling_from_text(text: str, check_colors: bool = True) -> Tiling:
    return build_tiling(parse_pct(text).to_spec(), check_colors=check_colors)


def vertex_at(tiling: Tiling, x: object, y: object) -> str:
    """Derived id of the vertex at an exact point."""

    target = Point.of(x, y)
    for vid, vertex in tiling.vertices.items():
        if vertex.point == target:
            return vid
    raise AssertionError(f"no vertex at ({x}, {y})")


# A square box around O with one border tangent to the unit circle at (0, 1).
TANGENT_TEXT = pct_text(
    {
        "O": (0, 0),
        "NE": (2, 1),
        "NW": (-2, 1),
        "TE": (2, 2),
        "TW": (-2, 2),
        "SW": (-2, -2),
        "SE": (2, -2),
    },
    [
        ("top", 1, ["O", "NE", "NW"]),
        ("strip", 2, ["NW", "NE", "TE", "TW"]),
        ("left", 3, ["O", "NW", "SW"]),
        ("bottom", 4, ["O", "SW", "SE"]),
        ("right", 5, ["O", "SE", "NE"]),
    ],
)

# A vertex V on the unit circle around O whose borders all leave the circle outward.
ONE_SIDED_TEXT = pct_text(
    {
        "O": (0, 0),
        "V": (0, 1),
        "A": (1, 3),
        "M": (0, 3),
        "Z": (-1, 3),
        "NE": (3, 3),
        "NW": (-3, 3),
        "SW": (-3, -3),
        "SE": (3, -3),
    },
    [
        ("t1", 1, ["V", "A", "M"]),
        ("t2", 2, ["V", "M", "Z"]),
        ("upper", 3, ["O", "NE", "A", "V", "Z", "NW"]),
        ("left", 4, ["O", "NW", "SW"]),
        ("bottom", 5, ["O", "SW", "SE"]),
        ("right", 6, ["O", "SE", "NE"]),
    ],
)

# A unit rhombus split into two triangles.
RHOMBUS_TEXT = (
    "pct 1\n"
    "vertex a 0 0 0 0 0 0 0 0\n"
    "vertex b 1 0 0 0 0 0 0 0\n"
    "vertex c 3/2 0 0 0 0 0 1/2 0\n"
    "vertex d 1/2 0 0 0 0 0 1/2 0\n"
    "region lower 1 a b d\n"
    "region upper 2 b c d\n"
)

# Three unit triangles and one square sharing the point (1, 0).
MIXED_TEXT = pct_text(
    {"a": (0, 0), "b": (1, 0), "c": (2, 0), "d": (2, 1), "e": (1, 1), "f": (0, 1), "g": (1, -1)},
    [
        ("s", 1, ["b", "c", "d", "e"]),
        ("t1", 2, ["a", "b", "e"]),
        ("t2", 3, ["a", "e", "f"]),
        ("t3", 4, ["a", "g", "b"]),
    ],
)


@pytest.fixture(scope="session")
def hex7() -> Tiling:
    return gen_builtin(FixtureName.HEX7)


@pytest.fixture(scope="session")
def square7() -> Tiling:
    return gen_builtin(FixtureName.SQUARE7)


@pytest.fixture(scope="session")
def tri8() -> Tiling:
    return gen_builtin(FixtureName.TRI8)


@pytest.fixture(scope="session")
def grid9() -> Tiling:
    return gen_builtin(FixtureName.GRID9)


@pytest.fixture(scope="session")
def fig5() -> Tiling:
    return gen_builtin(FixtureName.FIG5_PATCH)


@pytest.fixture(scope="session")
def tangent_tiling() -> Tiling:
    return tiling_from_text(TANGENT_TEXT)


@pytest.fixture(scope="session")
def one_sided_tiling() -> Tiling:
    return tiling_from_text(ONE_SIDED_TEXT)
