"""Built-in fixtures: the three periodic colorings and the local figure patches."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coloring import build_conflict_graph
from .errors import UnknownRegion
from .field import FieldScalar
from .geometry import Point, sort_polar
from .plane import OwnershipRule, RegionSpec, Tiling, TilingSpec, build_tiling
from .utils import natural_key

LOGGER = logging.getLogger(__name__)

__all__ = [
    "FixtureName",
    "Mutation",
    "builtin_spec",
    "gen_builtin",
    "recolor",
    "mutations",
]

F = Fraction
SQRT3_HALF = FieldScalar(0, 0, F(1, 2))
SQRT3_QUARTER = FieldScalar(0, 0, F(1, 4))
SQRT2_HALF = FieldScalar(0, F(1, 2))


class FixtureName(str, Enum):
    HEX7 = "hex7"
    SQUARE7 = "square7"
    TRI8 = "tri8"
    GRID9 = "grid9"
    FIG4A_COLLINEAR = "fig4a"
    FIG4B_CONCAVE = "fig4b"
    FIG4C_GENERAL = "fig4c"
    FIG5_PATCH = "fig5"

    @property
    def is_periodic(self) -> bool:
        return self in PERIODIC


PERIODIC = frozenset({FixtureName.HEX7, FixtureName.SQUARE7, FixtureName.TRI8, FixtureName.GRID9})


class _Points:
    """Hands out one vertex id per distinct exact point."""

    def __init__(self, prefix: str = "p") -> None:
        self.prefix = prefix
        self.ids: dict[Point, str] = {}

    def __call__(self, point: Point) -> str:
        vid = self.ids.get(point)
        if vid is None:
            vid = f"{self.prefix}{len(self.ids)}"
            self.ids[point] = vid
        return vid

    def loop(self, points: Sequence[Point]) -> tuple[str, ...]:
        return tuple(self(p) for p in points)

    @property
    def vertices(self) -> dict[str, Point]:
        return {vid: p for p, vid in self.ids.items()}


def _pt(x: object, y: object) -> Point:
    return Point.of(x, y)


# Periodic colorings ------------------------------------------------------------
# Hexagon label (i + 3j) mod 7 to the color drawn in the seven-hexagon flower.
HEX7_COLORS = {0: 1, 1: 2, 2: 6, 3: 7, 4: 4, 5: 3, 6: 5}
HEX7_FLOWER = ((0, 0), (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))


def _hex7() -> TilingSpec:
    v1 = Point(FieldScalar(F(3, 4)), SQRT3_QUARTER)
    v2 = Point(FieldScalar(0), SQRT3_HALF)
    half, quarter = FieldScalar(F(1, 2)), FieldScalar(F(1, 4))
    zero = FieldScalar(0)
    corners = [
        Point(half, zero),
        Point(quarter, SQRT3_QUARTER),
        Point(-quarter, SQRT3_QUARTER),
        Point(-half, zero),
        Point(-quarter, -SQRT3_QUARTER),
        Point(quarter, -SQRT3_QUARTER),
    ]
    points = _Points()
    regions = []
    for n, (i, j) in enumerate(HEX7_FLOWER):
        center = v1.scale(i) + v2.scale(j)
        color = HEX7_COLORS[(i + 3 * j) % 7]
        regions.append(RegionSpec(f"h{n}", color, points.loop([center + c for c in corners])))
    lattice = (v1.scale(3) - v2, v1 + v2.scale(2))
    return TilingSpec(points.vertices, tuple(regions), lattice, OwnershipRule())


def square7_color(k: int, row: int) -> int:
    """Color of square ``k`` in brick row ``row``; row ``r`` is shifted left by ``r/2`` sides."""

    return (k + 4 * row - 1) % 7 + 1


def _square7() -> TilingSpec:
    s = SQRT2_HALF
    zero = FieldScalar(0)
    points = _Points()
    regions = []
    for k in range(7):
        x0, x1 = s * k, s * (k + 1)
        loop = [Point(x0, zero), Point(x1, zero), Point(x1, s), Point(x0, s)]
        regions.append(RegionSpec(f"s{k}", square7_color(k, 0), points.loop(loop)))
    lattice = (Point(s * 7, zero), Point(s * F(5, 2), s))
    return TilingSpec(points.vertices, tuple(regions), lattice, OwnershipRule())


# Triangles of the eight-color block: (apex-up, centroid x, row, color); row 0 is
# y in [0, h] and row -1 is y in [-h, 0].
TRI8_BLOCK = (
    (True, F(-1, 2), 0, 1),
    (False, F(0), 0, 2),
    (True, F(1, 2), 0, 3),
    (False, F(1), 0, 8),
    (False, F(-1, 2), -1, 6),
    (True, F(0), -1, 5),
    (False, F(1, 2), -1, 4),
    (True, F(1), -1, 7),
)


def _triangle(up: bool, cx: Fraction, row: int) -> list[Point]:
    h = SQRT3_HALF
    bottom, top = h * row, h * (row + 1)
    if up:
        return [Point.of(cx - F(1, 2), bottom), Point.of(cx + F(1, 2), bottom), Point.of(cx, top)]
    return [Point.of(cx, bottom), Point.of(cx + F(1, 2), top), Point.of(cx - F(1, 2), top)]


def _tri8() -> TilingSpec:
    points = _Points()
    regions = tuple(
        RegionSpec(f"t{color}", color, points.loop(_triangle(up, cx, row)))
        for up, cx, row, color in TRI8_BLOCK
    )
    lattice = (_pt(2, 0), Point(FieldScalar(1), FieldScalar(0, 0, 1)))
    return TilingSpec(points.vertices, regions, lattice, OwnershipRule())


def _grid9() -> TilingSpec:
    side = F(3, 5)
    points = _Points()
    regions = []
    for j in range(3):
        for i in range(3):
            x0, y0 = side * i, side * j
            loop = [_pt(x0, y0), _pt(x0 + side, y0), _pt(x0 + side, y0 + side), _pt(x0, y0 + side)]
            regions.append(RegionSpec(f"g{i}{j}", 1 + i + 3 * j, points.loop(loop)))
    lattice = (_pt(3 * side, 0), _pt(0, 3 * side))
    return TilingSpec(points.vertices, tuple(regions), lattice, OwnershipRule())


# Local patches -----------------------------------------------------------------
BOX = 3
FIG4_RAYS = {
    FixtureName.FIG4A_COLLINEAR: ((1, 0), (1, 1), (-1, 1), (-1, 0)),
    FixtureName.FIG4B_CONCAVE: ((4, 3), (2, 5), (-1, 3), (-6, 5)),
    FixtureName.FIG4C_GENERAL: ((-2, 3), (1, 1), (2, -1), (-2, -3)),
}
_BOX_CORNERS = ((0, (BOX, -BOX)), (6, (BOX, BOX)), (12, (-BOX, BOX)), (18, (-BOX, -BOX)))


def _perimeter(p: Point) -> Fraction:
    """Counter-clockwise arc parameter on the box boundary, starting at its lower-right corner."""

    x, y = p.x.a, p.y.a
    if x == BOX and y > -BOX:
        value = y + BOX
    elif y == BOX:
        value = 2 * BOX + (BOX - x)
    elif x == -BOX:
        value = 4 * BOX + (BOX - y)
    else:
        value = 6 * BOX + (x + BOX)
    return value % (8 * BOX)


def _ray_end(dx: int, dy: int) -> Point:
    scale = F(BOX, max(abs(dx), abs(dy)))
    return _pt(dx * scale, dy * scale)


def _fig4(name: FixtureName) -> TilingSpec:
    """Four rays from the origin cut the box [-3, 3]^2 into four colored sectors."""

    origin = _pt(0, 0)
    ends = sort_polar(_ray_end(dx, dy) for dx, dy in FIG4_RAYS[name])
    vertices = {"O": origin}
    for n, end in enumerate(ends):
        vertices[f"E{n}"] = end
    for n, (_, (x, y)) in enumerate(_BOX_CORNERS):
        vertices.setdefault(f"K{n}", _pt(x, y))
    ids = {p: vid for vid, p in vertices.items()}
    regions = []
    for n, start in enumerate(ends):
        stop = ends[(n + 1) % len(ends)]
        lo, hi = _perimeter(start), _perimeter(stop)
        if hi <= lo:
            hi += 8 * BOX
        between = sorted(
            (param + lap, _pt(x, y))
            for param, (x, y) in _BOX_CORNERS
            for lap in (0, 8 * BOX)
            if lo < param + lap < hi
        )
        loop = [origin, start] + [p for _, p in between] + [stop]
        regions.append(RegionSpec(f"r{n + 1}", n + 1, tuple(ids[p] for p in loop)))
    used = {vid for region in regions for vid in region.vertex_ids}
    return TilingSpec({vid: p for vid, p in vertices.items() if vid in used}, tuple(regions))


FIG5_POINTS = {
    "A": (F(-4), F(2)),
    "B": (F(-2), F(0)),
    "C": (F(2), F(0)),
    "D": (F(4), F(3)),
    "E": (F(-1), F(0)),
    "P": (F(-1, 2), F(0)),
    "Q": (F(1, 2), F(0)),
    "F": (F(1), F(0)),
    "X1": (F(-814, 325), F(326, 325)),
    "Y1": (F(3), F(2)),
    "Y2": (F(773, 410), F(1136, 1025)),
    "M": (F(1, 2), F(-3)),
}
FIG5_TRIANGLES = (
    (("B", "E", "A"), 1),
    (("E", "P", "X1"), 2),
    (("P", "Q", "Y2"), 3),
    (("Q", "F", "Y1"), 4),
    (("F", "C", "D"), 5),
    (("X1", "P", "Y2"), 5),
    (("X1", "Y2", "Y1"), 6),
    (("X1", "Y1", "D"), 3),
    (("X1", "D", "A"), 4),
    (("B", "M", "C"), 6),
)


def _fig5() -> TilingSpec:
    """Triangles above the borderline B..C between rays BA and CD, plus one triangle below it.

    X1 lies on segment EA and Y2 on segment QY1, so both are T-junctions.
    """

    vertices = {vid: _pt(x, y) for vid, (x, y) in FIG5_POINTS.items()}
    regions = tuple(RegionSpec(f"T{n + 1}", color, loop) for n, (loop, color) in enumerate(FIG5_TRIANGLES))
    return TilingSpec(vertices, regions)


_BUILDERS = {
    FixtureName.HEX7: _hex7,
    FixtureName.SQUARE7: _square7,
    FixtureName.TRI8: _tri8,
    FixtureName.GRID9: _grid9,
    FixtureName.FIG4A_COLLINEAR: lambda: _fig4(FixtureName.FIG4A_COLLINEAR),
    FixtureName.FIG4B_CONCAVE: lambda: _fig4(FixtureName.FIG4B_CONCAVE),
    FixtureName.FIG4C_GENERAL: lambda: _fig4(FixtureName.FIG4C_GENERAL),
    FixtureName.FIG5_PATCH: _fig5,
}


def builtin_spec(name: FixtureName | str) -> TilingSpec:
    return _BUILDERS[FixtureName(name)]()


@lru_cache(maxsize=None)
def gen_builtin(name: FixtureName | str) -> Tiling:
    """Build a fixture; figure patches come back as finite tilings."""

    fixture = FixtureName(name)
    tiling = build_tiling(builtin_spec(fixture))
    LOGGER.info("Built fixture %s: %d regions", fixture.value, len(tiling.regions))
    return tiling


# Recoloring ------------------------------------------------------------------
def recolor(spec: TilingSpec, region_id: str, color: int) -> TilingSpec:
    if color < 1:
        raise ValueError(f"colors are positive integers, got {color}")
    if region_id not in {r.id for r in spec.regions}:
        raise UnknownRegion(f"unknown region {region_id!r}")
    regions = tuple(replace(r, color=color) if r.id == region_id else r for r in spec.regions)
    return replace(spec, regions=regions)


@dataclass(frozen=True)
class Mutation:
    """One region recolored to the color of a region it conflicts with."""

    fixture: FixtureName
    region_id: str
    old_color: int
    color: int
    partner: str
    spec: TilingSpec

    def build(self) -> Tiling:
        return build_tiling(self.spec, check_colors=False)

    def describe(self) -> str:
        return (
            f"mutation fixture={self.fixture.value} region={self.region_id} "
            f"color={self.old_color}->{self.color} partner={self.partner}"
        )


def mutations(name: FixtureName | str, count: int = 20, seed: int = 0) -> list[Mutation]:
    """Random single-region recolorings, each creating a same-colored conflicting pair.

    A region takes the color of one of its conflict-graph neighbors, so the pair
    realizes distance one whatever the colors are.
    """

    fixture = FixtureName(name)
    tiling = gen_builtin(fixture)
    graph = build_conflict_graph(tiling)
    candidates = [
        (a, b)
        for a in graph.order
        for b in sorted(graph.neighbors(a), key=natural_key)
        if tiling.regions[a].color != tiling.regions[b].color
    ]
    if not candidates:
        LOGGER.warning("Fixture %s has no recolorable conflicting pair", fixture.value)
        return []
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        region_id, partner = rng.choice(candidates)
        color = tiling.regions[partner].color
        out.append(
            Mutation(
                fixture,
                region_id,
                tiling.regions[region_id].color,
                color,
                partner,
                recolor(tiling.spec, region_id, color),
            )
        )
    return out
