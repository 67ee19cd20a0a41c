import math
import random
from fractions import Fraction

import pytest

from conftest import RHOMBUS_TEXT, pct_text, tiling_from_text
from hadwiger.core.distance import (
    ConflictMode,
    cell_conflict,
    cells_conflict,
    diameter_sq,
    distance_interval_sq,
    squared_distance,
)
from hadwiger.core.errors import CellsNotComparable
from hadwiger.core.field import FieldScalar
from hadwiger.core.generators import FixtureName, mutations
from hadwiger.core.geometry import Point, point_in_polygon

H = FieldScalar(0, 0, Fraction(1, 2))
UNIT_TRIANGLE = [Point.of(0, 0), Point.of(1, 0), Point(FieldScalar(Fraction(1, 2)), H)]
UPPER_TRIANGLE = [Point.of(1, 0), Point(FieldScalar(Fraction(3, 2)), H), Point(FieldScalar(Fraction(1, 2)), H)]

# Two small same-colored squares whose unit pairs fill only a thin sliver.
SLIVER_TEXT = pct_text(
    {
        "a": (0, 0),
        "b": (Fraction(1, 10), 0),
        "c": (Fraction(1, 10), Fraction(1, 10)),
        "d": (0, Fraction(1, 10)),
        "e": (Fraction(19, 20), 0),
        "f": (1, 0),
        "g": (1, Fraction(1, 20)),
        "h": (Fraction(19, 20), Fraction(1, 20)),
    },
    [("near", 1, ["a", "b", "c", "d"]), ("far", 1, ["e", "f", "g", "h"])],
)

BAR_TEXT = pct_text(
    {"a": (0, 0), "b": (Fraction(3, 2), 0), "c": (Fraction(3, 2), Fraction(1, 10)), "d": (0, Fraction(1, 10))},
    [("bar", 1, ["a", "b", "c", "d"])],
)


def _square(x0: Fraction, y0: Fraction, side: Fraction) -> list[Point]:
    return [
        Point.of(x0, y0),
        Point.of(x0 + side, y0),
        Point.of(x0 + side, y0 + side),
        Point.of(x0, y0 + side),
    ]


def test_squared_distance() -> None:
    assert squared_distance(Point.of(1, 2), Point.of(1, 2)) == FieldScalar(0)
    assert squared_distance(Point.of(Fraction(-1, 2), 0), Point.of(Fraction(1, 2), 0)) == FieldScalar(1)
    assert squared_distance(Point.of(0, 0), UNIT_TRIANGLE[2]) == FieldScalar(1)


def test_diameters(hex7) -> None:
    assert diameter_sq(hex7.region("h0").corners) == FieldScalar(1)
    assert diameter_sq(UNIT_TRIANGLE) == FieldScalar(1)
    assert diameter_sq(_square(Fraction(0), Fraction(0), Fraction(3, 5))) == FieldScalar(Fraction(18, 25))


def test_interval_of_touching_triangles() -> None:
    interval = distance_interval_sq(UNIT_TRIANGLE, UPPER_TRIANGLE)
    assert interval.dmin_sq == FieldScalar(0)
    assert interval.dmax_sq == FieldScalar(3)
    assert interval.straddles_one()


def test_interval_of_separated_squares() -> None:
    a = _square(Fraction(0), Fraction(0), Fraction(3, 5))
    b = _square(Fraction(9, 5), Fraction(0), Fraction(3, 5))
    interval = distance_interval_sq(a, b)
    assert interval.dmin_sq == FieldScalar(Fraction(36, 25))
    assert not interval.straddles_one()


def test_interval_is_symmetric_and_translation_invariant() -> None:
    a = _square(Fraction(0), Fraction(0), Fraction(1))
    b = UPPER_TRIANGLE
    shift = Point.of(Fraction(7, 3), Fraction(-2, 5))
    first = distance_interval_sq(a, b)
    second = distance_interval_sq(b, a)
    moved = distance_interval_sq([p + shift for p in a], [p + shift for p in b])
    assert (first.dmin_sq, first.dmax_sq) == (second.dmin_sq, second.dmax_sq)
    assert (first.dmin_sq, first.dmax_sq) == (moved.dmin_sq, moved.dmax_sq)


def _boundary_samples(poly: list[tuple[float, float]], per_edge: int) -> list[tuple[float, float]]:
    out = []
    n = len(poly)
    for i in range(n):
        (ax, ay), (bx, by) = poly[i], poly[(i + 1) % n]
        for k in range(per_edge):
            t = k / per_edge
            out.append((ax + (bx - ax) * t, ay + (by - ay) * t))
    return out


def test_interval_matches_boundary_sampling() -> None:
    rng = random.Random(7)
    for _ in range(5):
        x0 = Fraction(rng.randint(-30, 30), 10)
        y0 = Fraction(rng.randint(-30, 30), 10)
        a = _square(Fraction(0), Fraction(0), Fraction(1))
        b = [
            Point.of(x0, y0),
            Point.of(x0 + Fraction(rng.randint(5, 20), 10), y0),
            Point.of(x0, y0 + Fraction(rng.randint(5, 20), 10)),
        ]
        if distance_interval_sq(a, b).dmin_sq == FieldScalar(0):
            continue
        interval = distance_interval_sq(a, b)
        sa = _boundary_samples([p.approx() for p in a], 25)
        sb = _boundary_samples([p.approx() for p in b], 34)
        values = [math.dist(p, q) for p in sa for q in sb]
        assert min(values) == pytest.approx(math.sqrt(interval.dmin_sq.approx()), abs=0.1)
        assert max(values) == pytest.approx(math.sqrt(interval.dmax_sq.approx()), abs=1e-6)


def test_hexagon_against_itself_owns_no_unit_pair(hex7) -> None:
    cell = hex7.cell("h0")
    assert cell_conflict(cell, cell, ConflictMode.OWNED_CELLS) is None
    assert cell_conflict(cell, cell, ConflictMode.OPEN_REGIONS) is None


def test_same_colored_hexagons_do_not_conflict(hex7) -> None:
    cell = hex7.cell("h0")
    for offset in [(1, 0), (0, 1), (-1, 1), (1, -1)]:
        assert not cells_conflict(cell, hex7.cell("h0", offset))


def test_adjacent_triangles_conflict() -> None:
    tiling = tiling_from_text(RHOMBUS_TEXT)
    lower, upper = tiling.cell("lower"), tiling.cell("upper")
    witness = cell_conflict(lower, upper, ConflictMode.OPEN_REGIONS)
    assert witness is not None
    assert witness.face_a == "interior"
    assert witness.recheck()
    p, q = witness.points
    assert point_in_polygon(p, lower.polygon) > 0
    assert point_in_polygon(q, upper.polygon) > 0


def test_thin_overlap_still_yields_exact_points() -> None:
    tiling = tiling_from_text(SLIVER_TEXT)
    near, far = tiling.cell("near"), tiling.cell("far")
    interval = distance_interval_sq(near.polygon, far.polygon)
    assert interval.dmin_sq < FieldScalar(1) < interval.dmax_sq
    witness = cell_conflict(near, far, ConflictMode.OPEN_REGIONS)
    assert witness is not None
    assert squared_distance(*witness.points) == FieldScalar(1)
    p, q = witness.points
    assert point_in_polygon(p, near.polygon) > 0
    assert point_in_polygon(q, far.polygon) > 0
    assert "p=(" in witness.describe()


def test_long_bar_conflicts_with_itself() -> None:
    tiling = tiling_from_text(BAR_TEXT)
    bar = tiling.cell("bar")
    witness = cell_conflict(bar, bar, ConflictMode.OPEN_REGIONS)
    assert witness is not None
    assert witness.recheck()
    assert all(point_in_polygon(p, bar.polygon) > 0 for p in witness.points)


def test_mutated_tri8_has_a_witness() -> None:
    mutation = mutations(FixtureName.TRI8, count=1, seed=3)[0]
    tiling = mutation.build()
    a = tiling.cell(mutation.region_id)
    found = [
        cell_conflict(a, tiling.cell(mutation.partner, (i, j)))
        for i in range(-2, 3)
        for j in range(-2, 3)
    ]
    witnesses = [w for w in found if w is not None]
    assert witnesses
    assert all(w.color_a == w.color_b == mutation.color for w in witnesses)


def test_open_conflict_implies_owned_conflict(grid9) -> None:
    base = grid9.cell("g00")
    for region_id in grid9.regions:
        for offset in [(0, 0), (1, 0), (0, 1), (1, 1), (-1, 1)]:
            other = grid9.cell(region_id, offset)
            if cells_conflict(base, other, ConflictMode.OPEN_REGIONS):
                assert cells_conflict(base, other, ConflictMode.OWNED_CELLS)


def test_cells_of_different_tilings_are_not_comparable(hex7, grid9) -> None:
    with pytest.raises(CellsNotComparable):
        cell_conflict(hex7.cell("h0"), grid9.cell("g00"))
