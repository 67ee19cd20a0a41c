"""Exact distance predicates between polygons, open regions and owned cells."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CellsNotComparable, WitnessNotConstructed
from .field import FieldScalar, RationalInterval
from .geometry import Point, orient, point_in_polygon, segments_intersect, signed_area2, triangulate
from .plane import Cell

LOGGER = logging.getLogger(__name__)

__all__ = [
    "ConflictMode",
    "DistIntervalSq",
    "ConflictWitness",
    "squared_distance",
    "diameter_sq",
    "distance_interval_sq",
    "point_segment_distance_sq",
    "cell_conflict",
    "cells_conflict",
]

ONE = FieldScalar(1)
_BISECTION_STEPS = 200


class ConflictMode(str, Enum):
    OPEN_REGIONS = "open"
    OWNED_CELLS = "owned"


@dataclass(frozen=True, slots=True)
class DistIntervalSq:
    dmin_sq: FieldScalar
    dmax_sq: FieldScalar

    def straddles_one(self) -> bool:
        return self.dmin_sq < ONE < self.dmax_sq


@dataclass(frozen=True, slots=True)
class ConflictWitness:
    """Two same-colored points at distance exactly one and the faces holding them."""

    cell_a: str
    cell_b: str
    color_a: int
    color_b: int
    face_a: str
    face_b: str
    points: tuple[Point, Point]

    def recheck(self) -> bool:
        return squared_distance(*self.points) == ONE

    def describe(self) -> str:
        p, q = self.points
        return (
            f"conflict a={self.cell_a} b={self.cell_b} color={self.color_a} "
            f"face_a={self.face_a} face_b={self.face_b} p=({p.x};{p.y}) q=({q.x};{q.y})"
        )


def squared_distance(p: Point, q: Point) -> FieldScalar:
    return (p - q).norm_sq()


def diameter_sq(poly: Sequence[Point]) -> FieldScalar:
    """Largest squared distance between two corners."""

    best = FieldScalar(0)
    for i in range(len(poly)):
        for j in range(i + 1, len(poly)):
            d = squared_distance(poly[i], poly[j])
            if d > best:
                best = d
    return best


def point_segment_distance_sq(p: Point, a: Point, b: Point) -> FieldScalar:
    u = b - a
    t = (p - a).dot(u)
    if t.sign() <= 0:
        return squared_distance(p, a)
    length = u.norm_sq()
    if t >= length:
        return squared_distance(p, b)
    cross = (p - a).cross(u)
    return cross * cross / length


def _segment_distance_sq(a: Point, b: Point, c: Point, d: Point) -> FieldScalar:
    if segments_intersect(a, b, c, d):
        return FieldScalar(0)
    return min(
        point_segment_distance_sq(a, c, d),
        point_segment_distance_sq(b, c, d),
        point_segment_distance_sq(c, a, b),
        point_segment_distance_sq(d, a, b),
    )


def _edges(poly: Sequence[Point]) -> list[tuple[Point, Point]]:
    n = len(poly)
    return [(poly[i], poly[(i + 1) % n]) for i in range(n)]


def _closures_meet(a: Sequence[Point], b: Sequence[Point]) -> bool:
    if point_in_polygon(a[0], b) >= 0 or point_in_polygon(b[0], a) >= 0:
        return True
    return any(segments_intersect(p, q, r, s) for p, q in _edges(a) for r, s in _edges(b))


def distance_interval_sq(a: Sequence[Point], b: Sequence[Point]) -> DistIntervalSq:
    """Squared min and max distance between two closed simple polygons."""

    dmax = FieldScalar(0)
    for p in a:
        for q in b:
            d = squared_distance(p, q)
            if d > dmax:
                dmax = d
    if _closures_meet(a, b):
        return DistIntervalSq(FieldScalar(0), dmax)
    dmin: Optional[FieldScalar] = None
    for p, q in _edges(a):
        for r, s in _edges(b):
            d = _segment_distance_sq(p, q, r, s)
            if dmin is None or d < dmin:
                dmin = d
    assert dmin is not None
    return DistIntervalSq(dmin, dmax)


# Face casework -------------------------------------------------------------
def _point_point(p: Point, q: Point) -> Optional[tuple[Point, Point]]:
    return (p, q) if squared_distance(p, q) == ONE else None


def _point_open_segment(p: Point, a: Point, b: Point) -> Optional[tuple[Point, Point]]:
    """A point of the open segment ab at distance exactly one from ``p``.

    Only exact-field answers are returned: the foot of the perpendicular, or
    ``None`` when distance one is reached elsewhere.
    """

    u = b - a
    length = u.norm_sq()
    t = (p - a).dot(u)
    if t.sign() > 0 and t < length:
        foot = a + u.scale(t / length)
        if squared_distance(p, foot) == ONE:
            return (p, foot)
    return None


def _open_segments(a: Point, b: Point, c: Point, d: Point) -> Optional[tuple[Point, Point]]:
    """Exact unit pair on two open segments at an extreme distance, if any.

    Extreme distances between nonparallel segments are reached at endpoints;
    parallel segments reach their perpendicular distance along the overlap of
    their interiors.
    """

    u, v = b - a, d - c
    if u.cross(v).sign() != 0:
        return None
    cross = (c - a).cross(u)
    length = u.norm_sq()
    if cross * cross / length != ONE:
        return None
    t_c = (c - a).dot(u) / length
    t_d = (d - a).dot(u) / length
    lo = max(FieldScalar(0), min(t_c, t_d))
    hi = min(FieldScalar(1), max(t_c, t_d))
    if not lo < hi:
        return None
    mid = (lo + hi) * Fraction(1, 2)
    p = a + u.scale(mid)
    foot_param = (p - c).dot(v) / v.norm_sq()
    q = c + v.scale(foot_param)
    return (p, q)


def _face_pairs(a: Cell, b: Cell) -> Optional[tuple[str, str, tuple[Point, Point]]]:
    a_vertices = a.owned_vertices()
    b_vertices = b.owned_vertices()
    a_edges = a.owned_edges()
    b_edges = b.owned_edges()
    for i, p in enumerate(a_vertices):
        for j, q in enumerate(b_vertices):
            hit = _point_point(p, q)
            if hit:
                return f"vertex:{i}", f"vertex:{j}", hit
    for i, p in enumerate(a_vertices):
        for j, seg in enumerate(b_edges):
            hit = _point_open_segment(p, seg.p, seg.q)
            if hit:
                return f"vertex:{i}", f"edge:{j}", hit
    for i, seg in enumerate(a_edges):
        for j, q in enumerate(b_vertices):
            hit = _point_open_segment(q, seg.p, seg.q)
            if hit:
                return f"edge:{i}", f"vertex:{j}", (hit[1], hit[0])
    for i, s in enumerate(a_edges):
        for j, t in enumerate(b_edges):
            hit = _open_segments(s.p, s.q, t.p, t.q)
            if hit:
                return f"edge:{i}", f"edge:{j}", hit
    return None


def _same_cell_vertices(cell: Cell) -> Optional[tuple[str, str, tuple[Point, Point]]]:
    owned = cell.owned_vertices()
    for i in range(len(owned)):
        for j in range(i + 1, len(owned)):
            hit = _point_point(owned[i], owned[j])
            if hit:
                return f"vertex:{i}", f"vertex:{j}", hit
    return None


# Interior witnesses --------------------------------------------------------
# Open triangles ta and tb hold a unit pair exactly when some unit vector u
# lies in the open difference body tb - ta; then ta and tb - u overlap.


def _ccw(tri: Sequence[Point]) -> list[Point]:
    pts = list(tri)
    return pts if signed_area2(pts).sign() > 0 else pts[::-1]


def _average(points: Sequence[Point]) -> Point:
    total = points[0]
    for p in points[1:]:
        total = total + p
    return total.scale(Fraction(1, len(points)))


def _convex_hull(points: Sequence[Point]) -> list[Point]:
    """Counter-clockwise hull corners, collinear points dropped."""

    ordered = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(ordered) < 3:
        return ordered
    lower: list[Point] = []
    for p in ordered:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(ordered):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _closest_to_origin(hull: Sequence[Point]) -> Point:
    origin = Point.of(0, 0)
    if point_in_polygon(origin, hull) >= 0:
        return origin
    best: Optional[Point] = None
    for a, b in _edges(hull):
        u = b - a
        t = (-a).dot(u) / u.norm_sq()
        if t.sign() <= 0:
            p = a
        elif t >= ONE:
            p = b
        else:
            p = a + u.scale(t)
        if best is None or p.norm_sq() < best.norm_sq():
            best = p
    assert best is not None
    return best


def _pull_inside(start: Point, center: Point, below: bool) -> Optional[Point]:
    """Point strictly between ``start`` and ``center`` that stays on ``start``'s side of the unit circle."""

    step = Fraction(1, 2)
    for _ in range(_BISECTION_STEPS):
        p = start + (center - start).scale(step)
        size = p.norm_sq()
        if (size < ONE) if below else (size > ONE):
            return p
        step /= 2
    return None


def _unit_toward(v: Point, bits: int) -> Point:
    """Unit vector with field coordinates whose direction is within about ``2**-bits`` of ``v``."""

    if v.x.sign() < 0:
        return -_unit_toward(-v, bits)
    # w halves the angle of v; squaring w as a complex number gives that angle back at length one.
    size = v.norm_sq().enclosure(bits)
    r = FieldScalar(RationalInterval(max(size.lo, Fraction(0)), size.hi).sqrt(bits).midpoint)
    w = Point(v.x + r, v.y)
    n = w.norm_sq()
    return Point((w.x * w.x - w.y * w.y) / n, w.x * w.y * 2 / n)


def _clip(subject: Sequence[Point], clip: Sequence[Point]) -> list[Point]:
    """Intersection of two counter-clockwise convex polygons."""

    out = list(subject)
    for c1, c2 in _edges(clip):
        if not out:
            break
        edge = c2 - c1
        current, out = out, []
        for s, e in _edges(current):
            ds = edge.cross(s - c1)
            de = edge.cross(e - c1)
            if ds.sign() >= 0:
                out.append(s)
            if ds.sign() * de.sign() < 0:
                out.append(s + (e - s).scale(ds / (ds - de)))
    return out


def _pair_through(ta: Sequence[Point], tb: Sequence[Point], u: Point) -> Optional[tuple[Point, Point]]:
    common = _clip(ta, [q - u for q in tb])
    if len(common) < 3 or signed_area2(common).sign() <= 0:
        return None
    p = _average(common)
    q = p + u
    if point_in_polygon(p, ta) > 0 and point_in_polygon(q, tb) > 0 and squared_distance(p, q) == ONE:
        return p, q
    return None


def _triangle_witness(ta: Sequence[Point], tb: Sequence[Point]) -> Optional[tuple[Point, Point]]:
    ta, tb = _ccw(ta), _ccw(tb)
    hull = _convex_hull([q - p for p in ta for q in tb])
    centroid = _average(hull)
    near = _pull_inside(_closest_to_origin(hull), centroid, below=True)
    far = _pull_inside(max(hull, key=lambda p: p.norm_sq()), centroid, below=False)
    if near is None or far is None:
        return None
    # The open segment near-far stays inside the body and crosses the circle.
    lo, hi = near, far
    for step in range(_BISECTION_STEPS):
        mid = (lo + hi).scale(Fraction(1, 2))
        u = _unit_toward(mid, 32 + step)
        if point_in_polygon(u, hull) > 0:
            found = _pair_through(ta, tb, u)
            if found is not None:
                return found
        if mid.norm_sq() < ONE:
            lo = mid
        else:
            hi = mid
    return None


def _interior_witness(a: Sequence[Point], b: Sequence[Point]) -> Optional[tuple[Point, Point]]:
    for ta in triangulate(a):
        for tb in triangulate(b):
            if not distance_interval_sq(ta, tb).straddles_one():
                continue
            found = _triangle_witness(ta, tb)
            if found is not None:
                return found
    return None


# Conflicts -----------------------------------------------------------------
def _reason(a: Cell, b: Cell, mode: ConflictMode) -> Optional[str]:
    """Which face pair realizes distance one: ``interior``, ``boundary`` or ``None``."""

    if a.tiling is not b.tiling:
        raise CellsNotComparable("cells come from different tilings")
    if a.same_as(b):
        diam = diameter_sq(a.polygon)
        if diam > ONE:
            return "interior"
        if mode is ConflictMode.OWNED_CELLS and diam == ONE and _same_cell_vertices(a):
            return "boundary"
        return None
    interval = distance_interval_sq(a.polygon, b.polygon)
    if interval.straddles_one():
        return "interior"
    if mode is ConflictMode.OPEN_REGIONS:
        return None
    if interval.dmin_sq > ONE or interval.dmax_sq < ONE:
        return None
    return "boundary" if _face_pairs(a, b) else None


def cells_conflict(a: Cell, b: Cell, mode: ConflictMode = ConflictMode.OWNED_CELLS) -> bool:
    """Whether some pair of points of the two cells lies at distance one."""

    return _reason(a, b, mode) is not None


def cell_conflict(
    a: Cell, b: Cell, mode: ConflictMode = ConflictMode.OWNED_CELLS
) -> Optional[ConflictWitness]:
    """Witness for a unit-distance pair between the cells, or ``None``.

    OPEN_REGIONS compares open interiors only; OWNED_CELLS adds the owned open
    edges and owned vertices of each cell.  Colors are not consulted here.
    """

    reason = _reason(a, b, mode)
    if reason is None:
        return None
    if reason == "interior":
        points = _interior_witness(a.polygon, b.polygon)
        if points is None:
            LOGGER.error("No exact interior witness for %s and %s", a.key, b.key)
            raise WitnessNotConstructed(
                f"cells {a.key} and {b.key} reach distance one but no exact pair was built",
                details={"cell_a": a.key, "cell_b": b.key, "steps": _BISECTION_STEPS},
            )
        return ConflictWitness(a.key, b.key, a.color, b.color, "interior", "interior", points)
    if a.same_as(b):
        found = _same_cell_vertices(a)
    else:
        found = _face_pairs(a, b)
    assert found is not None
    face_a, face_b, points = found
    return ConflictWitness(a.key, b.key, a.color, b.color, face_a, face_b, points)
