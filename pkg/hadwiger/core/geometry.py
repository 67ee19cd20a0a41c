"""Exact planar primitives: points, directions, boxes and polygon predicates."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Any, Iterable, Iterator, Sequence

from .errors import ZeroDirection
from .field import FieldScalar, SurdScalar

LOGGER = logging.getLogger(__name__)

__all__ = [
    "Point",
    "Direction",
    "Segment",
    "Window",
    "ORIGIN",
    "sign_of",
    "orient",
    "on_segment_closed",
    "on_segment_open",
    "segments_cross_properly",
    "segments_intersect",
    "signed_area2",
    "point_in_polygon",
    "is_simple_polygon",
    "drop_straight_corners",
    "triangulate",
    "polygon_intersects_window",
    "rays_intersect",
    "compare_polar",
    "compare_polar_from",
    "sort_polar",
    "direction_between",
    "same_ray",
    "opposite_rays",
    "in_open_wedge",
    "lattice_offsets",
    "point_key",
]

Scalar = Any  # FieldScalar or SurdScalar; both expose sign() and ring operators


def sign_of(value: Scalar) -> int:
    """Exact sign of a field or surd value."""

    return value.sign()


@dataclass(frozen=True, slots=True)
class Point:
    """Point of the plane, doubling as a translation vector."""

    x: FieldScalar
    y: FieldScalar

    @classmethod
    def of(cls, x: Any, y: Any) -> "Point":
        return cls(_field(x), _field(y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def scale(self, factor: Any) -> "Point":
        return Point(self.x * factor, self.y * factor)

    def dot(self, other: "Point") -> FieldScalar:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> FieldScalar:
        return self.x * other.y - self.y * other.x

    def norm_sq(self) -> FieldScalar:
        return self.x * self.x + self.y * self.y

    def rot90(self) -> "Point":
        return Point(-self.y, self.x)

    def is_origin(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def approx(self) -> tuple[float, float]:
        return self.x.approx(), self.y.approx()

    def to_text(self) -> str:
        return f"{self.x.to_text()} {self.y.to_text()}"

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


ORIGIN = Point(FieldScalar(0), FieldScalar(0))


def _field(value: Any) -> FieldScalar:
    if isinstance(value, FieldScalar):
        return value
    return FieldScalar(value)


def point_key(p: Point) -> tuple[FieldScalar, FieldScalar]:
    """Sort key ordering points by (y, x)."""

    return (p.y, p.x)


@dataclass(frozen=True, slots=True, eq=False)
class Direction:
    """Nonzero direction; coordinates may carry a square-root part."""

    dx: Scalar
    dy: Scalar

    def __post_init__(self) -> None:
        if sign_of(self.dx) == 0 and sign_of(self.dy) == 0:
            raise ZeroDirection("direction vector is zero")

    @classmethod
    def from_point(cls, p: Point) -> "Direction":
        return cls(p.x, p.y)

    def dot(self, other: "Direction | Point") -> Scalar:
        ox, oy = _components(other)
        return self.dx * ox + self.dy * oy

    def cross(self, other: "Direction | Point") -> Scalar:
        ox, oy = _components(other)
        return self.dx * oy - self.dy * ox

    def perp(self) -> "Direction":
        return Direction(-self.dy, self.dx)

    def __neg__(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def as_point(self) -> Point:
        if isinstance(self.dx, SurdScalar) or isinstance(self.dy, SurdScalar):
            raise TypeError("direction has a square-root part")
        return Point(self.dx, self.dy)

    def approx(self) -> tuple[float, float]:
        return float(self.dx), float(self.dy)

    def angle(self) -> float:
        x, y = self.approx()
        return math.atan2(y, x)

    def __repr__(self) -> str:
        return f"Direction({self.dx}, {self.dy})"


def _components(value: "Direction | Point") -> tuple[Scalar, Scalar]:
    if isinstance(value, Direction):
        return value.dx, value.dy
    return value.x, value.y


@dataclass(frozen=True, slots=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise ValueError("segment endpoints coincide")

    @property
    def vector(self) -> Point:
        return self.q - self.p

    def reversed(self) -> "Segment":
        return Segment(self.q, self.p)

    def translated(self, offset: Point) -> "Segment":
        return Segment(self.p + offset, self.q + offset)


@dataclass(frozen=True, slots=True)
class Window:
    """Closed axis-aligned box."""

    xmin: FieldScalar
    ymin: FieldScalar
    xmax: FieldScalar
    ymax: FieldScalar

    def __post_init__(self) -> None:
        if self.xmin > self.xmax or self.ymin > self.ymax:
            raise ValueError("window bounds are inverted")

    @classmethod
    def of(cls, xmin: Any, ymin: Any, xmax: Any, ymax: Any) -> "Window":
        return cls(_field(xmin), _field(ymin), _field(xmax), _field(ymax))

    @classmethod
    def around(cls, center: Point, radius: Any) -> "Window":
        r = _field(radius)
        return cls(center.x - r, center.y - r, center.x + r, center.y + r)

    @classmethod
    def bounding(cls, points: Iterable[Point]) -> "Window":
        pts = list(points)
        if not pts:
            raise ValueError("cannot bound an empty point set")
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return cls(min(xs), min(ys), max(xs), max(ys))

    def interior_empty(self) -> bool:
        return self.xmin == self.xmax or self.ymin == self.ymax

    def contains(self, p: Point) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def contains_strictly(self, p: Point) -> bool:
        return self.xmin < p.x < self.xmax and self.ymin < p.y < self.ymax

    def intersects(self, other: "Window") -> bool:
        return not (
            other.xmax < self.xmin
            or self.xmax < other.xmin
            or other.ymax < self.ymin
            or self.ymax < other.ymin
        )

    def translated(self, offset: Point) -> "Window":
        return Window(
            self.xmin + offset.x, self.ymin + offset.y, self.xmax + offset.x, self.ymax + offset.y
        )

    def expanded(self, margin: Any) -> "Window":
        m = _field(margin)
        return Window(self.xmin - m, self.ymin - m, self.xmax + m, self.ymax + m)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        return (
            Point(self.xmin, self.ymin),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
            Point(self.xmin, self.ymax),
        )

    def approx(self) -> tuple[float, float, float, float]:
        return self.xmin.approx(), self.ymin.approx(), self.xmax.approx(), self.ymax.approx()


# Predicates ----------------------------------------------------------------
def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if a, b, c turn counter-clockwise, -1 clockwise, 0 collinear."""

    return (b - a).cross(c - a).sign()


def on_segment_closed(p: Point, a: Point, b: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    return (a - p).dot(b - p).sign() <= 0


def on_segment_open(p: Point, a: Point, b: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    return (a - p).dot(b - p).sign() < 0


def segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Open segments ab and cd meet in exactly one point interior to both."""

    o1, o2 = orient(a, b, c), orient(a, b, d)
    if o1 * o2 >= 0:
        return False
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o3 * o4 < 0


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share at least one point."""

    if segments_cross_properly(a, b, c, d):
        return True
    return (
        on_segment_closed(c, a, b)
        or on_segment_closed(d, a, b)
        or on_segment_closed(a, c, d)
        or on_segment_closed(b, c, d)
    )


def signed_area2(points: Sequence[Point]) -> FieldScalar:
    """Twice the signed area of a polygon loop."""

    total = FieldScalar(0)
    n = len(points)
    for i in range(n):
        total = total + points[i].cross(points[(i + 1) % n])
    return total


def point_in_polygon(p: Point, polygon: Sequence[Point]) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (exact winding test)."""

    winding = 0
    n = len(polygon)
    for i in range(n):
        a = polygon[i]
        b = polygon[(i + 1) % n]
        if on_segment_closed(p, a, b):
            return 0
        if a.y <= p.y:
            if b.y > p.y and orient(a, b, p) > 0:
                winding += 1
        elif b.y <= p.y and orient(a, b, p) < 0:
            winding -= 1
    return 1 if winding else -1


def is_simple_polygon(points: Sequence[Point]) -> bool:
    """Closed loop without repeated points, backtracking or self-intersection."""

    n = len(points)
    if n < 3:
        return False
    if len(set(points)) != n:
        return False
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        c = points[(i + 2) % n]
        # consecutive edges may only meet at their shared corner
        if orient(a, b, c) == 0 and (b - a).dot(c - b).sign() < 0:
            return False
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(a, b, points[j], points[(j + 1) % n]):
                return False
    return signed_area2(points).sign() != 0


def drop_straight_corners(points: Sequence[Point]) -> list[Point]:
    """Remove loop points where the boundary runs straight through."""

    loop = list(points)
    changed = True
    while changed and len(loop) > 3:
        changed = False
        for i in range(len(loop)):
            prev, cur, nxt = loop[i - 1], loop[i], loop[(i + 1) % len(loop)]
            if orient(prev, cur, nxt) == 0:
                del loop[i]
                changed = True
                break
    return loop


def triangulate(points: Sequence[Point]) -> list[tuple[Point, Point, Point]]:
    """Ear-clipping triangulation of a simple counter-clockwise polygon."""

    loop = drop_straight_corners(points)
    triangles: list[tuple[Point, Point, Point]] = []
    while len(loop) > 3:
        for i in range(len(loop)):
            prev, cur, nxt = loop[i - 1], loop[i], loop[(i + 1) % len(loop)]
            if orient(prev, cur, nxt) <= 0:
                continue
            if any(
                _in_closed_triangle(other, prev, cur, nxt)
                for other in loop
                if other != prev and other != cur and other != nxt
            ):
                continue
            triangles.append((prev, cur, nxt))
            del loop[i]
            loop = drop_straight_corners(loop)
            break
        else:
            raise ValueError("polygon has no ear; it is not simple and counter-clockwise")
    triangles.append((loop[0], loop[1], loop[2]))
    return triangles


def _in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def polygon_intersects_window(polygon: Sequence[Point], window: Window) -> bool:
    """Closed polygon and closed window share a point."""

    if not window.intersects(Window.bounding(polygon)):
        return False
    if any(window.contains(p) for p in polygon):
        return True
    if window.interior_empty():
        corners = window.corners()
        edges = [(corners[0], corners[2])]
    else:
        corners = window.corners()
        if point_in_polygon(corners[0], polygon) >= 0:
            return True
        edges = [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    n = len(polygon)
    for i in range(n):
        a, b = polygon[i], polygon[(i + 1) % n]
        for c, d in edges:
            if c != d and segments_intersect(a, b, c, d):
                return True
            if c == d and on_segment_closed(c, a, b):
                return True
    return False


def rays_intersect(o1: Point, d1: Point, o2: Point, d2: Point) -> bool:
    """Closed rays o1 + s*d1 and o2 + t*d2 (s, t >= 0) share a point."""

    denom = d1.cross(d2)
    delta = o2 - o1
    if denom.sign() != 0:
        s = delta.cross(d2) / denom
        t = delta.cross(d1) / denom
        return s.sign() >= 0 and t.sign() >= 0
    if delta.cross(d1).sign() != 0:
        return False
    if d1.dot(d2).sign() > 0:
        return True
    return delta.dot(d1).sign() >= 0


# Angular order ---------------------------------------------------------------
def _half(x: Scalar, y: Scalar) -> int:
    sy = sign_of(y)
    if sy > 0 or (sy == 0 and sign_of(x) > 0):
        return 0
    return 1


def compare_polar(u: "Direction | Point", v: "Direction | Point") -> int:
    """Order by angle in [0, 2*pi) measured counter-clockwise from +x."""

    ux, uy = _components(u)
    vx, vy = _components(v)
    hu, hv = _half(ux, uy), _half(vx, vy)
    if hu != hv:
        return -1 if hu < hv else 1
    return -sign_of(ux * vy - uy * vx)


def compare_polar_from(ref: "Direction | Point", u: "Direction | Point", v: "Direction | Point") -> int:
    """Order by counter-clockwise angle measured from ``ref``."""

    rx, ry = _components(ref)
    ux, uy = _components(u)
    vx, vy = _components(v)
    u_rel = Direction(rx * ux + ry * uy, rx * uy - ry * ux)
    v_rel = Direction(rx * vx + ry * vy, rx * vy - ry * vx)
    return compare_polar(u_rel, v_rel)


def sort_polar(items: Iterable[Any], key: Any = None) -> list[Any]:
    values = list(items)
    if key is None:
        return sorted(values, key=cmp_to_key(compare_polar))
    return sorted(values, key=cmp_to_key(lambda a, b: compare_polar(key(a), key(b))))


def same_ray(u: "Direction | Point", v: "Direction | Point") -> bool:
    ux, uy = _components(u)
    vx, vy = _components(v)
    return sign_of(ux * vy - uy * vx) == 0 and sign_of(ux * vx + uy * vy) > 0


def opposite_rays(u: "Direction | Point", v: "Direction | Point") -> bool:
    ux, uy = _components(u)
    vx, vy = _components(v)
    return sign_of(ux * vy - uy * vx) == 0 and sign_of(ux * vx + uy * vy) < 0


def in_open_wedge(d: "Direction | Point", start: "Direction | Point", end: "Direction | Point") -> bool:
    """``d`` lies strictly inside the counter-clockwise sweep from ``start`` to ``end``.

    A sweep whose ends coincide covers the full turn minus that ray.
    """

    if same_ray(d, start) or same_ray(d, end):
        return False
    if same_ray(start, end):
        return True
    return compare_polar_from(start, d, end) < 0


def direction_between(a: Point, b: Point) -> Point:
    """A direction strictly inside the counter-clockwise sweep from ``a`` to ``b``."""

    turn = a.cross(b).sign()
    if turn > 0:
        return a + b
    if turn < 0:
        return -(a + b)
    if a.dot(b).sign() < 0:
        return a.rot90()
    return -a


# Lattices ------------------------------------------------------------------
def lattice_offsets(
    t1: Point, t2: Point, block: Window, target: Window, margin: int = 1
) -> Iterator[tuple[int, int]]:
    """Candidate (i, j) whose translate of ``block`` may touch ``target``.

    Floating point only bounds the search; callers confirm each hit exactly.
    """

    a, b = t1.approx()
    c, d = t2.approx()
    det = a * d - b * c
    if det == 0:
        raise ValueError("lattice vectors are dependent")
    bx0, by0, bx1, by1 = block.approx()
    tx0, ty0, tx1, ty1 = target.approx()
    coords_i: list[float] = []
    coords_j: list[float] = []
    for x in (tx0 - bx1, tx1 - bx0):
        for y in (ty0 - by1, ty1 - by0):
            coords_i.append((d * x - c * y) / det)
            coords_j.append((-b * x + a * y) / det)
    i0 = math.floor(min(coords_i)) - margin
    i1 = math.ceil(max(coords_i)) + margin
    j0 = math.floor(min(coords_j)) - margin
    j1 = math.ceil(max(coords_j)) + margin
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            yield (i, j)
