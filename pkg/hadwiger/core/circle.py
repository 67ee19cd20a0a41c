"""Unit circles around vertices: crossings, point types, alternative arcs and audits.

Points where a border meets the unit circle ``C_O`` around a vertex ``O`` are
roots of a quadratic over the coordinate field.  They are kept symbolic as
:class:`~hadwiger.core.field.SurdScalar` coordinates sharing the radicand of
their defining quadratic; ordering points with different radicands refines
coordinate enclosures and falls back to exact coincidence tests.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Optional, Sequence

from .errors import DegreeNot4, NotOnCircle, UndecidedOrdering
from .field import FieldScalar, RationalInterval, SurdScalar
from .geometry import (
    Direction,
    Point,
    Segment,
    Window,
    direction_between,
    in_open_wedge,
    same_ray,
    sort_polar,
)
from .plane import Patch, Tiling, Vertex, Wedge, colors_at_point, instantiate_window, split_key, tag_key

LOGGER = logging.getLogger(__name__)

__all__ = [
    "RefinementBudget",
    "CirclePoint",
    "CrossingKind",
    "Crossing",
    "PointKind",
    "PointType",
    "TypedArc",
    "CrossingViolation",
    "CrossingCensus",
    "WalkStatus",
    "WalkReport",
    "unit_circle_crossings",
    "exclusion_sets",
    "classify_direction",
    "point_type_arcs",
    "alternative_arcs",
    "audit_crossing_colors",
    "crossing_color_census",
    "hexagon_walk_audit",
    "rotate_circle_point",
    "find_crossing",
    "circle_points_coincide",
    "sort_circle_points",
    "ROTATION_60",
    "ROTATION_90",
]

ONE = FieldScalar(1)
ROTATION_60 = (FieldScalar(Fraction(1, 2)), FieldScalar(0, 0, Fraction(1, 2)))
ROTATION_90 = (FieldScalar(0), FieldScalar(1))


@dataclass(frozen=True, slots=True)
class RefinementBudget:
    """Bit budget for separating circle points by enclosure refinement."""

    bits: int = 256
    max_bits: int = 4096

    @classmethod
    def from_settings(cls, settings: Any) -> "RefinementBudget":
        bits = max(8, int(getattr(settings, "refinement_bits", cls.bits)))
        max_bits = max(bits, int(getattr(settings, "max_refinement_bits", cls.max_bits)))
        return cls(bits=bits, max_bits=max_bits)


DEFAULT_BUDGET = RefinementBudget()


# Circle points ---------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class CirclePoint:
    """Point of the unit circle around vertex ``center``.

    Exact points carry ``exact``; segment roots carry the supporting segment,
    the root index (1 for the root further along the segment) and the border
    key when the segment is an actual border of the tiling.
    """

    center: str
    origin: Point
    x: SurdScalar
    y: SurdScalar
    exact: Optional[Point] = None
    segment: Optional[Segment] = None
    root: int = 0
    border_key: Optional[str] = None

    @classmethod
    def at(
        cls, center: str, origin: Point, point: Point, border_key: Optional[str] = None, root: int = 0
    ) -> "CirclePoint":
        return cls(
            center,
            origin,
            SurdScalar.lift(point.x),
            SurdScalar.lift(point.y),
            exact=point,
            root=root,
            border_key=border_key,
        )

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def radicand(self) -> Optional[FieldScalar]:
        if self.x.has_surd():
            return self.x.r
        if self.y.has_surd():
            return self.y.r
        return None

    def relative(self) -> tuple[SurdScalar, SurdScalar]:
        return self.x - self.origin.x, self.y - self.origin.y

    def direction(self) -> Direction:
        rx, ry = self.relative()
        return Direction(rx, ry)

    def on_circle(self) -> bool:
        rx, ry = self.relative()
        return (rx * rx + ry * ry - ONE).sign() == 0

    def enclosure(self, bits: int) -> tuple[RationalInterval, RationalInterval]:
        rx, ry = self.relative()
        return rx.enclosure(bits), ry.enclosure(bits)

    def approx(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def describe(self) -> str:
        x, y = self.approx()
        if self.exact is not None:
            return f"exact({self.exact.x};{self.exact.y})~({x:.6f},{y:.6f})"
        source = self.border_key or "segment"
        sign = "+" if self.root else "-"
        return f"root({source},{sign})~({x:.6f},{y:.6f})"


def _segment_roots(
    center: str, origin: Point, segment: Segment, border_key: Optional[str]
) -> list[tuple[CirclePoint, bool]]:
    """Points of the open segment on the unit circle, flagged when tangent."""

    a, u = segment.p, segment.vector
    w = a - origin
    big_a = u.norm_sq()
    big_b = w.dot(u)
    big_c = w.norm_sq() - ONE
    disc = big_b * big_b - big_a * big_c
    sign = disc.sign()
    if sign < 0:
        return []
    if sign == 0:
        t = -big_b / big_a
        if t.sign() > 0 and t < ONE:
            point = a + u.scale(t)
            return [(CirclePoint.at(center, origin, point, border_key), True)]
        return []
    out: list[tuple[CirclePoint, bool]] = []
    for root in (0, 1):
        point = _root_point(center, origin, segment, root, border_key)
        if point is not None:
            out.append((point, False))
    return out


def _root_point(
    center: str, origin: Point, segment: Segment, root: int, border_key: Optional[str]
) -> Optional[CirclePoint]:
    """Root ``root`` of the segment's circle quadratic, if it lies in the open segment."""

    a, u = segment.p, segment.vector
    w = a - origin
    big_a = u.norm_sq()
    big_b = w.dot(u)
    disc = big_b * big_b - big_a * (w.norm_sq() - ONE)
    sigma = 1 if root else -1
    # t * A = -B + sigma * sqrt(disc); require 0 < t < 1
    if SurdScalar(-big_b, FieldScalar(sigma), disc).sign() <= 0:
        return None
    if SurdScalar(-big_b - big_a, FieldScalar(sigma), disc).sign() >= 0:
        return None
    root_value = disc.sqrt_exact()
    if root_value is not None:
        t = (-big_b + root_value * sigma) / big_a
        return CirclePoint.at(center, origin, a + u.scale(t), border_key, root)
    inv = big_a.inverse()
    base = -big_b * inv
    x = SurdScalar(a.x + u.x * base, u.x * inv * sigma, disc)
    y = SurdScalar(a.y + u.y * base, u.y * inv * sigma, disc)
    return CirclePoint(center, origin, x, y, segment=segment, root=root, border_key=border_key)


# Coincidence and ordering ----------------------------------------------------
def _exact_matches_root(point: Point, root: CirclePoint) -> bool:
    assert root.segment is not None
    a, u = root.segment.p, root.segment.vector
    if (point - a).cross(u).sign() != 0:
        return False
    if (point - root.origin).norm_sq() != ONE:
        return False
    big_b = (a - root.origin).dot(u)
    foot = a - u.scale(big_b / u.norm_sq())
    sigma = 1 if root.root else -1
    return (point - foot).dot(u).sign() == sigma


def circle_points_coincide(p: CirclePoint, q: CirclePoint) -> bool:
    """Exact equality of two circle points, whatever their representation."""

    if p.exact is not None and q.exact is not None:
        return p.exact == q.exact
    if p.exact is not None:
        return _exact_matches_root(p.exact, q)
    if q.exact is not None:
        return _exact_matches_root(q.exact, p)
    assert p.segment is not None and q.segment is not None
    a1, u1 = p.segment.p, p.segment.vector
    a2, u2 = q.segment.p, q.segment.vector
    turn = u1.cross(u2)
    if turn.sign() != 0:
        s = (a2 - a1).cross(u2) / turn
        meet = a1 + u1.scale(s)
        return _exact_matches_root(meet, p) and _exact_matches_root(meet, q)
    if (a2 - a1).cross(u1).sign() != 0:
        return False
    sigma1 = 1 if p.root else -1
    sigma2 = 1 if q.root else -1
    return sigma1 * u1.dot(u2).sign() == sigma2


def _half(y: SurdScalar, x: SurdScalar) -> int:
    sy = y.sign()
    if sy > 0 or (sy == 0 and x.sign() > 0):
        return 0
    return 1


def _compatible(p: CirclePoint, q: CirclePoint) -> bool:
    rp, rq = p.radicand, q.radicand
    return rp is None or rq is None or rp == rq


def _compare_points(p: CirclePoint, q: CirclePoint, budget: RefinementBudget) -> int:
    """Counter-clockwise order from the +x direction around the shared center."""

    px, py = p.relative()
    qx, qy = q.relative()
    hp, hq = _half(py, px), _half(qy, qx)
    if hp != hq:
        return -1 if hp < hq else 1
    if _compatible(p, q):
        return -(px * qy - py * qx).sign()
    bits = budget.bits
    while bits <= budget.max_bits:
        ipx, ipy = p.enclosure(bits)
        iqx, iqy = q.enclosure(bits)
        cross = ipx * iqy - ipy * iqx
        if cross.excludes_zero():
            return -1 if cross.lo > 0 else 1
        bits *= 2
    if circle_points_coincide(p, q):
        return 0
    raise UndecidedOrdering(
        f"could not order {p.describe()} and {q.describe()} within {budget.max_bits} bits",
        details={"center": p.center, "max_bits": budget.max_bits},
    )


def sort_circle_points(points: Sequence[CirclePoint], budget: RefinementBudget = DEFAULT_BUDGET) -> list[CirclePoint]:
    return sorted(points, key=cmp_to_key(lambda a, b: _compare_points(a, b, budget)))


# Crossings ---------------------------------------------------------------
class CrossingKind(str, Enum):
    CROSSING = "crossing"
    PSEUDO = "pseudo"


@dataclass(frozen=True, eq=False)
class Crossing:
    """Border point on ``C_O`` with the regions met just before and after it.

    ``before`` and ``after`` are cell keys in counter-clockwise travel along
    the circle; ``None`` stands for the uncovered outside of a finite patch.
    """

    at: CirclePoint
    kind: CrossingKind
    reason: str
    before: Optional[str]
    after: Optional[str]

    @property
    def regions(self) -> tuple[str, ...]:
        keys = [key for key in (self.before, self.after) if key is not None]
        return tuple(dict.fromkeys(keys))

    def describe(self, index: int) -> str:
        before = self.before or "-"
        after = self.after or "-"
        return (
            f"crossing index={index} kind={self.kind.value} reason={self.reason} "
            f"before={before} after={after} at={self.at.describe()}"
        )


@dataclass(frozen=True)
class _Neighborhood:
    tiling: Tiling
    center: str
    origin: Point
    patch: Patch


def _neighborhood(t: Tiling, center: str) -> _Neighborhood:
    origin = t.vertex_point(center)
    patch = instantiate_window(t, Window.around(origin, 1))
    return _Neighborhood(t, center, origin, patch)


def _wedge_key(wedge: Wedge) -> Optional[str]:
    if wedge.region_id is None:
        return None
    return tag_key(wedge.region_id, wedge.offset)


def _wedge_toward(wedges: Sequence[Wedge], d: Point, ccw_tilt: bool) -> Optional[Wedge]:
    for wedge in wedges:
        if in_open_wedge(d, wedge.start, wedge.end):
            return wedge
        if ccw_tilt and same_ray(d, wedge.start):
            return wedge
        if not ccw_tilt and same_ray(d, wedge.end):
            return wedge
    return None


def unit_circle_crossings(
    t: Tiling, center: str, budget: RefinementBudget = DEFAULT_BUDGET
) -> list[Crossing]:
    """Every border and vertex point on the unit circle around ``center``, by angle."""

    hood = _neighborhood(t, center)
    origin = hood.origin
    found: list[Crossing] = []
    for border in hood.patch.borders:
        side = border.segment.vector.cross(origin - border.segment.p).sign()
        for point, tangent in _segment_roots(center, origin, border.segment, border.key):
            if tangent:
                # the circle stays on the center's side of a tangent border
                key = border.left if side > 0 else border.right
                found.append(Crossing(point, CrossingKind.PSEUDO, "tangent", key, key))
                continue
            if point.root:
                found.append(Crossing(point, CrossingKind.CROSSING, "border", border.right, border.left))
            else:
                found.append(Crossing(point, CrossingKind.CROSSING, "border", border.left, border.right))
    for vertex in hood.patch.vertices:
        radial = vertex.point - origin
        if radial.norm_sq() != ONE:
            continue
        base = t.vertex(vertex.vertex_id)
        inside = any(s.direction.dot(radial).sign() < 0 for s in base.spokes)
        outside = any(s.direction.dot(radial).sign() >= 0 for s in base.spokes)
        wedges = hood.patch.wedges_at(vertex)
        tangent = radial.rot90()
        after = _wedge_toward(wedges, tangent, ccw_tilt=True)
        before = _wedge_toward(wedges, -tangent, ccw_tilt=False)
        kind = CrossingKind.CROSSING if inside and outside else CrossingKind.PSEUDO
        reason = "vertex" if kind is CrossingKind.CROSSING else "one-sided"
        found.append(
            Crossing(
                CirclePoint.at(center, origin, vertex.point, vertex.key),
                kind,
                reason,
                _wedge_key(before) if before else None,
                _wedge_key(after) if after else None,
            )
        )
    order = sort_circle_points([c.at for c in found], budget)
    position = {id(point): index for index, point in enumerate(order)}
    found.sort(key=lambda c: position[id(c.at)])
    LOGGER.debug(
        "Circle around %s: %d crossings, %d pseudo-crossings",
        center,
        sum(c.kind is CrossingKind.CROSSING for c in found),
        sum(c.kind is CrossingKind.PSEUDO for c in found),
    )
    return found


def find_crossing(crossings: Sequence[Crossing], point: CirclePoint) -> Optional[int]:
    """Index of the crossing located exactly at ``point``."""

    for index, crossing in enumerate(crossings):
        if circle_points_coincide(crossing.at, point):
            return index
    return None


def rotate_circle_point(point: CirclePoint, rotation: tuple[FieldScalar, FieldScalar]) -> CirclePoint:
    """Rotate about the circle's center by the angle with the given cosine and sine."""

    cos, sin = rotation
    origin = point.origin

    def turn(p: Point) -> Point:
        v = p - origin
        return Point(origin.x + v.x * cos - v.y * sin, origin.y + v.x * sin + v.y * cos)

    if point.exact is not None:
        return CirclePoint.at(point.center, origin, turn(point.exact))
    assert point.segment is not None
    segment = Segment(turn(point.segment.p), turn(point.segment.q))
    rotated = _root_point(point.center, origin, segment, point.root, None)
    assert rotated is not None
    return rotated


# Point types ---------------------------------------------------------------
class PointKind(str, Enum):
    INWARD = "inward"
    OUTWARD = "outward"
    ALTERNATIVE = "alternative"
    DEGENERATE = "degenerate"
    MIXED = "mixed"


@dataclass(frozen=True, slots=True)
class PointType:
    """Type of a circle point ``O + d`` from the colors its neighborhoods exclude.

    ``excluded`` is the outside exclusion set for ALTERNATIVE points and empty
    otherwise; the counts are always reported.
    """

    kind: PointKind
    inside_count: int
    outside_count: int
    excluded: frozenset[int] = frozenset()

    def describe(self) -> str:
        text = f"type={self.kind.value} inside={self.inside_count} outside={self.outside_count}"
        if self.excluded:
            text += " excluded=" + ",".join(str(c) for c in sorted(self.excluded))
        return text


def _wedge_meets_half_plane(wedge: Wedge, d: Any) -> bool:
    if d.dot(wedge.start).sign() > 0 or d.dot(wedge.end).sign() > 0:
        return True
    return in_open_wedge(d, wedge.start, wedge.end)


def _as_direction(d: Any) -> Direction:
    if isinstance(d, Direction):
        return d
    return Direction.from_point(d)


def exclusion_sets(t: Tiling, center: str, d: Any) -> tuple[frozenset[int], frozenset[int]]:
    """Colors at ``center`` met by unit circles centered just inside and just outside ``center + d``."""

    direction = _as_direction(d)
    vertex = t.vertex(center)
    outside = frozenset(
        w.color for w in vertex.wedges if w.color is not None and _wedge_meets_half_plane(w, direction)
    )
    inside = frozenset(
        w.color for w in vertex.wedges if w.color is not None and _wedge_meets_half_plane(w, -direction)
    )
    return inside, outside


def _sign_counts(vertex: Vertex, direction: Direction) -> tuple[int, int, int]:
    signs = [direction.dot(s.direction).sign() for s in vertex.spokes]
    return signs.count(1), signs.count(-1), signs.count(0)


def _excluded_outside(vertex: Vertex, direction: Direction) -> frozenset[int]:
    # Wedges bounded by a border pointing toward O + d; the wedge between the
    # two borders pointing away is the one color left over.
    return frozenset(
        w.color
        for w in vertex.wedges
        if w.color is not None and (direction.dot(w.start).sign() > 0 or direction.dot(w.end).sign() > 0)
    )


def classify_direction(t: Tiling, center: str, d: Any) -> PointType:
    """Classify the circle point in direction ``d`` from ``center`` by counting borders on each side.

    At most one border pointing toward the point makes it INWARD, at most one
    pointing away makes it OUTWARD, two and two make it ALTERNATIVE. Any border
    on the tangent line makes it DEGENERATE. Vertices of degree five or more
    can split other ways; those points are MIXED.
    """

    direction = _as_direction(d)
    vertex = t.vertex(center)
    inside, outside = exclusion_sets(t, center, direction)
    counts = len(inside), len(outside)
    positive, negative, zero = _sign_counts(vertex, direction)
    if zero:
        return PointType(PointKind.DEGENERATE, *counts)
    if positive <= 1:
        return PointType(PointKind.INWARD, *counts)
    if negative <= 1:
        return PointType(PointKind.OUTWARD, *counts)
    if positive == negative == 2:
        return PointType(PointKind.ALTERNATIVE, *counts, _excluded_outside(vertex, direction))
    return PointType(PointKind.MIXED, *counts)


# Arcs ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class TypedArc:
    """Maximal arc of circle directions sharing one point type and exclusion set."""

    kind: PointKind
    excluded: frozenset[int]
    start: Point
    end: Point
    start_closed: bool
    end_closed: bool
    single_point: bool = False

    def contains(self, d: Any) -> bool:
        if self.single_point:
            return same_ray(d, self.start)
        if self.start_closed and same_ray(d, self.start):
            return True
        if self.end_closed and same_ray(d, self.end):
            return True
        return in_open_wedge(d, self.start, self.end)

    def describe(self) -> str:
        left = "[" if self.start_closed else "("
        right = "]" if self.end_closed else ")"
        start = Direction.from_point(self.start).angle()
        end = Direction.from_point(self.end).angle()
        text = f"arc type={self.kind.value} span={left}{_degrees(start)},{_degrees(end)}{right}"
        if self.excluded:
            text += " excluded=" + ",".join(str(c) for c in sorted(self.excluded))
        if self.single_point:
            text += " single-point=yes"
        return text


def _degrees(radians: float) -> str:
    value = (radians * 180.0 / 3.141592653589793) % 360.0
    return f"{value:.2f}"


@dataclass(frozen=True)
class _Piece:
    point: bool
    start: Point
    end: Point
    label: Optional[tuple[PointKind, frozenset[int]]]


def _critical_directions(t: Tiling, center: str) -> list[Point]:
    rays: list[Point] = []
    for spoke in t.vertex(center).spokes:
        for d in (spoke.direction.rot90(), -spoke.direction.rot90()):
            if not any(same_ray(d, r) for r in rays):
                rays.append(d)
    return sort_polar(rays)


def _label_open(t: Tiling, center: str, d: Point) -> Optional[tuple[PointKind, frozenset[int]]]:
    kind = classify_direction(t, center, d)
    if kind.kind is PointKind.MIXED:
        return None
    return kind.kind, kind.excluded


def _label_critical(t: Tiling, center: str, d: Point) -> Optional[tuple[PointKind, frozenset[int]]]:
    vertex = t.vertex(center)
    inside, outside = exclusion_sets(t, center, d)
    total = len(vertex.colors())
    if vertex.degree == 4 and total == 4 and len(outside) == 3:
        return PointKind.ALTERNATIVE, outside
    if len(inside) == total:
        return PointKind.INWARD, frozenset()
    if len(outside) == total:
        return PointKind.OUTWARD, frozenset()
    return None


def point_type_arcs(t: Tiling, center: str) -> list[TypedArc]:
    """All maximal inward, outward and alternative arcs of ``C_O``."""

    critical = _critical_directions(t, center)
    pieces: list[_Piece] = []
    m = len(critical)
    for i, c in enumerate(critical):
        nxt = critical[(i + 1) % m]
        pieces.append(_Piece(True, c, c, _label_critical(t, center, c)))
        sample = direction_between(c, nxt)
        pieces.append(_Piece(False, c, nxt, _label_open(t, center, sample)))
    labels = [piece.label for piece in pieces]
    if all(label == labels[0] for label in labels):
        if labels[0] is None:
            return []
        kind, excluded = labels[0]
        return [TypedArc(kind, excluded, critical[0], critical[0], True, True)]
    shift = next(i for i in range(len(pieces)) if labels[i] != labels[i - 1])
    rotated = pieces[shift:] + pieces[:shift]
    arcs: list[TypedArc] = []
    run: list[_Piece] = []
    for piece in rotated + [_Piece(True, critical[0], critical[0], None)]:
        if run and piece.label == run[0].label:
            run.append(piece)
            continue
        if run and run[0].label is not None:
            first, last = run[0], run[-1]
            kind, excluded = run[0].label
            arcs.append(
                TypedArc(
                    kind,
                    excluded,
                    first.start,
                    last.end,
                    start_closed=first.point,
                    end_closed=last.point,
                    single_point=len(run) == 1 and first.point,
                )
            )
        run = [piece]
    LOGGER.debug("Vertex %s: %d typed arcs", center, len(arcs))
    return arcs


def alternative_arcs(t: Tiling, center: str) -> list[TypedArc]:
    """Alternative arcs around a degree-4 vertex; there are at most four."""

    degree = t.vertex(center).degree
    if degree != 4:
        raise DegreeNot4(f"vertex {center} has degree {degree}", details={"degree": degree})
    return [arc for arc in point_type_arcs(t, center) if arc.kind is PointKind.ALTERNATIVE]


# Audits --------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class CrossingViolation:
    kind: str
    crossing_index: int
    regions: tuple[str, ...]
    color: int

    def describe(self) -> str:
        return (
            f"violation kind={self.kind} crossing={self.crossing_index} "
            f"regions={','.join(self.regions)} color={self.color}"
        )


def _key_color(t: Tiling, key: Optional[str]) -> Optional[int]:
    if key is None:
        return None
    base, _ = split_key(key)
    return t.region(base).color


def audit_crossing_colors(
    t: Tiling, center: str, budget: RefinementBudget = DEFAULT_BUDGET
) -> list[CrossingViolation]:
    """Crossings whose bordering regions reuse a color at ``center`` or share one."""

    at_center = colors_at_point(t, t.vertex_point(center))
    violations: list[CrossingViolation] = []
    for index, crossing in enumerate(unit_circle_crossings(t, center, budget)):
        if crossing.kind is not CrossingKind.CROSSING:
            continue
        for key in crossing.regions:
            color = _key_color(t, key)
            if color is not None and color in at_center:
                violations.append(CrossingViolation("center-color", index, (key,), color))
        before = _key_color(t, crossing.before)
        after = _key_color(t, crossing.after)
        if before is not None and before == after and crossing.before != crossing.after:
            violations.append(
                CrossingViolation("same-color-pair", index, crossing.regions, before)
            )
    return violations


@dataclass(frozen=True, slots=True)
class CrossingCensus:
    center: str
    center_colors: frozenset[int]
    crossing_colors: frozenset[int]
    lower_bound: int

    @property
    def total_colors(self) -> int:
        return len(self.center_colors | self.crossing_colors)

    def describe(self) -> str:
        return (
            f"census center={self.center} center_colors={len(self.center_colors)} "
            f"crossing_colors={len(self.crossing_colors)} total={self.total_colors} "
            f"local_bound={self.lower_bound}"
        )


def crossing_color_census(
    t: Tiling, center: str, budget: RefinementBudget = DEFAULT_BUDGET
) -> CrossingCensus:
    """Colors at the vertex and on its circle's crossings, with the local bound they imply."""

    at_center = colors_at_point(t, t.vertex_point(center))
    on_circle: set[int] = set()
    for crossing in unit_circle_crossings(t, center, budget):
        if crossing.kind is not CrossingKind.CROSSING:
            continue
        for key in crossing.regions:
            color = _key_color(t, key)
            if color is not None:
                on_circle.add(color)
    return CrossingCensus(center, at_center, frozenset(on_circle), len(at_center) + 2)


# Hexagon walk ----------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class WalkStatus:
    """One hexagon corner: the crossing it lands on, if any, and its point type."""

    crossing_index: Optional[int]
    point_type: Optional[PointType]

    @property
    def is_crossing(self) -> bool:
        return self.point_type is not None


@dataclass(frozen=True, eq=False)
class WalkReport:
    points: tuple[CirclePoint, ...]
    statuses: tuple[WalkStatus, ...]
    unit_chords: tuple[bool, ...]
    same_arc_pairs: tuple[tuple[int, int], ...]
    extreme_crossings: tuple[int, ...]

    @property
    def not_crossing(self) -> tuple[int, ...]:
        return tuple(i for i, status in enumerate(self.statuses) if not status.is_crossing)

    @property
    def has_findings(self) -> bool:
        return bool(self.not_crossing or self.same_arc_pairs or self.extreme_crossings)

    def lines(self) -> list[str]:
        out = []
        for index, (point, status) in enumerate(zip(self.points, self.statuses)):
            if status.point_type is None:
                out.append(f"walk index={index} status=not-crossing at={point.describe()}")
            else:
                out.append(
                    f"walk index={index} status=crossing crossing={status.crossing_index} "
                    f"{status.point_type.describe()} at={point.describe()}"
                )
        for a, b in self.same_arc_pairs:
            out.append(f"walk same-arc pair={a},{b}")
        for index in self.extreme_crossings:
            out.append(f"walk extreme crossing={index}")
        return out


def _chord_is_unit(p: CirclePoint, q: CirclePoint) -> bool:
    dx = p.x - q.x
    dy = p.y - q.y
    return (dx * dx + dy * dy - ONE).sign() == 0


def hexagon_walk_audit(
    t: Tiling,
    center: str,
    start: "Crossing | CirclePoint",
    budget: RefinementBudget = DEFAULT_BUDGET,
) -> WalkReport:
    """Rotate ``start`` around the inscribed hexagon and classify each corner."""

    degree = t.vertex(center).degree
    if degree != 4:
        raise DegreeNot4(f"vertex {center} has degree {degree}", details={"degree": degree})
    point = start.at if isinstance(start, Crossing) else start
    origin = t.vertex_point(center)
    if point.origin != origin or not point.on_circle():
        raise NotOnCircle(f"{point.describe()} is not on the unit circle around {center}")
    crossings = unit_circle_crossings(t, center, budget)
    arcs = alternative_arcs(t, center)

    points = [point]
    for _ in range(5):
        points.append(rotate_circle_point(points[-1], ROTATION_60))
    statuses: list[WalkStatus] = []
    for corner in points:
        index = find_crossing(crossings, corner)
        if index is None or crossings[index].kind is not CrossingKind.CROSSING:
            statuses.append(WalkStatus(index, None))
            continue
        statuses.append(WalkStatus(index, classify_direction(t, center, corner.direction())))
    chords = tuple(_chord_is_unit(points[k], points[(k + 1) % 6]) for k in range(6))

    pairs: list[tuple[int, int]] = []
    for k in range(6):
        nxt = (k + 1) % 6
        if not (statuses[k].is_crossing and statuses[nxt].is_crossing):
            continue
        da, db = points[k].direction(), points[nxt].direction()
        if any(arc.contains(da) and arc.contains(db) for arc in arcs):
            pairs.append((k, nxt))
    extreme = tuple(
        k
        for k, status in enumerate(statuses)
        if status.point_type is not None
        and status.point_type.kind in (PointKind.INWARD, PointKind.OUTWARD)
    )
    return WalkReport(tuple(points), tuple(statuses), chords, tuple(pairs), extreme)
