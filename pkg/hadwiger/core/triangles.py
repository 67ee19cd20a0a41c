"""Triangle colorings: recognition, degree search and the borderline chain descent."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import HypothesesViolated, NotTriangleTiling, PatchTooSmall, UnknownRegion
from .geometry import Point, in_open_wedge, orient, rays_intersect, same_ray
from .plane import Borderline, Cell, Patch, PatchVertex, Tiling, Wedge, as_patch, tag_key

LOGGER = logging.getLogger(__name__)

__all__ = [
    "TriangleCheck",
    "NotFound",
    "ChainHypotheses",
    "ChainResult",
    "is_triangle_tiling",
    "find_degree_ge4_vertex",
    "chain_hypotheses",
    "obtuse_chain_audit",
    "borderline_between",
    "triangle_corners",
]

PATCH_CAVEAT = "only the finite patch was searched; boundary vertices make no degree claims"


@dataclass(frozen=True)
class TriangleCheck:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class NotFound:
    searched: int
    caveat: str = PATCH_CAVEAT

    def describe(self) -> str:
        return f"degree-search result=not-found searched={self.searched} caveat={self.caveat!r}"


def triangle_corners(cell: Cell) -> list[int]:
    """Indices of corners where the boundary actually turns."""

    pts = cell.polygon
    n = len(pts)
    return [k for k in range(n) if orient(pts[k - 1], pts[k], pts[(k + 1) % n]) != 0]


def is_triangle_tiling(source: Union[Tiling, Patch]) -> TriangleCheck:
    """Whether every region is a triangle; corners lying on a straight edge are allowed."""

    patch = as_patch(source)
    reasons: list[str] = []
    seen: set[str] = set()
    for cell in patch.cells:
        if cell.region.id in seen:
            continue
        seen.add(cell.region.id)
        pts = cell.polygon
        n = len(pts)
        turning = triangle_corners(cell)
        if len(turning) != 3:
            reasons.append(f"region {cell.region.id} has {len(turning)} corners")
        for k in range(n):
            if orient(pts[k - 1], pts[k], pts[(k + 1) % n]) < 0:
                reasons.append(f"region {cell.region.id} has an angle above pi at corner {k}")
    return TriangleCheck(not reasons, tuple(reasons))


def _true_degree(patch: Patch, vertex: PatchVertex) -> int:
    return patch.tiling.vertex(vertex.vertex_id).degree


def find_degree_ge4_vertex(source: Union[Tiling, Patch]) -> Union[str, NotFound]:
    """First interior vertex of degree at least four, in (y, x) order."""

    patch = as_patch(source)
    check = is_triangle_tiling(patch)
    if not check:
        raise NotTriangleTiling("patch is not a triangle coloring", details={"reasons": list(check.reasons)})
    interior = patch.interior_vertices()
    for vertex in interior:
        if _true_degree(patch, vertex) >= 4:
            LOGGER.debug("Degree %d vertex at %s", _true_degree(patch, vertex), vertex.key)
            return vertex.key
    return NotFound(len(interior))


# Borderline chains -----------------------------------------------------------
@dataclass(frozen=True)
class ChainHypotheses:
    """Three chained borderlines AB, BC, CD with the descent preconditions checked exactly.

    Angles are measured on the side of A; D must lie strictly on that side of
    line BC for the angle at C to be below pi.
    """

    ab: Borderline
    bc: Borderline
    cd: Borderline
    a: Point
    b: Point
    c: Point
    d: Point
    rays_disjoint: bool
    angle_abc_ok: bool
    angle_bcd_ok: bool

    @property
    def holds(self) -> bool:
        return self.rays_disjoint and self.angle_abc_ok and self.angle_bcd_ok

    def failures(self) -> list[str]:
        out = []
        if not self.rays_disjoint:
            out.append("rays BA and CD intersect")
        if not self.angle_abc_ok:
            out.append("angle ABC is not below pi")
        if not self.angle_bcd_ok:
            out.append("angle BCD is not below pi")
        return out


def _ends(line: Borderline) -> tuple[Point, Point]:
    return line.start, line.end


def _shared(first: Borderline, second: Borderline) -> Optional[tuple[Point, Point, Point]]:
    """(other end of first, shared end, other end of second)."""

    for p in _ends(first):
        for q in _ends(second):
            if p == q:
                other_first = first.end if p == first.start else first.start
                other_second = second.end if q == second.start else second.start
                return other_first, p, other_second
    return None


def chain_hypotheses(patch: Patch, ab: Borderline, bc: Borderline, cd: Borderline) -> ChainHypotheses:
    first = _shared(ab, bc)
    second = _shared(bc, cd)
    if first is None or second is None:
        raise HypothesesViolated("borderlines do not chain end to end")
    a, b, c = first
    c2, _, d = second
    if c2 != b or c != second[1]:
        raise HypothesesViolated("borderlines AB, BC and CD do not share B and C")
    side = orient(b, c, a)
    return ChainHypotheses(
        ab=ab,
        bc=bc,
        cd=cd,
        a=a,
        b=b,
        c=c,
        d=d,
        rays_disjoint=not rays_intersect(b, a - b, c, d - c),
        angle_abc_ok=side != 0,
        angle_bcd_ok=side != 0 and orient(b, c, d) == side,
    )


def borderline_between(lines: Sequence[Borderline], p: Point, q: Point) -> Borderline:
    """The borderline with endpoints ``p`` and ``q``."""

    for line in lines:
        if {line.start, line.end} == {p, q}:
            return line
    raise HypothesesViolated(f"no borderline joins {p} and {q}")


@dataclass(frozen=True)
class ChainResult:
    vertex_key: str
    degree: int
    steps: tuple[str, ...] = field(default_factory=tuple)

    def describe(self) -> str:
        return f"chain vertex={self.vertex_key} degree={self.degree} steps={'>'.join(self.steps)}"


def _patch_vertex(patch: Patch, p: Point) -> PatchVertex:
    vertex = patch.vertex_at.get(p)
    if vertex is None:
        raise PatchTooSmall(f"descent reached {p}, which is outside the patch")
    return vertex


def _wedge_cell(patch: Patch, wedge: Wedge) -> Cell:
    if wedge.region_id is None:
        raise PatchTooSmall("descent walked off the patch boundary")
    try:
        return patch.cell(tag_key(wedge.region_id, wedge.offset))
    except UnknownRegion as exc:
        raise PatchTooSmall(str(exc)) from exc


def _triangle_at(patch: Patch, vertex: PatchVertex, toward: Point, ccw: bool) -> Cell:
    """Region just counter-clockwise (or clockwise) of direction ``toward`` at ``vertex``."""

    for wedge in patch.wedges_at(vertex):
        if in_open_wedge(toward, wedge.start, wedge.end):
            return _wedge_cell(patch, wedge)
        if ccw and same_ray(toward, wedge.start):
            return _wedge_cell(patch, wedge)
        if not ccw and same_ray(toward, wedge.end):
            return _wedge_cell(patch, wedge)
    raise PatchTooSmall(f"no region next to {vertex.key}")


def _claim(patch: Patch, vertex: PatchVertex, steps: list[str]) -> ChainResult:
    if not vertex.interior:
        raise PatchTooSmall(f"vertex {vertex.key} lies on the patch boundary; its degree is unknown")
    degree = _true_degree(patch, vertex)
    if degree < 4:
        raise HypothesesViolated(
            f"descent ended at {vertex.key} of degree {degree}", details={"steps": list(steps)}
        )
    return ChainResult(vertex.key, degree, tuple(steps))


def obtuse_chain_audit(patch: Patch, h: ChainHypotheses) -> ChainResult:
    """Replay the descent along BC and return the degree-4 vertex it is forced onto.

    Each step looks at the triangle holding the angle between BC and the
    current ray at one end.  A border inside that angle means the end vertex
    has degree at least four; a triangle reaching the opposite end means that
    end does; otherwise the end moves to the triangle's far corner on BC.
    """

    if not h.holds:
        raise HypothesesViolated("; ".join(h.failures()), details={"failures": h.failures()})
    check = is_triangle_tiling(patch)
    if not check:
        raise NotTriangleTiling("patch is not a triangle coloring", details={"reasons": list(check.reasons)})
    b, c = h.b, h.c
    ccw_side = orient(b, c, h.a) > 0
    left, right = b, c
    ray_left, ray_right = h.a - b, h.d - c
    steps: list[str] = []
    from_left = True
    while True:
        here, there = (left, right) if from_left else (right, left)
        ray = ray_left if from_left else ray_right
        vertex = _patch_vertex(patch, here)
        steps.append(vertex.key)
        ccw = ccw_side if from_left else not ccw_side
        cell = _triangle_at(patch, vertex, there - here, ccw)
        corners = [cell.polygon[k] for k in triangle_corners(cell)]
        on_line = [p for p in corners if p != here and orient(b, c, p) == 0]
        apex = [p for p in corners if p != here and orient(b, c, p) != 0]
        if len(on_line) != 1 or len(apex) != 1:
            raise HypothesesViolated(f"region {cell.key} does not sit on borderline BC at {vertex.key}")
        far, third = on_line[0], apex[0]
        toward = third - here
        if not same_ray(toward, ray):
            inside = (
                in_open_wedge(toward, there - here, ray) if ccw else in_open_wedge(toward, ray, there - here)
            )
            if not inside:
                raise HypothesesViolated(f"ray at {vertex.key} enters region {cell.key}")
            LOGGER.debug("Border inside the chain angle at %s", vertex.key)
            return _claim(patch, vertex, steps)
        if far == there:
            end = _patch_vertex(patch, there)
            steps.append(end.key)
            return _claim(patch, end, steps)
        if (far - here).dot(there - here).sign() <= 0 or (there - far).dot(there - here).sign() <= 0:
            raise HypothesesViolated(f"region {cell.key} leaves borderline BC")
        if from_left:
            left, ray_left = far, third - far
        else:
            right, ray_right = far, third - far
        from_left = not from_left
