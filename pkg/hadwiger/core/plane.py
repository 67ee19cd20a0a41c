"""Polygon colorings of the plane: raw descriptions, validated tilings and patches.

``build_tiling`` turns a raw :class:`TilingSpec` (named points, colored
counter-clockwise loops, an optional period lattice and an ownership rule)
into an immutable :class:`Tiling`.  Vertices are derived rather than
declared: a point becomes a vertex only where two incident borders meet at an
angle other than pi.  Borders are the open segments between consecutive
vertices along a region loop, stored once per period.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import (
    AdjacentSameColor,
    CoverageGap,
    DependentLattice,
    InvalidOwnership,
    NonSimplePolygon,
    OverlappingRegions,
    TilingError,
    UnknownRegion,
    UnknownVertex,
)
from .field import FieldScalar
from .geometry import (
    Point,
    Segment,
    Window,
    in_open_wedge,
    is_simple_polygon,
    lattice_offsets,
    on_segment_closed,
    on_segment_open,
    opposite_rays,
    orient,
    point_in_polygon,
    point_key,
    polygon_intersects_window,
    same_ray,
    segments_cross_properly,
    segments_intersect,
    signed_area2,
    sort_polar,
    triangulate,
)
from .utils import format_offset, natural_key

LOGGER = logging.getLogger(__name__)

__all__ = [
    "Offset",
    "OwnershipVariant",
    "OwnershipRule",
    "RegionSpec",
    "TilingSpec",
    "Region",
    "Border",
    "Spoke",
    "Wedge",
    "Vertex",
    "Tiling",
    "Cell",
    "PatchBorder",
    "PatchVertex",
    "Patch",
    "Borderline",
    "OwnershipFinding",
    "build_tiling",
    "instantiate_window",
    "as_patch",
    "vertex_degree",
    "locate_point",
    "colors_at_point",
    "enumerate_borderlines",
    "check_ownership",
    "split_key",
    "tag_key",
]

Offset = tuple[int, int]
ZERO_OFFSET: Offset = (0, 0)
UP = Point(FieldScalar(0), FieldScalar(1))


def _add(a: Offset, b: Offset) -> Offset:
    return (a[0] + b[0], a[1] + b[1])


def _neg(a: Offset) -> Offset:
    return (-a[0], -a[1])


def split_key(key: str) -> tuple[str, Offset]:
    """Split ``"v3@1,-2"`` into ``("v3", (1, -2))``; bare ids get offset (0, 0)."""

    if "@" not in key:
        return key, ZERO_OFFSET
    base, _, tag = key.rpartition("@")
    try:
        i_text, j_text = tag.split(",")
        return base, (int(i_text), int(j_text))
    except ValueError:
        return key, ZERO_OFFSET


def tag_key(base: str, offset: Offset) -> str:
    return f"{base}@{format_offset(offset)}"


# Raw descriptions ------------------------------------------------------------
class OwnershipVariant(str, Enum):
    ABOVE_RIGHT = "above-right"
    EXPLICIT = "explicit"


@dataclass(frozen=True, slots=True)
class OwnershipRule:
    """Boundary ownership: the above-right default or explicit per-region claims.

    Explicit edge claims name two consecutive raw vertex ids of the region loop
    and cover the open input edge; vertex claims name one raw vertex id.
    """

    variant: OwnershipVariant = OwnershipVariant.ABOVE_RIGHT
    edges: tuple[tuple[str, str, str], ...] = ()
    vertices: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True, slots=True)
class RegionSpec:
    id: str
    color: int
    vertex_ids: tuple[str, ...]


@dataclass(frozen=True)
class TilingSpec:
    """Raw tiling description, the parsed form of a PCT document."""

    vertices: Mapping[str, Point]
    regions: tuple[RegionSpec, ...]
    lattice: Optional[tuple[Point, Point]] = None
    ownership: OwnershipRule = field(default_factory=OwnershipRule)

    @property
    def is_periodic(self) -> bool:
        return self.lattice is not None


# Built tiling --------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class Border:
    """Open segment between two vertices, stored in its left region's frame."""

    id: str
    segment: Segment
    left_region: str
    right_region: Optional[str]
    right_offset: Offset = ZERO_OFFSET

    @property
    def is_boundary(self) -> bool:
        return self.right_region is None


@dataclass(frozen=True, slots=True)
class Spoke:
    """A border leaving a vertex, seen from the vertex's frame."""

    direction: Point
    border_id: str
    offset: Offset


@dataclass(frozen=True, slots=True)
class Wedge:
    """Angular sector at a vertex, counter-clockwise from ``start`` to ``end``.

    ``region_id`` is ``None`` for the uncovered sector at a patch boundary.
    """

    region_id: Optional[str]
    offset: Offset
    color: Optional[int]
    start: Point
    end: Point


@dataclass(frozen=True, slots=True)
class Vertex:
    id: str
    point: Point
    incident_borders: tuple[str, ...]
    spokes: tuple[Spoke, ...]
    wedges: tuple[Wedge, ...]

    @property
    def degree(self) -> int:
        return len(self.incident_borders)

    @property
    def on_boundary(self) -> bool:
        return any(w.region_id is None for w in self.wedges)

    def colors(self) -> frozenset[int]:
        return frozenset(w.color for w in self.wedges if w.color is not None)


@dataclass(frozen=True, slots=True)
class Region:
    """Colored open polygon with its vertex loop and boundary ownership.

    ``corners[k]`` equals vertex ``boundary[k]`` translated by
    ``corner_offsets[k]`` lattice steps; edge ``k`` runs from corner ``k`` to
    corner ``k + 1`` and is border ``border_ids[k]`` translated by
    ``border_offsets[k]`` (and reversed when ``border_reversed[k]``).
    """

    id: str
    color: int
    boundary: tuple[str, ...]
    corners: tuple[Point, ...]
    corner_offsets: tuple[Offset, ...]
    border_ids: tuple[str, ...]
    border_offsets: tuple[Offset, ...]
    border_reversed: tuple[bool, ...]
    owned_edges: frozenset[int]
    owned_corners: frozenset[int]

    def edge(self, index: int) -> Segment:
        n = len(self.corners)
        return Segment(self.corners[index % n], self.corners[(index + 1) % n])

    def corner_angle_is_straight(self, index: int) -> bool:
        n = len(self.corners)
        return orient(self.corners[index - 1], self.corners[index], self.corners[(index + 1) % n]) == 0


@dataclass(frozen=True, eq=False)
class Tiling:
    """Validated polygon coloring: one fundamental block plus its lattice."""

    regions: Mapping[str, Region]
    borders: Mapping[str, Border]
    vertices: Mapping[str, Vertex]
    lattice: Optional[tuple[Point, Point]]
    ownership: OwnershipRule
    spec: TilingSpec
    block_window: Window

    @property
    def is_periodic(self) -> bool:
        return self.lattice is not None

    def translation(self, offset: Offset) -> Point:
        if offset == ZERO_OFFSET or self.lattice is None:
            return Point(FieldScalar(0), FieldScalar(0))
        t1, t2 = self.lattice
        return t1.scale(offset[0]) + t2.scale(offset[1])

    def region(self, region_id: str) -> Region:
        try:
            return self.regions[region_id]
        except KeyError as exc:
            raise UnknownRegion(f"unknown region {region_id!r}") from exc

    def vertex(self, vertex_id: str) -> Vertex:
        base, _ = split_key(vertex_id)
        try:
            return self.vertices[base]
        except KeyError as exc:
            raise UnknownVertex(f"unknown vertex {vertex_id!r}") from exc

    def vertex_point(self, vertex_id: str) -> Point:
        base, offset = split_key(vertex_id)
        return self.vertex(base).point + self.translation(offset)

    def cell(self, region_id: str, offset: Offset = ZERO_OFFSET) -> "Cell":
        return Cell(self, self.region(region_id), offset)

    def cells(self) -> list["Cell"]:
        return [Cell(self, region, ZERO_OFFSET) for region in self.regions.values()]

    def colors(self) -> frozenset[int]:
        return frozenset(region.color for region in self.regions.values())

    def max_diameter_sq(self) -> FieldScalar:
        best = FieldScalar(0)
        for region in self.regions.values():
            pts = region.corners
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    d = (pts[i] - pts[j]).norm_sq()
                    if d > best:
                        best = d
        return best


@dataclass(frozen=True, eq=False)
class Cell:
    """A region translated by a lattice offset, with its owned boundary faces."""

    tiling: Tiling
    region: Region
    offset: Offset = ZERO_OFFSET

    @cached_property
    def shift(self) -> Point:
        return self.tiling.translation(self.offset)

    @cached_property
    def polygon(self) -> tuple[Point, ...]:
        if self.offset == ZERO_OFFSET:
            return self.region.corners
        return tuple(p + self.shift for p in self.region.corners)

    @property
    def key(self) -> str:
        return tag_key(self.region.id, self.offset)

    @property
    def color(self) -> int:
        return self.region.color

    def owned_edges(self) -> list[Segment]:
        pts = self.polygon
        n = len(pts)
        return [Segment(pts[i], pts[(i + 1) % n]) for i in sorted(self.region.owned_edges)]

    def owned_vertices(self) -> list[Point]:
        return [self.polygon[i] for i in sorted(self.region.owned_corners)]

    @cached_property
    def window(self) -> Window:
        return Window.bounding(self.polygon)

    def same_as(self, other: "Cell") -> bool:
        return self.region.id == other.region.id and self.offset == other.offset

    def __repr__(self) -> str:
        return f"Cell({self.key})"


# Patches -------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class PatchBorder:
    key: str
    border_id: str
    offset: Offset
    segment: Segment
    left: str
    right: Optional[str]


@dataclass(frozen=True, slots=True)
class PatchVertex:
    key: str
    vertex_id: str
    offset: Offset
    point: Point
    interior: bool
    degree: int


@dataclass(frozen=True, eq=False)
class Patch:
    """Finite set of cells, borders and vertices with translation tags."""

    tiling: Tiling
    window: Optional[Window]
    cells: tuple[Cell, ...]
    borders: tuple[PatchBorder, ...]
    vertices: tuple[PatchVertex, ...]

    @property
    def is_empty(self) -> bool:
        return not self.cells

    @cached_property
    def cell_index(self) -> dict[str, Cell]:
        return {cell.key: cell for cell in self.cells}

    @cached_property
    def vertex_index(self) -> dict[str, PatchVertex]:
        return {vertex.key: vertex for vertex in self.vertices}

    @cached_property
    def vertex_at(self) -> dict[Point, PatchVertex]:
        return {vertex.point: vertex for vertex in self.vertices}

    @cached_property
    def border_index(self) -> dict[str, PatchBorder]:
        return {border.key: border for border in self.borders}

    def cell(self, key: str) -> Cell:
        try:
            return self.cell_index[key]
        except KeyError as exc:
            raise UnknownRegion(f"cell {key!r} is not part of the patch") from exc

    def vertex(self, key: str) -> PatchVertex:
        if key in self.vertex_index:
            return self.vertex_index[key]
        if "@" not in key and tag_key(key, ZERO_OFFSET) in self.vertex_index:
            return self.vertex_index[tag_key(key, ZERO_OFFSET)]
        raise UnknownVertex(f"vertex {key!r} is not part of the patch")

    def interior_vertices(self) -> list[PatchVertex]:
        return [v for v in self.vertices if v.interior]

    def wedges_at(self, vertex: PatchVertex) -> list[Wedge]:
        """Wedges of the vertex with offsets relative to the patch frame."""

        base = self.tiling.vertex(vertex.vertex_id)
        return [
            Wedge(w.region_id, _add(w.offset, vertex.offset), w.color, w.start, w.end)
            for w in base.wedges
        ]


@dataclass(frozen=True, slots=True)
class Borderline:
    """Maximal closed collinear chain of borders and vertices."""

    start: Point
    end: Point
    vertex_keys: tuple[str, ...]
    border_keys: tuple[str, ...]
    start_key: Optional[str] = None
    end_key: Optional[str] = None

    def contains_point(self, p: Point) -> bool:
        return on_segment_closed(p, self.start, self.end)


@dataclass(frozen=True, slots=True)
class OwnershipFinding:
    kind: str
    element_id: str
    owners: tuple[str, ...]

    def describe(self) -> str:
        owners = ",".join(self.owners) or "-"
        return f"ownership kind={self.kind} id={self.element_id} owners={owners} count={len(self.owners)}"


# Construction ----------------------------------------------------------------
@dataclass
class _Copy:
    region: RegionSpec
    offset: Offset
    loop: list[Point]
    window: Window


@dataclass
class _Chunk:
    start: int
    end: int
    partner: Optional[tuple[str, Offset]]


def build_tiling(spec: TilingSpec, *, check_colors: bool = True) -> Tiling:
    """Validate a raw description and derive vertices, borders and ownership.

    With ``check_colors`` off, same-colored regions may touch; ``verify_coloring``
    then reports them as conflicts instead.
    """

    lattice = spec.lattice
    if lattice is not None and lattice[0].cross(lattice[1]).sign() == 0:
        raise DependentLattice("period vectors are linearly dependent")
    if not spec.regions:
        raise TilingError("tiling has no regions")

    loops = _region_loops(spec)
    order = sorted(loops, key=natural_key)
    region_specs = {r.id: r for r in spec.regions}

    def translation(offset: Offset) -> Point:
        if lattice is None or offset == ZERO_OFFSET:
            return Point(FieldScalar(0), FieldScalar(0))
        return lattice[0].scale(offset[0]) + lattice[1].scale(offset[1])

    block_window = Window.bounding(p for loop in loops.values() for p in loop)
    offsets = [ZERO_OFFSET]
    if lattice is not None:
        offsets = []
        for offset in lattice_offsets(lattice[0], lattice[1], block_window, block_window):
            if offset == ZERO_OFFSET or block_window.translated(translation(offset)).intersects(block_window):
                offsets.append(offset)

    # Raw copies, used for T-junction refinement.
    raw_copies: list[_Copy] = []
    for offset in offsets:
        shift = translation(offset)
        for rid in order:
            loop = [p + shift for p in loops[rid]] if offset != ZERO_OFFSET else list(loops[rid])
            raw_copies.append(_Copy(region_specs[rid], offset, loop, Window.bounding(loop)))
    raw_copies = [c for c in raw_copies if c.window.intersects(block_window)]

    refined = {rid: _refine_loop(loops[rid], raw_copies) for rid in order}
    copies: list[_Copy] = []
    for raw in raw_copies:
        shift = translation(raw.offset)
        loop = refined[raw.region.id]
        if raw.offset != ZERO_OFFSET:
            loop = [p + shift for p in loop]
        copies.append(_Copy(raw.region, raw.offset, loop, raw.window))
    block_copies = {c.region.id: i for i, c in enumerate(copies) if c.offset == ZERO_OFFSET}

    _check_overlaps(order, loops, raw_copies, block_copies, translation)

    edges: dict[tuple[Point, Point], list[int]] = {}
    at_point: dict[Point, list[tuple[int, int]]] = {}
    for index, copy in enumerate(copies):
        n = len(copy.loop)
        for k, p in enumerate(copy.loop):
            edges.setdefault((p, copy.loop[(k + 1) % n]), []).append(index)
            at_point.setdefault(p, []).append((index, k))

    partners: dict[str, list[Optional[tuple[str, Offset]]]] = {}
    for rid in order:
        loop = refined[rid]
        n = len(loop)
        partner_list: list[Optional[tuple[str, Offset]]] = []
        for k in range(n):
            p, q = loop[k], loop[(k + 1) % n]
            if len(edges.get((p, q), ())) > 1:
                raise OverlappingRegions(
                    f"region {rid} shares a boundary side with another region",
                    details={"region": rid, "edge": k},
                )
            back = edges.get((q, p), [])
            if not back:
                if lattice is not None:
                    raise CoverageGap(
                        f"no region lies across edge {k} of region {rid}",
                        details={"region": rid, "edge": k},
                    )
                partner_list.append(None)
                continue
            other = copies[back[0]]
            partner_list.append((other.region.id, other.offset))
        partners[rid] = partner_list

    if lattice is not None:
        total = sum((signed_area2(loops[rid]) for rid in order), FieldScalar(0))
        period = abs(lattice[0].cross(lattice[1])) * 2
        if total > period:
            raise OverlappingRegions("region areas exceed the period area")
        if total < period:
            raise CoverageGap("region areas fall short of the period area")

    # Same-color contact and derived vertices.
    derived: dict[Point, bool] = {}
    for rid in order:
        for p in refined[rid]:
            if p in derived:
                continue
            occurrences = at_point[p]
            if check_colors:
                _check_contact_colors(p, [copies[i] for i, _ in occurrences])
            derived[p] = _is_vertex(p, [(copies[i].loop, k) for i, k in occurrences])

    for rid in order:
        region = region_specs[rid]
        for vid in region.vertex_ids:
            if not derived.get(spec.vertices[vid], True):
                LOGGER.warning("Dissolved straight corner %s of region %s", vid, rid)

    chunks = {rid: _chunks(refined[rid], derived, partners[rid]) for rid in order}

    # Canonical borders.
    border_rows: list[tuple[str, int, _Chunk]] = []
    for rid in order:
        for j, chunk in enumerate(chunks[rid]):
            if chunk.partner is None or natural_key(rid) < natural_key(chunk.partner[0]):
                border_rows.append((rid, j, chunk))
    border_ids: dict[tuple[str, int], str] = {}
    borders: dict[str, Border] = {}
    for index, (rid, j, chunk) in enumerate(border_rows):
        bid = f"b{index}"
        loop = refined[rid]
        segment = Segment(loop[chunk.start], loop[chunk.end])
        right, right_offset = (None, ZERO_OFFSET) if chunk.partner is None else chunk.partner
        borders[bid] = Border(bid, segment, rid, right, right_offset)
        border_ids[(rid, j)] = bid

    def chunk_border(rid: str, j: int) -> tuple[str, Offset, bool]:
        if (rid, j) in border_ids:
            return border_ids[(rid, j)], ZERO_OFFSET, False
        chunk = chunks[rid][j]
        assert chunk.partner is not None
        other, delta = chunk.partner
        loop = refined[rid]
        target = Segment(loop[chunk.end] - translation(delta), loop[chunk.start] - translation(delta))
        for k, other_chunk in enumerate(chunks[other]):
            other_loop = refined[other]
            if (
                other_loop[other_chunk.start] == target.p
                and other_loop[other_chunk.end] == target.q
            ):
                return border_ids[(other, k)], delta, True
        raise CoverageGap(f"edge {j} of region {rid} has no matching border")

    # Canonical vertices.
    canonical: dict[Point, Point] = {}
    canonical_offset: dict[Point, Offset] = {}
    for rid in order:
        for p in refined[rid]:
            if not derived[p] or p in canonical:
                continue
            cells = [(copies[i].region.id, copies[i].offset) for i, _ in at_point[p]]
            best = min(cells, key=lambda c: (natural_key(c[0]), c[1]))
            canonical[p] = p - translation(best[1])
            canonical_offset[p] = best[1]
    vertex_points = sorted(set(canonical.values()), key=point_key)
    vertex_ids = {p: f"v{index}" for index, p in enumerate(vertex_points)}

    def loop_border(copy: _Copy, k: int, outgoing: bool) -> tuple[str, Offset]:
        rid = copy.region.id
        for j, chunk in enumerate(chunks[rid]):
            if (outgoing and chunk.start == k) or (not outgoing and chunk.end == k):
                bid, offset, _ = chunk_border(rid, j)
                return bid, _add(copy.offset, offset)
        raise TilingError(f"no border of region {rid} touches loop point {k}")

    vertices: dict[str, Vertex] = {}
    for p in vertex_points:
        vid = vertex_ids[p]
        vertices[vid] = _vertex_star(
            vid, p, [(copies[i], k) for i, k in at_point[p]], loop_border
        )

    ownership = spec.ownership
    regions: dict[str, Region] = {}
    for rid in order:
        loop = refined[rid]
        corner_index = [k for k, p in enumerate(loop) if derived[p]]
        corners = tuple(loop[k] for k in corner_index)
        boundary = tuple(vertex_ids[canonical[p]] for p in corners)
        corner_offsets = tuple(canonical_offset[p] for p in corners)
        info = [chunk_border(rid, j) for j in range(len(chunks[rid]))]
        if ownership.variant is OwnershipVariant.ABOVE_RIGHT:
            owned_edges, owned_corners = _above_right(corners)
        else:
            owned_edges, owned_corners = _explicit(rid, spec, corners)
        regions[rid] = Region(
            id=rid,
            color=region_specs[rid].color,
            boundary=boundary,
            corners=corners,
            corner_offsets=corner_offsets,
            border_ids=tuple(b for b, _, _ in info),
            border_offsets=tuple(o for _, o, _ in info),
            border_reversed=tuple(r for _, _, r in info),
            owned_edges=frozenset(owned_edges),
            owned_corners=frozenset(owned_corners),
        )

    tiling = Tiling(
        regions=regions,
        borders=borders,
        vertices=vertices,
        lattice=lattice,
        ownership=ownership,
        spec=spec,
        block_window=block_window,
    )
    if ownership.variant is OwnershipVariant.EXPLICIT:
        findings = check_ownership(tiling)
        if findings:
            raise InvalidOwnership(
                findings[0].describe(), details={"findings": [f.describe() for f in findings]}
            )
    LOGGER.info(
        "Built tiling: %d regions, %d borders, %d vertices (%s)",
        len(regions),
        len(borders),
        len(vertices),
        "periodic" if lattice is not None else "finite",
    )
    return tiling


def _region_loops(spec: TilingSpec) -> dict[str, list[Point]]:
    loops: dict[str, list[Point]] = {}
    for region in spec.regions:
        if region.id in loops:
            raise TilingError(f"region id {region.id!r} is declared twice")
        if region.color < 1:
            raise TilingError(f"region {region.id} has color {region.color}; colors start at 1")
        try:
            loop = [spec.vertices[vid] for vid in region.vertex_ids]
        except KeyError as exc:
            raise UnknownVertex(f"region {region.id} names unknown vertex {exc.args[0]!r}") from exc
        if not is_simple_polygon(loop):
            raise NonSimplePolygon(f"region {region.id} is not a simple polygon")
        if signed_area2(loop).sign() < 0:
            LOGGER.warning("Region %s is clockwise; reversing its loop", region.id)
            loop.reverse()
        loops[region.id] = loop
    return loops


def _refine_loop(loop: Sequence[Point], copies: Sequence[_Copy]) -> list[Point]:
    """Insert every copy corner lying inside an edge of the loop, in order."""

    candidates = {p for copy in copies for p in copy.loop}
    refined: list[Point] = []
    n = len(loop)
    for k in range(n):
        a, b = loop[k], loop[(k + 1) % n]
        ax, ay = a.approx()
        bx, by = b.approx()
        lo_x, hi_x = min(ax, bx) - 1e-9, max(ax, bx) + 1e-9
        lo_y, hi_y = min(ay, by) - 1e-9, max(ay, by) + 1e-9
        inner = []
        for p in candidates:
            px, py = p.approx()
            if not (lo_x <= px <= hi_x and lo_y <= py <= hi_y):
                continue
            if on_segment_open(p, a, b):
                inner.append(p)
        direction = b - a
        inner.sort(key=lambda p: (p - a).dot(direction))
        refined.append(a)
        refined.extend(inner)
    return refined


def _check_overlaps(
    order: Sequence[str],
    loops: Mapping[str, Sequence[Point]],
    copies: Sequence[_Copy],
    block_copies: Mapping[str, int],
    translation: Callable[[Offset], Point],
) -> None:
    samples: dict[str, list[Point]] = {}
    for rid in order:
        triangles = triangulate(loops[rid])
        samples[rid] = [(a + b + c).scale(Fraction(1, 3)) for a, b, c in triangles]
    for rid in order:
        mine = copies[block_copies[rid]]
        for index, other in enumerate(copies):
            if index == block_copies[rid]:
                continue
            if not _interiors_may_meet(mine.window, other.window):
                continue
            shift = translation(other.offset)
            other_samples = [s + shift for s in samples[other.region.id]]
            if _polygons_overlap(mine.loop, other.loop, samples[rid], other_samples):
                raise OverlappingRegions(
                    f"region {rid} overlaps region {other.region.id} at offset {format_offset(other.offset)}",
                    details={"region": rid, "other": other.region.id, "offset": list(other.offset)},
                )


def _interiors_may_meet(a: Window, b: Window) -> bool:
    return a.xmin < b.xmax and b.xmin < a.xmax and a.ymin < b.ymax and b.ymin < a.ymax


def _polygons_overlap(
    first: Sequence[Point],
    second: Sequence[Point],
    first_samples: Sequence[Point],
    second_samples: Sequence[Point],
) -> bool:
    n, m = len(first), len(second)
    for i in range(n):
        a, b = first[i], first[(i + 1) % n]
        for j in range(m):
            if segments_cross_properly(a, b, second[j], second[(j + 1) % m]):
                return True
    if any(point_in_polygon(p, first) > 0 for p in second):
        return True
    if any(point_in_polygon(p, second) > 0 for p in first):
        return True
    if any(point_in_polygon(s, first) >= 0 for s in second_samples):
        return True
    return any(point_in_polygon(s, second) >= 0 for s in first_samples)


def _check_contact_colors(p: Point, copies: Sequence[_Copy]) -> None:
    for i in range(len(copies)):
        for j in range(i + 1, len(copies)):
            a, b = copies[i], copies[j]
            if a.region.id == b.region.id and a.offset == b.offset:
                continue
            if a.region.color == b.region.color:
                raise AdjacentSameColor(
                    f"regions {a.region.id} and {b.region.id} share the point "
                    f"({p.x}, {p.y}) and both have color {a.region.color}",
                    details={"regions": [a.region.id, b.region.id], "color": a.region.color},
                )


def _is_vertex(p: Point, occurrences: Sequence[tuple[Sequence[Point], int]]) -> bool:
    directions: list[Point] = []
    for loop, k in occurrences:
        n = len(loop)
        for q in (loop[(k + 1) % n], loop[k - 1]):
            d = q - p
            if not any(same_ray(d, e) for e in directions):
                directions.append(d)
    if len(directions) == 2 and opposite_rays(directions[0], directions[1]):
        return False
    return True


def _chunks(
    loop: Sequence[Point],
    derived: Mapping[Point, bool],
    partners: Sequence[Optional[tuple[str, Offset]]],
) -> list[_Chunk]:
    n = len(loop)
    first = next(k for k in range(n) if derived[loop[k]])
    chunks: list[_Chunk] = []
    start = first
    k = first
    while True:
        k = (k + 1) % n
        if derived[loop[k]]:
            chunks.append(_Chunk(start, k, partners[start]))
            start = k
            if k == first:
                break
    # chunk indices follow the corner order starting at corner 0
    return chunks


def _vertex_star(
    vid: str,
    p: Point,
    occurrences: Sequence[tuple[_Copy, int]],
    loop_border: Callable[[_Copy, int, bool], tuple[str, Offset]],
) -> Vertex:
    wedges: list[Wedge] = []
    starts: dict[int, tuple[str, Offset]] = {}
    spokes: list[Spoke] = []
    for copy, k in occurrences:
        loop = copy.loop
        n = len(loop)
        start = loop[(k + 1) % n] - p
        end = loop[k - 1] - p
        wedges.append(Wedge(copy.region.id, copy.offset, copy.region.color, start, end))
        for direction, outgoing in ((start, True), (end, False)):
            if any(same_ray(direction, s.direction) for s in spokes):
                continue
            bid, offset = loop_border(copy, k, outgoing)
            spokes.append(Spoke(direction, bid, offset))
    wedges = sort_polar(wedges, key=lambda w: w.start)
    spokes = sort_polar(spokes, key=lambda s: s.direction)
    closed: list[Wedge] = []
    for index, wedge in enumerate(wedges):
        closed.append(wedge)
        following = wedges[(index + 1) % len(wedges)]
        if not same_ray(wedge.end, following.start):
            closed.append(Wedge(None, ZERO_OFFSET, None, wedge.end, following.start))
    return Vertex(
        id=vid,
        point=p,
        incident_borders=tuple(s.border_id for s in spokes),
        spokes=tuple(spokes),
        wedges=tuple(closed),
    )


def _above_right(corners: Sequence[Point]) -> tuple[set[int], set[int]]:
    n = len(corners)
    owned_edges: set[int] = set()
    owned_corners: set[int] = set()
    for k in range(n):
        d = corners[(k + 1) % n] - corners[k]
        sx, sy = d.x.sign(), d.y.sign()
        if sx > 0 or (sx == 0 and sy < 0):
            owned_edges.add(k)
    for k in range(n):
        start = corners[(k + 1) % n] - corners[k]
        end = corners[k - 1] - corners[k]
        if same_ray(UP, end) or in_open_wedge(UP, start, end):
            owned_corners.add(k)
    return owned_edges, owned_corners


def _explicit(rid: str, spec: TilingSpec, corners: Sequence[Point]) -> tuple[set[int], set[int]]:
    n = len(corners)
    owned_edges: set[int] = set()
    owned_corners: set[int] = set()
    region = next(r for r in spec.regions if r.id == rid)
    raw = list(region.vertex_ids)
    for claim_rid, v1, v2 in spec.ownership.edges:
        if claim_rid != rid:
            continue
        if v1 not in raw or v2 not in raw:
            raise InvalidOwnership(f"region {rid} has no edge {v1} {v2}")
        i1, i2 = raw.index(v1), raw.index(v2)
        if (i1 - i2) % len(raw) not in (1, len(raw) - 1):
            raise InvalidOwnership(f"vertices {v1} and {v2} are not adjacent in region {rid}")
        a, b = spec.vertices[v1], spec.vertices[v2]
        for k in range(n):
            p, q = corners[k], corners[(k + 1) % n]
            if on_segment_closed(p, a, b) and on_segment_closed(q, a, b):
                owned_edges.add(k)
            if on_segment_open(p, a, b):
                owned_corners.add(k)
    for claim_rid, v in spec.ownership.vertices:
        if claim_rid != rid:
            continue
        if v not in raw:
            raise InvalidOwnership(f"region {rid} has no vertex {v}")
        point = spec.vertices[v]
        if point not in corners:
            raise InvalidOwnership(f"point {v} of region {rid} is not a vertex")
        owned_corners.add(corners.index(point))
    return owned_edges, owned_corners


# Queries -------------------------------------------------------------------
def vertex_degree(t: Tiling, v: str) -> int:
    """Number of borders incident to the vertex, periodic images included."""

    return t.vertex(v).degree


def locate_point(t: Tiling, p: Point) -> list[Cell]:
    """Cells whose closure contains ``p``."""

    target = Window(p.x, p.y, p.x, p.y)
    if t.lattice is None:
        offsets: Iterable[Offset] = [ZERO_OFFSET]
    else:
        offsets = lattice_offsets(t.lattice[0], t.lattice[1], t.block_window, target)
    found: list[Cell] = []
    for offset in offsets:
        shift = t.translation(offset)
        if not t.block_window.translated(shift).contains(p):
            continue
        for region in t.regions.values():
            cell = Cell(t, region, offset)
            if cell.window.contains(p) and point_in_polygon(p, cell.polygon) >= 0:
                found.append(cell)
    return found


def colors_at_point(t: Tiling, p: Point) -> frozenset[int]:
    """Colors of every region whose closure contains ``p``."""

    return frozenset(cell.color for cell in locate_point(t, p))


def instantiate_window(t: Tiling, w: Window) -> Patch:
    """Cells, borders and vertices whose closures meet the closed window ``w``."""

    if w.interior_empty():
        return Patch(t, w, (), (), ())
    if t.lattice is None:
        offsets: list[Offset] = [ZERO_OFFSET]
    else:
        offsets = sorted(lattice_offsets(t.lattice[0], t.lattice[1], t.block_window, w))
    cells: list[Cell] = []
    for offset in offsets:
        shift = t.translation(offset)
        if not t.block_window.translated(shift).intersects(w):
            continue
        for region in t.regions.values():
            cell = Cell(t, region, offset)
            if polygon_intersects_window(cell.polygon, w):
                cells.append(cell)

    borders: dict[str, PatchBorder] = {}
    vertices: dict[str, PatchVertex] = {}
    for cell in cells:
        region = cell.region
        for k, bid in enumerate(region.border_ids):
            offset = _add(cell.offset, region.border_offsets[k])
            key = tag_key(bid, offset)
            if key in borders:
                continue
            border = t.borders[bid]
            segment = border.segment.translated(t.translation(offset))
            if not _segment_meets_window(segment, w):
                continue
            right = None
            if border.right_region is not None:
                right = tag_key(border.right_region, _add(offset, border.right_offset))
            borders[key] = PatchBorder(key, bid, offset, segment, tag_key(border.left_region, offset), right)
        for k, vid in enumerate(region.boundary):
            offset = _add(cell.offset, region.corner_offsets[k])
            key = tag_key(vid, offset)
            if key in vertices:
                continue
            point = cell.polygon[k]
            if not w.contains(point):
                continue
            vertex = t.vertices[vid]
            interior = w.contains_strictly(point) if t.is_periodic else not vertex.on_boundary
            vertices[key] = PatchVertex(key, vid, offset, point, interior, vertex.degree)

    ordered_vertices = sorted(vertices.values(), key=lambda v: (point_key(v.point), v.key))
    ordered_borders = sorted(borders.values(), key=lambda b: (b.offset, natural_key(b.border_id)))
    LOGGER.debug("Instantiated window: %d cells, %d borders", len(cells), len(borders))
    return Patch(t, w, tuple(cells), tuple(ordered_borders), tuple(ordered_vertices))


def as_patch(source: "Tiling | Patch") -> Patch:
    """A finite tiling as one patch; patches pass through unchanged."""

    if isinstance(source, Patch):
        return source
    return instantiate_window(source, source.block_window)


def _segment_meets_window(segment: Segment, w: Window) -> bool:
    if w.contains(segment.p) or w.contains(segment.q):
        return True
    corners = w.corners()
    return any(
        segments_intersect(segment.p, segment.q, corners[i], corners[(i + 1) % 4]) for i in range(4)
    )


def enumerate_borderlines(patch: Patch) -> list[Borderline]:
    """Merge patch borders meeting collinearly at vertices into maximal chains."""

    parent = {b.key: b.key for b in patch.borders}

    def find(key: str) -> str:
        while parent[key] != key:
            parent[key] = parent[parent[key]]
            key = parent[key]
        return key

    ends: dict[Point, list[tuple[str, Point]]] = {}
    for border in patch.borders:
        seg = border.segment
        ends.setdefault(seg.p, []).append((border.key, seg.q - seg.p))
        ends.setdefault(seg.q, []).append((border.key, seg.p - seg.q))
    for point, incident in ends.items():
        for i in range(len(incident)):
            for j in range(i + 1, len(incident)):
                if opposite_rays(incident[i][1], incident[j][1]):
                    a, b = find(incident[i][0]), find(incident[j][0])
                    if a != b:
                        parent[max(a, b)] = min(a, b)

    groups: dict[str, list[PatchBorder]] = {}
    for border in patch.borders:
        groups.setdefault(find(border.key), []).append(border)

    lines: list[Borderline] = []
    for members in groups.values():
        anchor = members[0].segment.p
        direction = members[0].segment.vector
        points = {p for b in members for p in (b.segment.p, b.segment.q)}
        ordered = sorted(points, key=lambda p: (p - anchor).dot(direction))
        if point_key(ordered[-1]) < point_key(ordered[0]):
            ordered.reverse()
        start, end = ordered[0], ordered[-1]
        inner = [patch.vertex_at[p].key for p in ordered[1:-1] if p in patch.vertex_at]
        start_vertex = patch.vertex_at.get(start)
        end_vertex = patch.vertex_at.get(end)
        members_sorted = sorted(
            members, key=lambda b: (b.segment.p - start).dot(end - start) + (b.segment.q - start).dot(end - start)
        )
        lines.append(
            Borderline(
                start=start,
                end=end,
                vertex_keys=tuple(inner),
                border_keys=tuple(b.key for b in members_sorted),
                start_key=start_vertex.key if start_vertex else None,
                end_key=end_vertex.key if end_vertex else None,
            )
        )
    lines.sort(key=lambda line: (point_key(line.start), point_key(line.end)))
    return lines


def check_ownership(t: Tiling) -> list[OwnershipFinding]:
    """Borders and vertices of one period not owned by exactly one cell."""

    border_owners: dict[str, list[str]] = {bid: [] for bid in t.borders}
    vertex_owners: dict[str, list[str]] = {vid: [] for vid in t.vertices}
    for region in t.regions.values():
        for k in region.owned_edges:
            border_owners[region.border_ids[k]].append(tag_key(region.id, _neg(region.border_offsets[k])))
        for k in region.owned_corners:
            vertex_owners[region.boundary[k]].append(tag_key(region.id, _neg(region.corner_offsets[k])))
    findings: list[OwnershipFinding] = []
    for bid, owners in border_owners.items():
        border = t.borders[bid]
        if border.is_boundary and len(owners) <= 1:
            continue
        if len(owners) != 1:
            findings.append(OwnershipFinding("border", bid, tuple(owners)))
    for vid, owners in vertex_owners.items():
        if t.vertices[vid].on_boundary and len(owners) <= 1:
            continue
        if len(owners) != 1:
            findings.append(OwnershipFinding("vertex", vid, tuple(owners)))
    return findings
