"""PCT documents: the line-oriented exact text form of tilings and patches.

::

    pct 1
    period <x: a b c d> <y: a b c d>
    period <x: a b c d> <y: a b c d>
    ownership above-right|explicit
    vertex <id> <x: a b c d> <y: a b c d>
    region <id> <color> <vertex id> ...
    own <region id> edge <v1> <v2>
    own <region id> vertex <v>

Each coordinate is ``a + b*sqrt2 + c*sqrt3 + d*sqrt6`` with rational tokens
``p`` or ``p/q``.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import DuplicateId, NonFieldCoordinate, PctSyntaxError
from .field import FieldScalar, parse_rational
from .geometry import Point, point_key
from .plane import OwnershipRule, OwnershipVariant, Patch, RegionSpec, Tiling, TilingSpec
from .utils import natural_key

LOGGER = logging.getLogger(__name__)

__all__ = ["PctDocument", "parse_pct", "write_pct", "PCT_VERSION"]

PCT_VERSION = 1


@dataclass(frozen=True)
class PctDocument:
    """Canonical document: vertices and regions sorted by id, claims sorted."""

    vertices: tuple[tuple[str, Point], ...] = ()
    regions: tuple[RegionSpec, ...] = ()
    lattice: Optional[tuple[Point, Point]] = None
    ownership: OwnershipRule = field(default_factory=OwnershipRule)

    @classmethod
    def create(
        cls,
        vertices: dict[str, Point],
        regions: Sequence[RegionSpec],
        lattice: Optional[tuple[Point, Point]] = None,
        ownership: Optional[OwnershipRule] = None,
    ) -> "PctDocument":
        rule = ownership or OwnershipRule()
        rule = OwnershipRule(
            rule.variant,
            tuple(sorted(rule.edges, key=lambda claim: tuple(natural_key(part) for part in claim))),
            tuple(sorted(rule.vertices, key=lambda claim: tuple(natural_key(part) for part in claim))),
        )
        return cls(
            tuple(sorted(vertices.items(), key=lambda item: natural_key(item[0]))),
            tuple(sorted(regions, key=lambda r: natural_key(r.id))),
            lattice,
            rule,
        )

    @classmethod
    def from_spec(cls, spec: TilingSpec) -> "PctDocument":
        return cls.create(dict(spec.vertices), spec.regions, spec.lattice, spec.ownership)

    @classmethod
    def from_patch(cls, patch: Patch) -> "PctDocument":
        """A patch as a finite tiling; vertex ids are assigned in (y, x) order."""

        points = sorted({p for cell in patch.cells for p in cell.polygon}, key=point_key)
        ids = {p: f"v{n}" for n, p in enumerate(points)}
        regions = []
        edges: list[tuple[str, str, str]] = []
        claimed: list[tuple[str, str]] = []
        explicit = patch.tiling.ownership.variant is OwnershipVariant.EXPLICIT
        for cell in patch.cells:
            loop = tuple(ids[p] for p in cell.polygon)
            regions.append(RegionSpec(cell.key, cell.color, loop))
            if explicit:
                n = len(loop)
                edges.extend((cell.key, loop[k], loop[(k + 1) % n]) for k in cell.region.owned_edges)
                claimed.extend((cell.key, loop[k]) for k in cell.region.owned_corners)
        rule = OwnershipRule(OwnershipVariant.EXPLICIT, tuple(edges), tuple(claimed)) if explicit else None
        return cls.create({vid: p for p, vid in ids.items()}, regions, None, rule)

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.regions and self.lattice is None

    def to_spec(self) -> TilingSpec:
        return TilingSpec(dict(self.vertices), self.regions, self.lattice, self.ownership)


# Parsing -------------------------------------------------------------------
def _scalar(tokens: Sequence[str], line: int) -> FieldScalar:
    try:
        return FieldScalar(*(parse_rational(token) for token in tokens))
    except ZeroDivisionError as exc:
        raise PctSyntaxError(str(exc), line=line) from exc
    except ValueError as exc:
        raise NonFieldCoordinate(str(exc), line=line) from exc


def _point(tokens: Sequence[str], line: int) -> Point:
    if len(tokens) != 8:
        raise PctSyntaxError(f"expected 8 coordinate tokens, got {len(tokens)}", line=line)
    return Point(_scalar(tokens[:4], line), _scalar(tokens[4:], line))


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_pct(text: str) -> PctDocument:
    """Parse a PCT document; the first error raised names its line."""

    lines = text.splitlines()
    header_seen = False
    periods: list[Point] = []
    variant = OwnershipVariant.ABOVE_RIGHT
    ownership_seen = False
    vertices: dict[str, Point] = {}
    regions: dict[str, RegionSpec] = {}
    edge_claims: list[tuple[str, str, str]] = []
    vertex_claims: list[tuple[str, str]] = []
    for number, raw in enumerate(lines, start=1):
        body = _strip(raw)
        if not body:
            continue
        keyword, *args = body.split()
        if not header_seen:
            if keyword != "pct" or len(args) != 1:
                raise PctSyntaxError("document must start with 'pct 1'", line=number)
            if args[0] != str(PCT_VERSION):
                raise PctSyntaxError(f"unsupported PCT version {args[0]!r}", line=number)
            header_seen = True
            continue
        if keyword == "period":
            if len(periods) == 2:
                raise PctSyntaxError("more than two period lines", line=number)
            periods.append(_point(args, number))
        elif keyword == "ownership":
            if ownership_seen:
                raise DuplicateId("ownership declared twice", line=number)
            if len(args) != 1:
                raise PctSyntaxError("expected 'ownership above-right' or 'ownership explicit'", line=number)
            try:
                variant = OwnershipVariant(args[0])
            except ValueError as exc:
                raise PctSyntaxError(f"unknown ownership rule {args[0]!r}", line=number) from exc
            ownership_seen = True
        elif keyword == "vertex":
            if len(args) != 9:
                raise PctSyntaxError("expected 'vertex <id>' and 8 coordinate tokens", line=number)
            vid = args[0]
            if vid in vertices:
                raise DuplicateId(f"vertex {vid!r} declared twice", line=number)
            vertices[vid] = _point(args[1:], number)
        elif keyword == "region":
            if len(args) < 4:
                raise PctSyntaxError("a region needs an id, a color and three vertex ids", line=number)
            rid, color_text, *loop = args
            if rid in regions:
                raise DuplicateId(f"region {rid!r} declared twice", line=number)
            if not color_text.isdigit() or int(color_text) < 1:
                raise PctSyntaxError(f"color must be a positive integer, got {color_text!r}", line=number)
            missing = [vid for vid in loop if vid not in vertices]
            if missing:
                raise PctSyntaxError(f"region {rid!r} uses undeclared vertex {missing[0]!r}", line=number)
            regions[rid] = RegionSpec(rid, int(color_text), tuple(loop))
        elif keyword == "own":
            if len(args) == 4 and args[1] == "edge":
                edge_claims.append((args[0], args[2], args[3]))
            elif len(args) == 3 and args[1] == "vertex":
                vertex_claims.append((args[0], args[2]))
            else:
                raise PctSyntaxError(
                    "expected 'own <region> edge <v1> <v2>' or 'own <region> vertex <v>'", line=number
                )
            if args[0] not in regions:
                raise PctSyntaxError(f"ownership claim for undeclared region {args[0]!r}", line=number)
        else:
            raise PctSyntaxError(f"unknown keyword {keyword!r}", line=number)
    if not header_seen:
        raise PctSyntaxError("empty document; expected 'pct 1'", line=1)
    if len(periods) == 1:
        raise PctSyntaxError("a periodic document needs two period lines", line=len(lines))
    if (edge_claims or vertex_claims) and variant is not OwnershipVariant.EXPLICIT:
        raise PctSyntaxError("own lines need 'ownership explicit'", line=len(lines))
    lattice = (periods[0], periods[1]) if periods else None
    rule = OwnershipRule(variant, tuple(edge_claims), tuple(vertex_claims))
    LOGGER.debug("Parsed PCT document: %d vertices, %d regions", len(vertices), len(regions))
    return PctDocument.create(vertices, list(regions.values()), lattice, rule)


# Writing -------------------------------------------------------------------
PctSource = Union[PctDocument, TilingSpec, Tiling, Patch]


def _document(source: PctSource) -> PctDocument:
    if isinstance(source, PctDocument):
        return source
    if isinstance(source, Tiling):
        return PctDocument.from_spec(source.spec)
    if isinstance(source, Patch):
        return PctDocument.from_patch(source)
    return PctDocument.from_spec(source)


def write_pct(source: PctSource) -> str:
    """Canonical text: sorted ids, reduced fractions, LF line endings."""

    doc = _document(source)
    out = [f"pct {PCT_VERSION}"]
    if doc.is_empty:
        return out[0] + "\n"
    if doc.lattice is not None:
        out.extend(f"period {t.to_text()}" for t in doc.lattice)
    out.append(f"ownership {doc.ownership.variant.value}")
    out.extend(f"vertex {vid} {p.to_text()}" for vid, p in doc.vertices)
    out.extend(f"region {r.id} {r.color} {' '.join(r.vertex_ids)}" for r in doc.regions)
    out.extend(f"own {rid} edge {v1} {v2}" for rid, v1, v2 in doc.ownership.edges)
    out.extend(f"own {rid} vertex {v}" for rid, v in doc.ownership.vertices)
    return "\n".join(out) + "\n"
