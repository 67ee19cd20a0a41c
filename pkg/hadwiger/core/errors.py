"""Exception hierarchy shared by the hadwiger engines and the CLI."""

from __future__ import annotations

from typing import Any, Mapping, Optional

__all__ = [
    "HadwigerError",
    "TilingError",
    "OverlappingRegions",
    "CoverageGap",
    "AdjacentSameColor",
    "NonSimplePolygon",
    "DependentLattice",
    "UnknownVertex",
    "UnknownRegion",
    "InvalidOwnership",
    "AnalysisError",
    "UndecidedOrdering",
    "ZeroDirection",
    "DegreeNot4",
    "NotOnCircle",
    "NotTriangleTiling",
    "HypothesesViolated",
    "PatchTooSmall",
    "CellsNotComparable",
    "WitnessNotConstructed",
    "SelfLoopPresent",
    "PctError",
    "PctSyntaxError",
    "NonFieldCoordinate",
    "DuplicateId",
]


class HadwigerError(RuntimeError):
    """Base error for every failure raised by the package."""

    def __init__(self, message: str, *, details: Optional[Mapping[str, Any]] = None) -> None:
        super().__init__(message)
        self.details: dict[str, Any] = dict(details or {})


# Tiling construction -------------------------------------------------------
class TilingError(HadwigerError):
    """The raw tiling description does not define a polygon coloring."""


class OverlappingRegions(TilingError):
    """Two region interiors intersect."""


class CoverageGap(TilingError):
    """A periodic tiling leaves part of the plane uncovered."""


class AdjacentSameColor(TilingError):
    """Two regions sharing a border or vertex carry the same color."""


class NonSimplePolygon(TilingError):
    """A region boundary is degenerate or self-intersecting."""


class DependentLattice(TilingError):
    """The two period vectors are linearly dependent."""


class UnknownVertex(TilingError):
    """A vertex id does not name a derived vertex of the tiling."""


class UnknownRegion(TilingError):
    """A region id does not name a region of the tiling."""


class InvalidOwnership(TilingError):
    """Explicit ownership does not assign every boundary point exactly once."""


# Analysis ------------------------------------------------------------------
class AnalysisError(HadwigerError):
    """An analysis precondition failed or a decision could not be made."""


class UndecidedOrdering(AnalysisError):
    """Interval refinement exhausted its budget without separating two values."""


class ZeroDirection(AnalysisError):
    """A direction vector is the zero vector."""


class DegreeNot4(AnalysisError):
    """The operation needs a vertex of degree exactly four."""


class NotOnCircle(AnalysisError):
    """A point handed to the hexagon walk does not lie on the unit circle."""


class NotTriangleTiling(AnalysisError):
    """A patch contains a region that is not a triangle."""


class HypothesesViolated(AnalysisError):
    """The borderline chain does not satisfy the descent hypotheses."""


class PatchTooSmall(AnalysisError):
    """A walk left the finite patch it was given."""


class CellsNotComparable(AnalysisError):
    """Two cells come from different tilings or patches."""


class WitnessNotConstructed(AnalysisError):
    """A unit-distance pair is known to exist but no exact pair was built within the step limit."""


class SelfLoopPresent(AnalysisError):
    """A conflict graph with a self-loop admits no proper coloring."""


# PCT documents -------------------------------------------------------------
class PctError(HadwigerError):
    """A PCT document could not be parsed."""

    def __init__(self, message: str, *, line: int = 0, details: Optional[Mapping[str, Any]] = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message, details=details)


class PctSyntaxError(PctError):
    """Malformed PCT line."""


class NonFieldCoordinate(PctError):
    """A coordinate token is not a rational number."""


class DuplicateId(PctError):
    """A vertex or region id is declared twice."""
