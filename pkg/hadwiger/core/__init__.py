"""Core engines: exact arithmetic, tilings, distance, circle and coloring analysis."""

from .errors import AnalysisError, HadwigerError, PctError, TilingError, UndecidedOrdering
from .generators import FixtureName, gen_builtin
from .pct import PctDocument, parse_pct, write_pct
from .plane import Tiling, TilingSpec, build_tiling

__all__ = [
    "AnalysisError",
    "HadwigerError",
    "PctError",
    "TilingError",
    "UndecidedOrdering",
    "FixtureName",
    "gen_builtin",
    "PctDocument",
    "parse_pct",
    "write_pct",
    "Tiling",
    "TilingSpec",
    "build_tiling",
]
