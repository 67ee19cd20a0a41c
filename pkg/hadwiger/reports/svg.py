"""SVG rendering of tilings, patches and unit-circle overlays."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union
from xml.sax.saxutils import quoteattr

from ..config.schema import DEFAULT_PALETTE, RenderSettings
from ..core.circle import (
    DEFAULT_BUDGET,
    CrossingKind,
    PointKind,
    RefinementBudget,
    TypedArc,
    point_type_arcs,
    unit_circle_crossings,
)
from ..core.geometry import Direction, Window
from ..core.plane import Patch, Tiling, instantiate_window

LOGGER = logging.getLogger(__name__)

__all__ = ["RenderOptions", "render_svg", "palette_color"]

_ARC_STROKES = {
    PointKind.ALTERNATIVE: "#000000",
    PointKind.INWARD: "#1f77b4",
    PointKind.OUTWARD: "#d62728",
    PointKind.DEGENERATE: "#7f7f7f",
    PointKind.MIXED: "#bcbd22",
}


@dataclass(frozen=True)
class RenderOptions:
    circle_at: Optional[str] = None
    show_arcs: bool = False
    palette: Sequence[str] = DEFAULT_PALETTE
    scale: float = 80.0
    stroke_width: float = 1.0
    budget: RefinementBudget = DEFAULT_BUDGET

    @classmethod
    def from_settings(
        cls,
        settings: RenderSettings,
        circle_at: Optional[str] = None,
        show_arcs: bool = False,
        budget: RefinementBudget = DEFAULT_BUDGET,
    ) -> "RenderOptions":
        return cls(circle_at, show_arcs, settings.palette, settings.scale, settings.stroke_width, budget)


def palette_color(palette: Sequence[str], color: int) -> str:
    return palette[(color - 1) % len(palette)]


class _Canvas:
    """Maps plane coordinates into SVG user space with y pointing down."""

    def __init__(self, window: Window, scale: float) -> None:
        self.x0, self.y0, self.x1, self.y1 = window.approx()
        self.scale = scale

    @property
    def width(self) -> float:
        return (self.x1 - self.x0) * self.scale

    @property
    def height(self) -> float:
        return (self.y1 - self.y0) * self.scale

    def xy(self, x: float, y: float) -> tuple[float, float]:
        return (x - self.x0) * self.scale, (self.y1 - y) * self.scale


def _num(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _arc_points(arc: TypedArc, cx: float, cy: float, canvas: _Canvas, steps: int = 48) -> list[str]:
    start = Direction.from_point(arc.start).angle()
    end = Direction.from_point(arc.end).angle()
    sweep = (end - start) % (2 * math.pi)
    if arc.single_point:
        sweep = 0.0
    elif sweep == 0.0:
        sweep = 2 * math.pi
    out = []
    for k in range(steps + 1):
        theta = start + sweep * k / steps
        px, py = canvas.xy(cx + math.cos(theta), cy + math.sin(theta))
        out.append(f"{_num(px)},{_num(py)}")
    return out


def render_svg(
    source: Union[Tiling, Patch], window: Window, options: Optional[RenderOptions] = None
) -> str:
    """SVG 1.1 text with one filled path per cell meeting ``window``."""

    opts = options or RenderOptions()
    canvas = _Canvas(window, opts.scale)
    if isinstance(source, Patch):
        tiling = source.tiling
        cells = [c for c in source.cells if window.intersects(c.window)] if not window.interior_empty() else []
    else:
        tiling = source
        cells = list(instantiate_window(source, window).cells)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(canvas.width)}" height="{_num(canvas.height)}" '
            f'viewBox="0 0 {_num(canvas.width)} {_num(canvas.height)}">'
        ),
        '<g class="cells" stroke="#000000" stroke-linejoin="round" '
        f'stroke-width="{_num(opts.stroke_width)}">',
    ]
    for cell in cells:
        points = [canvas.xy(*p.approx()) for p in cell.polygon]
        d = "M " + " L ".join(f"{_num(x)} {_num(y)}" for x, y in points) + " Z"
        out.append(
            f"<path id={quoteattr(cell.key)} d={quoteattr(d)} "
            f"fill={quoteattr(palette_color(opts.palette, cell.color))}/>"
        )
    out.append("</g>")

    if opts.circle_at is not None:
        out.extend(_circle_overlay(tiling, opts, canvas))
    out.append("</svg>")
    LOGGER.debug("Rendered %d cells", len(cells))
    return "\n".join(out) + "\n"


def _circle_overlay(tiling: Tiling, opts: RenderOptions, canvas: _Canvas) -> list[str]:
    center = opts.circle_at
    assert center is not None
    cx, cy = tiling.vertex_point(center).approx()
    px, py = canvas.xy(cx, cy)
    radius = _num(canvas.scale)
    out = [
        f'<g class="unit-circle" data-vertex={quoteattr(center)}>',
        f'<circle class="circle" cx="{_num(px)}" cy="{_num(py)}" r="{radius}" '
        'fill="none" stroke="#000000" stroke-dasharray="4 3"/>',
    ]
    if opts.show_arcs and tiling.vertex(center).degree == 4:
        for arc in point_type_arcs(tiling, center):
            points = " ".join(_arc_points(arc, cx, cy, canvas))
            out.append(
                f'<polyline class="arc arc-{arc.kind.value}" points="{points}" fill="none" '
                f'stroke="{_ARC_STROKES[arc.kind]}" stroke-width="4" stroke-opacity="0.6"/>'
            )
    mark = _num(max(2.0, canvas.scale / 20))
    for crossing in unit_circle_crossings(tiling, center, opts.budget):
        mx, my = canvas.xy(*crossing.at.approx())
        if crossing.kind is CrossingKind.CROSSING:
            style = 'class="crossing" fill="#000000"'
        else:
            style = 'class="pseudo-crossing" fill="#ffffff"'
        out.append(f'<circle {style} cx="{_num(mx)}" cy="{_num(my)}" r="{mark}" stroke="#000000"/>')
    out.append("</g>")
    return out
