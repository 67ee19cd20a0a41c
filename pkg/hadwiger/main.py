"""CLI entry point for hadwiger."""

from __future__ import annotations

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import click

from .config.schema import AppConfig, load_config
from .core.circle import (
    RefinementBudget,
    alternative_arcs,
    audit_crossing_colors,
    crossing_color_census,
    hexagon_walk_audit,
    point_type_arcs,
    unit_circle_crossings,
)
from .core.coloring import build_conflict_graph, chromatic_number_exact, verify_coloring
from .core.distance import ConflictMode
from .core.errors import HadwigerError, UndecidedOrdering
from .core.generators import FixtureName, builtin_spec, recolor
from .core.geometry import Window
from .core.pct import parse_pct, write_pct
from .core.plane import Tiling, build_tiling
from .core.triangles import find_degree_ge4_vertex, is_triangle_tiling
from .core.utils import ensure_directory
from .reports.findings import (
    Report,
    ReportWriter,
    chromatic_report,
    triangles_report,
    verify_report,
    vertex_report,
)
from .reports.svg import RenderOptions, render_svg

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_tiling(path: str, check_colors: bool = True) -> Tiling:
    document = parse_pct(_read_source(path))
    return build_tiling(document.to_spec(), check_colors=check_colors)


def _config(ctx: click.Context) -> AppConfig:
    return ctx.obj["config"]


def _budget(ctx: click.Context) -> RefinementBudget:
    return RefinementBudget.from_settings(_config(ctx).arithmetic)


def _emit(ctx: click.Context, report: Report, write_json: bool) -> None:
    click.echo(report.text(), nl=False)
    if write_json:
        path = ReportWriter(_config(ctx)).write(report)
        click.echo(f"report written to {path}", err=True)
    if not report.ok:
        ctx.exit(EXIT_FINDINGS)


def json_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--json", "write_json", is_flag=True, help="Also write a JSON report under reports_root"
    )(func)


def mode_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--mode",
        type=click.Choice([m.value for m in ConflictMode]),
        default=ConflictMode.OWNED_CELLS.value,
        show_default=True,
        help="Compare owned cells or open regions",
    )(func)


@click.group()
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
@click.option("--log-level", default="WARNING", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]))
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], log_level: str) -> None:
    """Exact analysis of polygon colorings of the plane."""

    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(getattr(logging, log_level))
    ctx.obj = {"config": load_config(config_path)}


@cli.command()
@click.argument("fixture", type=click.Choice([f.value for f in FixtureName]))
@click.option("--recolor", "recolors", multiple=True, metavar="REGION:COLOR", help="Recolor one region")
@click.option("-o", "--output", type=click.Path(path_type=Path), default=None)
def generate(fixture: str, recolors: Sequence[str], output: Optional[Path]) -> None:
    """Write a built-in fixture as a PCT document."""

    spec = builtin_spec(fixture)
    for item in recolors:
        region_id, sep, color_text = item.rpartition(":")
        if not sep or not color_text.isdigit() or int(color_text) < 1:
            raise click.BadParameter(f"expected REGION:COLOR with COLOR >= 1, got {item!r}", param_hint="--recolor")
        spec = recolor(spec, region_id, int(color_text))
    text = write_pct(spec)
    if output is None:
        click.echo(text, nl=False)
        return
    ensure_directory(output.parent)
    output.write_text(text, encoding="utf-8", newline="\n")
    click.echo(f"wrote {output}", err=True)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True, exists=True, dir_okay=False))
@mode_option
@json_option
@click.pass_context
def verify(ctx: click.Context, file: str, mode: str, write_json: bool) -> None:
    """Search for same-colored points at distance exactly one."""

    tiling = _load_tiling(file, check_colors=False)
    extra = _config(ctx).search.extra_translate_steps
    witnesses = verify_coloring(tiling, ConflictMode(mode), extra_steps=extra)
    _emit(ctx, verify_report(tiling, witnesses, {"file": file, "mode": mode}), write_json)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True, exists=True, dir_okay=False))
@click.option("--at", "vertex_id", required=True, help="Vertex id, optionally with @i,j")
@click.option("--arcs", is_flag=True, help="List alternative arcs (degree 4 only)")
@click.option("--types", is_flag=True, help="List every typed arc (degree 4 only)")
@click.option("--walk", "walk_index", type=int, default=None, help="Hexagon walk from this crossing")
@click.option("--audit", is_flag=True, help="Check crossing colors against the vertex")
@json_option
@click.pass_context
def vertex(
    ctx: click.Context,
    file: str,
    vertex_id: str,
    arcs: bool,
    types: bool,
    walk_index: Optional[int],
    audit: bool,
    write_json: bool,
) -> None:
    """Unit-circle analysis around one vertex."""

    tiling = _load_tiling(file)
    budget = _budget(ctx)
    found = tiling.vertex(vertex_id)
    crossings = unit_circle_crossings(tiling, vertex_id, budget)
    walk = None
    if walk_index is not None:
        if not 0 <= walk_index < len(crossings):
            raise click.BadParameter(
                f"crossing index {walk_index} out of range 0..{len(crossings) - 1}", param_hint="--walk"
            )
        walk = hexagon_walk_audit(tiling, vertex_id, crossings[walk_index], budget)
    report = vertex_report(
        tiling,
        found,
        vertex_id,
        crossings,
        {"file": file, "vertex": vertex_id},
        arcs=alternative_arcs(tiling, vertex_id) if arcs else None,
        typed_arcs=point_type_arcs(tiling, vertex_id) if types else None,
        walk=walk,
        violations=audit_crossing_colors(tiling, vertex_id, budget) if audit else None,
        census=crossing_color_census(tiling, vertex_id, budget) if audit else None,
    )
    _emit(ctx, report, write_json)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True, exists=True, dir_okay=False))
@json_option
@click.pass_context
def triangles(ctx: click.Context, file: str, write_json: bool) -> None:
    """Find an interior vertex of degree at least four in a triangle coloring."""

    tiling = _load_tiling(file)
    found = find_degree_ge4_vertex(tiling)
    degree = tiling.vertex(found).degree if isinstance(found, str) else 0
    report = triangles_report(is_triangle_tiling(tiling), found, degree, {"file": file})
    _emit(ctx, report, write_json)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True, exists=True, dir_okay=False))
@click.option("--kmax", type=click.IntRange(min=1), default=None, help="Largest color count to try")
@mode_option
@json_option
@click.pass_context
def chromatic(ctx: click.Context, file: str, kmax: Optional[int], mode: str, write_json: bool) -> None:
    """Exact chromatic number of the conflict graph at the file's period."""

    config = _config(ctx)
    tiling = _load_tiling(file)
    graph = build_conflict_graph(tiling, ConflictMode(mode), config.search.extra_translate_steps)
    result = chromatic_number_exact(graph, kmax or config.search.kmax)
    inputs = {"file": file, "kmax": kmax or config.search.kmax, "mode": mode}
    _emit(ctx, chromatic_report(result, graph.order, inputs), write_json)


def _window(ctx: click.Context, tiling: Tiling, bounds: Optional[Sequence[str]]) -> Window:
    if bounds:
        try:
            values = [Fraction(token) for token in bounds]
        except (ValueError, ZeroDivisionError) as exc:
            raise click.BadParameter(str(exc), param_hint="--window") from exc
        try:
            return Window.of(*values)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--window") from exc
    return tiling.block_window.expanded(_config(ctx).render.margin)


@cli.command()
@click.argument("file", type=click.Path(allow_dash=True, exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(path_type=Path), required=True)
@click.option("--window", "bounds", nargs=4, type=str, default=None, metavar="X0 Y0 X1 Y1")
@click.option("--circle", "circle_at", default=None, help="Draw the unit circle around this vertex")
@click.option("--arcs", is_flag=True, help="Overlay typed arcs on the circle")
@click.pass_context
def render(
    ctx: click.Context,
    file: str,
    output: Path,
    bounds: Optional[Sequence[str]],
    circle_at: Optional[str],
    arcs: bool,
) -> None:
    """Render a window of the tiling as SVG."""

    config = _config(ctx)
    tiling = _load_tiling(file)
    if circle_at is not None:
        tiling.vertex(circle_at)
    window = _window(ctx, tiling, bounds)
    options = RenderOptions.from_settings(config.render, circle_at, arcs, _budget(ctx))
    text = render_svg(tiling, window, options)
    ensure_directory(output.parent)
    output.write_text(text, encoding="utf-8", newline="\n")
    click.echo(f"render output={output} paths={text.count('<path ')}")


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map every outcome onto the 0-3 exit codes."""

    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name="hadwiger", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except UndecidedOrdering as exc:
        click.echo(f"undecided: {exc}", err=True)
        return EXIT_UNDECIDED
    except HadwigerError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INPUT
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":  # pragma: no cover
    main()
