import json
from datetime import datetime, timezone
from fractions import Fraction

from conftest import vertex_at
from hadwiger.config.schema import DEFAULT_PALETTE, AppConfig
from hadwiger.core.circle import alternative_arcs, audit_crossing_colors, crossing_color_census, unit_circle_crossings
from hadwiger.core.coloring import build_conflict_graph, chromatic_number_exact, verify_coloring
from hadwiger.core.geometry import Window
from hadwiger.core.plane import instantiate_window
from hadwiger.core.triangles import find_degree_ge4_vertex, is_triangle_tiling
from hadwiger.reports.findings import (
    Report,
    ReportWriter,
    chromatic_report,
    triangles_report,
    verify_report,
    vertex_report,
)
from hadwiger.reports.svg import RenderOptions, palette_color, render_svg


def _grid_vertex(grid9) -> str:
    return vertex_at(grid9, Fraction(3, 5), Fraction(3, 5))


def test_empty_report_is_ok() -> None:
    report = Report("verify", {"file": "x.pct"})
    assert report.ok
    assert report.text() == ""
    assert report.to_dict()["findings"] == []


def test_verify_report_on_a_clean_tiling(hex7) -> None:
    report = verify_report(hex7, verify_coloring(hex7), {"file": "hex7.pct"})
    assert report.ok
    assert report.lines[-1].startswith("verify result=ok conflicts=0 colors=7 regions=7")


def test_report_writer_names_files_by_command_and_input(app_config: AppConfig) -> None:
    report = Report("chromatic", {"file": "/tmp/some tiling.pct"}, ["chromatic k=7"], {"k": 7})
    moment = datetime(2026, 1, 2, 3, 4, 5, tzinfo=timezone.utc)
    path = ReportWriter(app_config).write(report, now=moment)
    assert path.parent == app_config.reports_dir
    assert path.name.startswith("chromatic-")
    assert path.name.endswith("-20260102T030405Z.json")
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["command"] == "chromatic"
    assert payload["summary"] == {"k": 7}
    assert payload["generated_at"] == moment.isoformat()


def test_vertex_report_lists_crossings_and_arcs(grid9) -> None:
    vid = _grid_vertex(grid9)
    crossings = unit_circle_crossings(grid9, vid)
    report = vertex_report(
        grid9,
        grid9.vertex(vid),
        vid,
        crossings,
        {"vertex": vid},
        arcs=alternative_arcs(grid9, vid),
        violations=audit_crossing_colors(grid9, vid),
        census=crossing_color_census(grid9, vid),
    )
    assert report.ok
    assert report.lines[0] == f"vertex id={vid} degree=4 colors=1,2,4,5"
    assert report.summary["alternative_arcs"] == 4
    assert report.summary["local_bound"] == 6
    assert report.summary["crossings"] == len(crossings)
    assert "alternative_arcs=4 violations=0" in report.lines[-1]


def test_triangles_report(tri8) -> None:
    found = find_degree_ge4_vertex(tri8)
    assert isinstance(found, str)
    report = triangles_report(is_triangle_tiling(tri8), found, 6, {})
    assert report.ok
    assert report.summary == {"found": True, "vertex": found, "degree": 6}


def test_chromatic_report_lists_the_assignment(hex7) -> None:
    graph = build_conflict_graph(hex7)
    report = chromatic_report(chromatic_number_exact(graph), graph.order, {})
    assert report.ok
    assert report.lines[0] == "assign region=h0 color=1"
    assert report.lines[-1].startswith("chromatic k=7")
    failed = chromatic_report(chromatic_number_exact(graph, kmax=3), graph.order, {})
    assert not failed.ok
    assert failed.summary["k"] is None


def test_palette_wraps_around() -> None:
    assert palette_color(DEFAULT_PALETTE, 1) == DEFAULT_PALETTE[0]
    assert palette_color(DEFAULT_PALETTE, len(DEFAULT_PALETTE) + 1) == DEFAULT_PALETTE[0]


def test_render_window_of_grid9(grid9) -> None:
    text = render_svg(grid9, Window.of(0, 0, Fraction(9, 5), Fraction(9, 5)))
    assert text.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert text.count("<path ") == 25
    assert 'id="g00@0,0"' in text
    assert "unit-circle" not in text
    assert text.rstrip().endswith("</svg>")


def test_render_circle_overlay(grid9) -> None:
    vid = _grid_vertex(grid9)
    options = RenderOptions(circle_at=vid, show_arcs=True)
    text = render_svg(grid9, Window.of(-1, -1, 3, 3), options)
    crossings = unit_circle_crossings(grid9, vid)
    assert f'data-vertex="{vid}"' in text
    assert text.count('class="crossing"') == len(crossings)
    assert "arc-alternative" in text


def test_render_patch_and_empty_window(grid9) -> None:
    patch = instantiate_window(grid9, Window.of(0, 0, Fraction(6, 5), Fraction(6, 5)))
    text = render_svg(patch, Window.of(0, 0, Fraction(6, 5), Fraction(6, 5)))
    assert text.count("<path ") == len(patch.cells)
    assert render_svg(grid9, Window.of(0, 0, 0, 1)).count("<path ") == 0
