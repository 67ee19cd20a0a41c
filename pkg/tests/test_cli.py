import json
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import tiling_from_text, vertex_at
from hadwiger.main import EXIT_FINDINGS, EXIT_INPUT, EXIT_OK, run_cli


def _generate(tmp_path: Path, fixture: str, *extra: str) -> Path:
    path = tmp_path / f"{fixture}.pct"
    assert run_cli(["generate", fixture, "-o", str(path), *extra]) == EXIT_OK
    return path


def _grid_vertex(path: Path) -> str:
    tiling = tiling_from_text(path.read_text(encoding="utf-8"))
    return vertex_at(tiling, Fraction(3, 5), Fraction(3, 5))


def test_generate_writes_pct_to_stdout(capsys) -> None:
    assert run_cli(["generate", "hex7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("pct 1\n")
    assert out.count("\nregion ") == 7


def test_generate_then_verify(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "hex7")
    assert "wrote" in capsys.readouterr().err
    assert run_cli(["verify", str(path)]) == EXIT_OK
    assert "verify result=ok conflicts=0" in capsys.readouterr().out


def test_recolored_fixture_fails_verification(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "grid9", "--recolor", "g11:1")
    capsys.readouterr()
    assert run_cli(["verify", str(path)]) == EXIT_FINDINGS
    out = capsys.readouterr().out
    assert "verify result=conflicts" in out
    assert run_cli(["verify", "--mode", "open", str(path)]) == EXIT_FINDINGS


def test_bad_recolor_argument(tmp_path: Path) -> None:
    assert run_cli(["generate", "grid9", "--recolor", "g11"]) == EXIT_INPUT
    assert run_cli(["generate", "grid9", "--recolor", "g99:2"]) == EXIT_INPUT
    assert run_cli(["generate", "hex7", "--recolor", "h0:0"]) == EXIT_INPUT
    assert run_cli(["generate", "hex7", "--recolor", "h0:-1"]) == EXIT_INPUT


def test_input_errors_exit_with_two(tmp_path: Path, capsys) -> None:
    assert run_cli(["verify", str(tmp_path / "missing.pct")]) == EXIT_INPUT
    broken = tmp_path / "broken.pct"
    broken.write_text("pct 1\nhexagon h\n", encoding="utf-8")
    assert run_cli(["verify", str(broken)]) == EXIT_INPUT
    assert "PctSyntaxError" in capsys.readouterr().err


def test_vertex_command(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "grid9")
    vid = _grid_vertex(path)
    capsys.readouterr()
    assert run_cli(["vertex", str(path), "--at", vid, "--arcs", "--audit"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith(f"vertex id={vid} degree=4")
    assert "alternative_arcs=4" in out
    assert "census " in out


def test_vertex_walk(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "grid9")
    vid = _grid_vertex(path)
    capsys.readouterr()
    assert run_cli(["vertex", str(path), "--at", vid, "--walk", "0"]) == EXIT_OK
    assert "walk index=0" in capsys.readouterr().out
    assert run_cli(["vertex", str(path), "--at", vid, "--walk", "99"]) == EXIT_INPUT


def test_vertex_errors(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "hex7")
    assert run_cli(["vertex", str(path), "--at", "nowhere"]) == EXIT_INPUT
    assert run_cli(["vertex", str(path), "--at", "v0", "--arcs"]) == EXIT_INPUT
    assert "DegreeNot4" in capsys.readouterr().err


def test_triangles_command(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "tri8")
    capsys.readouterr()
    assert run_cli(["triangles", str(path)]) == EXIT_OK
    assert "degree-search result=found" in capsys.readouterr().out
    hexagons = _generate(tmp_path, "hex7")
    assert run_cli(["triangles", str(hexagons)]) == EXIT_INPUT


def test_triangles_on_the_junction_patch(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "fig5")
    capsys.readouterr()
    assert run_cli(["triangles", str(path)]) == EXIT_OK
    assert "degree=4" in capsys.readouterr().out


def test_chromatic_command(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "hex7")
    capsys.readouterr()
    assert run_cli(["chromatic", str(path)]) == EXIT_OK
    assert "chromatic k=7" in capsys.readouterr().out
    assert run_cli(["chromatic", str(path), "--kmax", "3"]) == EXIT_FINDINGS
    assert "infeasible-up-to=3" in capsys.readouterr().out


def test_json_report_goes_to_reports_root(tmp_path: Path) -> None:
    reports = tmp_path / "json-reports"
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"reports_root": str(reports)}), encoding="utf-8")
    path = _generate(tmp_path, "hex7")
    assert run_cli(["--config", str(config), "verify", "--json", str(path)]) == EXIT_OK
    written = list(reports.glob("verify-hex7-*.json"))
    assert len(written) == 1
    assert json.loads(written[0].read_text(encoding="utf-8"))["violations"] == 0


def test_render_command(tmp_path: Path, capsys) -> None:
    path = _generate(tmp_path, "grid9")
    vid = _grid_vertex(path)
    svg = tmp_path / "out" / "grid9.svg"
    capsys.readouterr()
    args = ["render", str(path), "-o", str(svg), "--window", "0", "0", "9/5", "9/5", "--circle", vid]
    assert run_cli(args) == EXIT_OK
    assert "paths=25" in capsys.readouterr().out
    text = svg.read_text(encoding="utf-8")
    assert "<svg" in text and "unit-circle" in text


@pytest.mark.parametrize("window", [["1", "0", "0", "1"], ["0", "0", "x", "1"]])
def test_render_rejects_bad_windows(tmp_path: Path, window: list[str]) -> None:
    path = _generate(tmp_path, "grid9")
    args = ["render", str(path), "-o", str(tmp_path / "bad.svg"), "--window", *window]
    assert run_cli(args) == EXIT_INPUT
