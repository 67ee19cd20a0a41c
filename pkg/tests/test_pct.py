from fractions import Fraction

import pytest

from conftest import RHOMBUS_TEXT, pct_text
from hadwiger.core.errors import DuplicateId, NonFieldCoordinate, PctError, PctSyntaxError
from hadwiger.core.geometry import Point, Window
from hadwiger.core.pct import PctDocument, parse_pct, write_pct
from hadwiger.core.plane import OwnershipVariant, build_tiling, instantiate_window

SQUARE = {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)}


def _square_text() -> str:
    return pct_text(SQUARE, [("r", 1, ["a", "b", "c", "d"])])


def test_parse_square() -> None:
    doc = parse_pct(_square_text())
    assert [vid for vid, _ in doc.vertices] == ["a", "b", "c", "d"]
    assert doc.regions[0].vertex_ids == ("a", "b", "c", "d")
    assert doc.lattice is None
    assert doc.ownership.variant is OwnershipVariant.ABOVE_RIGHT


def test_comments_and_blank_lines_are_ignored() -> None:
    text = "# a rhombus\n\n" + RHOMBUS_TEXT.replace("region upper", "\n   # second\nregion upper", 1)
    text = text.replace("vertex b 1 0 0 0 0 0 0 0", "vertex b 1 0 0 0 0 0 0 0  # on the x axis")
    doc = parse_pct(text)
    assert dict(doc.vertices)["b"] == Point.of(1, 0)
    assert dict(doc.vertices)["c"].x == Point.of(Fraction(3, 2), 0).x
    assert len(doc.regions) == 2


@pytest.mark.parametrize(
    ("text", "error", "line"),
    [
        ("vertex a 0 0 0 0 0 0 0 0\n", PctSyntaxError, 1),
        ("pct 2\n", PctSyntaxError, 1),
        ("pct 1\nperiod 1 0 0 0 0 0 0 0\n", PctSyntaxError, 2),
        ("pct 1\nvertex a 0 0 0 0 0 0 0 0\nvertex a 1 0 0 0 0 0 0 0\n", DuplicateId, 3),
        ("pct 1\nvertex a 1/0 0 0 0 0 0 0 0\n", PctSyntaxError, 2),
        ("pct 1\nvertex a 0.5 0 0 0 0 0 0 0\n", NonFieldCoordinate, 2),
        ("pct 1\nvertex a 0 0 0 0 0 0 0\n", PctSyntaxError, 2),
        ("pct 1\nregion r 1 a b c\n", PctSyntaxError, 2),
        ("pct 1\nhexagon h\n", PctSyntaxError, 2),
        ("pct 1\nownership sideways\n", PctSyntaxError, 2),
        ("pct 1\nownership explicit\nownership explicit\n", DuplicateId, 3),
    ],
)
def test_parse_errors_name_their_line(text: str, error: type[PctError], line: int) -> None:
    with pytest.raises(error) as info:
        parse_pct(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_empty_document_is_rejected() -> None:
    with pytest.raises(PctSyntaxError):
        parse_pct("")
    with pytest.raises(PctSyntaxError):
        parse_pct("# nothing here\n")


def test_three_periods_are_rejected() -> None:
    periods = "period 1 0 0 0 0 0 0 0\nperiod 0 0 0 0 1 0 0 0\nperiod 1 0 0 0 1 0 0 0\n"
    with pytest.raises(PctSyntaxError):
        parse_pct("pct 1\n" + periods)


def test_region_color_must_be_positive() -> None:
    text = _square_text().replace("region r 1 ", "region r 0 ")
    with pytest.raises(PctSyntaxError):
        parse_pct(text)


def test_own_lines_need_explicit_ownership() -> None:
    with pytest.raises(PctSyntaxError):
        parse_pct(_square_text() + "own r vertex a\n")
    doc = parse_pct(_square_text().replace("above-right", "explicit") + "own r vertex a\n")
    assert doc.ownership.vertices == (("r", "a"),)


def test_header_only_document_writes_back_unchanged() -> None:
    doc = parse_pct("pct 1\n")
    assert doc.is_empty
    assert write_pct(doc) == "pct 1\n"
    assert write_pct(PctDocument()) == "pct 1\n"


def test_writer_is_canonical() -> None:
    text = pct_text(
        {"b10": (1, 0), "b2": (Fraction(2, 4), 0), "a": (0, 1)},
        [("r", 3, ["a", "b2", "b10"])],
    )
    out = write_pct(parse_pct(text))
    lines = out.splitlines()
    assert lines[0] == "pct 1"
    assert lines[1] == "ownership above-right"
    assert [line.split()[1] for line in lines if line.startswith("vertex")] == ["a", "b2", "b10"]
    assert "vertex b2 1/2 0 0 0 0 0 0 0" in lines
    assert out.endswith("\n") and "\r" not in out


def test_fixture_survives_a_write_and_parse(hex7) -> None:
    text = write_pct(hex7)
    doc = parse_pct(text)
    assert doc == PctDocument.from_spec(hex7.spec)
    assert write_pct(doc) == text
    assert text.count("\nperiod ") == 2


def test_patch_is_written_as_a_finite_tiling(grid9) -> None:
    patch = instantiate_window(grid9, Window.of(0, 0, Fraction(6, 5), Fraction(6, 5)))
    doc = parse_pct(write_pct(patch))
    assert doc.lattice is None
    tiling = build_tiling(doc.to_spec())
    assert len(tiling.regions) == len(patch.cells)
