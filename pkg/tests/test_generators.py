import pytest

from hadwiger.core.errors import UnknownRegion
from hadwiger.core.generators import (
    FixtureName,
    builtin_spec,
    gen_builtin,
    mutations,
    recolor,
    square7_color,
)


@pytest.mark.parametrize("name", list(FixtureName))
def test_every_fixture_builds(name: FixtureName) -> None:
    tiling = gen_builtin(name)
    assert tiling.regions
    assert tiling.is_periodic == name.is_periodic


def test_fixture_names_are_cli_tokens() -> None:
    assert FixtureName("grid9") is FixtureName.GRID9
    with pytest.raises(ValueError):
        FixtureName("pentagons")


def test_gen_builtin_is_cached() -> None:
    assert gen_builtin(FixtureName.HEX7) is gen_builtin("hex7")


def test_square7_first_row() -> None:
    assert [square7_color(k, 0) for k in range(7)] == [1, 2, 3, 4, 5, 6, 7]
    assert square7_color(0, 1) == 4
    assert square7_color(2, -1) == 5


def test_recolor_replaces_one_region() -> None:
    spec = builtin_spec(FixtureName.GRID9)
    changed = recolor(spec, "g00", 9)
    colors = {r.id: r.color for r in changed.regions}
    assert colors["g00"] == 9
    assert colors["g11"] == 5
    assert {r.id: r.color for r in spec.regions}["g00"] == 1


def test_recolor_rejects_bad_input() -> None:
    spec = builtin_spec(FixtureName.GRID9)
    with pytest.raises(ValueError):
        recolor(spec, "g00", 0)
    with pytest.raises(UnknownRegion):
        recolor(spec, "g99", 2)


def test_mutations_are_seeded() -> None:
    first = mutations(FixtureName.GRID9, count=4, seed=5)
    second = mutations(FixtureName.GRID9, count=4, seed=5)
    assert [m.describe() for m in first] == [m.describe() for m in second]
    for mutation in first:
        assert mutation.old_color != mutation.color
        assert mutation.color == gen_builtin(FixtureName.GRID9).region(mutation.partner).color
        assert mutation.build().region(mutation.region_id).color == mutation.color


def test_mutation_description() -> None:
    mutation = mutations(FixtureName.TRI8, count=1, seed=0)[0]
    text = mutation.describe()
    assert text.startswith("mutation fixture=tri8 region=")
    assert f"color={mutation.old_color}->{mutation.color}" in text
