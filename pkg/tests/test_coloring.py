import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadwiger.core.coloring import (
    ColoringCertificate,
    ConflictGraph,
    GreedyOrder,
    InfeasibleUpTo,
    build_conflict_graph,
    chromatic_number_exact,
    greedy_color,
    is_proper,
    verify_coloring,
)
from hadwiger.core.distance import ConflictMode, squared_distance
from hadwiger.core.errors import SelfLoopPresent
from hadwiger.core.field import FieldScalar
from hadwiger.core.generators import FixtureName, gen_builtin, mutations


def _complete(n: int) -> ConflictGraph:
    nodes = [f"n{i}" for i in range(n)]
    return ConflictGraph.from_edges(nodes, [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]])


def _cycle(n: int) -> ConflictGraph:
    nodes = [f"c{i}" for i in range(n)]
    return ConflictGraph.from_edges(nodes, [(nodes[i], nodes[(i + 1) % n]) for i in range(n)])


def test_builtin_colorings_verify(hex7, tri8) -> None:
    assert verify_coloring(hex7) == []
    assert verify_coloring(hex7, ConflictMode.OPEN_REGIONS) == []
    assert verify_coloring(tri8) == []


def test_mutated_coloring_has_witnesses() -> None:
    for mutation in mutations(FixtureName.HEX7, count=3, seed=1):
        witnesses = verify_coloring(mutation.build())
        assert witnesses, mutation.describe()
        assert all(w.color_a == w.color_b == mutation.color for w in witnesses)


def test_hex7_conflict_graph_is_complete(hex7) -> None:
    g = build_conflict_graph(hex7)
    assert g.nodes == tuple(f"h{i}" for i in range(7))
    assert not g.has_self_loops
    assert g.is_complete()
    assert g.colors["h0"] == hex7.region("h0").color


def test_grid9_conflict_graph_is_k9(grid9) -> None:
    g = build_conflict_graph(grid9)
    assert len(g.nodes) == 9
    assert not g.has_self_loops
    assert g.is_complete()


def test_hex7_needs_seven_colors(hex7) -> None:
    result = chromatic_number_exact(build_conflict_graph(hex7))
    assert isinstance(result, ColoringCertificate)
    assert result.k == 7
    assert result.evidence is not None and result.evidence.k == 6
    assert sorted(result.assignment.values()) == list(range(1, 8))


def test_tri8_needs_eight_colors(tri8) -> None:
    g = build_conflict_graph(tri8)
    result = chromatic_number_exact(g)
    assert isinstance(result, ColoringCertificate)
    assert result.k == 8
    assert result.evidence is not None and result.evidence.k == 7
    assert is_proper(g, result.assignment)
    assert "at-this-period=yes" in result.describe()


def test_exact_search_on_small_graphs() -> None:
    empty = ConflictGraph.from_edges([f"n{i}" for i in range(5)], [])
    result = chromatic_number_exact(empty)
    assert result.k == 1
    assert result.evidence is None
    assert chromatic_number_exact(_complete(9)).k == 9
    assert chromatic_number_exact(ConflictGraph.from_edges([], [])).k == 0


def test_odd_cycle_evidence_comes_from_search() -> None:
    result = chromatic_number_exact(_cycle(5))
    assert isinstance(result, ColoringCertificate)
    assert result.k == 3
    assert result.evidence.method == "search"
    assert result.evidence.k == 2
    assert result.evidence.nodes_explored > 0


def test_clique_evidence() -> None:
    result = chromatic_number_exact(_complete(4))
    assert result.evidence.method == "clique"
    assert result.evidence.k == 3


def test_certificate_is_relabelled_by_first_appearance() -> None:
    result = chromatic_number_exact(_cycle(6))
    assert result.k == 2
    assert result.assignment == {f"c{i}": 1 + i % 2 for i in range(6)}


def test_search_gives_up_at_kmax() -> None:
    result = chromatic_number_exact(_complete(6), kmax=4)
    assert isinstance(result, InfeasibleUpTo)
    assert result.kmax == 4
    assert "infeasible-up-to=4" in result.describe()


def test_greedy_orders() -> None:
    path = ConflictGraph.from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")])
    by_degree = greedy_color(path)
    assert by_degree["b"] == 1
    assert len(set(by_degree.values())) == 2
    assert greedy_color(path, GreedyOrder.INPUT) == {"a": 1, "b": 2, "c": 1}
    k7 = _complete(7)
    assert len(set(greedy_color(k7).values())) == 7
    assert is_proper(k7, greedy_color(k7))


def test_self_loops_are_rejected() -> None:
    g = ConflictGraph.from_edges(["a", "b"], [("a", "a"), ("a", "b")])
    assert g.self_loops == ("a",)
    assert g.edges() == [("a", "b")]
    with pytest.raises(SelfLoopPresent):
        greedy_color(g)
    with pytest.raises(SelfLoopPresent):
        chromatic_number_exact(g)


def _brute_force_k(nodes: list[str], edges: list[tuple[str, str]]) -> int:
    for k in range(1, len(nodes) + 1):
        for colors in itertools.product(range(k), repeat=len(nodes)):
            assignment = dict(zip(nodes, colors))
            if all(assignment[a] != assignment[b] for a, b in edges):
                return k
    return 0


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    nodes = [f"n{i}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
    edges = [pair for pair in pairs if draw(st.booleans())]
    return nodes, edges


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_exact_search_matches_brute_force(graph) -> None:
    nodes, edges = graph
    g = ConflictGraph.from_edges(nodes, edges)
    result = chromatic_number_exact(g)
    assert result.k == _brute_force_k(nodes, edges)
    assert is_proper(g, result.assignment)
    greedy = greedy_color(g)
    assert is_proper(g, greedy)
    assert len(set(greedy.values())) >= result.k


def _brute_force_lexmin(nodes: list[str], edges: list[tuple[str, str]], k: int) -> dict[str, int]:
    for colors in itertools.product(range(1, k + 1), repeat=len(nodes)):
        assignment = dict(zip(nodes, colors))
        if all(assignment[a] != assignment[b] for a, b in edges):
            return assignment
    raise AssertionError(f"no proper {k}-coloring")


@st.composite
def graphs_up_to_seven(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    nodes = [f"n{i}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
    edges = [pair for pair in pairs if draw(st.booleans())]
    return nodes, edges


@settings(max_examples=150, deadline=None)
@given(graphs_up_to_seven())
def test_certificate_is_lexicographically_smallest(graph) -> None:
    nodes, edges = graph
    result = chromatic_number_exact(ConflictGraph.from_edges(nodes, edges))
    assert result.assignment == _brute_force_lexmin(nodes, edges, result.k)


def test_certificate_ignores_clique_placement() -> None:
    # The largest clique {n2, n3, n4} sits after n0 and n1, which may share color 1.
    nodes = [f"n{i}" for i in range(5)]
    edges = [("n0", "n2"), ("n1", "n2"), ("n2", "n3"), ("n2", "n4"), ("n3", "n4")]
    result = chromatic_number_exact(ConflictGraph.from_edges(nodes, edges))
    assert result.k == 3
    assert result.assignment == {"n0": 1, "n1": 1, "n2": 2, "n3": 1, "n4": 3}


def test_square7_verifies(square7) -> None:
    assert verify_coloring(square7) == []
    assert len(square7.colors()) == 7


def test_fixtures_with_degree_four_vertices_use_seven_colors(grid9, tri8) -> None:
    for tiling in (grid9, tri8):
        assert any(v.degree >= 4 for v in tiling.vertices.values())
        assert len(tiling.colors()) >= 7


PERIODIC_FIXTURES = [FixtureName.HEX7, FixtureName.SQUARE7, FixtureName.TRI8, FixtureName.GRID9]


@pytest.mark.parametrize("name", PERIODIC_FIXTURES)
def test_mutations_are_detected(name: FixtureName) -> None:
    found = mutations(name, count=20, seed=2)
    assert len(found) == 20
    for mutation in found:
        witnesses = verify_coloring(mutation.build())
        assert witnesses, mutation.describe()
        for witness in witnesses:
            assert witness.color_a == witness.color_b
            assert squared_distance(*witness.points) == FieldScalar(1)


@pytest.mark.parametrize("name", PERIODIC_FIXTURES)
def test_wider_translate_radius_adds_no_edges(name: FixtureName) -> None:
    tiling = gen_builtin(name)
    assert build_conflict_graph(tiling).edges() == build_conflict_graph(tiling, extra_steps=1).edges()


def test_repeated_runs_give_identical_certificates(tri8, hex7) -> None:
    for tiling in (tri8, hex7):
        first = chromatic_number_exact(build_conflict_graph(tiling))
        second = chromatic_number_exact(build_conflict_graph(tiling))
        assert first.k == second.k
        assert first.assignment == second.assignment
        assert first.describe() == second.describe()
