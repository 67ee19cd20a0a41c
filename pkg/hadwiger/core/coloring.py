"""Coloring verification and exact chromatic numbers of periodic conflict graphs."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Optional, Union

import networkx as nx

from .distance import ConflictMode, ConflictWitness, cell_conflict, cells_conflict
from .errors import SelfLoopPresent
from .geometry import lattice_offsets
from .plane import ZERO_OFFSET, Cell, Offset, Tiling
from .utils import format_offset, natural_key

LOGGER = logging.getLogger(__name__)

__all__ = [
    "ConflictGraph",
    "ColoringCertificate",
    "InfeasibilityEvidence",
    "InfeasibleUpTo",
    "GreedyOrder",
    "verify_coloring",
    "build_conflict_graph",
    "chromatic_number_exact",
    "greedy_color",
    "is_proper",
]


def _translates(t: Tiling, extra_steps: int = 0) -> list[Offset]:
    if t.lattice is None:
        return [ZERO_OFFSET]
    reach = t.block_window.expanded(1)
    offsets = lattice_offsets(t.lattice[0], t.lattice[1], t.block_window, reach, margin=1 + extra_steps)
    return sorted(offsets)


def _candidate_pairs(t: Tiling, extra_steps: int = 0) -> Iterator[tuple[Cell, Cell]]:
    """Base cells against every translate whose closure comes within distance one."""

    base = sorted(t.cells(), key=lambda cell: natural_key(cell.region.id))
    offsets = _translates(t, extra_steps)
    for u in base:
        reach = u.window.expanded(1)
        for offset in offsets:
            for region in sorted(t.regions.values(), key=lambda r: natural_key(r.id)):
                v = Cell(t, region, offset)
                if reach.intersects(v.window):
                    yield u, v


def _canonical(u: Cell, v: Cell) -> bool:
    """Keep one of the two lattice-equivalent orientations of a pair."""

    ku, kv = natural_key(u.region.id), natural_key(v.region.id)
    if ku != kv:
        return ku < kv
    return v.offset >= ZERO_OFFSET


def verify_coloring(
    t: Tiling, mode: ConflictMode = ConflictMode.OWNED_CELLS, extra_steps: int = 0
) -> list[ConflictWitness]:
    """Same-colored cell pairs realizing distance exactly one, folded by the lattice."""

    witnesses: list[ConflictWitness] = []
    checked = 0
    for u, v in _candidate_pairs(t, extra_steps):
        if u.color != v.color or not _canonical(u, v):
            continue
        checked += 1
        witness = cell_conflict(u, v, mode)
        if witness is not None:
            LOGGER.debug("Conflict between %s and %s", u.key, v.key)
            witnesses.append(witness)
    LOGGER.info("Verified %d same-colored pairs: %d conflicts", checked, len(witnesses))
    return witnesses


# Conflict graphs -------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class ConflictGraph:
    """Regions of one period as nodes; an edge wherever some translates conflict."""

    graph: nx.Graph
    order: tuple[str, ...]
    colors: Mapping[str, int]

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.order

    @property
    def self_loops(self) -> tuple[str, ...]:
        return tuple(node for node in self.order if self.graph.has_edge(node, node))

    @property
    def has_self_loops(self) -> bool:
        return bool(self.self_loops)

    def edges(self) -> list[tuple[str, str]]:
        index = {node: i for i, node in enumerate(self.order)}
        out = []
        for a, b in self.graph.edges():
            if a == b:
                continue
            pair = (a, b) if index[a] < index[b] else (b, a)
            out.append(pair)
        return sorted(out, key=lambda pair: (index[pair[0]], index[pair[1]]))

    def neighbors(self, node: str) -> list[str]:
        return [n for n in self.graph.neighbors(node) if n != node]

    def is_complete(self) -> bool:
        n = len(self.order)
        return len(self.edges()) == n * (n - 1) // 2

    @classmethod
    def from_edges(cls, nodes: list[str], edges: list[tuple[str, str]]) -> "ConflictGraph":
        graph = nx.Graph()
        graph.add_nodes_from(nodes)
        graph.add_edges_from(edges)
        return cls(graph, tuple(nodes), {})


def build_conflict_graph(
    t: Tiling, mode: ConflictMode = ConflictMode.OWNED_CELLS, extra_steps: int = 0
) -> ConflictGraph:
    """Conflict graph of one period, ignoring the tiling's own colors."""

    order = tuple(sorted(t.regions, key=natural_key))
    graph = nx.Graph()
    graph.add_nodes_from(order)
    for u, v in _candidate_pairs(t, extra_steps):
        if not _canonical(u, v):
            continue
        a, b = u.region.id, v.region.id
        if graph.has_edge(a, b):
            continue
        if cells_conflict(u, v, mode):
            graph.add_edge(a, b, offset=format_offset(v.offset))
    colors = {rid: t.regions[rid].color for rid in order}
    result = ConflictGraph(graph, order, colors)
    LOGGER.info(
        "Conflict graph: %d nodes, %d edges, %d self-loops",
        len(order),
        len(result.edges()),
        len(result.self_loops),
    )
    return result


def is_proper(g: ConflictGraph, assignment: Mapping[str, int]) -> bool:
    return all(assignment[a] != assignment[b] for a, b in g.graph.edges())


# Greedy coloring -------------------------------------------------------------
class GreedyOrder(str, Enum):
    DEGREE_DESC = "degree"
    INPUT = "input"


def greedy_color(g: ConflictGraph, order: GreedyOrder = GreedyOrder.DEGREE_DESC) -> dict[str, int]:
    """Proper coloring with colors 1, 2, ... assigned greedily."""

    if g.has_self_loops:
        raise SelfLoopPresent(f"self-loops at {', '.join(g.self_loops)}")
    if order is GreedyOrder.INPUT:
        sequence = list(g.order)
        raw = nx.coloring.greedy_color(g.graph, strategy=lambda graph, colors: iter(sequence))
    else:
        raw = nx.coloring.greedy_color(g.graph, strategy="largest_first")
    return {node: raw[node] + 1 for node in g.order}


# Exact search ----------------------------------------------------------------
@dataclass(frozen=True)
class InfeasibilityEvidence:
    """Why ``k`` colors do not suffice: a clique, or an exhausted search tree."""

    k: int
    method: str
    nodes_explored: int = 0

    def describe(self) -> str:
        return f"infeasible k={self.k} method={self.method} nodes={self.nodes_explored}"


@dataclass(frozen=True)
class ColoringCertificate:
    k: int
    assignment: Mapping[str, int]
    evidence: Optional[InfeasibilityEvidence]
    nodes_explored: int = 0

    def describe(self) -> str:
        text = f"chromatic k={self.k} at-this-period=yes"
        if self.evidence is not None:
            text += " " + self.evidence.describe()
        return text


@dataclass(frozen=True)
class InfeasibleUpTo:
    kmax: int
    nodes_explored: int

    def describe(self) -> str:
        return f"chromatic infeasible-up-to={self.kmax} nodes={self.nodes_explored} at-this-period=yes"


def _greedy_clique(g: ConflictGraph) -> list[str]:
    index = {node: i for i, node in enumerate(g.order)}
    ranked = sorted(g.order, key=lambda n: (-len(g.neighbors(n)), index[n]))
    best: list[str] = []
    for seed in ranked:
        clique = [seed]
        for node in ranked:
            if node != seed and all(g.graph.has_edge(node, member) for member in clique):
                clique.append(node)
        if len(clique) > len(best):
            best = clique
    return sorted(best, key=index.__getitem__)


class _Search:
    """DSATUR branch and bound for one color count."""

    def __init__(self, g: ConflictGraph, k: int, clique: list[str]) -> None:
        self.g = g
        self.k = k
        self.index = {node: i for i, node in enumerate(g.order)}
        self.adjacency = {node: [self.index[n] for n in g.neighbors(node)] for node in g.order}
        self.colors = [0] * len(g.order)
        self.explored = 0
        for color, node in enumerate(clique, start=1):
            self.colors[self.index[node]] = color

    def _pick(self) -> Optional[int]:
        best: Optional[tuple[int, int, int]] = None
        for node in self.g.order:
            i = self.index[node]
            if self.colors[i]:
                continue
            neighbors = self.adjacency[node]
            saturation = len({self.colors[j] for j in neighbors if self.colors[j]})
            free = sum(1 for j in neighbors if not self.colors[j])
            key = (-saturation, -free, i)
            if best is None or key < best:
                best = key
        return None if best is None else best[2]

    def run(self) -> bool:
        self.explored += 1
        i = self._pick()
        if i is None:
            return True
        node = self.g.order[i]
        used = {self.colors[j] for j in self.adjacency[node]}
        ceiling = min(self.k, max(self.colors) + 1)
        for color in range(1, ceiling + 1):
            if color in used:
                continue
            self.colors[i] = color
            if self.run():
                return True
        self.colors[i] = 0
        return False


def _lexmin_assignment(g: ConflictGraph, k: int) -> Optional[dict[str, int]]:
    """Lexicographically smallest proper ``k``-coloring, reading nodes in ``g.order``."""

    index = {node: i for i, node in enumerate(g.order)}
    earlier = [[index[n] for n in g.neighbors(node) if index[n] < i] for i, node in enumerate(g.order)]
    colors = [0] * len(g.order)

    # The smallest coloring introduces its colors in order, so a node never
    # needs a color above the highest one used so far plus one.
    def place(i: int, highest: int) -> bool:
        if i == len(colors):
            return True
        used = {colors[j] for j in earlier[i]}
        for color in range(1, min(k, highest + 1) + 1):
            if color in used:
                continue
            colors[i] = color
            if place(i + 1, max(highest, color)):
                return True
        colors[i] = 0
        return False

    if not place(0, 0):
        return None
    return dict(zip(g.order, colors))


def chromatic_number_exact(
    g: ConflictGraph, kmax: int = 12
) -> Union[ColoringCertificate, InfeasibleUpTo]:
    """Smallest ``k <= kmax`` coloring the graph, with evidence that ``k - 1`` fails."""

    if g.has_self_loops:
        raise SelfLoopPresent(f"self-loops at {', '.join(g.self_loops)}")
    kmax = max(1, kmax)
    if not g.order:
        return ColoringCertificate(0, {}, None)
    clique = _greedy_clique(g)
    lower = max(1, len(clique))
    total = 0
    evidence: Optional[InfeasibilityEvidence] = None
    if lower > 1:
        evidence = InfeasibilityEvidence(lower - 1, "clique")
    for k in range(lower, kmax + 1):
        search = _Search(g, k, clique)
        found = search.run()
        total += search.explored
        LOGGER.debug("k=%d: %s after %d search nodes", k, "found" if found else "exhausted", search.explored)
        if found:
            assignment = _lexmin_assignment(g, k)
            assert assignment is not None and is_proper(g, assignment)
            LOGGER.info("Chromatic number at this period: %d", k)
            return ColoringCertificate(k, assignment, evidence, total)
        evidence = InfeasibilityEvidence(k, "search", search.explored)
    return InfeasibleUpTo(kmax, total)
