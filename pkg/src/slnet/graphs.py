"""Dependency graphs: components, condensation order, loop numbers, layers."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import SchemaError

SIMPLE_CYCLE_CAP = 12
POSET_SIZE_CAP = 20


@dataclass(frozen=True)
class DependencyGraph:
    """Digraph on vertices 0..n-1; parallel edges collapse, self-loops allowed."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "DependencyGraph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(
                    f"edge ({u}, {v}) out of range for {self.n} vertices")

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def in_degrees(self) -> list[int]:
        return [len(self._in[v]) for v in range(self.n)]

    def without_edge(self, edge: tuple[int, int]) -> "DependencyGraph":
        edge = (int(edge[0]), int(edge[1]))
        if edge not in self.edges:
            raise ValueError(f"edge {edge} not present")
        return DependencyGraph(self.n, self.edges - {edge})

    def to_nx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def graph_from_json(obj) -> DependencyGraph:
    """Parse ``{"n": int, "edges": [[u, v], ...]}``; duplicates collapse."""
    if not isinstance(obj, dict):
        raise SchemaError("graph must be a JSON object")
    unknown = set(obj) - {"n", "edges"}
    if unknown:
        raise SchemaError(f"unknown graph keys: {sorted(unknown)}")
    try:
        n = int(obj["n"])
    except KeyError:
        raise SchemaError("graph.n is required") from None
    except (TypeError, ValueError):
        raise SchemaError("graph.n must be an integer") from None
    edges = obj.get("edges", [])
    if (not isinstance(edges, list)
            or not all(isinstance(e, list) and len(e) == 2
                       and all(isinstance(x, int) for x in e)
                       for e in edges)):
        raise SchemaError("graph.edges must be a list of [source, target] pairs")
    try:
        return DependencyGraph.from_edges(n, edges)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components sorted by their smallest vertex."""

    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]
    trivial: tuple[bool, ...]
    condensation_edges: frozenset[tuple[int, int]]

    @property
    def count(self) -> int:
        return len(self.components)

    def nontrivial_indices(self) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.trivial) if not t)


def scc_decompose(g: DependencyGraph) -> SccDecomposition:
    """Components in deterministic order plus the (deduplicated) condensation."""
    comps = sorted((frozenset(c) for c in
                    nx.strongly_connected_components(g.to_nx())), key=min)
    comp_of = [0] * g.n
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    trivial = tuple(
        len(comp) == 1 and (min(comp), min(comp)) not in g.edges
        for comp in comps)
    cond = frozenset((comp_of[u], comp_of[v])
                     for u, v in g.edges if comp_of[u] != comp_of[v])
    return SccDecomposition(tuple(comps), tuple(comp_of), trivial, cond)


def _bfs_levels(g: DependencyGraph, comp: frozenset[int], root: int) -> dict[int, int]:
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.out_neighbors(u):
            if w in comp and w not in level:
                level[w] = level[u] + 1
                queue.append(w)
    return level


def _check_component(g: DependencyGraph, comp: frozenset[int]) -> None:
    if not comp:
        raise ValueError("component is empty")
    if len(comp) == 1:
        v = min(comp)
        if (v, v) not in g.edges:
            raise ValueError(
                f"component {{{v}}} is trivial; its loop number is undefined")
        return
    root = min(comp)
    fwd = _bfs_levels(g, comp, root)
    if set(fwd) != comp:
        raise ValueError("component is not strongly connected")
    back = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.in_neighbors(u):
            if w in comp and w not in back:
                back.add(w)
                queue.append(w)
    if back != comp:
        raise ValueError("component is not strongly connected")


def loop_number_scc(g: DependencyGraph, component: Iterable[int]) -> int:
    """Gcd of directed cycle lengths inside one strongly connected component.

    Computed from breadth-first levels off the smallest vertex: around any
    closed walk the per-edge discrepancies level(u)+1-level(v) telescope to
    the walk length, so their gcd over all internal edges equals the gcd
    over all cycles.
    """
    comp = frozenset(component)
    _check_component(g, comp)
    level = _bfs_levels(g, comp, min(comp))
    acc = 0
    for u, v in g.edges:
        if u in comp and v in comp:
            acc = math.gcd(acc, level[u] + 1 - level[v])
    if acc == 0:
        raise RuntimeError("no cycle found in a strongly connected component")
    return acc


def loop_number(g: DependencyGraph) -> int:
    """Lcm of the loop numbers over all nontrivial strongly connected components."""
    decomposition = scc_decompose(g)
    nontrivial = decomposition.nontrivial_indices()
    if not nontrivial:
        raise ValueError("graph has no directed cycles; loop number undefined")
    return math.lcm(*(loop_number_scc(g, decomposition.components[i])
                      for i in nontrivial))


@dataclass(frozen=True)
class LayerPartition:
    """Cyclic vertex classes of a strongly connected graph with period ``period``.

    Every edge steps one class forward (mod period); the class of the
    component's smallest vertex is 0.
    """

    period: int
    layer_of: Mapping[int, int]
    sizes: tuple[int, ...]

    def layers(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.period)]
        for v, i in self.layer_of.items():
            out[i].append(v)
        return tuple(tuple(sorted(layer)) for layer in out)


def layer_partition(g: DependencyGraph, component: Iterable[int]) -> LayerPartition:
    """Partition a nontrivial strongly connected component into rotating layers."""
    comp = frozenset(component)
    c = loop_number_scc(g, comp)
    level = _bfs_levels(g, comp, min(comp))
    layer_of = {v: level[v] % c for v in comp}
    for u, v in g.edges:
        if u in comp and v in comp:
            if (layer_of[u] + 1) % c != layer_of[v]:
                raise RuntimeError(
                    f"edge ({u}, {v}) violates the layer step invariant")
    sizes = [0] * c
    for v in comp:
        sizes[layer_of[v]] += 1
    if any(s == 0 for s in sizes):
        raise RuntimeError("empty layer in a strongly connected component")
    return LayerPartition(c, layer_of, tuple(sizes))


def simple_cycle_gcd(g: DependencyGraph, component: Iterable[int],
                     max_size: int = SIMPLE_CYCLE_CAP) -> int:
    """Definitional gcd over explicitly enumerated simple directed cycles.

    Exponential in the component size; exists as an independent cross-check
    for loop_number_scc, hence the hard cap.
    """
    comp = frozenset(component)
    if len(comp) > max_size:
        raise ValueError(
            f"component has {len(comp)} vertices, enumeration capped at {max_size}")
    sub = g.to_nx().subgraph(comp)
    acc = 0
    for cycle in nx.simple_cycles(sub):
        acc = math.gcd(acc, len(cycle))
    if acc == 0:
        raise ValueError("component contains no directed cycle")
    return acc


@dataclass(frozen=True)
class Poset:
    """Finite partial order as a dense boolean leq matrix."""

    leq: tuple[tuple[bool, ...], ...]

    @property
    def size(self) -> int:
        return len(self.leq)

    @classmethod
    def from_relations(cls, size: int,
                       pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Reflexive-transitive closure of the given covering pairs.

        Raises if the closure is not antisymmetric (the input had a cycle).
        """
        leq = [[i == j for j in range(size)] for i in range(size)]
        for i, j in pairs:
            leq[i][j] = True
        for k in range(size):
            for i in range(size):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(size):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(size):
            for j in range(i + 1, size):
                if leq[i][j] and leq[j][i]:
                    raise ValueError(f"relation has a cycle through {i} and {j}")
        return cls(tuple(tuple(row) for row in leq))

    def is_leq(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq[i][j] or self.leq[j][i]

    def down_set(self, items: Iterable[int]) -> frozenset[int]:
        """All k below (or equal to) some member of ``items``."""
        items = set(items)
        return frozenset(k for k in range(self.size)
                         if any(self.leq[k][j] for j in items))

    def up_set(self, items: Iterable[int]) -> frozenset[int]:
        """All k above (or equal to) some member of ``items``."""
        items = set(items)
        return frozenset(k for k in range(self.size)
                         if any(self.leq[j][k] for j in items))

    def restrict(self, indices: Sequence[int]) -> "Poset":
        """Induced order on the given elements, in the given order.

        Because the full relation is already transitively closed, order
        mediated through dropped elements is preserved.
        """
        return Poset(tuple(tuple(self.leq[i][j] for j in indices)
                           for i in indices))


def build_poset(d: SccDecomposition) -> Poset:
    """Reachability order of the condensation (a genuine partial order)."""
    return Poset.from_relations(d.count, d.condensation_edges)
