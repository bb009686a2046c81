"""Brute-force phase-space enumeration and structural checkers.

Everything here is exact ground truth at desk scale: the full successor
map over all m**n states, the limit cycles extracted from it, and a set of
checkers that verify the closed-form cycle theory against that ground
truth on concrete networks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .cycles import CycleStructure, strongly_connected_structure
from .errors import SchemaError
from .graphs import (DependencyGraph, graph_from_json, layer_partition,
                     loop_number, scc_decompose)
from .operators import OperatorTable, fold, operator_from_json

DEFAULT_STATE_BUDGET = 10 ** 7


class BudgetExceededError(RuntimeError):
    """m**n exceeds the state budget for exhaustive enumeration."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"phase space would need {required} states; budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class NetworkSpec:
    """A dependency graph driven by one shared binary operation.

    Coordinate j updates to the fold of its in-neighbor values (ascending
    vertex order, right-nested). The operation must satisfy all three
    semilattice axioms unless ``unchecked`` is set; that escape hatch
    exists so deliberately broken operators can be simulated, and nothing
    downstream ever mistakes such a network for the real thing.
    """

    graph: DependencyGraph
    operator: OperatorTable
    unchecked: bool = False

    def __post_init__(self):
        starved = [v for v, d in enumerate(self.graph.in_degrees()) if d == 0]
        if starved:
            raise ValueError(
                f"vertices {starved} have no inputs; every coordinate must "
                "depend on at least one variable")
        if not self.unchecked:
            self.operator.require_semilattice()

    @property
    def m(self) -> int:
        return self.operator.size

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class RawNetwork:
    """Explicit per-coordinate update tables, bypassing the shared fold.

    ``tables[j]`` lists f_j over all value tuples of j's sorted in-neighbors,
    first neighbor least significant. This exists so counterexample dynamics
    that are not fold-shaped stay executable; the analysis pipeline never
    accepts this type.
    """

    graph: DependencyGraph
    m: int
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one symbol")
        starved = [v for v, d in enumerate(self.graph.in_degrees()) if d == 0]
        if starved:
            raise ValueError(f"vertices {starved} have no inputs")
        tables = tuple(tuple(int(v) for v in t) for t in self.tables)
        object.__setattr__(self, "tables", tables)
        if len(tables) != self.graph.n:
            raise ValueError(
                f"expected {self.graph.n} tables, got {len(tables)}")
        for j, tab in enumerate(tables):
            want = self.m ** len(self.graph.in_neighbors(j))
            if len(tab) != want:
                raise ValueError(
                    f"table {j} has {len(tab)} entries, expected {want}")
            if any(not 0 <= v < self.m for v in tab):
                raise ValueError(f"table {j} has entries outside [0, {self.m})")

    @classmethod
    def from_functions(cls, graph: DependencyGraph, m: int,
                       functions: Sequence[Callable[[tuple[int, ...]], int]],
                       ) -> "RawNetwork":
        """Tabulate per-coordinate callables over their in-neighbor tuples."""
        tables = []
        for j, fn in enumerate(functions):
            arity = len(graph.in_neighbors(j))
            tab = []
            for idx in range(m ** arity):
                vals = tuple((idx // m ** i) % m for i in range(arity))
                tab.append(int(fn(vals)))
            tables.append(tuple(tab))
        return cls(graph, m, tuple(tables))

    @property
    def n(self) -> int:
        return self.graph.n


Network = Union[NetworkSpec, RawNetwork]


def encode_state(m: int, state: Sequence[int]) -> int:
    """Pack a value vector into a base-m integer, vertex 0 least significant."""
    idx = 0
    for v in reversed(state):
        idx = idx * m + v
    return idx


def decode_state(m: int, n: int, index: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(index % m)
        index //= m
    return tuple(out)


def apply(net: Network, state: Sequence[int]) -> tuple[int, ...]:
    """One synchronous update; the reference semantics the kernels must match."""
    g = net.graph
    if len(state) != g.n:
        raise ValueError(f"state has {len(state)} entries, expected {g.n}")
    if any(not 0 <= v < net.m for v in state):
        raise ValueError(f"state entries must lie in [0, {net.m})")
    if isinstance(net, RawNetwork):
        out = []
        for j in range(g.n):
            idx = 0
            for i, u in enumerate(g.in_neighbors(j)):
                idx += state[u] * net.m ** i
            out.append(net.tables[j][idx])
        return tuple(out)
    return tuple(fold(net.operator, [state[u] for u in g.in_neighbors(j)])
                 for j in range(g.n))


def _csr_inputs(graph: DependencyGraph):
    indptr = [0]
    indices: list[int] = []
    for j in range(graph.n):
        indices.extend(graph.in_neighbors(j))
        indptr.append(len(indices))
    return (np.asarray(indptr, dtype=np.int64),
            np.asarray(indices, dtype=np.int64))


@dataclass(eq=False)
class PhaseSpace:
    """Complete successor map plus the limit cycles extracted from it."""

    n: int
    m: int
    successor: np.ndarray          # int64, one entry per state
    periodic_mask: np.ndarray      # uint8
    cycles: tuple[tuple[int, int], ...]  # (length, smallest state on cycle)

    @property
    def state_count(self) -> int:
        return int(self.successor.shape[0])

    def successor_of(self, state: int) -> int:
        return int(self.successor[state])

    def is_periodic(self, state: int) -> bool:
        return bool(self.periodic_mask[state])

    def periodic_states(self) -> list[int]:
        return [int(s) for s in np.flatnonzero(self.periodic_mask)]

    def cycle_states(self, representative: int) -> list[int]:
        """All states on the cycle through a periodic representative."""
        if not self.is_periodic(representative):
            raise ValueError(f"state {representative} is not periodic")
        states = [representative]
        v = self.successor_of(representative)
        while v != representative:
            states.append(v)
            v = self.successor_of(v)
        return states

    def cycle_structure(self) -> CycleStructure:
        counts: dict[int, int] = {}
        for length, _ in self.cycles:
            counts[length] = counts.get(length, 0) + 1
        return CycleStructure(counts)


def enumerate_phase_space(net: Network,
                          budget: int = DEFAULT_STATE_BUDGET,
                          kernels=_kernels) -> PhaseSpace:
    """Compute the successor of every state and extract all limit cycles."""
    size = net.m ** net.n
    if size > budget:
        raise BudgetExceededError(size, budget)
    indptr, indices = _csr_inputs(net.graph)
    if isinstance(net, RawNetwork):
        offsets = np.zeros(net.n, dtype=np.int64)
        flat: list[int] = []
        for j, tab in enumerate(net.tables):
            offsets[j] = len(flat)
            flat.extend(tab)
        succ = kernels.successors_tables(
            net.n, net.m, indptr, indices, offsets,
            np.asarray(flat, dtype=np.int64))
    else:
        flat_table = np.asarray(
            [v for row in net.operator.table for v in row], dtype=np.int64)
        succ = kernels.successors_fold(net.n, net.m, indptr, indices, flat_table)
    periodic, cycles = kernels.find_cycles(succ)
    ordered = tuple(sorted((int(length), int(rep)) for length, rep in cycles))
    return PhaseSpace(net.n, net.m, succ, periodic, ordered)


def oracle_cycle_structure(net: Network,
                           budget: int = DEFAULT_STATE_BUDGET) -> CycleStructure:
    """Exact cycle structure straight from exhaustive enumeration."""
    return enumerate_phase_space(net, budget).cycle_structure()


@dataclass
class CheckReport:
    """Outcome of one structural verification on a concrete network."""

    name: str
    ok: bool
    detail: str = ""
    counterexample: Optional[object] = None

    def __bool__(self) -> bool:
        return self.ok


def _require_strongly_connected(net: Network) -> frozenset[int]:
    decomposition = scc_decompose(net.graph)
    if decomposition.count != 1 or decomposition.trivial[0]:
        raise ValueError("check requires a strongly connected dependency graph")
    return decomposition.components[0]


def check_collapse(net: NetworkSpec,
                   budget: int = DEFAULT_STATE_BUDGET) -> CheckReport:
    """Verify every trajectory collapses onto layer-constant rotating states.

    From any initial state x, after enough multiples of the period c the
    network must sit at the state whose value on each layer is the fold of
    x over that layer, and the next c steps must rotate those layer values
    one class forward per step.
    """
    if isinstance(net, RawNetwork):
        raise ValueError("collapse check applies to fold networks only")
    component = _require_strongly_connected(net)
    part = layer_partition(net.graph, component)
    c = part.period
    layers = part.layers()
    space = enumerate_phase_space(net, budget)
    m, n = net.m, net.n
    for start in range(space.state_count):
        initial = decode_state(m, n, start)
        folded = [fold(net.operator, [initial[v] for v in layer])
                  for layer in layers]
        u, steps = start, 0
        while not space.is_periodic(u):
            u = space.successor_of(u)
            steps += 1
        for _ in range((-steps) % c):
            u = space.successor_of(u)
        landed = decode_state(m, n, u)
        for v in range(n):
            if landed[v] != folded[part.layer_of[v]]:
                return CheckReport(
                    "collapse", False,
                    detail=f"state {initial} lands on {landed}, expected layer "
                           f"folds {folded}",
                    counterexample=initial)
        w = u
        for j in range(1, c + 1):
            w = space.successor_of(w)
            rotated = decode_state(m, n, w)
            for v in range(n):
                if rotated[v] != folded[(part.layer_of[v] - j) % c]:
                    return CheckReport(
                        "collapse", False,
                        detail=f"rotation broke {j} steps past the collapse "
                               f"of {initial}",
                        counterexample=initial)
        if w != u:
            return CheckReport(
                "collapse", False,
                detail=f"period of the collapsed orbit of {initial} "
                       f"does not divide {c}",
                counterexample=initial)
    return CheckReport("collapse", True,
                       detail=f"all {space.state_count} initial states collapse "
                              f"onto rotating layer folds")


def check_rotation_conjugacy(net: NetworkSpec,
                             budget: int = DEFAULT_STATE_BUDGET) -> CheckReport:
    """Long-term dynamics must match the cyclic shift on period-many cells.

    Checks cycle-structure equality against the shift network and exercises
    both conjugacy maps: layer inflation (one value per layer) intertwines
    the shift with the network, and layer sampling inverts it on periodic
    states.
    """
    if isinstance(net, RawNetwork):
        raise ValueError("rotation check applies to fold networks only")
    component = _require_strongly_connected(net)
    part = layer_partition(net.graph, component)
    c = part.period
    layers = part.layers()
    m, n = net.m, net.n

    shift_graph = DependencyGraph.from_edges(
        c, [((j - 1) % c, j) for j in range(c)])
    shift = NetworkSpec(shift_graph, net.operator, unchecked=net.unchecked)

    ours = oracle_cycle_structure(net, budget)
    shifted = oracle_cycle_structure(shift, budget)
    if ours != shifted:
        return CheckReport(
            "rotation", False,
            detail=f"network has {ours.render()} but the {c}-cell shift has "
                   f"{shifted.render()}")

    reps = [layer[0] for layer in layers]

    def inflate(values: Sequence[int]) -> tuple[int, ...]:
        return tuple(values[part.layer_of[v]] for v in range(n))

    def sample(state: Sequence[int]) -> tuple[int, ...]:
        return tuple(state[r] for r in reps)

    for values in itertools.product(range(m), repeat=c):
        if sample(apply(net, inflate(values))) != apply(shift, values):
            return CheckReport(
                "rotation", False,
                detail=f"conjugacy failed on layer values {values}",
                counterexample=values)
    space = enumerate_phase_space(net, budget)
    for s in space.periodic_states():
        state = decode_state(m, n, s)
        if inflate(apply(shift, sample(state))) != apply(net, state):
            return CheckReport(
                "rotation", False,
                detail=f"inverse conjugacy failed on periodic state {state}",
                counterexample=state)
    return CheckReport("rotation", True,
                       detail=f"cycle structure equals the {c}-cell shift and "
                              f"both conjugacy maps commute")


def check_edge_deletion(net: NetworkSpec, edge: tuple[int, int],
                        budget: int = DEFAULT_STATE_BUDGET) -> CheckReport:
    """Deleting an edge between two components must keep every cycle intact.

    The reduced network must agree with the original on every state of
    every limit cycle (so each cycle survives verbatim), and cycle counts
    must not drop at any length.
    """
    if isinstance(net, RawNetwork):
        raise ValueError("edge-deletion check applies to fold networks only")
    decomposition = scc_decompose(net.graph)
    u, v = edge
    if (u, v) not in net.graph.edges:
        raise ValueError(f"edge {edge} is not in the graph")
    if decomposition.component_of[u] == decomposition.component_of[v]:
        raise ValueError(f"edge {edge} is internal to a component")
    reduced = NetworkSpec(net.graph.without_edge(edge), net.operator,
                          unchecked=net.unchecked)
    full_space = enumerate_phase_space(net, budget)
    reduced_space = enumerate_phase_space(reduced, budget)
    for length, rep in full_space.cycles:
        for s in full_space.cycle_states(rep):
            if reduced_space.successor_of(s) != full_space.successor_of(s):
                return CheckReport(
                    "edge-deletion", False,
                    detail=f"cycle of length {length} through state {rep} is "
                           f"not preserved after deleting {edge}",
                    counterexample=(length, rep))
    full = full_space.cycle_structure()
    cut = reduced_space.cycle_structure()
    if not full.le(cut):
        return CheckReport(
            "edge-deletion", False,
            detail=f"cycle counts dropped: {full.render()} vs {cut.render()}")
    return CheckReport("edge-deletion", True,
                       detail=f"all {len(full_space.cycles)} cycles survive "
                              f"deleting {edge}")


def check_period_divides(net: Network,
                         budget: int = DEFAULT_STATE_BUDGET) -> CheckReport:
    """Observed period must divide the loop number (equal it when strongly
    connected)."""
    space = enumerate_phase_space(net, budget)
    period = math.lcm(*(length for length, _ in space.cycles))
    c = loop_number(net.graph)
    decomposition = scc_decompose(net.graph)
    strongly_connected = decomposition.count == 1 and not decomposition.trivial[0]
    if strongly_connected:
        ok = period == c
        want = f"equal {c}"
    else:
        ok = c % period == 0
        want = f"divide {c}"
    return CheckReport(
        "period", ok,
        detail=f"observed period {period}, loop number {c}"
               + ("" if ok else f"; expected period to {want}"))


def check_exact_structure(net: NetworkSpec,
                          budget: int = DEFAULT_STATE_BUDGET) -> CheckReport:
    """Strongly connected case: enumeration must match the closed formula."""
    if isinstance(net, RawNetwork):
        raise ValueError("formula check applies to fold networks only")
    component = _require_strongly_connected(net)
    c = loop_number(net.graph)
    predicted = strongly_connected_structure(net.m, c)
    observed = oracle_cycle_structure(net, budget)
    ok = predicted == observed
    return CheckReport(
        "exact-structure", ok,
        detail=f"formula {predicted.render()}, enumeration {observed.render()}")


def run_checks(net: Network,
               budget: int = DEFAULT_STATE_BUDGET) -> list[CheckReport]:
    """Every applicable structural check for this network."""
    reports = [check_period_divides(net, budget)]
    if isinstance(net, NetworkSpec):
        decomposition = scc_decompose(net.graph)
        if decomposition.count == 1 and not decomposition.trivial[0]:
            reports.append(check_exact_structure(net, budget))
            reports.append(check_collapse(net, budget))
            reports.append(check_rotation_conjugacy(net, budget))
    return reports


def network_from_json(obj, unchecked: bool = False) -> NetworkSpec:
    """Parse ``{"graph": {...}, "operator": {...}}`` into a network."""
    if not isinstance(obj, dict):
        raise SchemaError("network must be a JSON object")
    unknown = set(obj) - {"graph", "operator"}
    if unknown:
        raise SchemaError(f"unknown network keys: {sorted(unknown)}")
    if "graph" not in obj or "operator" not in obj:
        raise SchemaError("network needs both 'graph' and 'operator'")
    graph = graph_from_json(obj["graph"])
    operator = operator_from_json(obj["operator"])
    return NetworkSpec(graph, operator, unchecked=unchecked)
