"""Shared test oracles and generators, all independent of the code under test."""

from __future__ import annotations

import itertools
import random
from collections import deque

from slnet import DependencyGraph


def rotation_structure(m: int, c: int) -> dict[int, int]:
    """Cycle structure of the cyclic shift on c cells over m symbols,
    found by walking every orbit explicitly."""
    seen = set()
    counts: dict[int, int] = {}
    for state in itertools.product(range(m), repeat=c):
        if state in seen:
            continue
        orbit = []
        current = state
        while current not in seen:
            seen.add(current)
            orbit.append(current)
            current = (current[-1],) + current[:-1]
        counts[len(orbit)] = counts.get(len(orbit), 0) + 1
    return counts


def exact_period_count(m: int, k: int) -> int:
    """Number of length-k tuples over m symbols with rotation period exactly k."""
    total = 0
    for t in itertools.product(range(m), repeat=k):
        period = next(d for d in range(1, k + 1)
                      if k % d == 0 and t[d:] + t[:d] == t)
        if period == k:
            total += 1
    return total


def permutation_cycle_structure(perm: list[int]) -> dict[int, int]:
    """Cycle-length counts of a permutation given as an image list."""
    seen = [False] * len(perm)
    counts: dict[int, int] = {}
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            length += 1
            v = perm[v]
        counts[length] = counts.get(length, 0) + 1
    return counts


def permutation_from_structure(structure: dict[int, int]) -> list[int]:
    """Some permutation realizing the given cycle-length counts."""
    perm: list[int] = []
    for length in sorted(structure):
        for _ in range(structure[length]):
            base = len(perm)
            perm.extend(base + (i + 1) % length for i in range(length))
    return perm


def product_permutation(p: list[int], q: list[int]) -> list[int]:
    """The permutation (i, j) -> (p[i], q[j]) on len(p) * len(q) points."""
    np_, nq = len(p), len(q)
    return [q[j] * np_ + p[i] for j in range(nq) for i in range(np_)]


def reachable(g: DependencyGraph, source: int) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.out_neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def brute_maximal_antichains(poset) -> set[frozenset[int]]:
    """All maximal antichains by scanning every vertex subset."""
    t = poset.size
    out = set()
    for bits in range(1, 1 << t):
        members = [i for i in range(t) if bits >> i & 1]
        if any(poset.comparable(i, j)
               for a, i in enumerate(members) for j in members[a + 1:]):
            continue
        if all(any(poset.comparable(i, k) for i in members) for k in range(t)):
            out.add(frozenset(members))
    return out


def parse_poly(text: str) -> dict[frozenset[int], int]:
    """Parse renderings like ``14 - 7 z1 + 3 z1 z2`` into support -> coeff."""
    tokens = text.replace("-", " - ").replace("+", " + ").split()
    terms: dict[frozenset[int], int] = {}
    sign = 1
    coeff: int | None = None
    support: list[int] = []
    pending = False

    def flush():
        nonlocal coeff, support, pending
        if not pending:
            return
        c = sign * (1 if coeff is None else coeff)
        key = frozenset(support)
        terms[key] = terms.get(key, 0) + c
        coeff = None
        support = []
        pending = False

    for tok in tokens:
        if tok == "+":
            flush()
            sign = 1
        elif tok == "-":
            flush()
            sign = -1
        elif tok.startswith("z"):
            support.append(int(tok[1:]) - 1)
            pending = True
        else:
            coeff = int(tok)
            pending = True
    flush()
    return terms


def random_strongly_connected(rng: random.Random, n: int,
                              extra: int | None = None) -> DependencyGraph:
    """Spanning directed cycle through a random vertex order plus random chords."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {(order[i], order[(i + 1) % n]) for i in range(n)}
    if extra is None:
        extra = rng.randrange(0, 2 * n + 1)
    for _ in range(extra):
        edges.add((rng.randrange(n), rng.randrange(n)))
    return DependencyGraph.from_edges(n, edges)


def random_block_network(rng: random.Random, max_vertices: int = 7,
                         blocks: int | None = None,
                         bridge_prob: float = 0.7):
    """Several small strongly connected blocks plus forward-only bridges.

    Returns (graph, list of block vertex lists). Forward bridges keep the
    blocks as exactly the strongly connected components.
    """
    if blocks is None:
        blocks = rng.randint(2, 3)
    sizes = []
    remaining = max_vertices
    for b in range(blocks):
        left = blocks - b - 1
        hi = remaining - left  # leave room for one vertex per later block
        size = rng.randint(1, min(3, hi))
        sizes.append(size)
        remaining -= size
    edges = []
    block_vertices = []
    base = 0
    for size in sizes:
        vertices = list(range(base, base + size))
        block_vertices.append(vertices)
        if size == 1:
            edges.append((base, base))
        else:
            for i in range(size):
                edges.append((vertices[i], vertices[(i + 1) % size]))
            if size >= 3 and rng.random() < 0.4:
                edges.append((vertices[0], vertices[2 % size]))
        base += size
    for i in range(blocks):
        for j in range(i + 1, blocks):
            if rng.random() < bridge_prob:
                edges.append((rng.choice(block_vertices[i]),
                              rng.choice(block_vertices[j])))
    graph = DependencyGraph.from_edges(base, edges)
    return graph, block_vertices
