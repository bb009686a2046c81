"""NumPy fallback kernels with the same contracts as the compiled core.

Successor tables are built by vectorized passes over the whole state
array. Periodic states are found by pointer doubling (jumping 2**k >= size
steps lands every state on its limit cycle), after which cycles are walked
state by state; only periodic states are visited in that last phase.
"""

from __future__ import annotations

import numpy as np


def _digit(states: np.ndarray, m: int, v: int) -> np.ndarray:
    return (states // m ** v) % m


def successors_fold(n, m, indptr, indices, table):
    size = m ** n
    states = np.arange(size, dtype=np.int64)
    tab = np.asarray(table, dtype=np.int64).reshape(m, m)
    succ = np.zeros(size, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        nbrs = [int(x) for x in indices[indptr[j]:indptr[j + 1]]]
        acc = _digit(states, m, nbrs[-1])
        for v in nbrs[-2::-1]:
            acc = tab[_digit(states, m, v), acc]
        succ *= m
        succ += acc
    return succ


def successors_tables(n, m, indptr, indices, offsets, tables):
    size = m ** n
    states = np.arange(size, dtype=np.int64)
    tables = np.asarray(tables, dtype=np.int64)
    succ = np.zeros(size, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        nbrs = [int(x) for x in indices[indptr[j]:indptr[j + 1]]]
        idx = np.zeros(size, dtype=np.int64)
        for v in reversed(nbrs):
            idx *= m
            idx += _digit(states, m, v)
        succ *= m
        succ += tables[int(offsets[j]) + idx]
    return succ


def find_cycles(succ):
    succ = np.asarray(succ, dtype=np.int64)
    size = succ.shape[0]
    jump = succ.copy()
    steps = 1
    while steps < size:
        jump = jump[jump]
        steps <<= 1
    # jump is now succ composed >= size times, so its image is exactly the
    # set of periodic states (transients have all died out).
    on_cycles = np.unique(jump)
    periodic = np.zeros(size, dtype=np.uint8)
    periodic[on_cycles] = 1
    # Scalar walking is the slow part; a plain list beats ndarray indexing
    # once many states are periodic.
    walk = succ.tolist() if on_cycles.size > 65536 else succ
    seen = np.zeros(size, dtype=bool)
    cycles = []
    for p in on_cycles.tolist():
        if seen[p]:
            continue
        seen[p] = True
        length = 1
        v = int(walk[p])
        while v != p:
            seen[v] = True
            length += 1
            v = int(walk[v])
        # p is the smallest state on its cycle: states are scanned ascending.
        cycles.append((length, p))
    return periodic, cycles
