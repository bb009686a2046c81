# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense successor tables and functional-graph cycle scan.

State encoding is base-m with vertex 0 as the least significant digit.
These loops dominate the runtime of exhaustive enumeration, hence the
compiled implementation; slnet._purepy provides the same contracts in
NumPy for installs without a compiler.
"""

from libc.stdlib cimport free, malloc

import numpy as np


def successors_fold(int n, int m, long long[::1] indptr, long long[::1] indices,
                    long long[::1] table):
    """Successor of every state when each vertex folds its inputs.

    ``table`` is the flattened m*m operation, ``indptr``/``indices`` the
    CSR form of the sorted in-neighbor lists. Folding is right-nested over
    ascending neighbors.
    """
    cdef long long size = 1
    cdef int v, j
    for v in range(n):
        size *= m
    succ_arr = np.empty(size, dtype=np.int64)
    cdef long long[::1] succ = succ_arr
    cdef long long* dig = <long long*> malloc(n * sizeof(long long))
    if dig == NULL:
        raise MemoryError()
    cdef long long s, rest, acc, total, k, k0, k1
    try:
        for s in range(size):
            rest = s
            for v in range(n):
                dig[v] = rest % m
                rest //= m
            total = 0
            for j in range(n - 1, -1, -1):
                k0 = indptr[j]
                k1 = indptr[j + 1]
                acc = dig[indices[k1 - 1]]
                for k in range(k1 - 2, k0 - 1, -1):
                    acc = table[dig[indices[k]] * m + acc]
                total = total * m + acc
            succ[s] = total
    finally:
        free(dig)
    return succ_arr


def successors_tables(int n, int m, long long[::1] indptr, long long[::1] indices,
                      long long[::1] offsets, long long[::1] tables):
    """Successor of every state under explicit per-vertex update tables.

    Vertex j reads ``tables[offsets[j] + idx]`` where idx is the base-m
    number formed by its sorted in-neighbor values, first neighbor least
    significant.
    """
    cdef long long size = 1
    cdef int v, j
    for v in range(n):
        size *= m
    succ_arr = np.empty(size, dtype=np.int64)
    cdef long long[::1] succ = succ_arr
    cdef long long* dig = <long long*> malloc(n * sizeof(long long))
    if dig == NULL:
        raise MemoryError()
    cdef long long s, rest, idx, total, k, k0, k1
    try:
        for s in range(size):
            rest = s
            for v in range(n):
                dig[v] = rest % m
                rest //= m
            total = 0
            for j in range(n - 1, -1, -1):
                k0 = indptr[j]
                k1 = indptr[j + 1]
                idx = 0
                for k in range(k1 - 1, k0 - 1, -1):
                    idx = idx * m + dig[indices[k]]
                total = total * m + tables[offsets[j] + idx]
            succ[s] = total
    finally:
        free(dig)
    return succ_arr


def find_cycles(long long[::1] succ):
    """Mark periodic states and list (length, smallest state) per cycle.

    Single O(size) sweep: each walk stamps states with its start index, so
    a revisit inside the same walk closes a new cycle and a hit on an older
    stamp means the walk merged into explored territory.
    """
    cdef long long size = succ.shape[0]
    stamp_arr = np.full(size, -1, dtype=np.int64)
    periodic_arr = np.zeros(size, dtype=np.uint8)
    cdef long long[::1] stamp = stamp_arr
    cdef unsigned char[::1] periodic = periodic_arr
    cycles = []
    cdef long long s, u, v, length, smallest
    for s in range(size):
        if stamp[s] != -1:
            continue
        u = s
        while stamp[u] == -1:
            stamp[u] = s
            u = succ[u]
        if stamp[u] == s:
            periodic[u] = 1
            length = 1
            smallest = u
            v = succ[u]
            while v != u:
                periodic[v] = 1
                if v < smallest:
                    smallest = v
                length += 1
                v = succ[v]
            cycles.append((length, smallest))
    return periodic_arr, cycles
