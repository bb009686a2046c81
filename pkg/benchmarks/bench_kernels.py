#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Builds a MIN network on a random strongly connected graph sized so the
phase space hits roughly the requested number of states, then times
successor-table construction and cycle extraction on each backend.

Usage: python benchmarks/bench_kernels.py [--states N] [--m M] [--repeat R]
"""

from __future__ import annotations

import argparse
import math
import random
import time

import numpy as np

from slnet import DependencyGraph, NetworkSpec, min_operator
from slnet.phasespace import _csr_inputs


def build_network(states: int, m: int, seed: int) -> NetworkSpec:
    n = max(2, int(math.log(states, m)))
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for _ in range(2 * n):
        edges.add((rng.randrange(n), rng.randrange(n)))
    graph = DependencyGraph.from_edges(n, edges)
    return NetworkSpec(graph, min_operator(m))


def time_backend(impl, net: NetworkSpec, repeat: int):
    indptr, indices = _csr_inputs(net.graph)
    table = np.asarray([v for row in net.operator.table for v in row],
                       dtype=np.int64)
    succ_times, cycle_times = [], []
    succ = cycles = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        succ = impl.successors_fold(net.n, net.m, indptr, indices, table)
        t1 = time.perf_counter()
        _, cycles = impl.find_cycles(succ)
        t2 = time.perf_counter()
        succ_times.append(t1 - t0)
        cycle_times.append(t2 - t1)
    return min(succ_times), min(cycle_times), succ, cycles


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--states", type=int, default=2_000_000,
                        help="approximate phase-space size (default 2e6)")
    parser.add_argument("--m", type=int, default=3, help="symbols per node")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions, best time wins")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    net = build_network(args.states, args.m, args.seed)
    size = args.m ** net.n
    print(f"network: n={net.n}, m={args.m}, {len(net.graph.edges)} edges, "
          f"{size:,} states")

    backends = []
    try:
        from slnet import _core
        backends.append(("compiled", _core))
    except ImportError:
        print("compiled core not built; benchmarking the fallback only")
    from slnet import _purepy
    backends.append(("fallback", _purepy))

    results = {}
    reference = None
    for name, impl in backends:
        succ_t, cyc_t, succ, cycles = time_backend(impl, net, args.repeat)
        results[name] = (succ_t, cyc_t)
        if reference is None:
            reference = (succ, sorted(cycles))
        else:
            assert np.array_equal(reference[0], succ), "backends disagree"
            assert reference[1] == sorted(cycles), "backends disagree"
        total = succ_t + cyc_t
        rate = size / total / 1e6
        print(f"{name:>9}: successors {succ_t * 1e3:8.1f} ms   "
              f"cycles {cyc_t * 1e3:8.1f} ms   total {total * 1e3:8.1f} ms "
              f"({rate:.1f} Mstates/s)")

    if len(results) == 2:
        fast = sum(results["compiled"])
        slow = sum(results["fallback"])
        print(f"speedup: {slow / fast:.1f}x")


if __name__ == "__main__":
    main()
