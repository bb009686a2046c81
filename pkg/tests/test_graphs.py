import random

import pytest

from helpers import brute_maximal_antichains, random_strongly_connected, reachable
from slnet import (DependencyGraph, Poset, SchemaError, build_poset,
                   graph_from_json, layer_partition, loop_number,
                   loop_number_scc, scc_decompose, simple_cycle_gcd)


def cycle_graph(k):
    return DependencyGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def test_graph_validation():
    with pytest.raises(ValueError):
        DependencyGraph.from_edges(2, [(0, 2)])
    with pytest.raises(ValueError):
        DependencyGraph.from_edges(0, [])
    g = DependencyGraph.from_edges(2, [(0, 1), (0, 1), (1, 0)])
    assert len(g.edges) == 2  # duplicates collapse


def test_neighbor_queries():
    g = DependencyGraph.from_edges(3, [(0, 1), (2, 1), (1, 0)])
    assert g.in_neighbors(1) == (0, 2)
    assert g.out_neighbors(1) == (0,)
    assert g.in_degrees() == [1, 2, 0]


def test_scc_single_cycle():
    d = scc_decompose(cycle_graph(3))
    assert d.count == 1
    assert d.components == (frozenset({0, 1, 2}),)
    assert d.trivial == (False,)
    assert d.condensation_edges == frozenset()


def test_scc_two_disjoint_cycles():
    g = DependencyGraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    d = scc_decompose(g)
    assert d.count == 2
    assert d.components == (frozenset({0, 1}), frozenset({2, 3}))
    assert d.condensation_edges == frozenset()
    assert d.trivial == (False, False)


def test_scc_path_is_all_trivial():
    g = DependencyGraph.from_edges(3, [(0, 1), (1, 2)])
    d = scc_decompose(g)
    assert d.count == 3
    assert d.trivial == (True, True, True)
    assert d.condensation_edges == frozenset({(0, 1), (1, 2)})


def test_self_loop_is_nontrivial():
    g = DependencyGraph.from_edges(1, [(0, 0)])
    assert scc_decompose(g).trivial == (False,)


def test_scc_matches_mutual_reachability():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 8)
        edges = {(rng.randrange(n), rng.randrange(n))
                 for _ in range(rng.randint(n, 3 * n))}
        g = DependencyGraph.from_edges(n, edges)
        d = scc_decompose(g)
        fwd = [reachable(g, v) for v in range(n)]
        for a in range(n):
            for b in range(n):
                together = b in fwd[a] and a in fwd[b]
                assert together == (d.component_of[a] == d.component_of[b])


@pytest.mark.parametrize("k", [1, 2, 3, 5, 7])
def test_loop_number_pure_cycle(k):
    g = DependencyGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    assert loop_number_scc(g, range(k)) == k


def test_loop_number_shared_vertex_cycles():
    # a 2-cycle and a 4-cycle through vertex 0
    g = DependencyGraph.from_edges(
        5, [(0, 1), (1, 0), (0, 2), (2, 3), (3, 4), (4, 0)])
    assert loop_number_scc(g, range(5)) == 2
    assert simple_cycle_gcd(g, range(5)) == 2


def test_loop_number_self_loop_gives_one():
    g = DependencyGraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 1)])
    assert loop_number_scc(g, range(3)) == 1


def test_loop_number_rejects_trivial():
    g = DependencyGraph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        loop_number_scc(g, {0})


def test_loop_number_rejects_non_scc():
    g = DependencyGraph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
    with pytest.raises(ValueError):
        loop_number_scc(g, {0, 1, 2})


def test_loop_number_lcm():
    # components with loop numbers 1, 2, 3 -> lcm 6
    g = DependencyGraph.from_edges(6, [
        (0, 0),
        (1, 2), (2, 1),
        (3, 4), (4, 5), (5, 3),
        (0, 1), (2, 3)])
    assert loop_number(g) == 6


def test_loop_number_disjoint_cycles():
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 6) for i in range(6)]
    g = DependencyGraph.from_edges(10, edges)
    assert loop_number(g) == 12
    d = scc_decompose(g)
    assert [simple_cycle_gcd(g, c) for c in d.components] == [4, 6]


def test_loop_number_no_cycles():
    g = DependencyGraph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        loop_number(g)


def test_simple_cycle_gcd_examples():
    assert simple_cycle_gcd(cycle_graph(3), range(3)) == 3
    complete3 = DependencyGraph.from_edges(
        3, [(i, j) for i in range(3) for j in range(3) if i != j])
    assert simple_cycle_gcd(complete3, range(3)) == 1
    # 2-cycle plus a chord path closing a 4-cycle
    g = DependencyGraph.from_edges(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)])
    assert simple_cycle_gcd(g, range(4)) == 2


def test_simple_cycle_gcd_cap():
    g = cycle_graph(13)
    with pytest.raises(ValueError):
        simple_cycle_gcd(g, range(13))


def test_level_gcd_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(120):
        n = rng.randint(2, 8)
        g = random_strongly_connected(rng, n, extra=rng.randrange(0, n + 1))
        assert loop_number_scc(g, range(n)) == simple_cycle_gcd(g, range(n))


def test_layer_partition_four_cycle():
    part = layer_partition(cycle_graph(4), range(4))
    assert part.period == 4
    assert part.sizes == (1, 1, 1, 1)
    assert part.layers() == ((0,), (1,), (2,), (3,))


def test_layer_partition_single_layer():
    g = DependencyGraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (0, 0)])
    part = layer_partition(g, range(3))
    assert part.period == 1
    assert part.sizes == (3,)


def test_layer_partition_two_linked_triangles():
    g = DependencyGraph.from_edges(6, [
        (0, 1), (1, 2), (2, 0),
        (3, 4), (4, 5), (5, 3),
        (2, 3), (5, 0)])
    part = layer_partition(g, range(6))
    assert part.period == 3
    assert part.sizes == (2, 2, 2)
    assert part.layers() == ((0, 3), (1, 4), (2, 5))


def test_layer_partition_edge_invariant_random():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(2, 8)
        g = random_strongly_connected(rng, n)
        part = layer_partition(g, range(n))
        c = part.period
        for u, v in g.edges:
            assert (part.layer_of[u] + 1) % c == part.layer_of[v]
        assert all(s > 0 for s in part.sizes)


def diamond_poset():
    return Poset.from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_build_poset_diamond():
    g = DependencyGraph.from_edges(7, [
        (0, 0), (1, 2), (2, 1), (3, 4), (4, 5), (5, 3), (6, 6),
        (0, 1), (0, 3), (2, 6), (5, 6)])
    poset = build_poset(scc_decompose(g))
    assert poset == diamond_poset()
    assert poset.is_leq(0, 3)  # closure through the middle
    assert not poset.comparable(1, 2)


def test_build_poset_antichain_and_chain():
    g = DependencyGraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    poset = build_poset(scc_decompose(g))
    assert poset.leq == ((True, False), (False, True))

    chain = DependencyGraph.from_edges(3, [(0, 0), (1, 1), (2, 2),
                                           (0, 1), (1, 2)])
    poset = build_poset(scc_decompose(chain))
    assert all(poset.is_leq(i, j) == (i <= j) for i in range(3) for j in range(3))


def test_poset_axioms_random():
    rng = random.Random(5)
    for _ in range(40):
        t = rng.randint(1, 6)
        pairs = {(rng.randrange(t), rng.randrange(t)) for _ in range(t)}
        pairs = {(i, j) for i, j in pairs if i < j}  # acyclic input
        poset = Poset.from_relations(t, pairs)
        for i in range(t):
            assert poset.is_leq(i, i)
            for j in range(t):
                if i != j:
                    assert not (poset.is_leq(i, j) and poset.is_leq(j, i))
                for k in range(t):
                    if poset.is_leq(i, j) and poset.is_leq(j, k):
                        assert poset.is_leq(i, k)


def test_poset_rejects_cycles():
    with pytest.raises(ValueError):
        Poset.from_relations(2, [(0, 1), (1, 0)])


def test_poset_restrict_keeps_mediated_order():
    # nontrivial block -> trivial vertex -> nontrivial block
    g = DependencyGraph.from_edges(5, [
        (0, 1), (1, 0), (3, 4), (4, 3), (1, 2), (2, 3)])
    d = scc_decompose(g)
    assert d.trivial == (False, True, False)
    poset = build_poset(d).restrict(d.nontrivial_indices())
    assert poset.size == 2
    assert poset.is_leq(0, 1)
    assert not poset.is_leq(1, 0)


def test_poset_closures():
    poset = diamond_poset()
    assert poset.down_set({1}) == frozenset({0, 1})
    assert poset.up_set({1}) == frozenset({1, 3})
    assert poset.down_set({1, 2}) == frozenset({0, 1, 2})


def test_brute_antichains_helper_on_diamond():
    assert brute_maximal_antichains(diamond_poset()) == {
        frozenset({0}), frozenset({1, 2}), frozenset({3})}


def test_graph_json():
    g = graph_from_json({"n": 3, "edges": [[0, 1], [1, 2], [2, 0], [0, 1]]})
    assert g.n == 3 and len(g.edges) == 3
    for bad in [{"edges": []}, {"n": 2, "edges": [[0, 2]]},
                {"n": 2, "edges": [[0]]}, {"n": 2, "edges": "x"},
                {"n": 1, "nope": 1}, 17]:
        with pytest.raises(SchemaError):
            graph_from_json(bad)


def test_without_edge():
    g = DependencyGraph.from_edges(2, [(0, 1), (1, 0)])
    assert g.without_edge((0, 1)).edges == frozenset({(1, 0)})
    with pytest.raises(ValueError):
        g.without_edge((1, 1))
