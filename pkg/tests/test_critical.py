import random

import pytest
from hypothesis import given

from critset.critical import (
    CriticalReport,
    corollary_matchings,
    critical_difference,
    critical_report,
    deletion_deltas,
    double_cover,
    is_ker,
    ker_after_deletion,
    ker_by_deletion,
    ker_by_shrinking,
    max_critical_independent_set,
    shrink_to_ker,
)
from critset.fixtures import FIXTURE_NAMES, load_graph
from critset.graph import Graph, VertexSet, delete_vertex, difference, is_independent, neighborhood
from critset.matching import validate_saturating
from critset import oracle

from conftest import bipartite_graphs, graphs, random_graph


def test_double_cover_shapes():
    B = double_cover(Graph.complete(2))
    assert B.edges() == [(0, 1), (1, 0)]
    # bipartite input: two disjoint copies, so every vertex keeps its degree
    C4 = load_graph("c4")
    B = double_cover(C4)
    assert B.num_edges == 2 * C4.m
    H = load_graph("fig3_h")
    assert sorted(len(r) for r in double_cover(H).adj) == [1, 1, 1, 1, 4]


@pytest.mark.parametrize("name, d", [("fig1", 1), ("fig3_g", 2), ("fig3_h", 3), ("c4", 0)])
def test_critical_difference_examples(name, d):
    assert critical_difference(load_graph(name)) == d


def test_max_critical_set_examples():
    G1 = load_graph("fig2_g1")
    assert G1.ids(["a", "b"]) <= max_critical_independent_set(G1)
    H = load_graph("fig3_h")
    assert max_critical_independent_set(H) == H.ids(["v1", "v2", "v3", "v4"])
    G3 = load_graph("fig2_g3")
    S = max_critical_independent_set(G3)
    assert len(S) == 3 and difference(G3, S) == 1 and is_independent(G3, S)


@given(graphs(max_n=10))
def test_max_critical_set_has_maximum_size(G):
    S = max_critical_independent_set(G)
    d_c, masks = oracle.critical_independent_masks(G)
    assert is_independent(G, S) and difference(G, S) == d_c
    assert len(S) == max(bin(m).count("1") for m in masks)


@pytest.mark.parametrize(
    "name, labels",
    [
        ("fig1", ["v1", "v2"]),
        ("k32", ["a1", "a2", "a3"]),
        ("c4", []),
        ("fig2_g2", ["x", "y", "z"]),
        ("fig2_g3", ["u", "v"]),
        ("fig3_g", ["x", "y", "u", "v", "w"]),
    ],
)
def test_ker_examples(name, labels):
    G = load_graph(name)
    assert ker_by_deletion(G) == G.ids(labels)
    assert ker_by_shrinking(G) == G.ids(labels)


@given(graphs(max_n=10))
def test_two_algorithms_and_oracle_agree(G):
    K = ker_by_shrinking(G)
    assert ker_by_deletion(G) == K == oracle.oracle_ker(G)


def test_deletion_laws_on_k32_and_c4():
    K32 = load_graph("k32")
    for v in K32.ids(["a1", "a2", "a3"]):
        assert ker_after_deletion(K32, v) == set()
    C4 = load_graph("c4")
    for v in range(4):
        P3, mapping = delete_vertex(C4, v)
        ends = VertexSet(mapping[u] for u in range(3) if P3.degree(u) == 1)
        assert ker_after_deletion(C4, v) == ends


@given(graphs(max_n=9))
def test_deletion_properties(G):
    K = ker_by_shrinking(G)
    deltas = deletion_deltas(G)
    assert all(d in (-1, 0, 1) for d in deltas)
    for v in range(G.n):
        assert (deltas[v] == -1) == (v in K)
        if v in K:
            assert ker_after_deletion(G, v) <= K.discard(v)


def test_shrink_steps_from_a_large_critical_set():
    G = load_graph("fig1")
    K, steps = shrink_to_ker(G, G.ids(["v1", "v2", "v3", "v6", "v7"]))
    assert K == G.ids(["v1", "v2"])
    assert steps
    for step in steps:
        assert len(neighborhood(G, step.tight) & step.removed) >= 1


def test_is_ker_examples():
    G = load_graph("fig1")
    ok = is_ker(G, G.ids(["v1", "v2"]))
    assert ok and set(ok.matchings) == set(G.ids(["v1", "v2"]))
    bad = is_ker(G, G.ids(["v1", "v2", "v3"]))
    assert not bad and bad.failed_at == G.vertex_id("v3")
    assert bad.violator.witness == G.ids(["v4"])
    assert is_ker(load_graph("c4"), [])
    assert not is_ker(G, G.ids(["v1", "v5"]))
    assert not is_ker(G, G.ids(["v1"]))


def test_corollary_matchings_fig1():
    G = load_graph("fig1")
    v1, v2, v5 = G.ids(["v1"]).to_list()[0], G.vertex_id("v2"), G.vertex_id("v5")
    with_e, without_e = corollary_matchings(G, (v1, v5))
    assert with_e.to_list() == [[v5, v1]]
    assert without_e.to_list() == [[v5, v2]]
    with pytest.raises(ValueError):
        corollary_matchings(G, (G.vertex_id("v6"), G.vertex_id("v9")))


def test_corollary_matchings_k32_and_star():
    G = load_graph("k32")
    for a in G.ids(["a1", "a2", "a3"]):
        for b in G.ids(["b1", "b2"]):
            with_e, without_e = corollary_matchings(G, (a, b))
            assert (b, a) in with_e and (b, a) not in without_e
            assert with_e != without_e
    H = load_graph("fig3_h")
    c = H.vertex_id("c")
    for leaf in range(4):
        with_e, without_e = corollary_matchings(H, (c, leaf))
        assert with_e.to_list() == [[c, leaf]] and len(without_e) == 1 and (c, leaf) not in without_e


@given(graphs(max_n=9))
def test_corollary_matchings_everywhere(G):
    K = ker_by_shrinking(G)
    NK = neighborhood(G, K)
    for x in K:
        for y in G.neighbors(x):
            with_e, without_e = corollary_matchings(G, (x, y), K)
            for M in (with_e, without_e):
                assert validate_saturating(G, M, NK, K) == []
            assert (y, x) in with_e and (y, x) not in without_e


@given(bipartite_graphs())
def test_bipartite_ker_equals_core(G):
    assert ker_by_shrinking(G) == oracle.oracle_core(G)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_report_round_trip(name):
    rep = critical_report(load_graph(name))
    assert CriticalReport.from_dict(rep.to_dict()) == rep


def test_moderately_large_graphs_run_polynomially():
    rng = random.Random(5)
    G = random_graph(rng, 60, 0.05)
    K = ker_by_shrinking(G)
    assert is_ker(G, K)
    assert difference(G, K) == critical_difference(G)
