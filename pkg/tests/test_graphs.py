import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scfsolve import graphs, models, solver
from scfsolve.frustration import FrustrationGraph, build_frustration_graph
from scfsolve.generators import random_claw_free_graphs

from helpers import brute_cliques, brute_hole_sets, cycle, graph_from_edges, graph_seeds, path, random_graph


def brute_claw_free(G):
    for v in G.vertices:
        for a, b, c in itertools.combinations(sorted(G.neighbors(v)), 3):
            if not (G.has_edge(a, b) or G.has_edge(a, c) or G.has_edge(b, c)):
                return False
    return True


def brute_simplicial(G):
    out = []
    for K in brute_cliques(G):
        if all(G.is_clique(G.neighbors(v) - K) for v in K):
            out.append(K)
    return set(out)


def brute_alpha(G):
    vs = list(G.vertices)
    for r in range(len(vs), 0, -1):
        for sub in itertools.combinations(vs, r):
            if G.is_independent(sub):
                return r
    return 0


def to_nx(G):
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges())
    return g


def worked_graph():
    return build_frustration_graph(models.example_1_2())


# claws and simplicial cliques ---------------------------------------------------------

def test_claw_detected():
    G = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert graphs.find_claw(G) == (0, 1, 2, 3)
    assert not graphs.is_claw_free(G)


@settings(max_examples=60)
@given(graph_seeds, st.integers(3, 8), st.floats(0.1, 0.8))
def test_claw_free_matches_brute_force(seed, n, p):
    G = random_graph(seed, n, p)
    assert graphs.is_claw_free(G) == brute_claw_free(G)
    claw = graphs.find_claw(G)
    if claw is not None:
        v, a, b, c = claw
        assert {a, b, c} <= G.neighbors(v)
        assert G.is_independent((a, b, c))


@settings(max_examples=60)
@given(graph_seeds, st.integers(2, 8), st.floats(0.1, 0.8))
def test_simplicial_cliques_match_brute_force(seed, n, p):
    G = random_graph(seed, n, p)
    assert set(graphs.find_simplicial_cliques(G)) == brute_simplicial(G)


def test_simplicial_on_small_graphs():
    assert frozenset({0}) in graphs.find_simplicial_cliques(path(3))
    assert graphs.is_simplicial_clique(path(3), [0, 1])
    assert not graphs.is_simplicial_clique(path(3), [1])
    # every edge of a 4-cycle passes the neighborhood test
    C4 = cycle(4)
    assert graphs.is_simplicial_clique(C4, [0, 1])
    assert not graphs.is_simplicial_clique(C4, [0])


def test_preferred_clique_is_largest_then_lexicographic():
    G = worked_graph()
    assert graphs.preferred_simplicial_clique(G) == frozenset({0, 1, 4, 7})


def test_worked_example_simplicial_cliques():
    G = worked_graph()
    assert set(graphs.find_simplicial_cliques(G)) == {
        frozenset({0, 1, 4, 7}),
        frozenset({1, 2}),
        frozenset({2, 3, 5, 6}),
    }


@given(graph_seeds)
def test_line_graphs_are_claw_free_and_simplicial(seed):
    rng = np.random.default_rng(seed)
    root = nx.gnp_random_graph(int(rng.integers(3, 7)), float(rng.uniform(0.3, 0.8)), seed=seed)
    L = nx.convert_node_labels_to_integers(nx.line_graph(root))
    if L.number_of_nodes() == 0:
        return
    G = FrustrationGraph(range(L.number_of_nodes()), L.edges())
    assert graphs.is_claw_free(G)
    for comp in G.connected_components():
        assert graphs.find_simplicial_cliques(G.induced(comp), limit=1)


# independence --------------------------------------------------------------------------

@settings(max_examples=60)
@given(graph_seeds, st.integers(1, 9), st.floats(0.1, 0.8))
def test_independence_number_matches_brute_force(seed, n, p):
    G = random_graph(seed, n, p)
    assert graphs.independence_number(G) == brute_alpha(G)


@given(graph_seeds, st.integers(1, 8), st.floats(0.1, 0.8))
def test_independent_sets_enumeration(seed, n, p):
    G = random_graph(seed, n, p)
    got = set(graphs.independent_sets(G))
    want = {
        sub
        for r in range(1, n + 1)
        for sub in itertools.combinations(range(n), r)
        if G.is_independent(sub)
    }
    assert got - {()} == want


def test_token_sliding_on_square():
    comps = graphs.token_sliding_components(cycle(4), 2)
    assert comps == [[(0, 2)], [(1, 3)]]


def test_token_sliding_on_path_is_connected():
    comps = graphs.token_sliding_components(path(5), 2)
    assert len(comps) == 1
    assert len(comps[0]) == 6


# even holes and closures ---------------------------------------------------------------

@settings(max_examples=60)
@given(graph_seeds, st.integers(4, 9), st.floats(0.2, 0.7))
def test_even_holes_match_brute_force(seed, n, p):
    G = random_graph(seed, n, p)
    holes = graphs.even_holes(G)
    assert len(holes) == len(set(holes))
    assert {frozenset(h) for h in holes} == brute_hole_sets(G)
    for h in holes:
        assert graphs.is_hole(G, h)
        assert h == graphs.canonical_hole(h)


@given(graph_seeds, st.integers(4, 9), st.floats(0.2, 0.7))
def test_even_holes_match_networkx(seed, n, p):
    G = random_graph(seed, n, p)
    ref = {frozenset(c) for c in nx.chordless_cycles(to_nx(G)) if len(c) >= 4 and len(c) % 2 == 0}
    assert {frozenset(h) for h in graphs.even_holes(G)} == ref


def test_max_hole_len():
    G = cycle(6)
    assert graphs.even_holes(G, max_len=4) == []
    assert graphs.even_holes(G) == [(0, 1, 2, 3, 4, 5)]


def test_canonical_hole():
    assert graphs.canonical_hole((3, 2, 1, 0)) == (0, 1, 2, 3)
    assert graphs.canonical_hole((2, 0, 3, 1)) == (0, 2, 1, 3)


def test_hole_classes_alternate():
    a, b = graphs.hole_classes((0, 1, 2, 3, 4, 5))
    assert a == (0, 2, 4)
    assert b == (1, 3, 5)


def test_worked_example_closures():
    G = worked_graph()
    holes = graphs.even_holes(G)
    cls = graphs.deformation_closures(G)
    assert len(holes) == 8
    assert sorted(len(c) for c in cls) == [2, 6]
    assert set(cls[1]) == {(3, 5, 4, 7), (4, 5, 6, 7)}
    assert all(graphs.closure_shares_neighborhood(G, c) for c in cls)
    assert graphs.compatible_collections(G, cls) == [(), (0,), (1,)]


@given(graph_seeds)
def test_closures_partition_holes_and_share_neighborhood(seed):
    G = random_claw_free_graphs(1, seed=seed)[0]
    holes = graphs.even_holes(G)
    cls = graphs.deformation_closures(G)
    flat = [h for c in cls for h in c]
    assert sorted(flat) == holes
    for c in cls:
        assert graphs.closure_shares_neighborhood(G, c)
        for h in c:
            assert graphs.deformation_closure(G, h) == tuple(sorted(c))


def test_single_vertex_deformation():
    # vertex 4 is a clone of 1 on the square 0-1-2-3
    G = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2), (4, 1)])
    assert graphs.single_vertex_deformations(G, (0, 1, 2, 3)) == [(0, 3, 2, 4)]


def test_compatibility():
    G = graph_from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert graphs.compatible(G, [0], [3, 4])
    assert not graphs.compatible(G, [0], [1])
    assert not graphs.compatible(G, [0, 3], [3])


# vertex relations and induced paths -----------------------------------------------------------

@given(graph_seeds)
def test_vertex_relations_classified_on_claw_free_graphs(seed):
    G = random_claw_free_graphs(1, seed=seed)[0]
    for h in graphs.even_holes(G):
        for j in set(G.vertices) - set(h):
            assert graphs.classify_vertex_relation(G, h, j, cyclic=True) is not None
    K = graphs.preferred_simplicial_clique(G) or frozenset({min(G.vertices)})
    tree = graphs.induced_path_tree(G, K, max_nodes=5000)
    for p in tree.paths[1:]:
        L = p[1:]
        for j in set(G.vertices) - set(L):
            assert graphs.classify_vertex_relation(G, L, j, cyclic=False) is not None


def test_relation_names():
    G = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2)])
    assert graphs.classify_vertex_relation(G, (0, 1, 2, 3), 4, cyclic=True) == "b.i"
    G = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert graphs.classify_vertex_relation(G, (0, 1, 2), 3, cyclic=False) == "a.v"
    G = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert graphs.classify_vertex_relation(G, (0, 1, 2), 3, cyclic=False) == "b.iii"


def test_relation_none_signals_claw():
    G = graph_from_edges(5, [(0, 1), (1, 2), (1, 3)])
    assert graphs.classify_vertex_relation(G, (0, 1, 2), 3, cyclic=False) is None


def test_path_tree_on_path_graph():
    tree = graphs.induced_path_tree(path(4), [0])
    star = tree.star
    assert tree.paths == [(star,), (star, 0), (star, 0, 1), (star, 0, 1, 2), (star, 0, 1, 2, 3)]
    assert tree.parent == [-1, 0, 1, 2, 3]


def test_path_tree_paths_are_induced():
    G = worked_graph()
    tree = graphs.induced_path_tree(G, [0, 1, 4, 7])
    Gs, star = graphs.augmented_graph(G, [0, 1, 4, 7])
    assert len(set(tree.paths)) == len(tree.paths)
    for p, par in zip(tree.paths[1:], tree.parent[1:]):
        assert tree.paths[par] == p[:-1]
        for i, j in itertools.combinations(range(len(p)), 2):
            assert Gs.has_edge(p[i], p[j]) == (j - i == 1)


def test_path_tree_budget():
    with pytest.raises(ValueError):
        graphs.induced_path_tree(worked_graph(), [0, 1, 4, 7], max_nodes=3)


def test_hoop_arcs_exist_only_with_holes():
    G = path(4)
    tree = graphs.induced_path_tree(G, [0])
    assert graphs.hoop_arcs(G, tree, {}) == []
    G = worked_graph()
    an = solver.analyze(models.example_1_2())
    closure_of = {h: i for i, cl in enumerate(an.closures) for h in cl}
    tree = graphs.induced_path_tree(G, [0, 1, 4, 7])
    arcs = graphs.hoop_arcs(G, tree, closure_of)
    assert arcs
    for a in arcs:
        assert a.hoop in closure_of
        src, tgt = tree.paths[a.source], tree.paths[a.target]
        assert src[: len(tgt)] == tgt
        assert graphs.canonical_hole(src[len(tgt):] + (a.vertex,)) == a.hoop


# line graphs ----------------------------------------------------------------------------

@settings(max_examples=60)
@given(graph_seeds)
def test_line_graph_root_recovers_a_root(seed):
    rng = np.random.default_rng(seed)
    root = nx.gnp_random_graph(int(rng.integers(3, 8)), float(rng.uniform(0.2, 0.8)), seed=seed)
    L = nx.convert_node_labels_to_integers(nx.line_graph(root))
    G = FrustrationGraph(range(L.number_of_nodes()), L.edges())
    r = graphs.line_graph_root(G)
    assert r is not None
    assert graphs.is_line_graph_of(G, r)
    R = nx.Graph(r.edges)
    assert nx.is_isomorphic(nx.line_graph(R), L)


def test_non_line_graphs():
    assert graphs.line_graph_root(graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])) is None
    # the 5-wheel is claw-free but not a line graph
    W = graph_from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] + [(5, i) for i in range(5)])
    assert graphs.is_claw_free(W)
    assert graphs.line_graph_root(W) is None


def test_cycle_is_its_own_line_graph():
    r = graphs.line_graph_root(cycle(4))
    assert r is not None and graphs.is_line_graph_of(cycle(4), r)
