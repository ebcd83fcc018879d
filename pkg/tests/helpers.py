"""Shared brute-force oracles and instance builders for the tests."""

import itertools

import numpy as np
from hypothesis import strategies as st

from scfsolve.frustration import FrustrationGraph, build_frustration_graph, fiducial_realization
from scfsolve.generators import random_claw_free_graphs

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_matrix(text):
    out = np.array([[1.0 + 0j]])
    for ch in text:
        out = np.kron(out, PAULI[ch])
    return out


def graph_from_edges(n, edges):
    return FrustrationGraph(range(n), edges)


def cycle(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def brute_cliques(G):
    vs = list(G.vertices)
    for r in range(1, len(vs) + 1):
        for c in itertools.combinations(vs, r):
            if G.is_clique(c):
                yield frozenset(c)


def brute_hole_sets(G):
    """Vertex sets of even induced cycles by exhaustive subset search."""
    out = set()
    vs = list(G.vertices)
    for r in range(4, len(vs) + 1, 2):
        for sub in itertools.combinations(vs, r):
            S = set(sub)
            if all(len(G.neighbors(v) & S) == 2 for v in sub):
                # connected 2-regular induced subgraph is a single cycle
                seen = {sub[0]}
                stack = [sub[0]]
                while stack:
                    v = stack.pop()
                    for w in G.neighbors(v) & S:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) == r:
                    out.add(frozenset(sub))
    return out


def random_graph(seed, n, p):
    rng = np.random.default_rng(seed)
    return graph_from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@st.composite
def claw_free_instances(draw, max_edges=10, require_simplicial=True):
    seed = draw(st.integers(0, 10_000))
    g = random_claw_free_graphs(1, seed=seed, max_edges=max_edges, require_simplicial=require_simplicial)[0]
    b = np.random.default_rng(seed + 1).uniform(0.5, 2.0, size=len(g))
    H = fiducial_realization(g, b)
    return build_frustration_graph(H), H


graph_seeds = st.integers(0, 10_000)
