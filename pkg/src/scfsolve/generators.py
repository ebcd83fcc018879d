"""Random claw-free graphs for experiments and tests."""

from __future__ import annotations

import itertools
from typing import List, Optional

import numpy as np

from .frustration import FrustrationGraph
from .graphs import find_simplicial_cliques, is_claw_free


def random_line_graph(rng: np.random.Generator, n_root: int, p: float) -> FrustrationGraph:
    """Line graph of an Erdos-Renyi root; always claw-free."""
    redges = [e for e in itertools.combinations(range(n_root), 2) if rng.random() < p]
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(redges)), 2)
        if set(redges[i]) & set(redges[j])
    ]
    return FrustrationGraph(range(len(redges)), edges)


def random_cycle_with_clones(rng: np.random.Generator, length: int, extra: int) -> Optional[FrustrationGraph]:
    """An even cycle decorated with vertices joined to consecutive runs; ``None`` if a claw appears."""
    edges = {(i, (i + 1) % length) for i in range(length)}
    n = length
    for _ in range(extra):
        run = int(rng.integers(1, 4))
        start = int(rng.integers(0, length))
        for t in range(run):
            edges.add(((start + t) % length, n))
        if rng.random() < 0.5 and n > length:
            edges.add((n - 1, n))
        n += 1
    edges = {(min(a, b), max(a, b)) for a, b in edges if a != b}
    g = FrustrationGraph(range(n), sorted(edges))
    return g if is_claw_free(g) else None


def random_gnp_claw_free(rng: np.random.Generator, n: int, p: float, tries: int = 200) -> Optional[FrustrationGraph]:
    for _ in range(tries):
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        g = FrustrationGraph(range(n), edges)
        if is_claw_free(g):
            return g
    return None


def random_claw_free_graphs(
    count: int,
    seed: int = 0,
    max_vertices: int = 10,
    max_edges: Optional[int] = None,
    require_simplicial: bool = False,
) -> List[FrustrationGraph]:
    """A reproducible mix of claw-free graphs with at least two vertices.

    Generators rotate between line graphs, decorated even cycles and rejection
    sampled random graphs.  Vertex ids are ``0..n-1``.
    """
    rng = np.random.default_rng(seed)
    out: List[FrustrationGraph] = []
    kind = 0
    while len(out) < count:
        kind = (kind + 1) % 3
        if kind == 0:
            g = random_line_graph(rng, int(rng.integers(4, 7)), float(rng.uniform(0.3, 0.7)))
        elif kind == 1:
            g = random_cycle_with_clones(rng, int(rng.choice([4, 6])), int(rng.integers(0, 4)))
        else:
            g = random_gnp_claw_free(rng, int(rng.integers(3, max_vertices + 1)), float(rng.uniform(0.2, 0.6)))
        if g is None or not (2 <= len(g) <= max_vertices):
            continue
        if max_edges is not None and g.n_edges > max_edges:
            continue
        if require_simplicial:
            comps = g.connected_components()
            if not all(find_simplicial_cliques(g.induced(c), limit=1) for c in comps):
                continue
        out.append(g)
    return out
