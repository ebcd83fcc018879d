"""Frustration graphs: one vertex per Pauli term, edges between anticommuting terms."""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .pauli import Hamiltonian, symplectic_product


class GraphFormatError(ValueError):
    """Malformed graph file."""


class FrustrationGraph:
    """Simple undirected graph on integer vertex ids.

    Vertex ids are kept when taking induced subgraphs, so ``G.without(S)``
    still refers to the terms of the original Hamiltonian.  ``weights`` holds
    the coupling ``b_j`` of every vertex of the parent graph.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[Tuple[int, int]] = (),
        weights: Optional[Sequence[float]] = None,
        _adj: Optional[Dict[int, FrozenSet[int]]] = None,
    ):
        if _adj is not None:
            self.adj = _adj
        else:
            verts = sorted(set(int(v) for v in vertices))
            adj: Dict[int, Set[int]] = {v: set() for v in verts}
            for u, v in edges:
                if u == v:
                    raise ValueError(f"self loop at {u}")
                if u not in adj or v not in adj:
                    raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
                adj[u].add(v)
                adj[v].add(u)
            self.adj = {v: frozenset(s) for v, s in adj.items()}
        self.vertices: Tuple[int, ...] = tuple(sorted(self.adj))
        self.vertex_set: FrozenSet[int] = frozenset(self.vertices)
        if weights is None:
            top = max(self.vertices, default=-1) + 1
            weights = np.ones(top)
        self.weights = np.asarray(weights, dtype=float)

    # basic queries ------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.adj

    def __repr__(self) -> str:
        return f"FrustrationGraph(n={len(self)}, m={self.n_edges})"

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> FrozenSet[int]:
        return self.adj[v] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> List[Tuple[int, int]]:
        return sorted((u, v) for u in self.vertices for v in self.adj[u] if u < v)

    @property
    def n_edges(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def neighborhood_of_set(self, vs: Iterable[int]) -> FrozenSet[int]:
        """Closed neighborhood ``Gamma[S]`` of a vertex set."""
        out: Set[int] = set()
        for v in vs:
            out.add(v)
            out |= self.adj[v]
        return frozenset(out)

    def neighbors_in(self, v: int, within: Iterable[int]) -> FrozenSet[int]:
        """``Gamma_S(v)``: neighbors of ``v`` inside ``S``."""
        return self.adj[v] & frozenset(within)

    def weight(self, v: int) -> float:
        return float(self.weights[v])

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.has_edge(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_independent(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(not self.has_edge(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs)))

    # derived graphs ---------------------------------------------------------------
    def induced(self, keep: Iterable[int]) -> "FrustrationGraph":
        keep_set = frozenset(keep) & self.vertex_set
        adj = {v: self.adj[v] & keep_set for v in keep_set}
        return FrustrationGraph((), weights=self.weights, _adj=adj)

    def without(self, drop: Iterable[int]) -> "FrustrationGraph":
        return self.induced(self.vertex_set - frozenset(drop))

    def connected_components(self) -> List[FrozenSet[int]]:
        seen: Set[int] = set()
        comps: List[FrozenSet[int]] = []
        for s in self.vertices:
            if s in seen:
                continue
            stack = [s]
            comp = {s}
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def adjacency_matrix(self) -> np.ndarray:
        idx = {v: i for i, v in enumerate(self.vertices)}
        a = np.zeros((len(self), len(self)), dtype=int)
        for u, v in self.edges():
            a[idx[u], idx[v]] = a[idx[v], idx[u]] = 1
        return a

    def relabeled(self) -> Tuple["FrustrationGraph", Dict[int, int]]:
        """Copy on ids ``0..n-1`` plus the map old id -> new id."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        g = FrustrationGraph(
            range(len(self)),
            [(idx[u], idx[v]) for u, v in self.edges()],
            weights=[self.weights[v] for v in self.vertices],
        )
        return g, idx


def build_frustration_graph(H: Hamiltonian) -> FrustrationGraph:
    """Vertex ``j`` for term ``j``; an edge wherever two labels anticommute."""
    labs = H.labels
    m = len(labs)
    edges = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if symplectic_product(labs[i], labs[j])
    ]
    return FrustrationGraph(range(m), edges, weights=H.coeffs)


def fiducial_realization(G: FrustrationGraph, weights: Optional[Sequence[float]] = None) -> Hamiltonian:
    """A Pauli Hamiltonian whose frustration graph is exactly ``G``.

    One qubit per edge ``(u, v)`` with ``u < v``: term ``u`` carries Z and term
    ``v`` carries X on it.  Isolated vertices get a private qubit with Z.
    Vertices must be ``0..n-1``.
    """
    if G.vertices != tuple(range(len(G))):
        raise ValueError("fiducial realization needs vertices 0..n-1")
    if weights is None:
        weights = G.weights[: len(G)]
    edges = G.edges()
    qubit = 0
    xs = [0] * len(G)
    zs = [0] * len(G)
    for u, v in edges:
        zs[u] |= 1 << qubit
        xs[v] |= 1 << qubit
        qubit += 1
    for v in G.vertices:
        if G.degree(v) == 0:
            zs[v] |= 1 << qubit
            qubit += 1
    labels = list(zip(xs, zs))
    return Hamiltonian(max(qubit, 1), labels, list(weights))


def parse_graph(text: str) -> FrustrationGraph:
    """First line ``n m`` then ``m`` lines ``u v`` with 0-based ids; ``#`` comments."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError("first line must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError("non-integer entry") from exc
    if n < 0 or m != len(edges):
        raise GraphFormatError(f"expected {m} edges, found {len(edges)}")
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFormatError(f"bad edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})")
        seen.add(key)
    return FrustrationGraph(range(n), edges)


def load_graph(path: str) -> FrustrationGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def graph_to_text(G: FrustrationGraph) -> str:
    g, _ = G.relabeled()
    lines = [f"{len(g)} {g.n_edges}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
