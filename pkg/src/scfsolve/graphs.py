"""Combinatorics on frustration graphs.

Claws, simplicial cliques, independent sets, even holes and their
deformation closures, token sliding, induced path trees with hoop arcs, and
line-graph roots.  Everything is brute force and aimed at graphs with a few
dozen vertices.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .frustration import FrustrationGraph

Hole = Tuple[int, ...]
Path = Tuple[int, ...]


# claws and simplicial cliques ------------------------------------------------------

def find_claw(G: FrustrationGraph) -> Optional[Tuple[int, int, int, int]]:
    """Return ``(center, a, b, c)`` for some induced claw, or ``None``."""
    for v in G.vertices:
        nb = sorted(G.neighbors(v))
        for a, b, c in itertools.combinations(nb, 3):
            if not (G.has_edge(a, b) or G.has_edge(a, c) or G.has_edge(b, c)):
                return (v, a, b, c)
    return None


def is_claw_free(G: FrustrationGraph) -> bool:
    return find_claw(G) is None


def is_simplicial_clique(G: FrustrationGraph, K: Iterable[int]) -> bool:
    K = frozenset(K)
    if not K or not G.is_clique(K):
        return False
    return all(G.is_clique(G.neighbors(v) - K) for v in K)


def _cliques(G: FrustrationGraph, within: Optional[FrozenSet[int]] = None):
    """Every nonempty clique, generated in lexicographic order of sorted tuples."""
    verts = sorted(within if within is not None else G.vertex_set)

    def grow(clique: List[int], cands: List[int]):
        for i, v in enumerate(cands):
            nxt = clique + [v]
            yield tuple(nxt)
            yield from grow(nxt, [w for w in cands[i + 1:] if G.has_edge(v, w)])

    yield from grow([], verts)


def find_simplicial_cliques(G: FrustrationGraph, limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """All simplicial cliques, singletons included, in lexicographic order.

    The list is empty exactly when ``G`` has no simplicial clique.  ``limit``
    truncates the enumeration (dense graphs have exponentially many).
    """
    out: List[FrozenSet[int]] = []
    for c in _cliques(G):
        if is_simplicial_clique(G, c):
            out.append(frozenset(c))
            if limit is not None and len(out) >= limit:
                break
    return out


def preferred_simplicial_clique(G: FrustrationGraph, within: Optional[Iterable[int]] = None) -> Optional[FrozenSet[int]]:
    """Largest simplicial clique (lexicographically first among ties)."""
    verts = frozenset(within) if within is not None else G.vertex_set
    best: Optional[Tuple[int, ...]] = None
    for c in _cliques(G, verts):
        if is_simplicial_clique(G, c):
            if best is None or len(c) > len(best):
                best = c
    return frozenset(best) if best is not None else None


# independent sets ----------------------------------------------------------------------

def independent_sets(G: FrustrationGraph, k: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Independent sets as sorted tuples, the empty set included.

    With ``k`` given only sets of that size are returned.
    """
    verts = list(G.vertices)
    out: List[Tuple[int, ...]] = []

    def rec(start: int, chosen: List[int], banned: FrozenSet[int]):
        if k is None or len(chosen) == k:
            out.append(tuple(chosen))
            if k is not None:
                return
        for i in range(start, len(verts)):
            v = verts[i]
            if v in banned:
                continue
            chosen.append(v)
            rec(i + 1, chosen, banned | G.neighbors(v))
            chosen.pop()

    rec(0, [], frozenset())
    return out


def independence_number(G: FrustrationGraph) -> int:
    best = 0
    verts = list(G.vertices)

    def rec(start: int, size: int, banned: FrozenSet[int]):
        nonlocal best
        best = max(best, size)
        if size + (len(verts) - start) <= best:
            return
        for i in range(start, len(verts)):
            v = verts[i]
            if v not in banned:
                rec(i + 1, size + 1, banned | G.neighbors(v))

    rec(0, 0, frozenset())
    return best


def token_sliding_components(G: FrustrationGraph, k: int) -> List[List[Tuple[int, ...]]]:
    """Connected components of the token sliding graph on size-``k`` independent sets.

    Two sets are adjacent when one becomes the other by moving a single token
    along an edge of ``G``.  Components are ordered by their smallest member.
    """
    sets = independent_sets(G, k)
    index = {s: i for i, s in enumerate(sets)}
    parent = list(range(len(sets)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s in sets:
        ss = frozenset(s)
        for u in s:
            rest = ss - {u}
            for v in G.neighbors(u):
                if v in ss or any(G.has_edge(v, w) for w in rest):
                    continue
                t = tuple(sorted(rest | {v}))
                a, b = find(index[s]), find(index[t])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[Tuple[int, ...]]] = {}
    for i, s in enumerate(sets):
        groups.setdefault(find(i), []).append(s)
    return sorted(groups.values(), key=lambda g: g[0])


# even holes -----------------------------------------------------------------------------

def canonical_hole(cycle: Sequence[int]) -> Hole:
    """Rotate and reflect so the smallest id is first and its smaller neighbor second."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def is_hole(G: FrustrationGraph, cycle: Sequence[int]) -> bool:
    """True if the cyclic sequence induces a chordless cycle of length at least four."""
    n = len(cycle)
    if n < 4 or len(set(cycle)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j - i == 1) or (i == 0 and j == n - 1)
            if G.has_edge(cycle[i], cycle[j]) != adjacent:
                return False
    return True


def even_holes(G: FrustrationGraph, max_len: Optional[int] = None) -> List[Hole]:
    """All even holes in canonical form, sorted."""
    out: List[Hole] = []
    for s in G.vertices:
        def extend(path: List[int], inner: Set[int]):
            last = path[-1]
            for v in sorted(G.neighbors(last)):
                if v <= s or v in inner or v == s:
                    continue
                if any(G.has_edge(v, w) for w in path[1:-1]):
                    continue
                if G.has_edge(v, s):
                    length = len(path) + 1
                    if len(path) >= 3 and length % 2 == 0 and path[1] < v:
                        if max_len is None or length <= max_len:
                            out.append(tuple(path + [v]))
                    continue
                if max_len is not None and len(path) + 1 >= max_len:
                    continue
                inner.add(v)
                path.append(v)
                extend(path, inner)
                path.pop()
                inner.discard(v)

        for p1 in sorted(G.neighbors(s)):
            if p1 > s:
                extend([s, p1], {p1})
    return sorted(out)


def hole_classes(hole: Hole) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Bipartition of an even hole; the first class holds the smallest id."""
    c = canonical_hole(hole)
    return tuple(sorted(c[0::2])), tuple(sorted(c[1::2]))


def hole_operator_order(hole: Hole) -> Tuple[int, ...]:
    """Factor order used for ``h_C``: first class ascending, then second class ascending."""
    a, b = hole_classes(hole)
    return a + b


def _deform(L: Sequence[int], j: int, G: FrustrationGraph, cyclic: bool) -> Optional[Tuple[int, ...]]:
    """Replace ``k`` by ``j`` when ``Gamma_L(j)`` is an induced ``u-k-v`` in ``L``."""
    n = len(L)
    pos = [i for i, w in enumerate(L) if G.has_edge(j, w)]
    if len(pos) != 3:
        return None
    for mid in pos:
        if cyclic:
            nb = {(mid - 1) % n, (mid + 1) % n}
        else:
            if mid == 0 or mid == n - 1:
                continue
            nb = {mid - 1, mid + 1}
        if nb == set(pos) - {mid}:
            out = list(L)
            out[mid] = j
            return tuple(out)
    return None


def single_vertex_deformations(G: FrustrationGraph, hole: Hole) -> List[Hole]:
    """Holes obtained from ``hole`` by swapping one vertex for a clone-like neighbor."""
    inside = set(hole)
    out = []
    for j in G.vertices:
        if j in inside:
            continue
        d = _deform(hole, j, G, cyclic=True)
        if d is not None:
            out.append(canonical_hole(d))
    return sorted(set(out))


def path_deformations(G: FrustrationGraph, path: Path) -> List[Path]:
    """Single-vertex deformations of an induced path; the endpoints stay fixed."""
    inside = set(path)
    out = []
    for j in G.vertices:
        if j in inside:
            continue
        d = _deform(path, j, G, cyclic=False)
        if d is not None:
            out.append(d)
    return sorted(set(out))


def deformation_closure(G: FrustrationGraph, hole: Hole) -> Tuple[Hole, ...]:
    """All holes reachable by repeated single-vertex deformations, sorted."""
    start = canonical_hole(hole)
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for d in single_vertex_deformations(G, c):
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return tuple(sorted(seen))


def deformation_closures(G: FrustrationGraph, max_len: Optional[int] = None) -> List[Tuple[Hole, ...]]:
    """Partition of the even holes into deformation closures, ordered by first hole."""
    holes = even_holes(G, max_len)
    assigned: Set[Hole] = set()
    out = []
    for h in holes:
        if h in assigned:
            continue
        cl = deformation_closure(G, h)
        if max_len is not None:
            cl = tuple(c for c in cl if len(c) <= max_len)
        assigned.update(cl)
        out.append(cl)
    return out


def closure_shares_neighborhood(G: FrustrationGraph, closure: Sequence[Hole]) -> bool:
    """Every hole in a closure has the same closed neighborhood."""
    hoods = {G.neighborhood_of_set(c) for c in closure}
    return len(hoods) == 1


def compatible(G: FrustrationGraph, a: Iterable[int], b: Iterable[int]) -> bool:
    """Vertex-disjoint with no edge between them."""
    a = frozenset(a)
    b = frozenset(b)
    if a & b:
        return False
    return not any(G.has_edge(u, v) for u in a for v in b)


def compatible_collections(G: FrustrationGraph, closures: Sequence[Sequence[Hole]]) -> List[Tuple[int, ...]]:
    """Index tuples of pairwise compatible closures, the empty tuple included.

    Compatibility of closures is tested on representatives.
    """
    reps = [c[0] for c in closures]
    m = len(reps)
    ok = [[compatible(G, reps[i], reps[j]) for j in range(m)] for i in range(m)]
    out: List[Tuple[int, ...]] = []

    def rec(start: int, chosen: List[int]):
        out.append(tuple(chosen))
        for i in range(start, m):
            if all(ok[i][j] for j in chosen):
                chosen.append(i)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def classify_vertex_relation(G: FrustrationGraph, L: Sequence[int], j: int, cyclic: bool) -> Optional[str]:
    """Name the neighboring pattern of ``j`` relative to a hole or induced path.

    Returns one of ``a.i`` ... ``a.v`` or ``b.i`` ... ``b.iv``; ``None`` means
    the pattern is not one of the allowed cases (so ``G`` has a claw nearby).
    """
    n = len(L)
    pos = sorted(i for i, w in enumerate(L) if G.has_edge(j, w))
    cnt = len(pos)

    def adj(i: int, k: int) -> bool:
        if abs(i - k) == 1:
            return True
        return cyclic and {i, k} == {0, n - 1}

    if cnt == 0:
        return "a.i"
    if cnt == 1:
        return "b.iii" if (not cyclic and pos[0] in (0, n - 1)) else None
    if cnt == 2:
        if adj(pos[0], pos[1]):
            return "a.ii"
        if not cyclic and pos == [0, n - 1]:
            return "a.v"
        return None
    if cnt == 3:
        inner = [i for i in pos if sum(adj(i, k) for k in pos if k != i) == 2]
        if len(inner) == 1:
            mid = inner[0]
            ends = [k for k in pos if k != mid]
            if all(adj(mid, k) for k in ends) and not adj(ends[0], ends[1]):
                if cyclic or (0 < mid < n - 1):
                    return "b.i"
        if not cyclic:
            for e in (0, n - 1):
                rest = [k for k in pos if k != e]
                if e in pos and len(rest) == 2 and adj(rest[0], rest[1]) and not any(adj(e, k) for k in rest):
                    return "b.iv"
        return None
    if cnt == 4:
        if cyclic and n == 4:
            return "a.iv"
        deg = [sum(adj(i, k) for k in pos if k != i) for i in pos]
        if min(deg) >= 1 and sum(deg) in (4, 6) and max(deg) <= 2:
            # two disjoint edges or a path on four vertices
            return "a.iii"
        return None
    if cnt == 5 and cyclic and n == 5:
        return "b.ii"
    return None


# induced paths and the hopping graph ------------------------------------------------------------

@dataclass
class PathTree:
    """Induced paths in ``G*`` starting at the extra vertex ``star``.

    ``G*`` is ``G`` plus ``star`` joined to every vertex of ``K``.  Node 0 is
    the trivial path ``(star,)``; ``parent[i]`` is the path with its last
    vertex removed.
    """

    star: int
    clique: FrozenSet[int]
    paths: List[Path]
    parent: List[int]
    index: Dict[Path, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.paths)


def augmented_graph(G: FrustrationGraph, K: Iterable[int]) -> Tuple[FrustrationGraph, int]:
    """``G*``: ``G`` with one extra vertex adjacent exactly to ``K``."""
    star = max(G.vertices, default=-1) + 1
    K = frozenset(K)
    adj = {v: (G.adj[v] | ({star} if v in K else frozenset())) for v in G.vertices}
    adj[star] = K
    w = np.ones(max(star + 1, len(G.weights)))
    w[: len(G.weights)] = G.weights
    return FrustrationGraph((), weights=w, _adj={k: frozenset(v) for k, v in adj.items()}), star


def induced_path_tree(G: FrustrationGraph, K: Iterable[int], max_nodes: Optional[int] = None) -> PathTree:
    """All induced paths of ``G*`` from ``star``, breadth first."""
    Gs, star = augmented_graph(G, K)
    paths: List[Path] = [(star,)]
    parent = [-1]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        p = paths[i]
        last = p[-1]
        inner = set(p[:-1])
        for v in sorted(Gs.neighbors(last)):
            if v in p or any(Gs.has_edge(v, w) for w in inner):
                continue
            paths.append(p + (v,))
            parent.append(i)
            queue.append(len(paths) - 1)
            if max_nodes is not None and len(paths) > max_nodes:
                raise ValueError("induced path tree exceeds the node budget")
    tree = PathTree(star, frozenset(K), paths, parent)
    tree.index = {p: i for i, p in enumerate(paths)}
    return tree


@dataclass(frozen=True)
class HoopArc:
    """Arc from long path ``source`` back to its handle ``target`` around an even hole."""

    source: int
    target: int
    vertex: int
    hoop: Hole
    closure: int


def hoop_arcs(G: FrustrationGraph, tree: PathTree, closure_of: Dict[Hole, int]) -> List[HoopArc]:
    """Bubble-wand arcs whose hoop is an even hole of ``G``."""
    out: List[HoopArc] = []
    for i, p in enumerate(tree.paths):
        ell = len(p) - 1
        if ell < 3:
            continue
        inside = set(p)
        for k in G.vertices:
            if k in inside:
                continue
            pos = [t for t, w in enumerate(p) if G.has_edge(k, w) or (w == tree.star and k in tree.clique)]
            if len(pos) != 3 or pos[2] != ell:
                continue
            s = pos[0]
            if pos[1] != s + 1 or s >= ell - 2:
                continue
            hoop = p[s + 1:] + (k,)
            if len(hoop) % 2:
                continue
            c = canonical_hole(hoop)
            if c not in closure_of:
                continue
            out.append(HoopArc(i, tree.index[p[: s + 1]], k, c, closure_of[c]))
    return out


# line graphs ------------------------------------------------------------------------------------

@dataclass
class LineGraphRoot:
    """Root graph ``R`` with ``L(R) = G``; ``phi[v]`` is the root edge of vertex ``v``."""

    n_vertices: int
    edges: List[Tuple[int, int]]
    phi: Dict[int, Tuple[int, int]]


def line_graph_root(G: FrustrationGraph) -> Optional[LineGraphRoot]:
    """Find a root graph by a Krausz partition search, or ``None``.

    The edges of ``G`` are split into cliques so that every vertex lies in at
    most two of them.  Choices are tried in a fixed order so the result is
    deterministic.
    """
    verts = G.vertices
    covered: Set[Tuple[int, int]] = set()
    count = {v: 0 for v in verts}
    cliques: List[FrozenSet[int]] = []
    all_edges = G.edges()

    def uncovered_nbrs(v: int) -> Set[int]:
        return {w for w in G.neighbors(v) if (min(v, w), max(v, w)) not in covered}

    def valid_clique(K: Iterable[int]) -> bool:
        K = sorted(K)
        for a, b in itertools.combinations(K, 2):
            if not G.has_edge(a, b) or (a, b) in covered:
                return False
        return all(count[v] < 2 for v in K)

    def candidates(u: int, v: int) -> List[FrozenSet[int]]:
        forced = []
        for w in (u, v):
            if count[w] == 1:
                forced.append(frozenset({w} | uncovered_nbrs(w)))
        if forced:
            if len(forced) == 2 and forced[0] != forced[1]:
                return []
            K = forced[0]
            return [K] if (u in K and v in K and valid_clique(K)) else []
        pool = sorted(
            w
            for w in uncovered_nbrs(u) & uncovered_nbrs(v)
            if count[w] < 2
        )
        opts = []
        for r in range(len(pool), -1, -1):
            for W in itertools.combinations(pool, r):
                K = frozenset((u, v) + W)
                if valid_clique(K):
                    opts.append(K)
        return opts

    def solve() -> bool:
        todo = [e for e in all_edges if e not in covered]
        if not todo:
            return True
        u, v = todo[0]
        if count[u] >= 2 or count[v] >= 2:
            return False
        for K in candidates(u, v):
            added = [(a, b) for a, b in itertools.combinations(sorted(K), 2)]
            covered.update(added)
            for w in K:
                count[w] += 1
            cliques.append(K)
            if all(count[w] < 2 or not uncovered_nbrs(w) for w in K) and solve():
                return True
            cliques.pop()
            for w in K:
                count[w] -= 1
            covered.difference_update(added)
        return False

    if not solve():
        return None
    membership: Dict[int, List[int]] = {v: [] for v in verts}
    for ci, K in enumerate(cliques):
        for w in K:
            membership[w].append(ci)
    nxt = len(cliques)
    phi: Dict[int, Tuple[int, int]] = {}
    for v in verts:
        m = membership[v]
        while len(m) < 2:
            m.append(nxt)
            nxt += 1
        phi[v] = (min(m), max(m))
    if len(set(phi.values())) != len(phi):
        return None
    edges = sorted(set(phi.values()))
    return LineGraphRoot(nxt, edges, phi)


def is_line_graph_of(G: FrustrationGraph, root: LineGraphRoot) -> bool:
    """Check that ``phi`` is an isomorphism from ``G`` onto ``L(R)``."""
    vs = list(G.vertices)
    if len(set(root.phi[v] for v in vs)) != len(vs):
        return False
    for a, b in itertools.combinations(vs, 2):
        share = bool(set(root.phi[a]) & set(root.phi[b]))
        if share != G.has_edge(a, b):
            return False
    return True
