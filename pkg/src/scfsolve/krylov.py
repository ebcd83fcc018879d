"""Krylov route: simplicial modes, nested commutators and the path-walk matrix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import ed
from .frustration import FrustrationGraph
from .graphs import Hole, HoopArc, PathTree, hoop_arcs, induced_path_tree
from .pauli import Hamiltonian, Label, PauliSum, label_to_string, multiply_labels, I_POWERS, solve_gf2


class NoSimplicialModeError(ValueError):
    """No Pauli string in the register anticommutes exactly with the clique."""

    code = "no_simplicial_mode_in_register"


@dataclass
class SimplicialMode:
    """A Pauli string ``chi`` anticommuting with exactly the terms in ``K``."""

    label: Label
    n_qubits: int
    ancilla: bool
    clique: FrozenSet[int]

    @property
    def operator(self) -> PauliSum:
        return PauliSum.from_label(self.n_qubits, self.label)

    def text(self) -> str:
        return label_to_string(self.label, self.n_qubits)


def _pattern_rows(H: Hamiltonian) -> List[int]:
    # unknown bitmask: z bits low, x bits high
    n = H.n_qubits
    return [x | (z << n) for x, z in H.labels]


def find_simplicial_mode(H: Hamiltonian, K: Sequence[int]) -> SimplicialMode:
    """Solve ``<chi, h_k> = [k in K]`` over GF(2).

    Among all solutions the lexicographically smallest bit vector
    ``(x_0 .. x_{n-1}, z_0 .. z_{n-1})`` is taken.  If it coincides with a
    term label, an ancilla qubit carrying X is appended.
    """
    n = H.n_qubits
    K = frozenset(K)
    rows = _pattern_rows(H)
    rhs = [1 if j in K else 0 for j in range(H.n_terms)]
    if solve_gf2(rows, rhs) is None:
        raise NoSimplicialModeError("no_simplicial_mode_in_register")
    # ordering position i is x_i for i < n and z_{i-n} otherwise
    fixed_rows: List[int] = []
    fixed_rhs: List[int] = []
    for i in range(2 * n):
        mask = 1 << (n + i) if i < n else 1 << (i - n)
        trial = solve_gf2(rows + fixed_rows + [mask], rhs + fixed_rhs + [0])
        fixed_rows.append(mask)
        fixed_rhs.append(0 if trial is not None else 1)
    sol = solve_gf2(rows + fixed_rows, rhs + fixed_rhs)
    assert sol is not None
    z = sol & ((1 << n) - 1)
    x = sol >> n
    label = (x, z)
    if label in set(H.labels):
        return SimplicialMode((x | (1 << n), z), n + 1, True, K)
    return SimplicialMode(label, n, False, K)


def is_simplicial_mode(H: Hamiltonian, K: Sequence[int], label: Label) -> bool:
    from .pauli import symplectic_product

    K = set(K)
    return all(symplectic_product(label, lab) == (1 if j in K else 0) for j, lab in enumerate(H.labels))


# nested commutators ------------------------------------------------------------------


def nested_commutators(H: PauliSum, chi: PauliSum, kmax: int) -> List[PauliSum]:
    """``[chi, ad chi, ..., ad^kmax chi]`` with ``ad X = i[H, X]``."""
    out = [chi]
    for _ in range(kmax):
        out.append(H.commutator(out[-1]).scale(1j).prune(1e-13))
    return out


# the walk matrix ------------------------------------------------------------------------


@dataclass
class WalkGraph:
    tree: PathTree
    hoops: List[HoopArc]
    component: FrozenSet[int]

    def __len__(self) -> int:
        return len(self.tree)


def walk_graph(
    G: FrustrationGraph,
    K: Sequence[int],
    closures: Sequence[Sequence[Hole]],
    max_nodes: Optional[int] = 200000,
) -> WalkGraph:
    """Induced path tree from the simplicial mode plus hoop arcs around even holes."""
    tree = induced_path_tree(G, K, max_nodes)
    closure_of: Dict[Hole, int] = {}
    for i, cl in enumerate(closures):
        for h in cl:
            closure_of[h] = i
    return WalkGraph(tree, hoop_arcs(G, tree, closure_of), frozenset(G.vertices))


def hoop_weight_sign(hoop: Hole) -> int:
    """``(-1)^(|C|/2 - 1)``: the cyclic product of an even hole equals this sign times ``h_C``."""
    return -1 if (len(hoop) // 2 - 1) % 2 else 1


def walk_matrix(
    W: WalkGraph,
    weights: Sequence[float],
    eigenvalues: Dict[int, float],
) -> np.ndarray:
    """Weighted adjacency matrix ``A`` of the directed hopping graph in one sector.

    Tree arcs carry 1 (growing) and ``b^2`` of the removed vertex (shrinking).
    A hoop arc from ``P`` to its handle carries ``2 s J / c`` where ``J`` is the
    eigenvalue of the hoop's closure, ``s`` the cyclic-order sign of the hoop
    and ``c`` the number of hoop arcs entering the same handle from that closure.
    """
    tree = W.tree
    m = len(tree)
    A = np.zeros((m, m))
    for i in range(1, m):
        p = tree.parent[i]
        A[p, i] = 1.0
        A[i, p] = float(weights[tree.paths[i][-1]]) ** 2
    counts: Dict[Tuple[int, int], int] = {}
    for arc in W.hoops:
        key = (arc.target, arc.closure)
        counts[key] = counts.get(key, 0) + 1
    for arc in W.hoops:
        c = counts[(arc.target, arc.closure)]
        A[arc.source, arc.target] += 2.0 * hoop_weight_sign(arc.hoop) * eigenvalues[arc.closure] / c
    return A


def path_operator(H: Hamiltonian, chi: SimplicialMode, path: Sequence[int]) -> Tuple[complex, Label]:
    """``h_P = chi h_{j1} ... h_{jl}`` for a path starting at the simplicial mode."""
    m = 0
    lab = chi.label
    c = 1.0
    for j in path[1:]:
        dm, lab = multiply_labels(lab, H.labels[j])
        m = (m + dm) & 3
        c *= H.coeffs[j]
    return I_POWERS[m] * c, lab


def walk_expansion(
    H: Hamiltonian, chi: SimplicialMode, W: WalkGraph, A: np.ndarray, k: int
) -> PauliSum:
    """``(-2i)^k sum_P (A^k)_{root,P} h_P``."""
    row = np.zeros(len(W))
    row[0] = 1.0
    for _ in range(k):
        row = row @ A
    out = PauliSum(chi.n_qubits)
    pref = (-2j) ** k
    for i, p in enumerate(W.tree.paths):
        if row[i] == 0.0:
            continue
        c, lab = path_operator(H, chi, p)
        out.terms[lab] = out.terms.get(lab, 0.0j) + pref * row[i] * c
    return out


def moment_matrix(A: np.ndarray, size: int) -> np.ndarray:
    """``M_{jk} = (-1)^j (-2i)^{j+k} (A^{j+k})_{root,root}``.

    The sign follows from ``{ad^j, ad^k} = -{ad^{j-1}, ad^{k+1}}``; odd
    ``j+k`` entries vanish, so ``M`` is real symmetric.
    """
    row = np.zeros(A.shape[0])
    row[0] = 1.0
    moments = []
    for p in range(2 * size - 1):
        moments.append(((-2j) ** p * row[0]).real)
        row = row @ A
    return np.array([[(-1) ** j * moments[j + k] for k in range(size)] for j in range(size)])


# per-sector Krylov analysis ------------------------------------------------------------------


@dataclass
class KrylovSector:
    rank: int
    walk_expansion_residual: float
    moment_residual: float
    min_moment_eigenvalue: float
    majorana_residual: float
    h_eff: np.ndarray
    h_energies: np.ndarray
    minimal_polynomial: np.ndarray
    bridge_polynomial: np.ndarray
    bridge_residual: float


def krylov_rank(vecs: Sequence[np.ndarray], tol: float = 1e-8) -> int:
    """Dimension of the span, found by sequential Gram-Schmidt with a relative threshold."""
    basis: List[np.ndarray] = []
    for v in vecs:
        w = v.astype(complex).ravel().copy()
        nv = np.linalg.norm(w)
        if nv == 0:
            break
        for b in basis:
            w -= np.vdot(b, w) * b
        for b in basis:
            w -= np.vdot(b, w) * b
        if np.linalg.norm(w) <= tol * nv:
            break
        basis.append(w / np.linalg.norm(w))
    return len(basis)


def bridge_polynomial(z_coeffs: Sequence[float], alpha: int) -> np.ndarray:
    """Coefficients (ascending in ``u``) of ``u^{2 alpha} Z((2/u)^2)``."""
    out = np.zeros(2 * alpha + 1)
    for k, c in enumerate(z_coeffs):
        out[2 * alpha - 2 * k] += c * 4.0 ** k
    return out


def restrict(mat: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """``V^dag X V`` for an orthonormal sector basis ``V``.

    A square ``V`` is unitary, and every quantity computed here is invariant
    under it, so ``X`` is returned unchanged.
    """
    if basis.shape[0] == basis.shape[1]:
        return mat
    return basis.conj().T @ mat @ basis


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """``tr(a b)`` without forming the product."""
    return complex(np.sum(a * b.T))


def lanczos_modes(Hr: np.ndarray, chi: np.ndarray, r: int) -> List[np.ndarray]:
    """Orthonormal Hermitian basis of ``span{ad^k chi : k < r}`` inside one sector.

    Equivalent to ``lambda^{-1/2} U^T`` applied to the powers of ``ad`` up to
    an orthogonal rotation, but built by the recursion
    ``O_{k+1} ~ ad O_k`` with full reorthogonalization, which avoids the
    cancellations of the raw powers.  With ``<A, B> = tr(A B) / d`` the basis
    satisfies ``<O_j, O_k> = delta_jk``.
    """
    dim = chi.shape[0]
    out = [chi / np.sqrt(trace_product(chi, chi).real / dim)]
    while len(out) < r:
        nxt = 1j * (Hr @ out[-1] - out[-1] @ Hr)
        for _ in range(2):
            for o in out:
                nxt = nxt - (trace_product(o, nxt) / dim) * o
        nxt = 0.5 * (nxt + nxt.conj().T)
        out.append(nxt / np.sqrt(trace_product(nxt, nxt).real / dim))
    return out


def analyze_sector(
    H: Hamiltonian,
    chi: SimplicialMode,
    W: WalkGraph,
    eigenvalues: Dict[int, float],
    basis: np.ndarray,
    Hsum: PauliSum,
    z_coeffs: Sequence[float],
    alpha: int,
    kmax: int = 6,
    tol: float = 1e-8,
    commutators: Optional[List[PauliSum]] = None,
) -> KrylovSector:
    """Check the walk expansion and build the Majorana modes for one sector.

    ``basis`` is an orthonormal basis of the sector on ``chi.n_qubits``
    qubits and ``Hsum`` the component Hamiltonian on the same register.
    Operators commuting with the sector projector are handled as
    ``V^dag X V``; the walk expansion is compared as ``V^dag X``.
    """
    n = chi.n_qubits
    A = walk_matrix(W, H.coeffs, eigenvalues)
    kk = max(kmax, 2 * alpha + 1)
    ads = commutators if commutators is not None else nested_commutators(Hsum, chi.operator, kk)
    full = basis.shape[0] == basis.shape[1]
    Vh = basis.conj().T
    dim = basis.shape[1]
    walk = 0.0
    mats = []
    for k in range(len(ads)):
        left = ed.to_matrix(ads[k], n)
        if not full:
            left = Vh @ left
        mats.append(left if full else left @ basis)
        if k <= kmax:
            right = ed.to_matrix(walk_expansion(H, chi, W, A, k), n)
            if not full:
                right = Vh @ right
            scale = max(1.0, np.linalg.norm(left))
            walk = max(walk, np.linalg.norm(left - right) / scale)
    r = krylov_rank(mats, tol)
    M = moment_matrix(A, r)
    # operator-side moments: Pi {ad^j, ad^k} = 2 M_jk Pi
    Mop = np.array([[trace_product(mats[j], mats[k]).real / dim for k in range(r)] for j in range(r)])
    m_res = float(np.max(np.abs(M - Mop)) / max(1.0, np.max(np.abs(M))))
    min_eig = float(np.linalg.eigvalsh(M)[0])
    Hr = restrict(ed.to_matrix(Hsum, n), basis)
    gammas = lanczos_modes(Hr, mats[0], r)
    eye = np.eye(dim)
    maj = 0.0
    for j in range(r):
        for k in range(j, r):
            prod = gammas[j] @ gammas[k]
            # the modes are Hermitian, so g_k g_j = (g_j g_k)^dag
            anti = prod + prod.conj().T
            if j == k:
                anti = anti - 2 * eye
            maj = max(maj, np.linalg.norm(anti) / np.sqrt(dim))
    Hg = [Hr @ g for g in gammas]
    # h_jk = -(i/2d) tr(g_j [H, g_k]) = -(i/2d) (tr(g_j H g_k) - tr(H g_j g_k))
    h = np.array(
        [
            [(-0.5j / dim) * (trace_product(gammas[j], Hg[k]) - trace_product(Hg[j], gammas[k])) for k in range(r)]
            for j in range(r)
        ]
    )
    h_energies = np.sort(np.abs(np.linalg.eigvals(h)))
    # minimal polynomial: ad^r = sum_k v_k ad^k on the sector
    B = np.stack([m.ravel() for m in mats[:r]], axis=1)
    v, *_ = np.linalg.lstsq(B, mats[r].ravel(), rcond=None)
    minimal = np.concatenate([-v.real, [1.0]])
    bridge = bridge_polynomial(z_coeffs, alpha)
    if len(minimal) == len(bridge):
        br = float(np.max(np.abs(minimal - bridge)) / max(1.0, np.max(np.abs(bridge))))
    else:
        br = float("nan")
    return KrylovSector(
        rank=r,
        walk_expansion_residual=float(walk),
        moment_residual=m_res,
        min_moment_eigenvalue=min_eig,
        majorana_residual=float(maj),
        h_eff=h.real,
        h_energies=h_energies,
        minimal_polynomial=minimal,
        bridge_polynomial=bridge,
        bridge_residual=br,
    )
