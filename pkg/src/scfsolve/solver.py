"""Transfer operator, the Z polynomial, symmetry sectors and the free-fermion spectrum."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import ed
from .charges import cycle_symmetry, independent_set_charges
from .frustration import FrustrationGraph, build_frustration_graph
from .graphs import (
    Hole,
    compatible_collections,
    deformation_closures,
    find_claw,
    hole_operator_order,
    independence_number,
    line_graph_root,
    preferred_simplicial_clique,
)
from .pauli import Hamiltonian, PauliSum, solve_gf2

ROOT_IMAG_TOL = 1e-8
ROOT_MERGE_TOL = 1e-7
ZERO_MODE_TOL = 1e-9


class SolverError(RuntimeError):
    """Internal consistency failure (for example an odd power in Z)."""


class NotFreeFermionSectorError(SolverError):
    """A sector polynomial has a complex or non-negative root."""

    code = "not_free_fermion_sector"


class NotSCFError(ValueError):
    """The frustration graph is not simplicial claw-free."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# structure -------------------------------------------------------------------------

@dataclass
class Analysis:
    """Graph-level facts about a Hamiltonian."""

    H: Hamiltonian
    G: FrustrationGraph
    claw: Optional[Tuple[int, int, int, int]]
    components: List[FrozenSet[int]]
    simplicial: List[Optional[FrozenSet[int]]]
    closures: List[Tuple[Hole, ...]]
    alpha: int

    @property
    def claw_free(self) -> bool:
        return self.claw is None

    @property
    def is_scf(self) -> bool:
        return self.claw_free and all(k is not None for k in self.simplicial)

    def component_closures(self, comp: FrozenSet[int]) -> List[int]:
        return [i for i, cl in enumerate(self.closures) if set(cl[0]) <= comp]

    def require_scf(self) -> None:
        if self.claw is not None:
            raise NotSCFError("frustration graph contains a claw", witness={"claw": list(self.claw)})
        for comp, k in zip(self.components, self.simplicial):
            if k is None:
                raise NotSCFError(
                    "a component has no simplicial clique",
                    witness={"component": sorted(comp)},
                )


def analyze(H: Hamiltonian, max_hole_len: Optional[int] = None) -> Analysis:
    G = build_frustration_graph(H)
    return analyze_graph(H, G, max_hole_len)


def analyze_graph(H: Hamiltonian, G: FrustrationGraph, max_hole_len: Optional[int] = None) -> Analysis:
    claw = find_claw(G)
    comps = G.connected_components()
    simp = [preferred_simplicial_clique(G, c) for c in comps]
    closures = deformation_closures(G, max_hole_len) if claw is None else []
    alpha = independence_number(G)
    return Analysis(H, G, claw, comps, simp, closures, alpha)


# transfer operator and Z -----------------------------------------------------------------

def transfer_operator(H: Hamiltonian, G: FrustrationGraph, u: float) -> PauliSum:
    """``T(u) = sum_k (-u)^k Q_k``."""
    qs = independent_set_charges(H, G)
    out = PauliSum(H.n_qubits)
    for k, q in enumerate(qs):
        out = out + q.scale((-u) ** k)
    return out


def z_operator_direct(H: Hamiltonian, G: FrustrationGraph, tol: float = 1e-10) -> List[PauliSum]:
    """Coefficients of ``Z(x) = T(u) T(-u)`` in powers of ``x = -u^2``.

    Odd powers of ``u`` must cancel; a surviving one raises ``SolverError``.
    """
    qs = independent_set_charges(H, G)
    n = H.n_qubits
    top = 2 * (len(qs) - 1)
    by_power = [PauliSum(n) for _ in range(top + 1)]
    for k, qk in enumerate(qs):
        for l, ql in enumerate(qs):
            # (-u)^k u^l
            by_power[k + l] = by_power[k + l] + (qk * ql).scale((-1) ** k)
    for p in range(1, top + 1, 2):
        if by_power[p].prune().max_abs() > tol:
            raise SolverError(f"odd power u^{p} survives in T(u)T(-u)")
    # u^{2m} = (-x)^m
    return [by_power[2 * m].scale((-1) ** m).prune() for m in range(top // 2 + 1)]


def independence_polynomial(G: FrustrationGraph) -> np.ndarray:
    """Weighted independence polynomial ``sum_S x^|S| prod b_j^2`` as coefficients."""
    memo: Dict[FrozenSet[int], np.ndarray] = {}
    w2 = G.weights ** 2

    def rec(vs: FrozenSet[int]) -> np.ndarray:
        if not vs:
            return np.array([1.0])
        if vs in memo:
            return memo[vs]
        v = min(vs)
        a = rec(vs - {v})
        b = rec(vs - G.closed_neighbors(v))
        out = np.zeros(max(len(a), len(b) + 1))
        out[: len(a)] += a
        out[1 : len(b) + 1] += w2[v] * b
        memo[vs] = out
        return out

    return np.trim_zeros(rec(G.vertex_set), "b") if len(G) else np.array([1.0])


@dataclass
class ZTerm:
    """One compatible collection of closures in the combinatorial Z expansion."""

    closures: Tuple[int, ...]
    shift: int
    weight: float
    poly: np.ndarray


def z_structure(G: FrustrationGraph, closures: Sequence[Sequence[Hole]]) -> List[ZTerm]:
    """``Z(x) = sum_X x^{|dX|/2} 2^{|X|} I_{G minus N[X]}(x) prod_X J``."""
    out = []
    for coll in compatible_collections(G, closures):
        verts = set()
        shift = 0
        for i in coll:
            rep = closures[i][0]
            verts |= G.neighborhood_of_set(rep)
            shift += len(rep) // 2
        poly = independence_polynomial(G.without(verts))
        out.append(ZTerm(coll, shift, float(2 ** len(coll)), poly))
    return out


def z_sector_polynomial(
    structure: Sequence[ZTerm], eigenvalues: Sequence[float], closure_ids: Optional[Sequence[int]] = None
) -> np.ndarray:
    """Scalar ``Z_J(x)`` coefficients with cycle symmetries replaced by eigenvalues.

    ``closure_ids`` lists which closure each entry of ``eigenvalues`` belongs to.
    """
    if closure_ids is None:
        closure_ids = range(len(eigenvalues))
    val = dict(zip(closure_ids, eigenvalues))
    deg = max(t.shift + len(t.poly) for t in structure)
    out = np.zeros(deg)
    for t in structure:
        f = t.weight * float(np.prod([val[i] for i in t.closures]))
        out[t.shift : t.shift + len(t.poly)] += f * t.poly
    return out


def z_operator_combinatorial(H: Hamiltonian, G: FrustrationGraph, closures: Sequence[Sequence[Hole]]) -> List[PauliSum]:
    """The same coefficients as ``z_operator_direct``, built from cycle symmetries."""
    n = H.n_qubits
    Js = [cycle_symmetry(H, cl) for cl in closures]
    structure = z_structure(G, closures)
    deg = max(t.shift + len(t.poly) for t in structure)
    out = [PauliSum(n) for _ in range(deg)]
    for t in structure:
        prod = PauliSum.identity(n, t.weight)
        for i in t.closures:
            prod = prod * Js[i]
        for p, c in enumerate(t.poly):
            if c:
                out[t.shift + p] = out[t.shift + p] + prod.scale(c)
    return [o.prune() for o in out]


# roots and energies --------------------------------------------------------------------------

def z_roots(coeffs: Sequence[float]) -> np.ndarray:
    """Real roots of ``sum_k c_k x^k`` (companion matrix), merged when nearly equal."""
    c = np.asarray(coeffs, dtype=float)
    scale = max(1.0, float(np.max(np.abs(c))))
    nz = np.nonzero(np.abs(c) > 1e-12 * scale)[0]
    if nz.size == 0:
        raise SolverError("zero polynomial")
    c = c[: nz[-1] + 1]
    if len(c) == 1:
        return np.array([])
    r = np.roots(c[::-1])
    out = []
    r = sorted(r, key=lambda z: (z.real, z.imag))
    i = 0
    while i < len(r):
        z = r[i]
        mag = max(1.0, abs(z))
        if abs(z.imag) <= ROOT_IMAG_TOL * mag:
            out.append(z.real)
            i += 1
            continue
        # a conjugate pair that is really a double real root
        if i + 1 < len(r) and abs(r[i + 1] - z.conjugate()) <= ROOT_MERGE_TOL * mag * 10 and abs(z.imag) <= 1e-5 * mag:
            out += [z.real, z.real]
            i += 2
            continue
        raise NotFreeFermionSectorError(f"not_free_fermion_sector: non-real root {z} of the Z polynomial")
    out = np.array(sorted(out))
    # merge clusters
    for j in range(1, len(out)):
        if abs(out[j] - out[j - 1]) <= ROOT_MERGE_TOL * max(1.0, abs(out[j])):
            out[j] = out[j - 1]
    return out


def single_particle_energies(coeffs: Sequence[float], n_modes: Optional[int] = None) -> np.ndarray:
    """``eps_j = 1/sqrt(-x_j)`` for the roots ``x_j < 0`` of ``Z_J``, ascending.

    Missing degree relative to ``n_modes`` shows up as zero modes.
    """
    roots = z_roots(coeffs)
    if np.any(roots >= 0):
        raise NotFreeFermionSectorError(f"not_free_fermion_sector: non-negative root in {roots}")
    eps = np.sort(1.0 / np.sqrt(-roots))
    if n_modes is not None:
        if len(eps) > n_modes:
            raise SolverError("more roots than modes")
        eps = np.concatenate([np.zeros(n_modes - len(eps)), eps])
    return eps


def z_derivative(coeffs: Sequence[float], x: float) -> float:
    c = np.asarray(coeffs, dtype=float)
    return float(sum(k * c[k] * x ** (k - 1) for k in range(1, len(c))))


def z_value(coeffs: Sequence[float], x: float) -> float:
    c = np.asarray(coeffs, dtype=float)
    return float(sum(c[k] * x ** k for k in range(len(c))))


# sectors -----------------------------------------------------------------------------------

@dataclass
class Sector:
    eigenvalues: Tuple[float, ...]
    dim: int
    basis: Optional[np.ndarray] = None

    def projector(self) -> np.ndarray:
        if self.basis is None:
            raise ValueError("sector has no explicit basis")
        return ed.projector(self.basis)


def enumerate_sectors(
    H: Hamiltonian,
    closures: Sequence[Sequence[Hole]],
    method: str = "ed",
    tol: float = 1e-8,
    cap: int = ed.DEFAULT_QUBIT_CAP,
    keep_basis: bool = True,
) -> List[Sector]:
    """Joint eigenvalues of the cycle symmetries with their multiplicities."""
    n = H.n_qubits
    if not closures:
        basis = np.eye(1 << n, dtype=complex) if (keep_basis and method == "ed") else None
        return [Sector((), 1 << n, basis)]
    Js = [cycle_symmetry(H, cl) for cl in closures]
    if method == "ed":
        mats = [ed.to_matrix(J, n, cap) for J in Js]
        out = []
        for eigs, V in ed.joint_diagonalize(mats, tol):
            out.append(Sector(eigs, V.shape[1], V if keep_basis else None))
        return out
    if method == "algebraic":
        return _algebraic_sectors(Js, n, tol)
    raise ValueError(f"unknown sector method {method!r}")


def _algebraic_sectors(Js: Sequence[PauliSum], n: int, tol: float) -> List[Sector]:
    """Joint spectrum from the commutative algebra generated by the symmetries.

    A generic combination ``X`` of the symmetries has a minimal polynomial with
    simple roots; Lagrange idempotents in ``X`` give the sector projectors, and
    their identity coefficients give the dimensions.
    """
    rng = np.random.default_rng(12345)
    r = rng.uniform(0.5, 1.5, size=len(Js))
    X = PauliSum(n)
    for ri, J in zip(r, Js):
        X = X + J.scale(ri / max(J.norm(), 1e-300))
    powers = [PauliSum.identity(n)]
    coeffs = None
    while coeffs is None:
        nxt = (powers[-1] * X).prune()
        labels = sorted(set().union(*[p.terms for p in powers], nxt.terms))
        A = np.array([[p.coefficient(l) for p in powers] for l in labels])
        b = np.array([nxt.coefficient(l) for l in labels])
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        if np.max(np.abs(A @ sol - b), initial=0.0) <= 1e-9 * max(1.0, np.max(np.abs(b), initial=0.0)):
            coeffs = sol
        else:
            powers.append(nxt)
            if len(powers) > 4096:
                raise SolverError("symmetry algebra too large")
    # X^m = sum_k coeffs_k X^k
    poly = np.concatenate([[1.0], -coeffs[::-1].real])
    lam = np.sort(np.roots(poly).real)
    out = []
    for s, ls in enumerate(lam):
        P = PauliSum.identity(n)
        for t, lt in enumerate(lam):
            if t != s:
                P = (P * (X - lt)).scale(1.0 / (ls - lt)).prune()
        frac = P.trace_fraction().real
        dim = int(round(frac * (1 << n)))
        eigs = tuple(float(((J * P).trace_fraction() / frac).real) for J in Js)
        out.append(Sector(eigs, dim, None))
    out.sort(key=lambda s: s.eigenvalues)
    return out


# spectrum ----------------------------------------------------------------------------------

@dataclass
class SectorSolution:
    sector: Sector
    z_coeffs: np.ndarray
    energies: np.ndarray
    multiplicity: int
    divisible: bool


@dataclass
class Solution:
    analysis: Analysis
    structure: List[ZTerm]
    sectors: List[SectorSolution]
    warnings: List[str] = field(default_factory=list)

    def spectrum(self) -> np.ndarray:
        levels = []
        off = self.analysis.H.offset
        for s in self.sectors:
            levels.append(sector_levels(s.energies[s.energies > ZERO_MODE_TOL], s.multiplicity) + off)
        return np.sort(np.concatenate(levels)) if levels else np.array([])


def sector_levels(energies: Sequence[float], multiplicity: int) -> np.ndarray:
    """All ``sum_j (+/-) eps_j``, each repeated ``multiplicity`` times."""
    e = np.asarray(energies, dtype=float)
    if e.size == 0:
        base = np.array([0.0])
    else:
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=len(e))))
        base = signs @ e
    return np.repeat(np.sort(base), multiplicity)


def solve(
    H: Hamiltonian,
    sector_method: str = "ed",
    tol: float = 1e-8,
    cap: int = ed.DEFAULT_QUBIT_CAP,
    max_hole_len: Optional[int] = None,
    analysis: Optional[Analysis] = None,
    keep_basis: bool = False,
) -> Solution:
    """Full free-fermion solution sector by sector."""
    an = analysis if analysis is not None else analyze(H, max_hole_len)
    an.require_scf()
    structure = z_structure(an.G, an.closures)
    sectors = enumerate_sectors(H, an.closures, sector_method, tol, cap, keep_basis)
    sols = []
    warnings: List[str] = []
    for sec in sectors:
        coeffs = z_sector_polynomial(structure, sec.eigenvalues)
        # Z factorizes over components; separate roots avoid spurious double roots
        eps = np.sort(np.concatenate([solve_component(an, c, sec.eigenvalues)[1] for c in an.components]))
        zero = int(np.sum(eps <= ZERO_MODE_TOL))
        divisible = sec.dim % (1 << an.alpha) == 0
        active = 1 << (an.alpha - zero)
        if sec.dim % active:
            raise SolverError(
                f"multiplicity mismatch: sector {sec.eigenvalues} has dimension {sec.dim}, "
                f"not divisible by 2^{an.alpha - zero}"
            )
        mult = sec.dim // active
        if not divisible:
            warnings.append(
                f"degenerate_sector_warning: sector {sec.eigenvalues} has dimension {sec.dim}, "
                f"not divisible by 2^{an.alpha} ({zero} zero modes)"
            )
        sols.append(SectorSolution(sec, coeffs, eps, mult, divisible))
    return Solution(an, structure, sols, warnings)


def solve_component(an: Analysis, comp: FrozenSet[int], eigenvalues: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """``Z_J`` coefficients and energies of one connected component in a sector."""
    ids = an.component_closures(comp)
    sub = an.G.induced(comp)
    closures = [an.closures[i] for i in ids]
    structure = z_structure(sub, closures)
    coeffs = z_sector_polynomial(structure, [eigenvalues[i] for i in ids], range(len(ids)))
    return coeffs, single_particle_energies(coeffs, independence_number(sub))


# incognito modes ---------------------------------------------------------------------------------

def _charge_matrices(H: Hamiltonian, G: FrustrationGraph, n: int, basis: Optional[np.ndarray] = None) -> List[np.ndarray]:
    """Matrices of ``Q_0 .. Q_alpha``, restricted to ``basis`` when given."""
    out = []
    for q in independent_set_charges(H, G):
        m = ed.to_matrix(q.extend(n), n)
        if basis is not None and basis.shape[0] != basis.shape[1]:
            m = basis.conj().T @ m @ basis
        out.append(m)
    return out


def _transfer_matrix(qmats: Sequence[np.ndarray], u: float) -> np.ndarray:
    out = np.zeros_like(qmats[0])
    for k, q in enumerate(qmats):
        out += (-u) ** k * q
    return out


class DegenerateModeError(SolverError):
    """The incognito-mode normalization vanishes (repeated root)."""


@dataclass
class ModePair:
    energy: float
    plus: np.ndarray
    minus: np.ndarray


def incognito_modes(
    H: Hamiltonian,
    G: FrustrationGraph,
    K: FrozenSet[int],
    chi: PauliSum,
    basis: np.ndarray,
    z_coeffs: Sequence[float],
    energies: Sequence[float],
    qmats: Optional[List[np.ndarray]] = None,
    sub_qmats: Optional[List[np.ndarray]] = None,
) -> List[ModePair]:
    """Raising and lowering operators of one component inside one sector.

    ``psi_{+j} = N^{-1} Pi T(-u) chi T(u)`` with ``u = 1/eps_j`` and
    ``N = 4u sqrt(Z_{G minus K}(-u^2) Z'_G(-u^2))``; the lowering operator swaps ``u -> -u``.
    ``G`` is the component graph and ``H`` must act on ``chi.n`` qubits.
    Every factor commutes with the sector projector, so the modes are returned
    as matrices in the orthonormal sector ``basis``.
    """
    n = chi.n
    if qmats is None:
        qmats = _charge_matrices(H, G, n, basis)
    if sub_qmats is None:
        sub_qmats = _charge_matrices(H, G.without(K), n, basis)
    chim = ed.to_matrix(chi, n)
    if basis.shape[0] != basis.shape[1]:
        chim = basis.conj().T @ chim @ basis
    dim = basis.shape[1]
    out = []
    for eps in energies:
        if eps <= ZERO_MODE_TOL:
            continue
        u = 1.0 / eps
        x = -u * u
        tsp, tsm = _transfer_matrix(sub_qmats, u), _transfer_matrix(sub_qmats, -u)
        zsub = float(np.sum(tsp * tsm.T).real) / dim
        val = zsub * z_derivative(z_coeffs, x)
        if abs(val) <= 1e-12:
            raise DegenerateModeError(f"vanishing normalization at eps={eps}")
        N = 4.0 * u * math.sqrt(abs(val))
        tp, tm = _transfer_matrix(qmats, u), _transfer_matrix(qmats, -u)
        plus = tm @ chim @ tp / N
        minus = tp @ chim @ tm / N
        out.append(ModePair(float(eps), plus, minus))
    return out


@dataclass
class ModeChecks:
    eigen_residual: float
    ladder_residual: float


def check_modes(Hm: np.ndarray, modes: Sequence[ModePair]) -> ModeChecks:
    """Residuals of ``[H, psi_pm] = pm 2 eps psi_pm`` and ``{psi_{+j}, psi_{-k}} = delta``.

    All matrices live in one sector basis, where the projector is the identity.
    """
    eig = 0.0
    for m in modes:
        eig = max(eig, np.linalg.norm(Hm @ m.plus - m.plus @ Hm - 2 * m.energy * m.plus))
        eig = max(eig, np.linalg.norm(Hm @ m.minus - m.minus @ Hm + 2 * m.energy * m.minus))
    lad = 0.0
    eye = np.eye(Hm.shape[0])
    for j, a in enumerate(modes):
        for k, b in enumerate(modes):
            anti = a.plus @ b.minus + b.minus @ a.plus
            if j == k:
                anti = anti - eye
            lad = max(lad, np.linalg.norm(anti))
    return ModeChecks(float(eig), float(lad))


def reconstruction_term(modes: Sequence[ModePair]) -> np.ndarray:
    """``sum_j eps_j [psi_{+j}, psi_{-j}]`` in the sector basis."""
    out = np.zeros_like(modes[0].plus) if modes else np.zeros((0, 0))
    for m in modes:
        out += m.energy * (m.plus @ m.minus - m.minus @ m.plus)
    return out


def fundamental_identity_residual(
    H: Hamiltonian, G: FrustrationGraph, K: FrozenSet[int], chi: PauliSum, u: float
) -> float:
    """Largest coefficient of ``T(u)(1 + u h_K) chi T(-u) - Z(-u^2)(1 - u h_K) chi``.

    Here ``h_K`` is the sum of the terms in the simplicial clique ``K``.
    """
    n = chi.n
    Hx = H.extend(n)
    hk = PauliSum(n)
    for j in K:
        hk = hk + Hx.term(j)
    tp = transfer_operator(Hx, G, u)
    tm = transfer_operator(Hx, G, -u)
    lhs = tp * ((hk.scale(u) + 1.0) * chi) * tm
    rhs = (tp * tm) * ((hk.scale(-u) + 1.0) * chi)
    return (lhs - rhs).prune().max_abs()


# Jordan-Wigner route for line graphs ---------------------------------------------------------

@dataclass
class JordanWignerSolution:
    root_vertices: int
    root_edges: List[Tuple[int, int]]
    phi: Dict[int, Tuple[int, int]]
    signs: Dict[int, int]
    h: np.ndarray
    energies: np.ndarray


def _majorana_scalar(H: Hamiltonian, order: Sequence[int], phi, signs) -> complex:
    """Image of ``h_{i1} h_{i2} ...`` when every Majorana appears twice."""
    coeff = 1.0 + 0j
    seq: List[int] = []
    for j in order:
        p, q = phi[j]
        coeff *= 1j * signs[j] * abs(H.coeffs[j])
        seq += [p, q]
    # bubble sort with anticommutation signs, then cancel squares
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for k in range(len(seq) - 1 - i):
            if seq[k] > seq[k + 1]:
                seq[k], seq[k + 1] = seq[k + 1], seq[k]
                sign = -sign
    for i in range(0, len(seq), 2):
        if seq[i] != seq[i + 1]:
            raise SolverError("product is not a scalar")
    return coeff * sign


def jordan_wigner_path(
    H: Hamiltonian,
    G: FrustrationGraph,
    closures: Sequence[Sequence[Hole]],
    eigenvalues: Sequence[float],
) -> Optional[JordanWignerSolution]:
    """Free-fermion hopping matrix on the root graph when ``G`` is a line graph.

    Every vertex ``j`` maps to root edge ``(p, q)``, ``p < q``, and
    ``h_j -> i s_j |b_j| gamma_p gamma_q``.  The signs ``s_j`` are fixed on a
    spanning forest and chosen on the chords so that each even hole's image
    matches the requested sector eigenvalue.  Returns ``None`` for non-line graphs.
    """
    root = line_graph_root(G)
    if root is None:
        return None
    phi = root.phi
    edge_to_vertex = {e: v for v, e in phi.items()}
    # spanning forest of the root graph
    parent = list(range(root.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chords = []
    for e in root.edges:
        a, b = find(e[0]), find(e[1])
        if a == b:
            chords.append(edge_to_vertex[e])
        else:
            parent[a] = b
    chord_idx = {v: i for i, v in enumerate(chords)}
    signs = {v: 1 for v in G.vertices}
    target: Dict[Hole, float] = {}
    for cl, val in zip(closures, eigenvalues):
        for hole in cl:
            target[hole] = val
    rows = []
    rhs = []
    for hole, val in target.items():
        order = hole_operator_order(hole)
        base = _majorana_scalar(H, order, phi, signs)
        if abs(base.imag) > 1e-9 * max(1.0, abs(base)):
            raise SolverError("hole image is not real")
        want = 1 if val * base.real < 0 else 0
        row = 0
        for v in hole:
            if v in chord_idx:
                row |= 1 << chord_idx[v]
        rows.append(row)
        rhs.append(want)
    sol = solve_gf2(rows, rhs)
    if sol is None:
        raise SolverError("no sign assignment reproduces the sector")
    for v, i in chord_idx.items():
        if (sol >> i) & 1:
            signs[v] = -1
    h = np.zeros((root.n_vertices, root.n_vertices))
    for v in G.vertices:
        p, q = phi[v]
        h[p, q] = signs[v] * abs(H.coeffs[v])
        h[q, p] = -h[p, q]
    ev = np.linalg.eigvals(h)
    mags = np.sort(np.abs(ev.imag))
    energies = mags[1::2] if len(mags) % 2 == 0 else np.sort(mags[1:])[1::2]
    return JordanWignerSolution(root.n_vertices, root.edges, phi, signs, h, np.sort(energies))
