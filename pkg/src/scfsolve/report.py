"""Analysis, solution and verification reports built on the library routines."""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import ed, krylov, solver
from .charges import sliding_charges, verify_conserved_charges
from .frustration import FrustrationGraph
from .graphs import (
    find_simplicial_cliques,
    independent_sets,
    line_graph_root,
    token_sliding_components,
)
from .pauli import Hamiltonian, PauliSum

SCHEMA = 1


def fmt(x: float) -> float:
    """Round to 12 significant digits for stable serialization."""
    x = float(x)
    if x == 0.0 or not math.isfinite(x):
        return 0.0 if x == 0.0 else x
    return float(f"{x:.12g}")


def fmt_list(xs: Sequence[float]) -> List[float]:
    return [fmt(x) for x in xs]


def _clique(K) -> List[int]:
    return sorted(int(v) for v in K)


# analyze ---------------------------------------------------------------------------------------

def analyze_report(H: Hamiltonian, max_hole_len: Optional[int] = None) -> Dict[str, Any]:
    an = solver.analyze(H, max_hole_len)
    G = an.G
    rep: Dict[str, Any] = {
        "schema": SCHEMA,
        "command": "analyze",
        "n_qubits": H.n_qubits,
        "n_terms": H.n_terms,
        "frustration_graph": {"vertices": list(G.vertices), "edges": [list(e) for e in G.edges()]},
        "claw_free": an.claw_free,
        "components": [sorted(c) for c in an.components],
        "simplicial_cliques": [_clique(K) for K in find_simplicial_cliques(G)],
        "chosen_simplicial_cliques": [None if K is None else _clique(K) for K in an.simplicial],
        "scf": an.is_scf,
        "alpha": an.alpha,
    }
    if an.claw is not None:
        rep["witness"] = {"claw": list(an.claw)}
    elif not an.is_scf:
        bad = [sorted(c) for c, K in zip(an.components, an.simplicial) if K is None]
        rep["witness"] = {"components_without_simplicial_clique": bad}
    if an.claw_free:
        rep["even_holes"] = sum(len(cl) for cl in an.closures)
        rep["closures"] = [
            {"size": len(cl), "representative": list(cl[0]), "neighborhood": sorted(G.neighborhood_of_set(cl[0]))}
            for cl in an.closures
        ]
        rep["token_sliding_components"] = {
            str(k): len(token_sliding_components(G, k)) for k in range(2, an.alpha + 1)
        }
    else:
        rep["even_holes"] = None
        rep["closures"] = None
        rep["token_sliding_components"] = None
    root = line_graph_root(G)
    rep["line_graph"] = root is not None
    if root is not None:
        rep["line_graph_root"] = {"n_vertices": root.n_vertices, "edges": [list(e) for e in root.edges]}
    return rep


# solve -----------------------------------------------------------------------------------------

def _sector_entry(s: solver.SectorSolution) -> Dict[str, Any]:
    return {
        "eigenvalues": fmt_list(s.sector.eigenvalues),
        "dimension": s.sector.dim,
        "z_coeffs": fmt_list(s.z_coeffs),
        "roots_x": fmt_list(sorted(-1.0 / e ** 2 for e in s.energies if e > solver.ZERO_MODE_TOL)),
        "energies": fmt_list(s.energies),
        "multiplicity": s.multiplicity,
        "degenerate_sector_warning": not s.divisible,
    }


def _spectrum_entry(levels: np.ndarray) -> List[List[float]]:
    """Spectrum as ``[value, multiplicity]`` pairs, clustering at 1e-9."""
    out: List[List[float]] = []
    for v in np.sort(levels):
        if out and abs(v - out[-1][0]) <= 1e-9 * max(1.0, abs(v)):
            out[-1][1] += 1
        else:
            out.append([float(v), 1])
    return [[fmt(v), int(m)] for v, m in out]


def solve_report(
    H: Hamiltonian,
    sector_method: str = "ed",
    tol: float = 1e-8,
    cap: int = ed.DEFAULT_QUBIT_CAP,
    max_hole_len: Optional[int] = None,
) -> Dict[str, Any]:
    sol = solver.solve(H, sector_method=sector_method, tol=tol, cap=cap, max_hole_len=max_hole_len)
    return {
        "schema": SCHEMA,
        "command": "solve",
        "n_qubits": H.n_qubits,
        "alpha": sol.analysis.alpha,
        "sector_method": sector_method,
        "sectors": [_sector_entry(s) for s in sol.sectors],
        "spectrum": _spectrum_entry(sol.spectrum()),
        "warnings": list(sol.warnings),
    }


# verify ----------------------------------------------------------------------------------------

def _extend_projector(P: np.ndarray, n_from: int, n_to: int) -> np.ndarray:
    if n_to == n_from:
        return P
    return np.kron(P, np.eye(1 << (n_to - n_from)))


def _component_hamiltonian(H: Hamiltonian, comp) -> Hamiltonian:
    """Terms of one component, keeping the original term ids as positions."""
    coeffs = [H.coeffs[j] if j in comp else 0.0 for j in range(H.n_terms)]
    return Hamiltonian(H.n_qubits, list(H.labels), coeffs, 0.0, list(H.names))


def _component_sum(H: Hamiltonian, comp, n: int) -> PauliSum:
    out = PauliSum(n)
    Hx = H.extend(n)
    for j in sorted(comp):
        out = out + Hx.term(j)
    return out


def z_cross_residual(H: Hamiltonian, an: solver.Analysis) -> float:
    """Largest coefficient difference between the direct and combinatorial Z operators."""
    direct = solver.z_operator_direct(H, an.G)
    comb = solver.z_operator_combinatorial(H, an.G, an.closures)
    size = max(len(direct), len(comb))
    res = 0.0
    for p in range(size):
        a = direct[p] if p < len(direct) else PauliSum(H.n_qubits)
        b = comb[p] if p < len(comb) else PauliSum(H.n_qubits)
        res = max(res, (a - b).max_abs())
    return res


def verify_report(
    H: Hamiltonian,
    tol: float = 1e-8,
    cap: int = ed.DEFAULT_QUBIT_CAP,
    sector_method: str = "ed",
    max_hole_len: Optional[int] = None,
    kmax: int = 6,
) -> Dict[str, Any]:
    """Run every check and collect residuals; ``ok`` is false if any exceeds ``tol``."""
    ed.check_cap(H.n_qubits, cap)
    an = solver.analyze(H, max_hole_len)
    an.require_scf()
    G = an.G
    checks = verify_conserved_charges(H, G, tol=min(tol, 1e-10), closures=an.closures)
    sol = solver.solve(H, sector_method="ed", tol=tol, cap=cap, analysis=an, keep_basis=True)
    analytic = sol.spectrum()
    exact = ed.ed_spectrum(H, cap)
    ed_dev = ed.compare_spectra(analytic, exact)
    rep: Dict[str, Any] = {
        "schema": SCHEMA,
        "command": "verify",
        "n_qubits": H.n_qubits,
        "tol": tol,
        "symmetry_checks": {
            "n_charges": len(checks.names),
            "max_commutator_residual": fmt(checks.max_residual),
        },
        "ed_deviation": fmt(ed_dev),
        "z_cross_residual": fmt(z_cross_residual(H, an)),
    }
    if sector_method == "algebraic":
        alg = solver.enumerate_sectors(H, an.closures, "algebraic", tol, cap, keep_basis=False)
        got = sorted((s.eigenvalues, s.dim) for s in alg)
        want = sorted((s.sector.eigenvalues, s.sector.dim) for s in sol.sectors)
        dev = 0.0 if len(got) == len(want) else float("inf")
        for (ea, da), (eb, db) in zip(got, want):
            if da != db:
                dev = float("inf")
            else:
                dev = max([dev] + [abs(a - b) for a, b in zip(ea, eb)])
        rep["sector_method_deviation"] = fmt(dev)

    worst = {"eigen": 0.0, "ladder": 0.0, "reconstruction": 0.0, "walk": 0.0, "majorana": 0.0,
             "moment": 0.0, "h_eff": 0.0, "bridge": 0.0, "identity": 0.0}
    min_m = float("inf")
    sectors_out = []
    notes: List[str] = []
    skipped = False
    for comp, K in zip(an.components, an.simplicial):
        ids = an.component_closures(comp)
        closures = [an.closures[i] for i in ids]
        sub = G.induced(comp)
        alpha_c = solver.independence_number(sub)
        Hc = _component_hamiltonian(H, comp)
        try:
            chi = krylov.find_simplicial_mode(Hc, K)
        except krylov.NoSimplicialModeError:
            notes.append(f"component {sorted(comp)}: no_simplicial_mode_in_register")
            skipped = True
            continue
        n = chi.n_qubits
        if n > cap:
            notes.append(f"component {sorted(comp)}: ancilla exceeds qubit cap")
            skipped = True
            continue
        Hsum = _component_sum(H, comp, n)
        Hcx = Hc.extend(n)
        qfull = solver._charge_matrices(Hcx, sub, n)
        subfull = solver._charge_matrices(Hcx, sub.without(K), n)
        W = krylov.walk_graph(sub, K, closures)
        ads = krylov.nested_commutators(Hsum, chi.operator, max(kmax, 2 * alpha_c + 1))
        Hm = ed.to_matrix(Hsum, n)
        worst["identity"] = max(
            worst["identity"], solver.fundamental_identity_residual(Hcx, sub, K, chi.operator, 0.37)
        )
        for s in sol.sectors:
            V = s.sector.basis
            if n > H.n_qubits:
                V = np.kron(V, np.eye(1 << (n - H.n_qubits)))
            eigs = [s.sector.eigenvalues[i] for i in ids]
            zc, eps = solver.solve_component(an, comp, s.sector.eigenvalues)
            entry: Dict[str, Any] = {"component": sorted(comp), "eigenvalues": fmt_list(s.sector.eigenvalues)}
            positive = eps[eps > solver.ZERO_MODE_TOL]
            if len(np.unique(np.round(positive, 7))) == len(positive):
                qm = [krylov.restrict(q, V) for q in qfull]
                sq = [krylov.restrict(q, V) for q in subfull]
                modes = solver.incognito_modes(Hcx, sub, K, chi.operator, V, zc, eps, qm, sq)
                Hr = krylov.restrict(Hm, V)
                mc = solver.check_modes(Hr, modes)
                worst["eigen"] = max(worst["eigen"], mc.eigen_residual)
                worst["ladder"] = max(worst["ladder"], mc.ladder_residual)
                rec = float(np.linalg.norm(Hr - solver.reconstruction_term(modes))) if modes else float(np.linalg.norm(Hr))
                worst["reconstruction"] = max(worst["reconstruction"], rec)
            else:
                notes.append(f"sector {fmt_list(s.sector.eigenvalues)}: repeated single-particle energies, modes skipped")
            ks = krylov.analyze_sector(
                Hc, chi, W, dict(enumerate(eigs)), V, Hsum, zc, alpha_c, kmax=kmax, tol=tol, commutators=ads
            )
            worst["walk"] = max(worst["walk"], ks.walk_expansion_residual)
            worst["majorana"] = max(worst["majorana"], ks.majorana_residual)
            worst["moment"] = max(worst["moment"], ks.moment_residual)
            min_m = min(min_m, ks.min_moment_eigenvalue)
            want = np.sort(np.repeat(positive, 2))
            got = ks.h_energies[ks.h_energies > 1e-9 * max(1.0, float(np.max(ks.h_energies, initial=0.0)))]
            heff = float(np.max(np.abs(np.sort(got) - want), initial=0.0)) if len(got) == len(want) else float("inf")
            worst["h_eff"] = max(worst["h_eff"], heff)
            if not math.isnan(ks.bridge_residual):
                worst["bridge"] = max(worst["bridge"], ks.bridge_residual)
            entry["krylov_rank"] = ks.rank
            entry["minimal_polynomial"] = fmt_list(ks.minimal_polynomial)
            entry["walk_expansion_residual"] = fmt(ks.walk_expansion_residual)
            entry["majorana_anticommutator_residual"] = fmt(ks.majorana_residual)
            entry["min_moment_eigenvalue"] = fmt(ks.min_moment_eigenvalue)
            sectors_out.append(entry)
    rep["incognito"] = {
        "eigen_residual": fmt(worst["eigen"]),
        "ladder_residual": fmt(worst["ladder"]),
        "reconstruction_residual": fmt(worst["reconstruction"]),
        "fundamental_identity_residual": fmt(worst["identity"]),
    }
    rep["krylov"] = sectors_out
    rep["walk_expansion_residual"] = fmt(worst["walk"])
    rep["majorana_anticommutator_residual"] = fmt(worst["majorana"])
    rep["moment_residual"] = fmt(worst["moment"])
    rep["min_moment_eigenvalue"] = fmt(min_m) if math.isfinite(min_m) else None
    rep["h_eff_deviation"] = fmt(worst["h_eff"])
    rep["bridge_residual"] = fmt(worst["bridge"])
    jw = jordan_wigner_deviation(H, an, sol)
    rep["jordan_wigner_deviation"] = None if jw is None else fmt(jw)
    rep["notes"] = notes
    residuals = [
        checks.max_residual, ed_dev, rep["z_cross_residual"], worst["eigen"], worst["ladder"],
        worst["reconstruction"], worst["identity"], worst["walk"], worst["majorana"], worst["moment"],
        worst["h_eff"], worst["bridge"], rep.get("sector_method_deviation", 0.0), jw or 0.0,
    ]
    ok = not skipped and all(r <= tol for r in residuals) and (min_m > tol if math.isfinite(min_m) else True)
    rep["ok"] = bool(ok)
    return rep


def jordan_wigner_deviation(H: Hamiltonian, an: solver.Analysis, sol: solver.Solution) -> Optional[float]:
    """Largest energy deviation between the hopping-matrix and transfer-operator routes."""
    if line_graph_root(an.G) is None:
        return None
    dev = 0.0
    for s in sol.sectors:
        jw = solver.jordan_wigner_path(H, an.G, an.closures, s.sector.eigenvalues)
        a = np.sort(jw.energies)
        b = np.sort(s.energies)
        if len(a) != len(b):
            # a root graph with more vertices may contribute extra zero modes
            k = min(len(a), len(b))
            if np.any(a[: len(a) - k] > solver.ZERO_MODE_TOL) or np.any(b[: len(b) - k] > solver.ZERO_MODE_TOL):
                return float("inf")
            a, b = a[len(a) - k:], b[len(b) - k:]
        dev = max(dev, float(np.max(np.abs(a - b), initial=0.0)))
    return dev
