import numpy as np
import pytest
from hypothesis import given, settings

from scfsolve import ed, graphs, models, solver
from scfsolve.frustration import build_frustration_graph, fiducial_realization
from scfsolve.pauli import Hamiltonian, PauliSum

from helpers import claw_free_instances, cycle, graph_from_edges, path


def brute_independence_polynomial(G):
    out = np.zeros(len(G) + 1)
    for s in graphs.independent_sets(G):
        out[len(s)] += float(np.prod([G.weights[v] ** 2 for v in s]))
    return np.trim_zeros(out, "b")


# transfer operator and Z ----------------------------------------------------------------

def test_transfer_operator_single_term():
    H = Hamiltonian.from_terms([(2.0, "X")])
    T = solver.transfer_operator(H, build_frustration_graph(H), 0.3)
    want = PauliSum.identity(1) - PauliSum.from_string("X", 0.6)
    assert (T - want).max_abs() < 1e-15


def test_z_single_term():
    H = Hamiltonian.from_terms([(1.5, "Z")])
    z = solver.z_operator_direct(H, build_frustration_graph(H))
    assert [p.coefficient((0, 0)) for p in z] == pytest.approx([1.0, 2.25])
    assert solver.single_particle_energies([1.0, 2.25]) == pytest.approx([1.5])


@given(claw_free_instances())
def test_independence_polynomial_matches_enumeration(inst):
    G, _ = inst
    assert np.allclose(solver.independence_polynomial(G), brute_independence_polynomial(G))


@settings(max_examples=25)
@given(claw_free_instances(max_edges=8))
def test_z_direct_equals_combinatorial(inst):
    G, H = inst
    cls = graphs.deformation_closures(G)
    direct = solver.z_operator_direct(H, G)
    comb = solver.z_operator_combinatorial(H, G, cls)
    assert len(direct) == len(comb)
    for a, b in zip(direct, comb):
        assert (a - b).max_abs() < 1e-10


def test_z_without_holes_is_independence_polynomial():
    H = fiducial_realization(path(5), [0.5, 1.0, 1.5, 2.0, 0.7])
    G = build_frustration_graph(H)
    z = solver.z_operator_direct(H, G)
    for p, c in zip(z, solver.independence_polynomial(G)):
        assert p.prune().max_abs() == pytest.approx(c)
        assert len(p.prune()) == 1


def test_odd_powers_cancel_check_rejects_claws():
    G = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
    H = fiducial_realization(G)
    with pytest.raises(solver.NotSCFError):
        solver.solve(H)


# roots ------------------------------------------------------------------------------------------

def test_roots_real_and_negative_on_random_sectors():
    for g in [cycle(4), cycle(6), path(6)]:
        H = fiducial_realization(g, np.linspace(0.6, 1.7, len(g)))
        sol = solver.solve(H)
        for s in sol.sectors:
            roots = solver.z_roots(s.z_coeffs)
            assert np.all(roots < 0)


def test_complex_roots_raise():
    with pytest.raises(solver.NotFreeFermionSectorError):
        solver.single_particle_energies([1.0, 0.0, 1.0, 0.0, 1.0])
    with pytest.raises(solver.NotFreeFermionSectorError):
        solver.single_particle_energies([1.0, -1.0])


def test_double_root_merged():
    # (1 + x)^2
    assert solver.z_roots([1.0, 2.0, 1.0]) == pytest.approx([-1.0, -1.0])


def test_zero_modes_padded():
    assert solver.single_particle_energies([1.0, 4.0], n_modes=3) == pytest.approx([0.0, 0.0, 2.0])


# sectors ---------------------------------------------------------------------------------------

@pytest.mark.parametrize("model", [models.example_1_2(), fiducial_realization(cycle(6))])
def test_sector_methods_agree(model):
    an = solver.analyze(model)
    a = solver.enumerate_sectors(model, an.closures, "ed")
    b = solver.enumerate_sectors(model, an.closures, "algebraic")
    assert len(a) == len(b)
    for sa, sb in zip(a, b):
        assert np.allclose(sa.eigenvalues, sb.eigenvalues, atol=1e-9)
        assert sa.dim == sb.dim
    assert sum(s.dim for s in a) == 1 << model.n_qubits


def test_unknown_sector_method():
    H = models.example_1_2()
    with pytest.raises(ValueError):
        solver.enumerate_sectors(H, solver.analyze(H).closures, "magic")


# spectrum -------------------------------------------------------------------------------------

@settings(max_examples=25)
@given(claw_free_instances(max_edges=9))
def test_spectrum_matches_ed(inst):
    G, H = inst
    if H.n_qubits > 10:
        return
    sol = solver.solve(H)
    assert ed.compare_spectra(sol.spectrum(), ed.ed_spectrum(H)) < 1e-8


def test_worked_example_sector_polynomials():
    H = models.example_1_2()
    sol = solver.solve(H)
    assert len(sol.sectors) > 1
    for s in sol.sectors:
        j1, j2 = s.sector.eigenvalues
        assert s.z_coeffs == pytest.approx([1.0, 8.0, 9.0 + 2.0 * (j1 + j2)])
        c = 9.0 + 2.0 * (j1 + j2)
        want = np.sqrt([4.0 - np.sqrt(16.0 - c), 4.0 + np.sqrt(16.0 - c)])
        assert s.energies == pytest.approx(want)
    assert ed.compare_spectra(sol.spectrum(), ed.ed_spectrum(H)) < 1e-10


def test_worked_example_couplings():
    b = [0.7, 1.1, 0.9, 1.3, 0.6, 1.4, 1.0, 0.8]
    H = models.example_1_2(b)
    assert ed.compare_spectra(solver.solve(H).spectrum(), ed.ed_spectrum(H)) < 1e-9


def test_free_spectrum_of_single_term():
    H = Hamiltonian.from_terms([(0.8, "IZ")])
    assert solver.solve(H).spectrum() == pytest.approx([-0.8, -0.8, 0.8, 0.8])


def test_sector_dimensions_sum_to_hilbert_space():
    H = models.square_octagon_arm(seed=3)
    sol = solver.solve(H)
    assert sum(s.sector.dim for s in sol.sectors) == 1 << H.n_qubits
    assert len(sol.spectrum()) == 1 << H.n_qubits


def test_offset_shifts_spectrum():
    H = Hamiltonian.from_terms([(0.5, "II"), (1.0, "XI"), (1.0, "ZI")])
    assert ed.compare_spectra(solver.solve(H).spectrum(), ed.ed_spectrum(H)) < 1e-12


def test_sector_levels():
    assert solver.sector_levels([1.0, 2.0], 2) == pytest.approx([-3, -3, -1, -1, 1, 1, 3, 3])
    assert solver.sector_levels([], 4) == pytest.approx([0, 0, 0, 0])


def test_disconnected_components_solved_independently():
    H = fiducial_realization(graph_from_edges(5, [(0, 1), (2, 3), (3, 4)]), [1.0, 2.0, 1.0, 1.0, 1.0])
    sol = solver.solve(H)
    assert ed.compare_spectra(sol.spectrum(), ed.ed_spectrum(H)) < 1e-12


def test_component_without_simplicial_clique_is_not_scf():
    # the complement of the 7-cycle is claw-free with no simplicial clique
    edges = [(i, j) for i in range(7) for j in range(i + 1, 7) if (j - i) % 7 not in (1, 6)]
    an = solver.analyze(fiducial_realization(graph_from_edges(7, edges)))
    assert an.claw_free
    assert not an.is_scf
    with pytest.raises(solver.NotSCFError) as info:
        an.require_scf()
    assert info.value.witness == {"component": list(range(7))}


# Jordan-Wigner ---------------------------------------------------------------------------------

@pytest.mark.parametrize("n,delta", [(4, 0.0), (6, 0.0), (6, 0.3), (5, 0.5)])
def test_xy_chain_jordan_wigner(n, delta):
    H = models.xy_chain(n, delta)
    sol = solver.solve(H)
    an = sol.analysis
    for s in sol.sectors:
        jw = solver.jordan_wigner_path(H, an.G, an.closures, s.sector.eigenvalues)
        assert jw is not None
        nz = s.energies[s.energies > 1e-9]
        got = jw.energies[jw.energies > 1e-9]
        assert np.allclose(np.sort(got), np.sort(nz), atol=1e-9)


def test_jordan_wigner_none_for_non_line_graph():
    W = graph_from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] + [(5, i) for i in range(5)])
    H = fiducial_realization(W)
    assert solver.jordan_wigner_path(H, build_frustration_graph(H), [], []) is None


# incognito modes --------------------------------------------------------------------------------

def test_fundamental_identity_on_worked_example():
    from scfsolve.krylov import find_simplicial_mode

    H = models.example_1_2()
    an = solver.analyze(H)
    K = an.simplicial[0]
    mode = find_simplicial_mode(H, sorted(K))
    for u in (0.1, 0.37, 0.9):
        assert solver.fundamental_identity_residual(H, an.G, K, mode.operator, u) < 1e-10
