import numpy as np
import pytest
from hypothesis import given

from scfsolve import charges, graphs, models, solver
from scfsolve.ed import to_matrix
from scfsolve.frustration import build_frustration_graph, fiducial_realization
from scfsolve.pauli import PauliSum

from helpers import claw_free_instances, cycle, graph_from_edges, graph_seeds, random_graph


def q_list(H, G):
    return charges.independent_set_charges(H, G)


def q(H, G, k):
    qs = q_list(H, G) if len(G) else [PauliSum.identity(H.n_qubits)]
    return qs[k] if k < len(qs) else PauliSum(H.n_qubits)


@given(graph_seeds)
def test_clique_recursion(seed):
    # independent sets meet a clique at most once
    G = random_graph(seed, 7, 0.4)
    H = fiducial_realization(G, np.random.default_rng(seed).uniform(0.5, 2.0, size=7))
    K = max(graphs.find_simplicial_cliques(G) or [frozenset({0})], key=len)
    alpha = graphs.independence_number(G)
    for k in range(1, alpha + 1):
        rhs = q(H, G.without(K), k)
        for j in sorted(K):
            rest = G.without(G.closed_neighbors(j))
            rhs = rhs + H.term(j) * q(H, rest, k - 1)
        assert (q(H, G, k) - rhs).max_abs() < 1e-12


def test_q0_and_q1():
    H = models.xy_chain(4)
    G = build_frustration_graph(H)
    qs = q_list(H, G)
    assert (qs[0] - PauliSum.identity(H.n_qubits)).max_abs() == 0
    assert (qs[1] - H.to_pauli_sum(include_offset=False)).max_abs() < 1e-15


@given(claw_free_instances())
def test_charges_commute_on_claw_free_graphs(inst):
    G, H = inst
    rep = charges.verify_conserved_charges(H, G)
    assert rep.ok, max(rep.residuals.items(), key=lambda kv: kv[1])


def test_claw_breaks_commutation():
    G = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
    H = fiducial_realization(G)
    rep = charges.verify_conserved_charges(H, G)
    assert not rep.ok


def test_square_has_two_sliding_charges():
    H = fiducial_realization(cycle(4))
    got = charges.sliding_charges(H, cycle(4), 2)
    assert [c for c, _ in got] == [[(0, 2)], [(1, 3)]]
    Hs = H.to_pauli_sum()
    for _, qk in got:
        assert Hs.commutator(qk).max_abs() < 1e-14


def test_hole_operator_is_hermitian_and_squares_to_identity():
    H = fiducial_realization(cycle(6), [0.5, 1.0, 1.5, 2.0, 1.2, 0.8])
    h = charges.hole_operator(H, (0, 1, 2, 3, 4, 5))
    assert h.is_hermitian()
    assert len(h) == 1
    sq = (h * h).prune()
    w = np.prod([0.5, 1.0, 1.5, 2.0, 1.2, 0.8]) ** 2
    assert (sq - PauliSum.identity(H.n_qubits, w)).max_abs() < 1e-12


def test_worked_example_cycle_symmetries():
    H = models.example_1_2()
    an = solver.analyze(H)
    Js = [charges.cycle_symmetry(H, cl) for cl in an.closures]
    assert [len(J) for J in Js] == [6, 2]
    Hs = H.to_pauli_sum()
    for J in Js:
        assert J.is_hermitian()
        assert Hs.commutator(J).max_abs() < 1e-12
    assert Js[0].commutator(Js[1]).max_abs() < 1e-12
    # eigenvalues of a closure operator come in +- pairs
    ev = np.linalg.eigvalsh(to_matrix(Js[1]))
    assert np.allclose(np.sort(ev), np.sort(-ev))


def test_collect_charges_names():
    H = models.example_1_2()
    names = list(charges.collect_charges(H, build_frustration_graph(H)))
    assert names[0] == "H"
    assert "J0" in names and "J1" in names
    assert any(n.startswith("Q2.") for n in names)


@pytest.mark.parametrize("n", [4, 6])
def test_xy_chain_charges_commute(n):
    H = models.xy_chain(n, 0.3)
    rep = charges.verify_conserved_charges(H, build_frustration_graph(H))
    assert rep.ok
