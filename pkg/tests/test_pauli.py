import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import kron_matrix
from scfsolve import ed
from scfsolve.pauli import (
    Hamiltonian,
    PauliParseError,
    PauliSum,
    label_from_string,
    label_to_string,
    multiply_labels,
    parse_hamiltonian,
    solve_gf2,
    symplectic_product,
)

labels = st.text(alphabet="IXYZ", min_size=3, max_size=3)


def test_string_round_trip():
    lab = label_from_string("XYZI")
    assert lab == (0b0011, 0b0110)
    assert label_to_string(lab, 4) == "XYZI"


def test_y_is_hermitian_single_letter():
    m = ed.label_matrix(label_from_string("Y"), 1)
    assert np.allclose(m, [[0, -1j], [1j, 0]])


@given(labels, labels)
def test_product_matches_kron(a, b):
    m, c = multiply_labels(label_from_string(a), label_from_string(b))
    want = kron_matrix(a) @ kron_matrix(b)
    got = 1j ** m * kron_matrix(label_to_string(c, 3))
    assert np.allclose(got, want)


@given(labels, labels)
def test_symplectic_product_is_commutation(a, b):
    A, B = kron_matrix(a), kron_matrix(b)
    anticommute = np.allclose(A @ B, -B @ A)
    assert symplectic_product(label_from_string(a), label_from_string(b)) == int(anticommute)


@st.composite
def sums(draw, n=3):
    terms = draw(st.dictionaries(labels, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), max_size=6))
    return PauliSum(n, {label_from_string(k): complex(v) for k, v in terms.items()})


@given(sums(), sums())
def test_sum_algebra_matches_matrices(a, b):
    A, B = ed.to_matrix(a, 3), ed.to_matrix(b, 3)
    assert np.allclose(ed.to_matrix(a * b, 3), A @ B)
    assert np.allclose(ed.to_matrix(a + b, 3), A + B)
    assert np.allclose(ed.to_matrix(a.commutator(b), 3), A @ B - B @ A, atol=1e-10)
    assert np.allclose(ed.to_matrix(a.anticommutator(b), 3), A @ B + B @ A, atol=1e-10)
    assert np.allclose(ed.to_matrix(a.adjoint(), 3), A.conj().T)


def test_large_products_use_the_vectorized_kernel():
    rng = np.random.default_rng(0)
    n = 6
    a = PauliSum(n, {(int(rng.integers(64)), int(rng.integers(64))): complex(rng.normal()) for _ in range(40)})
    b = PauliSum(n, {(int(rng.integers(64)), int(rng.integers(64))): complex(rng.normal()) for _ in range(40)})
    assert np.allclose(ed.to_matrix(a * b, n), ed.to_matrix(a, n) @ ed.to_matrix(b, n))


def test_trace_fraction_and_hermiticity():
    s = PauliSum.from_string("XZ", 2.0) + PauliSum.identity(2, 0.5)
    assert s.trace_fraction() == pytest.approx(0.5)
    assert s.is_hermitian()
    assert not s.scale(1j).is_hermitian()


def test_gf2_solver():
    # x0 + x1 = 1, x1 = 1 -> x0 = 0
    assert solve_gf2([0b11, 0b10], [1, 1]) == 0b10
    assert solve_gf2([0b1, 0b1], [0, 1]) is None
    rng = np.random.default_rng(1)
    for _ in range(50):
        x = int(rng.integers(1 << 8))
        rows = [int(r) for r in rng.integers(1 << 8, size=6)]
        rhs = [bin(r & x).count("1") & 1 for r in rows]
        sol = solve_gf2(rows, rhs)
        assert sol is not None
        assert [bin(r & sol).count("1") & 1 for r in rows] == rhs


def test_parse_hamiltonian():
    H = parse_hamiltonian("# model\n1.5 XZ\n-0.5 ZI  # trailing\n\n2 II\n1.0 XZ\n")
    assert H.n_qubits == 2
    assert H.n_terms == 2
    assert H.coeffs.tolist() == [2.5, -0.5]
    assert H.offset == 2.0


@pytest.mark.parametrize(
    "text, line",
    [("1.0 XZ\n1.0 XZZ\n", 2), ("1.0 XQ\n", 1), ("abc XZ\n", 1), ("1.0\n", 1), ("nan XZ\n", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(PauliParseError, match=f"line {line}"):
        parse_hamiltonian(text)


def test_empty_model_rejected():
    with pytest.raises(PauliParseError):
        parse_hamiltonian("# nothing\n")


def test_text_round_trip():
    H = Hamiltonian.from_terms([(1.25, "XYZ"), (-2.0, "ZZI"), (0.5, "III")])
    H2 = parse_hamiltonian(H.to_text())
    assert H2.labels == H.labels
    assert np.allclose(H2.coeffs, H.coeffs)
    assert H2.offset == H.offset


def test_term_product_phase():
    H = Hamiltonian.from_terms([(2.0, "X"), (3.0, "Z")])
    c, lab = H.term_product([0, 1])
    # X Z = -i Y
    assert lab == label_from_string("Y")
    assert c == pytest.approx(-6j)
