"""Dense exact diagonalization, used as the independent reference."""

from __future__ import annotations

from typing import List, Sequence, Tuple, Union

import numpy as np

from .pauli import I_POWERS, Hamiltonian, Label, PauliSum, popcount

DEFAULT_QUBIT_CAP = 12


class QubitCapError(ValueError):
    """Register too large for dense matrices."""


def _reverse_bits(mask: int, n: int) -> int:
    out = 0
    for q in range(n):
        if (mask >> q) & 1:
            out |= 1 << (n - 1 - q)
    return out


def check_cap(n: int, cap: int = DEFAULT_QUBIT_CAP) -> None:
    if n > cap:
        raise QubitCapError(f"{n} qubits exceeds the dense-matrix cap of {cap}")


def _label_action(label: Label, n: int):
    """Row indices and values of a Pauli string, column ``b`` holding entry ``b``."""
    x, z = label
    xm = _reverse_bits(x, n)
    zm = _reverse_bits(z, n)
    b = np.arange(1 << n, dtype=np.int64)
    sign = 1 - 2 * (np.bitwise_count(b & zm) & 1).astype(np.int64)
    vals = I_POWERS[popcount(x & z) & 3] * sign
    return b ^ xm, vals


def label_matrix(label: Label, n: int) -> np.ndarray:
    d = 1 << n
    rows, vals = _label_action(label, n)
    m = np.zeros((d, d), dtype=complex)
    m[rows, np.arange(d)] = vals
    return m


def to_matrix(op: Union[PauliSum, Hamiltonian], n: int = None, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Dense matrix of a PauliSum or Hamiltonian; qubit 0 is the leftmost tensor factor."""
    if isinstance(op, Hamiltonian):
        op = op.to_pauli_sum()
    n = op.n if n is None else n
    check_cap(n, cap)
    d = 1 << n
    m = np.zeros((d, d), dtype=complex)
    cols = np.arange(d)
    for lab, c in op.terms.items():
        rows, vals = _label_action(lab, n)
        m[rows, cols] += c * vals
    return m


def ed_spectrum(H: Hamiltonian, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """All eigenvalues of ``H`` in ascending order."""
    return np.linalg.eigvalsh(to_matrix(H, cap=cap))


def _cluster(w: np.ndarray, tol: float) -> List[np.ndarray]:
    order = np.argsort(w)
    groups: List[List[int]] = [[order[0]]]
    for i in order[1:]:
        if w[i] - w[groups[-1][-1]] > tol:
            groups.append([i])
        else:
            groups[-1].append(i)
    return [np.array(g) for g in groups]


def joint_diagonalize(
    ops: Sequence[np.ndarray], tol: float = 1e-8
) -> List[Tuple[Tuple[float, ...], np.ndarray]]:
    """Common eigenspaces of pairwise commuting Hermitian matrices.

    Returns ``(eigenvalues, V)`` pairs, ``V`` an orthonormal basis of the
    joint eigenspace, ordered lexicographically by the eigenvalue tuple.
    """
    if not ops:
        raise ValueError("need at least one operator")
    d = ops[0].shape[0]
    spaces: List[Tuple[Tuple[float, ...], np.ndarray]] = [((), np.eye(d, dtype=complex))]
    for op in ops:
        scale = max(1.0, float(np.max(np.abs(op))) if op.size else 1.0)
        nxt = []
        for eigs, V in spaces:
            A = V.conj().T @ op @ V
            A = 0.5 * (A + A.conj().T)
            w, U = np.linalg.eigh(A)
            for g in _cluster(w, tol * scale):
                nxt.append((eigs + (float(np.mean(w[g])),), V @ U[:, g]))
        spaces = nxt
    spaces.sort(key=lambda s: s[0])
    return spaces


def projector(V: np.ndarray) -> np.ndarray:
    return V @ V.conj().T


def compare_spectra(a: Sequence[float], b: Sequence[float]) -> float:
    """Largest deviation after sorting; ``inf`` if the multisets differ in size."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        return float("inf")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))
