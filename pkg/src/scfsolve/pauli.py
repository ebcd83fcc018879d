"""Pauli strings in symplectic form and sums of them.

A Pauli string on ``n`` qubits is a pair of bitmasks ``(x, z)``; bit ``q`` of
each mask refers to qubit ``q``, the leftmost character of a text label.  The
operator represented is ``i**(x.z) X^x Z^z`` so that every label is Hermitian
(``Y = iXZ``).  Products keep their phase as an exact power of ``i``.
"""

from __future__ import annotations

import math
import re
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

Label = Tuple[int, int]
Number = Union[int, float, complex]

ZERO_TOL = 1e-12
I_POWERS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)
_I_POW_ARRAY = np.array(I_POWERS, dtype=complex)
_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {v: k for k, v in _CHAR_TO_BITS.items()}


class PauliParseError(ValueError):
    """Malformed Pauli label or Hamiltonian text."""


def popcount(v: int) -> int:
    return v.bit_count()


def label_from_string(text: str) -> Label:
    """Parse ``"XZIY"`` into ``(x, z)`` masks."""
    x = z = 0
    for q, ch in enumerate(text.strip().upper()):
        if ch not in _CHAR_TO_BITS:
            raise PauliParseError(f"invalid Pauli character {ch!r} in {text!r}")
        bx, bz = _CHAR_TO_BITS[ch]
        x |= bx << q
        z |= bz << q
    return (x, z)


def label_to_string(label: Label, n: int) -> str:
    x, z = label
    return "".join(_BITS_TO_CHAR[((x >> q) & 1, (z >> q) & 1)] for q in range(n))


def label_weight(label: Label) -> int:
    return popcount(label[0] | label[1])


def symplectic_product(a: Label, b: Label) -> int:
    """Return 0 if the labels commute and 1 if they anticommute."""
    return (popcount(a[0] & b[1]) + popcount(a[1] & b[0])) & 1


def scalar_commutator(a: Label, b: Label) -> int:
    """The sign ``s`` with ``a b = s b a``."""
    return -1 if symplectic_product(a, b) else 1


def multiply_labels(a: Label, b: Label) -> Tuple[int, Label]:
    """Return ``(m, c)`` such that ``a b = i**m c``."""
    cx = a[0] ^ b[0]
    cz = a[1] ^ b[1]
    m = (
        popcount(a[0] & a[1])
        + popcount(b[0] & b[1])
        + 2 * popcount(a[1] & b[0])
        - popcount(cx & cz)
    ) & 3
    return m, (cx, cz)


def product_of_labels(labels: Sequence[Label]) -> Tuple[int, Label]:
    """Ordered product of several labels as ``(m, c)`` with value ``i**m c``."""
    m = 0
    acc: Label = (0, 0)
    for lab in labels:
        dm, acc = multiply_labels(acc, lab)
        m = (m + dm) & 3
    return m, acc


def solve_gf2(rows: Sequence[int], rhs: Sequence[int]) -> Optional[int]:
    """Solve ``rows . x = rhs`` over GF(2) with rows as bitmasks.

    Free variables are set to zero.  Returns the solution bitmask or ``None``
    when the system is inconsistent.
    """
    pivots: Dict[int, Tuple[int, int]] = {}
    for r, b in zip(rows, rhs):
        for col, (pr, pb) in sorted(pivots.items(), reverse=True):
            if (r >> col) & 1:
                r ^= pr
                b ^= pb
        if r == 0:
            if b:
                return None
            continue
        col = r.bit_length() - 1
        for c2, (pr, pb) in list(pivots.items()):
            if (pr >> col) & 1:
                pivots[c2] = (pr ^ r, pb ^ b)
        pivots[col] = (r, b)
    x = 0
    for col, (r, b) in pivots.items():
        if b:
            x |= 1 << col
    return x


def _mask_array(values: Iterable[int], count: int) -> np.ndarray:
    return np.fromiter(values, dtype=np.uint64, count=count)


def _pc(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.int64)


class PauliSum:
    """A complex linear combination of Pauli strings on ``n`` qubits."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Label, complex]] = None):
        self.n = int(n)
        self.terms: Dict[Label, complex] = dict(terms) if terms else {}

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n: int, coeff: Number = 1.0) -> "PauliSum":
        return cls(n, {(0, 0): complex(coeff)})

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n)

    @classmethod
    def from_label(cls, n: int, label: Label, coeff: Number = 1.0) -> "PauliSum":
        return cls(n, {label: complex(coeff)})

    @classmethod
    def from_string(cls, text: str, coeff: Number = 1.0) -> "PauliSum":
        text = text.strip()
        return cls(len(text), {label_from_string(text): complex(coeff)})

    # container protocol ---------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Label, complex]]:
        return iter(self.terms.items())

    def coefficient(self, label: Label) -> complex:
        return self.terms.get(label, 0.0j)

    def copy(self) -> "PauliSum":
        return PauliSum(self.n, self.terms)

    def __repr__(self) -> str:
        body = " + ".join(
            f"({c.real:.6g}{c.imag:+.6g}j)*{label_to_string(k, self.n)}"
            for k, c in sorted(self.terms.items())
        )
        return f"PauliSum(n={self.n}, {body or '0'})"

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "PauliSum") -> int:
        return max(self.n, other.n)

    def __add__(self, other: Union["PauliSum", Number]) -> "PauliSum":
        if not isinstance(other, PauliSum):
            other = PauliSum.identity(self.n, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0.0j) + c
        return PauliSum(self._check(other), out)

    __radd__ = __add__

    def __neg__(self) -> "PauliSum":
        return PauliSum(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Union["PauliSum", Number]) -> "PauliSum":
        if not isinstance(other, PauliSum):
            other = PauliSum.identity(self.n, other)
        return self + (-other)

    def __rsub__(self, other: Number) -> "PauliSum":
        return (-self) + other

    def scale(self, s: Number) -> "PauliSum":
        s = complex(s)
        return PauliSum(self.n, {k: s * c for k, c in self.terms.items()})

    def __mul__(self, other: Union["PauliSum", Number]) -> "PauliSum":
        if isinstance(other, PauliSum):
            return PauliSum(self._check(other), _multiply(self.terms, other.terms, self._check(other)))
        return self.scale(other)

    def __rmul__(self, other: Number) -> "PauliSum":
        return self.scale(other)

    def __truediv__(self, s: Number) -> "PauliSum":
        return self.scale(1.0 / complex(s))

    def __pow__(self, k: int) -> "PauliSum":
        out = PauliSum.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other: "PauliSum") -> "PauliSum":
        """``[self, other]``; only anticommuting pairs contribute."""
        n = self._check(other)
        return PauliSum(n, _multiply(self.terms, other.terms, n, mode="commutator"))

    def anticommutator(self, other: "PauliSum") -> "PauliSum":
        n = self._check(other)
        return PauliSum(n, _multiply(self.terms, other.terms, n, mode="anticommutator"))

    def adjoint(self) -> "PauliSum":
        return PauliSum(self.n, {k: c.conjugate() for k, c in self.terms.items()})

    def extend(self, n: int) -> "PauliSum":
        """Same operator viewed on ``n >= self.n`` qubits."""
        if n < self.n:
            raise ValueError("cannot shrink a PauliSum")
        return PauliSum(n, self.terms)

    # inspection -----------------------------------------------------------
    def prune(self, tol: float = ZERO_TOL) -> "PauliSum":
        return PauliSum(self.n, {k: c for k, c in self.terms.items() if abs(c) > tol})

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def norm(self) -> float:
        """Normalized Hilbert-Schmidt norm, ``sqrt(tr(A^dag A) / 2**n)``."""
        return math.sqrt(sum(abs(c) ** 2 for c in self.terms.values()))

    def is_zero(self, tol: float = ZERO_TOL) -> bool:
        return self.max_abs() <= tol

    def trace_fraction(self) -> complex:
        """``tr(A) / 2**n``, i.e. the identity coefficient."""
        return self.terms.get((0, 0), 0.0j)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self.terms.values())

    def labels(self) -> List[Label]:
        return sorted(self.terms)

    def to_lines(self) -> List[str]:
        return [
            f"{c.real:.12g}{c.imag:+.12g}j {label_to_string(k, self.n)}"
            for k, c in sorted(self.terms.items())
        ]


def _multiply(
    a: Dict[Label, complex],
    b: Dict[Label, complex],
    n: int,
    mode: str = "product",
) -> Dict[Label, complex]:
    """Core product kernel.

    ``mode`` selects the plain product, the commutator (pairs that anticommute
    contribute ``2ab``) or the anticommutator (commuting pairs give ``2ab``).
    """
    if not a or not b:
        return {}
    if len(a) * len(b) >= 256 and n <= 64:
        return _multiply_numpy(a, b, n, mode)
    out: Dict[Label, complex] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            if mode != "product":
                anti = symplectic_product(ka, kb)
                if (mode == "commutator") != bool(anti):
                    continue
                w = 2.0
            else:
                w = 1.0
            m, kc = multiply_labels(ka, kb)
            out[kc] = out.get(kc, 0.0j) + w * I_POWERS[m] * ca * cb
    return out


def _multiply_numpy(a, b, n, mode):
    ka = list(a.keys())
    kb = list(b.keys())
    xa = _mask_array((k[0] for k in ka), len(ka))[:, None]
    za = _mask_array((k[1] for k in ka), len(ka))[:, None]
    xb = _mask_array((k[0] for k in kb), len(kb))[None, :]
    zb = _mask_array((k[1] for k in kb), len(kb))[None, :]
    ca = np.fromiter(a.values(), dtype=complex, count=len(ka))[:, None]
    cb = np.fromiter(b.values(), dtype=complex, count=len(kb))[None, :]
    cx = xa ^ xb
    cz = za ^ zb
    m = (_pc(xa & za) + _pc(xb & zb) + 2 * _pc(za & xb) - _pc(cx & cz)) & 3
    coeff = ca * cb * _I_POW_ARRAY[m]
    if mode != "product":
        anti = ((_pc(xa & zb) + _pc(za & xb)) & 1).astype(bool)
        keep = anti if mode == "commutator" else ~anti
        cx, cz, coeff = cx[keep], cz[keep], 2.0 * coeff[keep]
    cx = cx.ravel()
    cz = cz.ravel()
    coeff = coeff.ravel()
    if coeff.size == 0:
        return {}
    if n <= 32:
        key = (cx << np.uint64(32)) | cz
        uniq, inv = np.unique(key, return_inverse=True)
        ux = (uniq >> np.uint64(32)).tolist()
        uz = (uniq & np.uint64(0xFFFFFFFF)).tolist()
    else:
        stacked = np.stack([cx, cz], axis=1)
        uniq, inv = np.unique(stacked, axis=0, return_inverse=True)
        inv = inv.ravel()
        ux = uniq[:, 0].tolist()
        uz = uniq[:, 1].tolist()
    re_ = np.bincount(inv, weights=coeff.real, minlength=len(ux))
    im_ = np.bincount(inv, weights=coeff.imag, minlength=len(ux))
    return {(int(x), int(z)): complex(r, i) for x, z, r, i in zip(ux, uz, re_, im_)}


class Hamiltonian:
    """``H = sum_j b_j h_j`` with distinct non-identity Pauli labels ``h_j``.

    Term ``j`` becomes vertex ``j`` of the frustration graph.  An identity
    term is kept separately as ``offset``.
    """

    def __init__(
        self,
        n_qubits: int,
        labels: Sequence[Label],
        coeffs: Sequence[float],
        offset: float = 0.0,
        names: Optional[Sequence[str]] = None,
    ):
        if len(labels) != len(coeffs):
            raise ValueError("labels and coeffs differ in length")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate Pauli labels")
        if any(lab == (0, 0) for lab in labels):
            raise ValueError("identity terms belong in offset")
        limit = 1 << n_qubits
        for x, z in labels:
            if x >= limit or z >= limit:
                raise ValueError("label acts outside the register")
        self.n_qubits = int(n_qubits)
        self.labels: List[Label] = list(labels)
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.offset = float(offset)
        self.names = list(names) if names is not None else [f"h{j}" for j in range(len(labels))]

    @classmethod
    def from_terms(cls, terms: Sequence[Tuple[float, str]]) -> "Hamiltonian":
        """Build from ``[(coeff, "XZI"), ...]``; duplicate labels are summed."""
        if not terms:
            raise PauliParseError("empty Hamiltonian")
        n = len(terms[0][1].strip())
        acc: Dict[Label, float] = {}
        order: List[Label] = []
        offset = 0.0
        for c, text in terms:
            if len(text.strip()) != n:
                raise PauliParseError(f"label {text!r} has length {len(text.strip())}, expected {n}")
            lab = label_from_string(text)
            if lab == (0, 0):
                offset += float(c)
                continue
            if lab not in acc:
                order.append(lab)
                acc[lab] = 0.0
            acc[lab] += float(c)
        order = [lab for lab in order if acc[lab] != 0.0]
        return cls(n, order, [acc[lab] for lab in order], offset)

    @property
    def n_terms(self) -> int:
        return len(self.labels)

    def term(self, j: int) -> PauliSum:
        return PauliSum.from_label(self.n_qubits, self.labels[j], self.coeffs[j])

    def to_pauli_sum(self, include_offset: bool = True) -> PauliSum:
        ps = PauliSum(self.n_qubits, {lab: complex(c) for lab, c in zip(self.labels, self.coeffs)})
        if include_offset and self.offset:
            ps.terms[(0, 0)] = complex(self.offset)
        return ps

    def extend(self, n_qubits: int) -> "Hamiltonian":
        return Hamiltonian(n_qubits, self.labels, self.coeffs, self.offset, self.names)

    def term_product(self, ids: Sequence[int]) -> Tuple[complex, Label]:
        """Ordered product ``h_{i1} h_{i2} ...`` including couplings, as ``(c, label)``."""
        m, lab = product_of_labels([self.labels[j] for j in ids])
        c = I_POWERS[m] * float(np.prod([self.coeffs[j] for j in ids])) if ids else 1.0 + 0j
        return c, lab

    def to_text(self) -> str:
        lines = []
        if self.offset:
            lines.append(f"{self.offset!r} {'I' * self.n_qubits}")
        for lab, c in zip(self.labels, self.coeffs):
            lines.append(f"{float(c)!r} {label_to_string(lab, self.n_qubits)}")
        return "\n".join(lines) + "\n"


_COMMENT = re.compile(r"#.*$")


def parse_hamiltonian(text: str) -> Hamiltonian:
    """Parse lines ``<real-coeff> <pauli-string>``; ``#`` starts a comment."""
    terms: List[Tuple[float, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PauliParseError(f"line {lineno}: expected '<coeff> <pauli-string>'")
        try:
            c = float(parts[0])
        except ValueError as exc:
            raise PauliParseError(f"line {lineno}: bad coefficient {parts[0]!r}") from exc
        if not math.isfinite(c):
            raise PauliParseError(f"line {lineno}: non-finite coefficient")
        if terms and len(parts[1]) != len(terms[0][1]):
            raise PauliParseError(f"line {lineno}: inconsistent qubit count")
        try:
            label_from_string(parts[1])
        except PauliParseError as exc:
            raise PauliParseError(f"line {lineno}: {exc}") from exc
        terms.append((c, parts[1]))
    try:
        return Hamiltonian.from_terms(terms)
    except ValueError as exc:
        raise PauliParseError(str(exc)) from exc


def load_hamiltonian(path: str) -> Hamiltonian:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hamiltonian(fh.read())
