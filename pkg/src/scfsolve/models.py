"""Built-in example Hamiltonians addressed as ``builtin:<name>?key=value&...``."""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple
from urllib.parse import parse_qsl

import numpy as np

from .pauli import Hamiltonian


class UnknownModelError(ValueError):
    pass


def _pauli(n: int, ops: Dict[int, str]) -> str:
    return "".join(ops.get(q, "I") for q in range(n))


def example_1_2(couplings: Optional[Sequence[float]] = None) -> Hamiltonian:
    """Eight-term, four-qubit model with two closures of even holes.

    Terms ``h1..h8`` are vertices ``0..7``.
    """
    labels = ["XIII", "ZIII", "XXII", "ZXXI", "YZII", "ZIZI", "ZXYX", "YYYZ"]
    b = [1.0] * 8 if couplings is None else list(couplings)
    if len(b) != 8:
        raise ValueError(f"expected 8 couplings, got {len(b)}")
    return Hamiltonian.from_terms(list(zip(b, labels)))


def xy_chain(n: int = 6, delta: float = 0.0) -> Hamiltonian:
    """``sum_j (1-delta) Y_j Y_{j+1} + (1+delta) X_j X_{j+1}`` on an open chain."""
    if n < 2:
        raise ValueError("xy chain needs n >= 2")
    terms: List[Tuple[float, str]] = []
    for j in range(n - 1):
        terms.append((1.0 - delta, _pauli(n, {j: "Y", j + 1: "Y"})))
        terms.append((1.0 + delta, _pauli(n, {j: "X", j + 1: "X"})))
    return Hamiltonian.from_terms([(c, s) for c, s in terms if c != 0.0])


def square_octagon_arm(couplings: Optional[Sequence[float]] = None, seed: Optional[int] = None) -> Hamiltonian:
    """One arm of the square-octagon model: eight terms on five qubits.

    Couplings ``a..h`` default to uniform draws from ``[0.5, 1.5]`` when a
    seed is given, and to one otherwise.  Factors acting on qubits of
    neighboring arms are dropped.
    """
    if couplings is None:
        if seed is None:
            couplings = [1.0] * 8
        else:
            couplings = np.random.default_rng(seed).uniform(0.5, 1.5, size=8)
    if len(couplings) != 8:
        raise ValueError(f"expected 8 couplings, got {len(couplings)}")
    a, b, c, d, e, f, g, h = [float(v) for v in couplings]
    n = 5
    terms = [
        (a, _pauli(n, {1: "Y", 0: "X"})),
        (b, _pauli(n, {1: "X"})),
        (c, _pauli(n, {1: "Z", 2: "Y"})),
        (d, _pauli(n, {1: "Z", 2: "Z"})),
        (e, _pauli(n, {2: "X", 3: "Z"})),
        (f, _pauli(n, {2: "Y", 3: "Z"})),
        (g, _pauli(n, {3: "X"})),
        (h, _pauli(n, {3: "Y", 4: "X"})),
    ]
    return Hamiltonian.from_terms(terms)


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v]


def _build_example(params: Dict[str, str]) -> Hamiltonian:
    return example_1_2(_floats(params["b"]) if "b" in params else None)


def _build_xy(params: Dict[str, str]) -> Hamiltonian:
    return xy_chain(int(params.get("n", 6)), float(params.get("delta", 0.0)))


def _build_arm(params: Dict[str, str]) -> Hamiltonian:
    if "b" in params:
        return square_octagon_arm(_floats(params["b"]))
    seed = int(params["seed"]) if "seed" in params else None
    return square_octagon_arm(seed=seed)


BUILTINS: Dict[str, Callable[[Dict[str, str]], Hamiltonian]] = {
    "example-1-2": _build_example,
    "xy-chain": _build_xy,
    "square-octagon-patch": _build_arm,
}


def load_builtin(name: str) -> Hamiltonian:
    """Resolve ``builtin:name?key=value``; the ``builtin:`` prefix is optional."""
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    name, _, query = name.partition("?")
    if name not in BUILTINS:
        raise UnknownModelError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    try:
        return BUILTINS[name](dict(parse_qsl(query)))
    except (KeyError, ValueError) as exc:
        raise UnknownModelError(f"bad parameters for {name!r}: {exc}") from exc
