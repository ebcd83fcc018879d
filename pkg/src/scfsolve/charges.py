"""Conserved charges built from independent sets and even holes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .frustration import FrustrationGraph
from .graphs import (
    Hole,
    deformation_closures,
    hole_operator_order,
    independent_sets,
    token_sliding_components,
)
from .pauli import Hamiltonian, PauliSum


def term_product_sum(H: Hamiltonian, ids: Sequence[int]) -> PauliSum:
    """``h_{i1} h_{i2} ...`` (couplings included) as a one-term PauliSum."""
    c, lab = H.term_product(ids)
    return PauliSum.from_label(H.n_qubits, lab, c)


def _sum_of_products(H: Hamiltonian, sets: Sequence[Sequence[int]]) -> PauliSum:
    out = PauliSum(H.n_qubits)
    for s in sets:
        c, lab = H.term_product(s)
        out.terms[lab] = out.terms.get(lab, 0.0j) + c
    return out


def independent_set_charges(H: Hamiltonian, G: FrustrationGraph) -> List[PauliSum]:
    """``[Q_0, Q_1, ..., Q_alpha]`` with ``Q_k`` the sum of ``h_S`` over size-k independent sets."""
    by_size: Dict[int, List[Tuple[int, ...]]] = {}
    for s in independent_sets(G):
        by_size.setdefault(len(s), []).append(s)
    top = max(by_size)
    return [_sum_of_products(H, by_size.get(k, [])) for k in range(top + 1)]


def sliding_charges(H: Hamiltonian, G: FrustrationGraph, k: int) -> List[Tuple[List[Tuple[int, ...]], PauliSum]]:
    """Charges ``Q_{k,mu}``, one per token sliding component of size-``k`` sets."""
    return [(comp, _sum_of_products(H, comp)) for comp in token_sliding_components(G, k)]


def hole_operator(H: Hamiltonian, hole: Hole) -> PauliSum:
    """``h_C`` with factors grouped by coloring class."""
    return term_product_sum(H, hole_operator_order(hole))


def cycle_symmetry(H: Hamiltonian, closure: Sequence[Hole]) -> PauliSum:
    """``J`` for one deformation closure: the sum of its hole operators."""
    return _sum_of_products(H, [hole_operator_order(c) for c in closure])


@dataclass
class ChargeReport:
    names: List[str]
    residuals: Dict[Tuple[str, str], float] = field(default_factory=dict)
    tol: float = 1e-10

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.tol


def collect_charges(
    H: Hamiltonian,
    G: FrustrationGraph,
    closures: Optional[Sequence[Sequence[Hole]]] = None,
    max_hole_len: Optional[int] = None,
) -> Dict[str, PauliSum]:
    """Named charges: ``H``, every ``Q_{k,mu}`` and every cycle symmetry ``J_c``."""
    out: Dict[str, PauliSum] = {"H": H.to_pauli_sum(include_offset=False)}
    sets = independent_sets(G)
    top = max(len(s) for s in sets)
    for k in range(2, top + 1):
        for mu, (_, q) in enumerate(sliding_charges(H, G, k)):
            out[f"Q{k}.{mu}"] = q
    if closures is None:
        closures = deformation_closures(G, max_hole_len)
    for c, cl in enumerate(closures):
        out[f"J{c}"] = cycle_symmetry(H, cl)
    return out


def verify_conserved_charges(
    H: Hamiltonian,
    G: FrustrationGraph,
    tol: float = 1e-10,
    closures: Optional[Sequence[Sequence[Hole]]] = None,
    max_hole_len: Optional[int] = None,
) -> ChargeReport:
    """Check in the Pauli algebra that all charges commute pairwise.

    The residual for a pair is the largest coefficient of the commutator.
    Sizes one and zero are covered by ``H`` and the identity.
    """
    charges = collect_charges(H, G, closures, max_hole_len)
    names = list(charges)
    rep = ChargeReport(names=names, tol=tol)
    for a, b in itertools.combinations(names, 2):
        rep.residuals[(a, b)] = charges[a].commutator(charges[b]).max_abs()
    return rep
