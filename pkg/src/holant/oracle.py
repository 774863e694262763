"""Brute-force reference computations.

Exponential-time, gate-guarded, and deliberately free of the algorithmic
machinery used by the production paths: enumeration over all edge assignments
(for the Holant sum) and over all compatible polymer families (for the polymer
partition function). Everything else in the package is tested against these.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DegenerateDistribution, GateExceeded, InvalidFugacity, UnsupportedWeights
from .graph import MultiGraph
from .signatures import SignatureAssignment

ASSIGNMENT_GATE = 10**8
FAMILY_VISIT_GATE = 2 * 10**7


@dataclass
class ExactResult:
    value: complex
    terms: int
    table: dict | None = None


def assignment_weight(G: MultiGraph, assign: SignatureAssignment, z, sigma) -> complex:
    """prod_v f_v(sigma restricted to v) * prod_i z_i^{#edges at value i}."""
    z = tuple(complex(t) for t in z)
    w = 1 + 0j
    for v in range(G.vertex_count):
        w *= assign.vertex_value(v, lambda e: sigma[e])
        if w == 0:
            return 0j
    for i in range(len(z)):
        count = sum(1 for c in sigma if c == i)
        if count:
            w *= z[i] ** count
    return w


def brute_holant(G: MultiGraph, assign: SignatureAssignment, z,
                 keep_table: bool = False) -> ExactResult:
    """Holant sum over all (kappa+1)^{|E|} edge assignments."""
    kappa = assign.kappa
    z = tuple(complex(t) for t in z)
    if len(z) != kappa + 1:
        raise InvalidFugacity(f"need {kappa + 1} fugacities, got {len(z)}")
    n_terms = (kappa + 1) ** G.edge_count
    if n_terms > ASSIGNMENT_GATE:
        raise GateExceeded(f"{n_terms} assignments exceed gate {ASSIGNMENT_GATE}")
    total = 0j
    table = {} if keep_table else None
    for sigma in product(range(kappa + 1), repeat=G.edge_count):
        w = assignment_weight(G, assign, z, sigma)
        total += w
        if keep_table:
            table[sigma] = w
    return ExactResult(value=total, terms=n_terms, table=table)


def brute_polymer_z(polymers, weights) -> complex:
    """Sum of prod(weights) over all compatible families (empty family = 1).

    polymers: sequence of ColouredPolymer (or anything with .vmask);
    weights: aligned sequence of complex weights, or a polymer -> weight map.
    The DFS walks families in canonical order, so it visits exactly one node
    per compatible family; a visit budget guards against oversized pools.
    """
    if isinstance(weights, dict):
        weights = [weights[p] for p in polymers]
    if len(polymers) != len(weights):
        raise ValueError("polymers and weights must align")
    items = sorted(
        zip((p.vmask for p in polymers), weights, range(len(weights))),
        key=lambda t: t[2],
    )
    masks = [t[0] for t in items]
    ws = [t[1] for t in items]
    n = len(masks)
    visits = 0

    def rec(start: int, occupied: int, prod_w: complex) -> complex:
        nonlocal visits
        visits += 1
        if visits > FAMILY_VISIT_GATE:
            raise GateExceeded(f"family enumeration exceeded {FAMILY_VISIT_GATE} visits")
        total = prod_w
        for j in range(start, n):
            if masks[j] & occupied == 0:
                total += rec(j + 1, occupied | masks[j], prod_w * ws[j])
        return total

    return rec(0, 0, 1 + 0j)


def exact_gibbs(G: MultiGraph, assign: SignatureAssignment, z) -> dict:
    """Exact Gibbs distribution over edge assignments.

    Requires non-negative real signature tables and fugacities.
    """
    z = tuple(complex(t) for t in z)
    if not assign.is_nonneg_real() or any(t.imag != 0 or t.real < 0 for t in z):
        raise UnsupportedWeights("exact_gibbs needs non-negative real weights")
    res = brute_holant(G, assign, z, keep_table=True)
    total = res.value.real
    if total <= 0:
        raise DegenerateDistribution("partition function is zero; no distribution")
    return {sigma: w.real / total for sigma, w in res.table.items()}
