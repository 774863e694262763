"""Edge-coloured polymer model for Holant partition functions.

A polymer is a connected edge subgraph together with a colouring of its edges
by 1..kappa (colour 0 is the ground value and never appears inside a polymer).
Two polymers are incompatible when their vertex sets intersect; a polymer is
incompatible with itself. Compatible families of polymers are in bijection
with edge assignments sigma in {0..kappa}^E: the polymers are the connected
components of the subgraph spanned by the non-ground edges.

With z_0 != 0 and every signature in F0 (f(0,...,0) != 0),

    holant(G, pi, z) = z_0^{|E|} * prod_v f_v(0) * Z(polymers, Phi)

where Phi is `polymer_weight` below and Z sums prod Phi over compatible
families (empty family contributes 1).
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .errors import InvalidFugacity, NotInF0
from .graph import MultiGraph, connected_edge_sets, connected_edge_subgraphs, is_connected_edge_set
from .signatures import Signature, SignatureAssignment


class ColouredPolymer:
    """Immutable (edges, colours) pair with a cached vertex bitmask."""

    __slots__ = ("edges", "colours", "vmask", "_hash")

    def __init__(self, edges, colours, vmask):
        self.edges = tuple(edges)
        self.colours = tuple(colours)
        self.vmask = vmask
        self._hash = hash((self.edges, self.colours))

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self):
        m, out, v = self.vmask, [], 0
        while m:
            if m & 1:
                out.append(v)
            m >>= 1
            v += 1
        return out

    def sort_key(self):
        return (len(self.edges), self.edges, self.colours)

    def __eq__(self, other):
        return (
            isinstance(other, ColouredPolymer)
            and self.edges == other.edges
            and self.colours == other.colours
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ColouredPolymer(edges={self.edges}, colours={self.colours})"


def make_polymer(G: MultiGraph, edges, colours, kappa: int | None = None) -> ColouredPolymer:
    edges = tuple(edges)
    colours = tuple(colours)
    if len(edges) != len(colours):
        raise ValueError("edges and colours must align")
    if len(set(edges)) != len(edges):
        raise ValueError("repeated edge id in polymer")
    if tuple(sorted(edges)) != edges:
        order = sorted(range(len(edges)), key=lambda i: edges[i])
        edges = tuple(edges[i] for i in order)
        colours = tuple(colours[i] for i in order)
    for c in colours:
        if c < 1 or (kappa is not None and c > kappa):
            raise ValueError(f"colour {c} outside 1..{kappa}")
    if not is_connected_edge_set(G, edges):
        raise ValueError("polymer support is not connected")
    vmask = 0
    for v in G.edge_vertices(edges):
        vmask |= 1 << v
    return ColouredPolymer(edges, colours, vmask)


def incompatible(a: ColouredPolymer, b: ColouredPolymer) -> bool:
    """Vertex sets intersect; reflexive by construction."""
    return (a.vmask & b.vmask) != 0


def enumerate_polymers(G: MultiGraph, kappa: int, max_edges: int,
                       anchor: int | None = None):
    """All coloured polymers with |E(gamma)| <= max_edges.

    anchor (a vertex id) restricts to polymers whose subgraph contains it.
    Order is deterministic: supports shortlex, colourings lexicographic.
    """
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    if anchor is None:
        supports = connected_edge_sets(G, max_edges)
    else:
        supports = connected_edge_subgraphs(G, anchor, max_edges)
    out = []
    for S in supports:
        vmask = 0
        for v in G.edge_vertices(S):
            vmask |= 1 << v
        for colouring in product(range(1, kappa + 1), repeat=len(S)):
            out.append(ColouredPolymer(S, colouring, vmask))
    return out


def polymer_weight(G: MultiGraph, assign: SignatureAssignment, z,
                   polymer: ColouredPolymer) -> complex:
    """Phi(gamma) = prod_i (z_i/z_0)^{#edges coloured i} * prod_{v in V(gamma)} f_v(...) / f_v(0).

    Each vertex evaluates its signature on the tuple over all its incident
    edges in canonical rank order, with edges outside the polymer at colour 0.
    """
    z = tuple(complex(t) for t in z)
    if z[0] == 0:
        raise InvalidFugacity("z_0 must be nonzero")
    colour_of = dict(zip(polymer.edges, polymer.colours))
    for c in polymer.colours:
        if c >= len(z):
            raise InvalidFugacity(f"colour {c} has no fugacity (len(z) = {len(z)})")
    w = 1 + 0j
    for c in polymer.colours:
        w *= z[c] / z[0]
    for v in polymer.vertices():
        s = assign.sig(v)
        if s.table[0] == 0:
            raise NotInF0(f"vertex {v}: signature {s.name!r} has f(0,...,0) = 0")
        w *= assign.vertex_value(v, lambda e: colour_of.get(e, 0)) / s.f0
    return w


def weight_map(G: MultiGraph, assign: SignatureAssignment, z, polymers) -> dict:
    return {p: polymer_weight(G, assign, z, p) for p in polymers}


# ---------------------------------------------------------------------------
# Bijection between compatible families and edge assignments


def family_to_assignment(G: MultiGraph, family) -> tuple:
    """Edge assignment sigma for a compatible family (ground colour elsewhere)."""
    sigma = [0] * G.edge_count
    occupied = 0
    for p in family:
        if occupied & p.vmask:
            raise ValueError("family is not pairwise compatible")
        occupied |= p.vmask
        for e, c in zip(p.edges, p.colours):
            sigma[e] = c
    return tuple(sigma)


def assignment_to_family(G: MultiGraph, sigma) -> list:
    """Connected components of the non-ground subgraph, as coloured polymers."""
    sigma = tuple(sigma)
    if len(sigma) != G.edge_count:
        raise ValueError(f"assignment length {len(sigma)} != edge count {G.edge_count}")
    live = [e for e in range(G.edge_count) if sigma[e] != 0]
    unseen = set(live)
    family = []
    for e0 in live:
        if e0 not in unseen:
            continue
        comp = {e0}
        unseen.discard(e0)
        stack = list(G.edges[e0])
        seen_v = set(stack)
        while stack:
            v = stack.pop()
            for e in G.incident(v):
                if sigma[e] != 0 and e in unseen:
                    unseen.discard(e)
                    comp.add(e)
                for x in G.edges[e] if sigma[e] != 0 else ():
                    if x not in seen_v:
                        seen_v.add(x)
                        stack.append(x)
        edges = tuple(sorted(comp))
        family.append(make_polymer(G, edges, tuple(sigma[e] for e in edges)))
    family.sort(key=ColouredPolymer.sort_key)
    return family


def holant_prefactor(G: MultiGraph, assign: SignatureAssignment, z) -> complex:
    z = tuple(complex(t) for t in z)
    if z[0] == 0:
        raise InvalidFugacity("z_0 must be nonzero")
    return z[0] ** G.edge_count * assign.f0_product()


# ---------------------------------------------------------------------------
# Domain preprocessing


def relabel_ground(assign: SignatureAssignment, z, colour: int):
    """Swap domain value `colour` with 0 in all signatures and in z.

    Useful when f(0,...,0) = 0 but another constant tuple is nonzero; the
    Holant value is invariant under relabelling.
    """
    kappa = assign.kappa
    if not (0 <= colour <= kappa):
        raise ValueError(f"colour {colour} outside domain 0..{kappa}")
    z = tuple(complex(t) for t in z)
    if len(z) != kappa + 1:
        raise InvalidFugacity(f"need {kappa + 1} fugacities, got {len(z)}")
    perm = list(range(kappa + 1))
    perm[0], perm[colour] = perm[colour], perm[0]

    def permute_sig(s: Signature) -> Signature:
        base = kappa + 1
        table = np.empty_like(s.table)
        for idx in range(len(s.table)):
            digits, rest = [], idx
            for _ in range(s.arity):
                digits.append(rest % base)
                rest //= base
            digits.reverse()
            src = 0
            for dgt in digits:
                src = src * base + perm[dgt]
            table[idx] = s.table[src]
        return Signature(arity=s.arity, kappa=s.kappa, table=table, name=s.name)

    cache: dict = {}
    sigs = []
    for s in assign.sigs:
        key = id(s)
        if key not in cache:
            cache[key] = permute_sig(s)
        sigs.append(cache[key])
    new_z = tuple(z[perm[i]] for i in range(kappa + 1))
    return SignatureAssignment(assign.G, sigs), new_z


def compact_domain(assign: SignatureAssignment, z):
    """Drop non-ground domain values whose fugacity is exactly zero.

    Assignments using such a value contribute 0 to the Holant sum, so
    restricting every signature table to the surviving values preserves the
    partition function while shrinking the polymer pool.
    Returns (assignment, z, kept) where kept maps new value -> old value.
    """
    kappa = assign.kappa
    z = tuple(complex(t) for t in z)
    if len(z) != kappa + 1:
        raise InvalidFugacity(f"need {kappa + 1} fugacities, got {len(z)}")
    if z[0] == 0:
        raise InvalidFugacity("z_0 must be nonzero")
    kept = [0] + [i for i in range(1, kappa + 1) if z[i] != 0]
    if len(kept) == kappa + 1:
        return assign, z, tuple(kept)
    new_kappa = len(kept) - 1
    old_base, new_base = kappa + 1, new_kappa + 1

    def restrict(s: Signature) -> Signature:
        table = np.empty(new_base**s.arity, dtype=complex)
        for idx in range(len(table)):
            digits, rest = [], idx
            for _ in range(s.arity):
                digits.append(rest % new_base)
                rest //= new_base
            digits.reverse()
            src = 0
            for dgt in digits:
                src = src * old_base + kept[dgt]
            table[idx] = s.table[src]
        return Signature(arity=s.arity, kappa=new_kappa, table=table, name=s.name)

    cache: dict = {}
    sigs = []
    for s in assign.sigs:
        key = id(s)
        if key not in cache:
            cache[key] = restrict(s)
        sigs.append(cache[key])
    new_z = tuple(z[i] for i in kept)
    return SignatureAssignment(assign.G, sigs), new_z, tuple(kept)
