"""Signatures (local constraint functions) and per-vertex assignments.

A signature of arity d over domain {0, ..., kappa} is a dense table of
(kappa+1)^d complex values, indexed row-major: the tuple (x_1, ..., x_d) lives
at index sum x_i * (kappa+1)^(d-i), so the first argument is the most
significant digit. Argument position at a vertex is the canonical rank of
the incident edge (graph.MultiGraph keeps incident lists sorted by edge id).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GateExceeded, NotInF0, ParseError
from .graph import MultiGraph

TABLE_GATE = 10**7  # refuse to materialise tables beyond this many entries


@dataclass(frozen=True)
class Signature:
    arity: int
    kappa: int
    table: np.ndarray = field(compare=False)
    name: str = "table"

    def __post_init__(self):
        expected = (self.kappa + 1) ** self.arity
        if len(self.table) != expected:
            raise ValueError(f"table has {len(self.table)} entries, expected {expected}")

    def index(self, x) -> int:
        if len(x) != self.arity:
            raise ValueError(f"argument tuple has length {len(x)}, arity is {self.arity}")
        idx = 0
        base = self.kappa + 1
        for xi in x:
            if not (0 <= xi <= self.kappa):
                raise ValueError(f"argument value {xi} outside domain 0..{self.kappa}")
            idx = idx * base + xi
        return idx

    def __call__(self, x) -> complex:
        return complex(self.table[self.index(x)])

    @property
    def f0(self) -> complex:
        return complex(self.table[0])

    def in_f0(self) -> bool:
        return self.table[0] != 0

    def ratio_r(self) -> float:
        """max_{x != 0} |f(x)| / |f(0)|; zero for arity-0 signatures."""
        if not self.in_f0():
            raise NotInF0(f"signature {self.name!r} has f(0,...,0) = 0")
        if self.arity == 0:
            return 0.0
        mags = np.abs(self.table)
        return float(mags[1:].max() / mags[0])

    def is_nonneg_real(self) -> bool:
        return bool(np.all(self.table.imag == 0) and np.all(self.table.real >= 0))


def _check_gate(kappa: int, arity: int):
    if (kappa + 1) ** arity > TABLE_GATE:
        raise GateExceeded(
            f"signature table of size {(kappa + 1) ** arity} exceeds gate {TABLE_GATE}"
        )


def make_signature(values, arity: int, kappa: int, name: str = "table") -> Signature:
    _check_gate(kappa, arity)
    table = np.asarray(values, dtype=complex)
    return Signature(arity=arity, kappa=kappa, table=table, name=name)


def matching_signature(arity: int) -> Signature:
    """Boolean 'at most one incident edge occupied' signature."""
    _check_gate(1, arity)
    table = np.zeros(2**arity, dtype=complex)
    for idx in range(2**arity):
        if bin(idx).count("1") <= 1:
            table[idx] = 1.0
    return Signature(arity=arity, kappa=1, table=table, name="matching")


def even_parity_signature(arity: int, weight: complex) -> Signature:
    """1 on even Hamming weight, `weight` on odd (Boolean domain)."""
    _check_gate(1, arity)
    table = np.empty(2**arity, dtype=complex)
    for idx in range(2**arity):
        table[idx] = 1.0 if bin(idx).count("1") % 2 == 0 else weight
    return Signature(arity=arity, kappa=1, table=table, name="even-parity")


def builtin_signature(name: str, arity: int, weight: complex | None = None) -> Signature:
    if name == "matching":
        return matching_signature(arity)
    if name == "even-parity":
        if weight is None:
            raise ValueError("even-parity requires a weight parameter")
        return even_parity_signature(arity, weight)
    raise ValueError(f"unknown builtin signature {name!r}")


class SignatureAssignment:
    """Per-vertex signatures bound to a graph, all over one shared domain."""

    def __init__(self, G: MultiGraph, sigs):
        if len(sigs) != G.vertex_count:
            raise ValueError(f"need {G.vertex_count} signatures, got {len(sigs)}")
        kappas = {s.kappa for s in sigs}
        if len(kappas) > 1:
            raise ValueError(f"mixed domain sizes {sorted(kappas)}")
        for v, s in enumerate(sigs):
            if s.arity != G.degree(v):
                raise ValueError(
                    f"vertex {v} has degree {G.degree(v)} but signature arity {s.arity}"
                )
        self.G = G
        self.sigs = tuple(sigs)
        self.kappa = kappas.pop() if kappas else 1
        # radix weights per vertex: position p of d contributes value*(kappa+1)^(d-1-p)
        base = self.kappa + 1
        self._radix = tuple(
            tuple(base ** (s.arity - 1 - p) for p in range(s.arity)) for s in sigs
        )
        self._edge_pos = {}
        for v in range(G.vertex_count):
            for p, e in enumerate(G.incident(v)):
                self._edge_pos[(v, e)] = p

    def sig(self, v: int) -> Signature:
        return self.sigs[v]

    def edge_position(self, v: int, e: int) -> int:
        """Canonical argument position of edge e at vertex v."""
        return self._edge_pos[(v, e)]

    def check_f0(self):
        for v, s in enumerate(self.sigs):
            if not s.in_f0():
                raise NotInF0(f"vertex {v}: signature {s.name!r} has f(0,...,0) = 0")

    def f0_product(self) -> complex:
        self.check_f0()
        out = 1 + 0j
        for s in self.sigs:
            out *= s.f0
        return out

    def ratio_r_class(self) -> float:
        """r(F): worst ratio over the distinct signatures in use."""
        if not self.sigs:
            return 0.0
        return max(s.ratio_r() for s in self.sigs)

    def r1(self) -> float:
        return max(1.0, self.ratio_r_class())

    def vertex_value(self, v: int, colour_of_edge) -> complex:
        """Evaluate f_v with each incident edge's colour from a mapping eid -> colour."""
        idx = 0
        radix = self._radix[v]
        for p, e in enumerate(self.G.incident(v)):
            idx += colour_of_edge(e) * radix[p]
        return complex(self.sigs[v].table[idx])

    def is_nonneg_real(self) -> bool:
        return all(s.is_nonneg_real() for s in self.sigs)


def uniform_assignment(G: MultiGraph, name: str, weight: complex | None = None,
                       kappa: int = 1) -> SignatureAssignment:
    """Builtin signature at every vertex, arity taken from the degree."""
    if kappa != 1:
        raise ValueError("builtin signatures are Boolean (kappa = 1)")
    cache: dict = {}
    sigs = []
    for v in range(G.vertex_count):
        d = G.degree(v)
        if d not in cache:
            cache[d] = builtin_signature(name, d, weight)
        sigs.append(cache[d])
    return SignatureAssignment(G, sigs)


# ---------------------------------------------------------------------------
# JSON (de)serialisation


def _complex_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ParseError(f"expected number or [re, im] pair, got {v!r}")


def _sig_from_spec(spec, arity: int) -> Signature:
    if not isinstance(spec, dict):
        raise ParseError(f"signature spec must be an object, got {spec!r}")
    if "builtin" in spec:
        weight = _complex_from_json(spec["weight"]) if "weight" in spec else None
        return builtin_signature(spec["builtin"], arity, weight)
    if "table" in spec:
        t = spec["table"]
        try:
            kappa, tab_arity, values = int(t["kappa"]), int(t["arity"]), t["values"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad table spec {t!r}") from exc
        if tab_arity != arity:
            raise ParseError(f"table arity {tab_arity} does not match vertex degree {arity}")
        vals = [_complex_from_json(v) for v in values]
        try:
            return make_signature(vals, tab_arity, kappa)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"signature spec needs 'builtin' or 'table', got {sorted(spec)!r}")


def assignment_from_json(G: MultiGraph, text: str) -> SignatureAssignment:
    """Parse a signature file.

    Layout: {"signatures": {name: spec, ...},
             "assignment": {vertex: name-or-spec, ...},
             "default": name-or-spec}
    Specs are {"builtin": "matching"}, {"builtin": "even-parity", "weight": w}
    or {"table": {"kappa": K, "arity": d, "values": [[re, im], ...]}}.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("signature file must be a JSON object")
    named = doc.get("signatures", {})
    assignment = doc.get("assignment", {})
    default = doc.get("default")

    def resolve(v: int) -> Signature:
        spec = assignment.get(str(v), default)
        if spec is None:
            raise ParseError(f"no signature for vertex {v} and no default")
        if isinstance(spec, str):
            if spec not in named:
                raise ParseError(f"vertex {v} references unknown signature {spec!r}")
            spec = named[spec]
        return _sig_from_spec(spec, G.degree(v))

    sigs = [resolve(v) for v in range(G.vertex_count)]
    try:
        return SignatureAssignment(G, sigs)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def signature_to_spec(sig: Signature) -> dict:
    """Table spec for a signature; inverse of the 'table' branch of parsing."""
    return {
        "table": {
            "kappa": sig.kappa,
            "arity": sig.arity,
            "values": [[v.real, v.imag] for v in map(complex, sig.table)],
        }
    }


def assignment_to_json(assign: SignatureAssignment) -> str:
    doc = {
        "assignment": {
            str(v): signature_to_spec(s) for v, s in enumerate(assign.sigs)
        }
    }
    return json.dumps(doc, indent=2)
