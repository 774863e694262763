"""Weighted solution counting for sparse linear systems and perfect-matching
polynomials, both through vertex-disjoint polymer families.

Linear systems: for Ax = 0 with per-variable caps 0 <= x_j <= cap_j and
weights w_j, a polymer is a nonzero solution vector whose support induces a
connected subhypergraph of H_A (rows are vertices, columns are hyperedges
over the rows they touch). Two polymers are incompatible when those induced
row sets intersect; compatible families sum to solutions, so the weighted
count w(X) = sum_x prod_j w_j^{x_j} equals the polymer partition function.

Matchings: given a hypergraph H with a reference perfect matching M,
Z(H, M, z) = sum over perfect matchings M' of z^{|M xor M'|}. For graphs the
polymers are M-alternating cycles weighted z^{#cycle edges}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import region_bounds
from .errors import GateExceeded, ParseError
from .graph import MultiGraph

SUPPORT_BOX_GATE = 10**6
VECTOR_POOL_GATE = 10**6
FAMILY_VISIT_GATE = 2 * 10**7
PM_GATE = 10**6


# ---------------------------------------------------------------------------
# Hypergraphs


class Hypergraph:
    def __init__(self, vertex_count: int, edges):
        if vertex_count < 0:
            raise ValueError("vertex_count must be >= 0")
        canon = []
        for e in edges:
            e = frozenset(int(v) for v in e)
            if not e:
                raise ValueError("empty hyperedge")
            if any(not 0 <= v < vertex_count for v in e):
                raise ValueError(f"hyperedge {sorted(e)} out of range")
            canon.append(e)
        self.vertex_count = vertex_count
        self.edges = tuple(canon)
        inc = [[] for _ in range(vertex_count)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        self._incident = tuple(tuple(x) for x in inc)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incident(self, v: int):
        return self._incident[v]

    def max_degree(self) -> int:
        if self.vertex_count == 0:
            return 0
        return max(len(i) for i in self._incident)

    def uniformity(self) -> int | None:
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_perfect_matching(self, eids) -> bool:
        seen: set = set()
        for i in eids:
            e = self.edges[i]
            if e & seen:
                return False
            seen |= e
        return len(seen) == self.vertex_count


def perfect_matchings(H: Hypergraph, gate: int = PM_GATE):
    """All perfect matchings (sorted edge-id tuples) by exhaustive cover search."""
    out = []
    visits = [0]

    def rec(covered: frozenset, chosen):
        visits[0] += 1
        if visits[0] > gate:
            raise GateExceeded(f"matching enumeration exceeded {gate} nodes")
        if len(covered) == H.vertex_count:
            out.append(tuple(chosen))
            return
        v = min(x for x in range(H.vertex_count) if x not in covered)
        for i in H.incident(v):
            e = H.edges[i]
            if not (e & covered):
                chosen.append(i)
                rec(covered | e, chosen)
                chosen.pop()

    rec(frozenset(), [])
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Linear systems


@dataclass
class LinearSystem:
    rows: list  # n lists of m ints
    caps: list  # per-variable cap kappa_j >= 1
    weights: list  # per-variable complex weight

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise ValueError("need at least one row")
        m = len(self.rows[0])
        if any(len(r) != m for r in self.rows):
            raise ValueError("ragged matrix")
        if len(self.caps) != m or len(self.weights) != m:
            raise ValueError("caps and weights must have one entry per column")
        if any(int(c) < 1 for c in self.caps):
            raise ValueError("caps must be >= 1")
        self.caps = [int(c) for c in self.caps]
        self.weights = [complex(w) for w in self.weights]

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def row_support(self) -> int:
        """r: most nonzeros in any row."""
        return max(sum(1 for a in row if a != 0) for row in self.rows)

    def col_support(self) -> int:
        """c: most nonzeros in any column."""
        return max(
            sum(1 for row in self.rows if row[j] != 0) for j in range(self.m)
        )

    def live_columns(self):
        """Columns that appear in some row; all-zero columns are unconstrained."""
        return [j for j in range(self.m) if any(row[j] != 0 for row in self.rows)]


def build_hypergraph(sys: LinearSystem) -> Hypergraph:
    """H_A on the live columns: hyperedge j = rows where column j is nonzero."""
    edges = []
    for j in sys.live_columns():
        edges.append([i for i in range(sys.n) if sys.rows[i][j] != 0])
    return Hypergraph(sys.n, edges)


@dataclass(frozen=True)
class VectorPolymer:
    """Nonzero solution vector with connected support (values keyed by column)."""

    values: tuple  # ((column, value), ...) sorted by column
    rmask: int  # bitmask of touched rows

    @property
    def support(self):
        return tuple(j for j, _ in self.values)

    def weight(self, sys: LinearSystem) -> complex:
        w = 1 + 0j
        for j, x in self.values:
            w *= sys.weights[j] ** x
        return w


def _connected_column_sets(n_cols: int, col_rows):
    """Connected subsets of live columns (connectivity via shared rows)."""
    out = []
    banned: set = set()

    def grow(support, rmask, banned_now):
        out.append(tuple(support))
        cand = [
            t
            for t in range(n_cols)
            if t not in banned_now and t not in support and col_rows[t] & rmask
        ]
        newly: set = set()
        for t in cand:
            grow(support + [t], rmask | col_rows[t], banned_now | newly)
            newly.add(t)

    for t in range(n_cols):
        grow([t], col_rows[t], set(banned))
        banned.add(t)
    return out


def enumerate_vector_polymers(sys: LinearSystem):
    """All vector polymers of the system (gate-guarded).

    For each connected column support, every assignment with all support
    entries nonzero (1..cap_j) is tested against the rows it completes; the
    polymer is kept when A x = 0 on every touched row.
    """
    live = sys.live_columns()
    col_rows = []
    for j in live:
        mask = 0
        for i in range(sys.n):
            if sys.rows[i][j] != 0:
                mask |= 1 << i
        col_rows.append(mask)
    supports = _connected_column_sets(len(live), col_rows)
    out = []
    for support in supports:
        box = 1
        for t in support:
            box *= sys.caps[live[t]]
        if box > SUPPORT_BOX_GATE:
            raise GateExceeded(
                f"support {support} has {box} candidate vectors (gate {SUPPORT_BOX_GATE})"
            )
        cols = [live[t] for t in support]
        rmask = 0
        for t in support:
            rmask |= col_rows[t]
        rows_touched = [i for i in range(sys.n) if rmask >> i & 1]

        def rec(pos, vec):
            if pos == len(cols):
                if all(
                    sum(sys.rows[i][j] * x for j, x in zip(cols, vec)) == 0
                    for i in rows_touched
                ):
                    out.append(
                        VectorPolymer(tuple(zip(cols, vec)), rmask)
                    )
                return
            for x in range(1, sys.caps[cols[pos]] + 1):
                vec.append(x)
                rec(pos + 1, vec)
                vec.pop()

        rec(0, [])
        if len(out) > VECTOR_POOL_GATE:
            raise GateExceeded(f"polymer pool exceeds {VECTOR_POOL_GATE}")
    out.sort(key=lambda p: (len(p.values), p.values))
    return out


@dataclass
class LinsysReport:
    value: complex
    polymer_count: int
    family_count: int
    dropped_columns: list


def weighted_count(sys: LinearSystem) -> LinsysReport:
    """w(X) = sum over solutions x of prod_j w_j^{x_j}, via polymer families.

    All-zero columns are unconstrained; they factor out of the sum as
    prod over dropped j of (1 + w_j + ... + w_j^{cap_j}).
    """
    dropped = [j for j in range(sys.m) if j not in set(sys.live_columns())]
    factor = 1 + 0j
    for j in dropped:
        factor *= sum(sys.weights[j] ** x for x in range(sys.caps[j] + 1))
    pool = enumerate_vector_polymers(sys)
    weights = [p.weight(sys) for p in pool]
    masks = [p.rmask for p in pool]
    visits = [0]

    def rec(start, occupied, prod):
        visits[0] += 1
        if visits[0] > FAMILY_VISIT_GATE:
            raise GateExceeded(f"family enumeration exceeded {FAMILY_VISIT_GATE} visits")
        total = prod
        for t in range(start, len(pool)):
            if masks[t] & occupied == 0:
                total += rec(t + 1, occupied | masks[t], prod * weights[t])
        return total

    z = rec(0, 0, 1 + 0j)
    report = LinsysReport(
        value=factor * z,
        polymer_count=len(pool),
        family_count=visits[0],
        dropped_columns=dropped,
    )
    return report


def linsys_region(sys: LinearSystem):
    """Region report for the system's (r, c, kappa) parameters."""
    return region_bounds(
        "linsys", r=sys.row_support(), c=sys.col_support(), kappa=max(sys.caps)
    )


def brute_weighted_count(sys: LinearSystem) -> complex:
    """Direct sum over the full box (independent of the polymer route)."""
    box = 1
    for c in sys.caps:
        box *= c + 1
    if box > SUPPORT_BOX_GATE:
        raise GateExceeded(f"{box} vectors exceed gate {SUPPORT_BOX_GATE}")
    total = 0j

    def rec(j, vec):
        nonlocal total
        if j == sys.m:
            if all(
                sum(row[t] * vec[t] for t in range(sys.m)) == 0 for row in sys.rows
            ):
                w = 1 + 0j
                for t in range(sys.m):
                    if vec[t]:
                        w *= sys.weights[t] ** vec[t]
                total += w
            return
        for x in range(sys.caps[j] + 1):
            vec.append(x)
            rec(j + 1, vec)
            vec.pop()

    rec(0, [])
    return total


# ---------------------------------------------------------------------------
# Perfect-matching polynomials


def pm_polynomial_hypergraph(H: Hypergraph, matching, z: complex,
                             mode: str = "exact"):
    """Z(H, M, z) = sum over perfect matchings M' of z^{|M xor M'|}.

    mode "exact" enumerates matchings; "bound" returns the region report for
    (Delta, uniformity k) without evaluating.
    """
    matching = tuple(sorted(int(i) for i in matching))
    if not H.is_perfect_matching(matching):
        raise ValueError("reference set is not a perfect matching")
    if mode == "bound":
        k = H.uniformity()
        if k is None:
            raise ValueError("region bound needs a uniform hypergraph")
        return region_bounds("hyper-pm", delta=H.max_degree(), k=k)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    mset = set(matching)
    total = 0j
    for other in perfect_matchings(H):
        diff = len(mset.symmetric_difference(other))
        total += complex(z) ** diff
    return total


def alternating_cycle_polymers(G: MultiGraph, matching):
    """All M-alternating cycles, as (edge-id tuple, vertex mask) pairs.

    Every vertex on such a cycle uses exactly its matching edge and one
    non-matching edge, so cycles are even and traversal from the least vertex
    along its matching edge enumerates each exactly once.
    """
    matching = tuple(sorted(int(i) for i in matching))
    partner = {}
    for i in matching:
        u, v = G.edges[i]
        if u in partner or v in partner:
            raise ValueError("matching edges overlap")
        partner[u], partner[v] = v, u
    if len(partner) != G.vertex_count:
        raise ValueError("reference set is not a perfect matching")
    in_m = set(matching)
    eid = {}
    for i, (u, v) in enumerate(G.edges):
        eid[(u, v)] = eid[(v, u)] = i
    cycles = []

    def walk(base, cur, path_edges, visited):
        # arrived at cur on a matching edge; leave on a non-matching edge
        for e in G.incident(cur):
            if e in in_m or e in path_edges:
                continue
            u, v = G.edges[e]
            nxt = v if u == cur else u
            if nxt == base:
                cycles.append(tuple(sorted(path_edges + [e])))
                continue
            if nxt <= base or nxt in visited:
                continue
            m_edge = eid[(nxt, partner[nxt])]
            after = partner[nxt]
            if after == base or after <= base or after in visited:
                # matching edge must continue the cycle to a fresh vertex
                # (after == base is impossible: base's matching edge started the walk)
                continue
            walk(base, after,
                 path_edges + [e, m_edge], visited | {nxt, after})

    for base in range(G.vertex_count):
        mate = partner[base]
        if mate < base:
            continue
        start_edge = eid[(base, mate)]
        walk(base, mate, [start_edge], {base, mate})
    cycles = sorted(set(cycles), key=lambda t: (len(t), t))
    out = []
    for cyc in cycles:
        vmask = 0
        for v in G.edge_vertices(cyc):
            vmask |= 1 << v
        out.append((cyc, vmask))
    return out


def pm_polynomial_graph(G: MultiGraph, matching, z: complex,
                        mode: str = "polymer"):
    """Z(G, M, z) over perfect matchings of a graph.

    mode "polymer" sums z^{|E(cycle)|} over vertex-disjoint families of
    M-alternating cycles; "exact" enumerates matchings directly; "bound"
    returns the region report for max degree Delta.
    """
    if mode == "bound":
        return region_bounds("graph-pm", delta=G.max_degree())
    if mode == "exact":
        H = Hypergraph(G.vertex_count, [G.edges[i] for i in range(G.edge_count)])
        return pm_polynomial_hypergraph(H, matching, z, "exact")
    if mode != "polymer":
        raise ValueError(f"unknown mode {mode!r}")
    pool = alternating_cycle_polymers(G, matching)
    zc = complex(z)

    def rec(start, occupied, prod):
        total = prod
        for t in range(start, len(pool)):
            cyc, mask = pool[t]
            if mask & occupied == 0:
                total += rec(t + 1, occupied | mask, prod * zc ** len(cyc))
        return total

    return rec(0, 0, 1 + 0j)


# ---------------------------------------------------------------------------
# File formats


def parse_matrix_file(text: str) -> LinearSystem:
    """Header 'n m', n rows of m ints, 'caps: ...', 'weights: re im ...'."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    if len(lines) < n + 3:
        raise ParseError(f"need {n} rows plus caps and weights lines")
    rows = []
    for line in lines[1 : n + 1]:
        parts = line.split()
        if len(parts) != m:
            raise ParseError(f"row {line!r} does not have {m} entries")
        try:
            rows.append([int(p) for p in parts])
        except ValueError as exc:
            raise ParseError(f"bad row {line!r}") from exc
    caps_line, weights_line = lines[n + 1], lines[n + 2]
    if not caps_line.startswith("caps:"):
        raise ParseError(f"expected 'caps: ...', got {caps_line!r}")
    if not weights_line.startswith("weights:"):
        raise ParseError(f"expected 'weights: ...', got {weights_line!r}")
    try:
        caps = [int(p) for p in caps_line.split(":", 1)[1].split()]
    except ValueError as exc:
        raise ParseError(f"bad caps line {caps_line!r}") from exc
    wparts = weights_line.split(":", 1)[1].split()
    if len(wparts) != 2 * m:
        raise ParseError(f"weights line needs {2 * m} numbers (re im pairs)")
    try:
        weights = [
            complex(float(wparts[2 * j]), float(wparts[2 * j + 1])) for j in range(m)
        ]
    except ValueError as exc:
        raise ParseError(f"bad weights line {weights_line!r}") from exc
    if len(caps) != m:
        raise ParseError(f"caps line needs {m} entries")
    try:
        return LinearSystem(rows, caps, weights)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_pm_file(text: str):
    """Graph or hypergraph file with a trailing 'matching: id id ...' line.

    Returns (instance, matching, kind) with kind "graph" when every edge line
    has two vertices, else "hyper".
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty instance file")
    matching = None
    if lines[-1].startswith("matching:"):
        try:
            matching = tuple(int(p) for p in lines[-1].split(":", 1)[1].split())
        except ValueError as exc:
            raise ParseError(f"bad matching line {lines[-1]!r}") from exc
        lines = lines[:-1]
    if matching is None:
        raise ParseError("instance file needs a 'matching: ...' line")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"header promises {m} edges, file has {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        try:
            rows.append([int(p) for p in line.split()])
        except ValueError as exc:
            raise ParseError(f"bad edge line {line!r}") from exc
    if all(len(r) == 2 for r in rows):
        try:
            return MultiGraph(n, rows), matching, "graph"
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    try:
        return Hypergraph(n, rows), matching, "hyper"
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
