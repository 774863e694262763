"""Cluster expansion of log Z and the truncation-based approximation.

Two interchangeable routes produce the Taylor coefficients a_j of
log Z(polymers, Phi * x^{|E(gamma)|}) around x = 0:

* "clusters": enumerate connected multisets of polymers (clusters) of total
  size <= m and sum ursell(H) / prod(mult_i!) * prod Phi^mult_i. This is the
  textbook expansion and scales exponentially with m.

* "series": the partition function is a polynomial in x of degree <= |E(G)|
  because family members are vertex-disjoint. Its exact coefficients come
  from a DFS over compatible families, and the formal power-series logarithm
  then yields every a_j. The two routes agree coefficientwise as formal
  series; "auto" picks clusters only when a cheap multiset-count bound says
  the enumeration is small.

The approximation itself is prefactor * exp(sum_{j<=m} a_j) with the
truncation order m chosen from the certified zero-free radius q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bounds import q_factor_fugacity, q_factor_problem, region_bounds
from .errors import GateExceeded, InvalidFugacity, RegionViolation
from .graph import MultiGraph
from .polymers import compact_domain, enumerate_polymers, holant_prefactor, polymer_weight
from .signatures import SignatureAssignment

URSELL_NODE_GATE = 22
CLUSTER_GATE = 5 * 10**6
FAMILY_VISIT_GATE = 2 * 10**7
_AUTO_CLUSTER_COUNT = 100_000
_AUTO_CLUSTER_WORK = 3 * 10**6


# ---------------------------------------------------------------------------
# Ursell function


def _normalise_edges(k: int, edges):
    out = set()
    for i, j in edges:
        if not (0 <= i < k and 0 <= j < k) or i == j:
            raise ValueError(f"bad edge ({i},{j}) for {k} nodes")
        out.add((min(i, j), max(i, j)))
    return tuple(sorted(out))


@lru_cache(maxsize=200_000)
def _ursell_cached(k: int, edges) -> int:
    adj = [0] * k
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    full = (1 << k) - 1

    # edgeless[S]: no edge of H inside S; built up by lowest bit
    edgeless = bytearray(full + 1)
    edgeless[0] = 1
    for S in range(1, full + 1):
        b = S & -S
        rest = S ^ b
        edgeless[S] = 1 if edgeless[rest] and (adj[b.bit_length() - 1] & S) == 0 else 0

    # C[S] = sum over spanning connected edge subsets of H[S] of (-1)^{#edges};
    # recurrence peels off the component of the lowest node b:
    # [S edgeless] = sum_{T ni b} C[T] * [S \ T edgeless]
    C = [0] * (full + 1)
    for S in range(1, full + 1):
        b = S & -S
        rest = S ^ b
        total = int(edgeless[S])
        U = rest
        while U:
            if edgeless[U]:
                total -= C[S ^ U]
            U = (U - 1) & rest
        C[S] = total
    return C[full]


def ursell(k: int, edges) -> int:
    """Sum of (-1)^{|A|} over spanning connected edge subsets A of H.

    H must be connected (callers construct clusters, whose incompatibility
    graphs are connected by definition). Exact integer arithmetic.
    """
    if k < 1:
        raise ValueError("need at least one node")
    if k > URSELL_NODE_GATE:
        raise GateExceeded(f"ursell on {k} nodes exceeds gate {URSELL_NODE_GATE}")
    edges = _normalise_edges(k, edges)
    # connectivity check
    adj = [0] * k
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        m = adj[v] & ~seen
        while m:
            b = m & -m
            seen |= b
            stack.append(b.bit_length() - 1)
            m ^= b
    if seen != (1 << k) - 1:
        raise ValueError("incompatibility graph must be connected")
    return _ursell_cached(k, edges)


# ---------------------------------------------------------------------------
# Clusters


@dataclass(frozen=True)
class Cluster:
    """Connected multiset of polymers: distinct polymers plus multiplicities."""

    polymers: tuple
    mults: tuple
    total_size: int
    ursell_value: int

    def weight(self, wmap) -> complex:
        w = complex(self.ursell_value)
        for p, m in zip(self.polymers, self.mults):
            w *= wmap[p] ** m
            w /= math.factorial(m)
        return w


def _expanded_ursell(sizes_adj, mults) -> int:
    """Ursell of the copy-expanded incompatibility graph.

    sizes_adj: tuple of support-graph edges (i, j) with i < j (positions into
    the support); identical copies are always mutually incompatible, so each
    support position contributes a clique of its multiplicity.
    """
    offsets = [0]
    for m in mults:
        offsets.append(offsets[-1] + m)
    k = offsets[-1]
    edges = []
    for pos, m in enumerate(mults):
        nodes = range(offsets[pos], offsets[pos + 1])
        edges += [(a, b) for a in nodes for b in nodes if a < b]
    for i, j in sizes_adj:
        edges += [
            (a, b)
            for a in range(offsets[i], offsets[i + 1])
            for b in range(offsets[j], offsets[j + 1])
        ]
    return ursell(k, edges)


def enumerate_clusters(polymers, max_total: int):
    """All clusters of total size <= max_total over the given polymer pool.

    Deterministic order: supports are grown exactly once each (seed order with
    banned predecessors, as for connected subgraphs), multiplicity vectors in
    lexicographic order.
    """
    pool = sorted((p for p in polymers if p.size <= max_total),
                  key=lambda p: p.sort_key())
    n = len(pool)
    masks = [p.vmask for p in pool]
    sizes = [p.size for p in pool]
    out = []
    budget = [CLUSTER_GATE]

    def emit(support, support_adj):
        szs = [sizes[i] for i in support]
        polys = tuple(pool[i] for i in support)
        t = len(support)
        tail = [0] * (t + 1)
        for i in range(t - 1, -1, -1):
            tail[i] = tail[i + 1] + szs[i]

        def mults_dfs(pos, used, acc):
            if pos == t:
                budget[0] -= 1
                if budget[0] < 0:
                    raise GateExceeded(f"more than {CLUSTER_GATE} clusters")
                u = _expanded_ursell(support_adj, tuple(acc))
                out.append(Cluster(polys, tuple(acc), used, u))
                return
            s = szs[pos]
            mult = 1
            while used + mult * s + tail[pos + 1] <= max_total:
                acc.append(mult)
                mults_dfs(pos + 1, used + mult * s, acc)
                acc.pop()
                mult += 1

        mults_dfs(0, 0, [])

    def grow(support, smask, ssize, banned):
        adj = tuple(
            (a, b)
            for a in range(len(support))
            for b in range(a + 1, len(support))
            if masks[support[a]] & masks[support[b]]
        )
        emit(support, adj)
        cand = [
            j
            for j in range(n)
            if j not in banned
            and j not in support
            and masks[j] & smask
            and ssize + sizes[j] <= max_total
        ]
        newly: set = set()
        for j in cand:
            grow(support + [j], smask | masks[j], ssize + sizes[j], banned | newly)
            newly.add(j)

    banned_seeds: set = set()
    for i in range(n):
        grow([i], masks[i], sizes[i], set(banned_seeds))
        banned_seeds.add(i)
    return out


def cluster_log_coefficients(clusters, wmap, m: int):
    """a_1..a_m from an explicit cluster list."""
    a = [0j] * (m + 1)
    for cl in clusters:
        if cl.total_size <= m:
            a[cl.total_size] += cl.weight(wmap)
    return a[1:]


# ---------------------------------------------------------------------------
# Exact family polynomial + formal log


def family_poly_coefficients(polymers, weights, cap: int):
    """Coefficients c_0..c_cap of Z(x) = sum_families prod Phi x^{total size}.

    Exact: the DFS visits each compatible family once. Families are
    vertex-disjoint, so total size never exceeds |E(G)| and the polynomial is
    finite even though the pool may be large.
    """
    items = [
        (p.vmask, p.size, w)
        for p, w in zip(polymers, weights)
        if w != 0 and p.size <= cap
    ]
    c = np.zeros(cap + 1, dtype=complex)
    visits = [0]
    if items and all(m < (1 << 63) for m, _, _ in items):
        masks = np.array([m for m, _, _ in items], dtype=np.uint64)
        sizes = np.array([s for _, s, _ in items], dtype=np.int64)
        ws = np.array([w for _, _, w in items], dtype=complex)

        def rec(cand, size, prod):
            visits[0] += 1
            if visits[0] > FAMILY_VISIT_GATE:
                raise GateExceeded(f"family enumeration exceeded {FAMILY_VISIT_GATE} visits")
            c[size] += prod
            for pos in range(len(cand)):
                j = int(cand[pos])
                nsize = size + int(sizes[j])
                if nsize > cap:
                    continue
                rest = cand[pos + 1:]
                sub = rest[(masks[rest] & masks[j]) == 0]
                rec(sub, nsize, prod * ws[j])

        rec(np.arange(len(items), dtype=np.int64), 0, 1 + 0j)
    else:
        # arbitrary-width masks (graphs with >= 63 vertices)
        def rec_py(cand, size, prod):
            visits[0] += 1
            if visits[0] > FAMILY_VISIT_GATE:
                raise GateExceeded(f"family enumeration exceeded {FAMILY_VISIT_GATE} visits")
            c[size] += prod
            for pos, (mask, s, w) in enumerate(cand):
                nsize = size + s
                if nsize > cap:
                    continue
                sub = [t for t in cand[pos + 1:] if t[0] & mask == 0]
                rec_py(sub, nsize, prod * w)

        rec_py(items, 0, 1 + 0j)
    return c


def series_log(c, m: int):
    """a_1..a_m of log of a power series with c[0] = 1."""
    if abs(c[0] - 1.0) > 1e-12:
        raise ValueError("series must start at 1")
    a = [0j] * (m + 1)
    for j in range(1, m + 1):
        cj = c[j] if j < len(c) else 0j
        acc = 0j
        for i in range(1, j):
            if 0 <= j - i < len(c):
                acc += i * a[i] * c[j - i]
        a[j] = cj - acc / j
    return a[1:]


# ---------------------------------------------------------------------------
# Coefficient front end


@dataclass
class TaylorSeries:
    coefficients: tuple  # a_1 .. a_m
    method: str
    pool_size: int

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def evaluate(self, x: complex = 1.0) -> complex:
        total = 0j
        xp = 1 + 0j
        for a in self.coefficients:
            xp *= x
            total += a * xp
        return total


def _cluster_cost_estimates(sizes, max_total: int):
    """(#multisets bound, work bound) ignoring connectivity, via size-profile DP."""
    from collections import Counter

    profile = Counter(sizes)
    count = [0.0] * (max_total + 1)
    work = [0.0] * (max_total + 1)
    count[0] = work[0] = 1.0
    for s, n_s in profile.items():
        new_c = [0.0] * (max_total + 1)
        new_w = [0.0] * (max_total + 1)
        for j in range(max_total + 1):
            if count[j] == 0 and work[j] == 0:
                continue
            t = 0
            choose = 1.0  # C(n_s + t - 1, t)
            while j + t * s <= max_total:
                new_c[j + t * s] += count[j] * choose
                new_w[j + t * s] += work[j] * choose * (3.0**t)
                t += 1
                choose = choose * (n_s + t - 1) / t
        count, work = new_c, new_w
    return sum(count) - 1.0, sum(work)


def log_z_coefficients(G: MultiGraph, assign: SignatureAssignment, z, m: int,
                       method: str = "auto") -> TaylorSeries:
    """Taylor coefficients a_1..a_m of log Z around x = 0.

    Only polymers with at most min(m, |E|) edges can contribute; the pool is
    compacted first (domain values with zero fugacity are dropped).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if method not in ("auto", "clusters", "series"):
        raise ValueError(f"unknown method {method!r}")
    assign2, z2, _ = compact_domain(assign, z)
    if assign2.kappa == 0 or G.edge_count == 0 or m == 0:
        return TaylorSeries(tuple([0j] * m), "empty", 0)
    pool = enumerate_polymers(G, assign2.kappa, min(m, G.edge_count))
    weights = [polymer_weight(G, assign2, z2, p) for p in pool]
    live = [(p, w) for p, w in zip(pool, weights) if w != 0]
    if method == "auto":
        cnt, work = _cluster_cost_estimates([p.size for p, _ in live], m)
        method = "clusters" if (cnt <= _AUTO_CLUSTER_COUNT and work <= _AUTO_CLUSTER_WORK) \
            else "series"
    if method == "clusters":
        wmap = {p: w for p, w in live}
        clusters = enumerate_clusters([p for p, _ in live], m)
        coeffs = cluster_log_coefficients(clusters, wmap, m)
    else:
        c = family_poly_coefficients([p for p, _ in live], [w for _, w in live],
                                     min(m, G.edge_count))
        coeffs = series_log(c, m)
    return TaylorSeries(tuple(coeffs), method, len(live))


# ---------------------------------------------------------------------------
# Truncation and the approximation pipeline


def truncation_order(d: int, eps: float, ratio: float) -> int:
    """Smallest safe truncation order ceil(log(d/eps) / (1 - ratio)).

    d: polynomial degree (edge count); ratio = |x|/q must be < 1.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not 0.0 <= ratio < 1.0:
        raise RegionViolation(f"|x|/q = {ratio} is not inside [0, 1)")
    return max(1, math.ceil(math.log(d / eps) / (1.0 - ratio)))


@dataclass
class ApproxReport:
    value: complex
    theorem: str
    q: float
    order: int
    method: str
    pool_size: int
    eps: float
    region_bound: float
    prefactor: complex
    log_tail: complex  # the truncated series total actually exponentiated


def _finish(prefactor, series: TaylorSeries, theorem, q, eps, bound) -> ApproxReport:
    total = series.evaluate(1.0)
    return ApproxReport(
        value=complex(prefactor * np.exp(total)),
        theorem=theorem,
        q=q,
        order=series.order,
        method=series.method,
        pool_size=series.pool_size,
        eps=eps,
        region_bound=bound,
        prefactor=prefactor,
        log_tail=total,
    )


def approx_polynomial_report(G: MultiGraph, assign: SignatureAssignment, z,
                             eps: float, method: str = "auto",
                             force: bool = False, order: int | None = None) -> ApproxReport:
    """Multiplicative eps-approximation of the Holant polynomial at fugacity z.

    Certified whenever every |z_i|/|z_0| is inside the fugacity region; with
    force=True the pipeline runs outside the region (no guarantee) using the
    given truncation order, or 2|E|+10 if none is supplied.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    z = tuple(complex(t) for t in z)
    if len(z) != assign.kappa + 1:
        raise InvalidFugacity(f"need {assign.kappa + 1} fugacities, got {len(z)}")
    prefactor = holant_prefactor(G, assign, z)
    assign2, z2, _ = compact_domain(assign, z)
    if G.edge_count == 0 or assign2.kappa == 0:
        series = TaylorSeries((), "empty", 0)
        return _finish(prefactor, series, "fugacity", math.inf, eps, math.inf)
    delta = G.max_degree()
    r1 = assign2.r1()
    bound = region_bounds("holant-poly", delta=delta, kappa=assign2.kappa, r1=r1).bound
    q = q_factor_fugacity(delta, assign2.kappa, r1, z2)
    if q <= 1.0 and not force:
        raise RegionViolation(
            f"fugacity ratio exceeds region bound {bound:.6g} (q = {q:.6g} <= 1); "
            "pass force=True to run without a guarantee"
        )
    if order is not None:
        m = int(order)
        if m < 1:
            raise ValueError("order must be >= 1")
    elif q > 1.0:
        m = truncation_order(G.edge_count, eps, 1.0 / q)
    else:
        m = 2 * G.edge_count + 10
    series = log_z_coefficients(G, assign2, z2, m, method)
    return _finish(prefactor, series, "fugacity", q, eps, bound)


def approx_problem_report(G: MultiGraph, assign: SignatureAssignment,
                          eps: float, method: str = "auto",
                          force: bool = False, order: int | None = None) -> ApproxReport:
    """Multiplicative eps-approximation of the Holant problem (all fugacities 1).

    Certified whenever r(F) is below the small-signature threshold.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    z = tuple([1.0 + 0j] * (assign.kappa + 1))
    prefactor = holant_prefactor(G, assign, z)
    if G.edge_count == 0:
        return _finish(prefactor, TaylorSeries((), "empty", 0), "problem",
                       math.inf, eps, math.inf)
    delta = G.max_degree()
    r_class = assign.ratio_r_class()
    bound = region_bounds("holant-problem", delta=delta, kappa=assign.kappa).bound
    q = q_factor_problem(delta, assign.kappa, r_class)
    if q <= 1.0 and not force:
        raise RegionViolation(
            f"r(F) = {r_class:.6g} is not below threshold {bound:.6g} scaled for "
            f"x = 1 (q = {q:.6g} <= 1); pass force=True to run without a guarantee"
        )
    if order is not None:
        m = int(order)
        if m < 1:
            raise ValueError("order must be >= 1")
    elif math.isinf(q):
        m = truncation_order(G.edge_count, eps, 0.0)
    elif q > 1.0:
        m = truncation_order(G.edge_count, eps, 1.0 / q)
    else:
        m = 2 * G.edge_count + 10
    series = log_z_coefficients(G, assign, z, m, method)
    return _finish(prefactor, series, "problem", q, eps, bound)


def approximate_holant_polynomial(G, assign, z, eps, **kw) -> complex:
    return approx_polynomial_report(G, assign, z, eps, **kw).value


def approximate_holant_problem(G, assign, eps, **kw) -> complex:
    return approx_problem_report(G, assign, eps, **kw).value
