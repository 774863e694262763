"""Polymer Markov chain: sampling from the Gibbs measure and annealed counting.

Requires non-negative real weights. The chain state is a compatible family;
one step picks a uniform edge e0 and either removes the polymer covering e0
(probability 1/2) or, if e0 is uncovered, proposes a polymer containing e0
from the single-polymer distribution mu0 and inserts it (probability 1/2)
when it is compatible with the rest of the state.

mu0 draws a geometric size budget k with P(k = i) = (1 - e^-rho) e^-rho*i,
lists the polymers containing e0 with at most k edges, and accepts polymer
gamma with probability Phi(gamma) e^{rho |E(gamma)|}, so that the overall
output probability is exactly Phi(gamma). rho = tau - 2 - ln(kappa*Delta),
where tau certifies Phi(gamma) <= e^{-tau |E(gamma)|}.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from statistics import median

from .bounds import _gated_full_pool, region_bounds
from .errors import ConditionViolated, InvalidFugacity, RegionViolation, UnsupportedWeights
from .graph import MultiGraph, connected_edge_supersets
from .polymers import (
    ColouredPolymer,
    family_to_assignment,
    holant_prefactor,
    polymer_weight,
)
from .signatures import SignatureAssignment
from itertools import product as _product

DEFAULT_XI = 0.75


def tau_floor(kappa: int, delta: int) -> float:
    return 5.0 + 3.0 * math.log(kappa * delta)


def substream(seed: int, index: int) -> random.Random:
    """Independent named stream: 64 bits of SHA-256 over (seed, index)."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def derive_seed(*parts) -> int:
    """Deterministic default seed from instance content."""
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def mixing_time(G: MultiGraph, eps: float, xi: float = DEFAULT_XI) -> int:
    if not 0 < xi < 1:
        raise ValueError("xi must be in (0, 1)")
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = max(1, G.vertex_count)
    t = 2.0 * G.edge_count * math.log(n / eps) / (1.0 - xi)
    return max(1, math.ceil(t))


def _require_nonneg(assign: SignatureAssignment, z):
    z = tuple(complex(t) for t in z)
    if any(t.imag != 0 or t.real < 0 for t in z):
        raise UnsupportedWeights("chain requires non-negative real fugacities")
    if z[0].real <= 0:
        raise InvalidFugacity("z_0 must be positive")
    if not assign.is_nonneg_real():
        raise UnsupportedWeights("chain requires non-negative real signature tables")
    return tuple(t.real for t in z)


def check_sampling_condition(G: MultiGraph, assign: SignatureAssignment, z):
    """(ok, tau_star, tau_required): largest tau with Phi <= e^{-tau |E|} pool-wide."""
    zr = _require_nonneg(assign, z)
    pool, weights = _gated_full_pool(G, assign, zr)
    tau_star = math.inf
    for p, w in zip(pool, weights):
        if w.real > 0:
            tau_star = min(tau_star, -math.log(w.real) / p.size)
    need = tau_floor(assign.kappa, max(1, G.max_degree()))
    return tau_star >= need, tau_star, need


def check_mixing_condition(G: MultiGraph, assign: SignatureAssignment, z,
                           xi: float = DEFAULT_XI):
    """(ok, worst margin) for sum_{g' incompatible} |E(g')| Phi(g') <= xi |E(g)|."""
    if not 0 < xi < 1:
        raise ValueError("xi must be in (0, 1)")
    zr = _require_nonneg(assign, z)
    pool, weights = _gated_full_pool(G, assign, zr)
    agg: dict = {}
    for p, w in zip(pool, weights):
        agg[p.vmask] = agg.get(p.vmask, 0.0) + p.size * w.real
    lhs = {k: sum(v for k2, v in agg.items() if k & k2) for k in agg}
    worst = float("-inf")
    ok = True
    for p in pool:
        margin = lhs[p.vmask] - xi * p.size
        worst = max(worst, margin)
        if margin > 0:
            ok = False
    return ok, worst


class ChainState:
    """Current compatible family with per-edge ownership."""

    def __init__(self, G: MultiGraph):
        self.edge_owner = [None] * G.edge_count
        self.occupied = 0
        self.total_edges = 0
        self.polymers: set = set()

    def add(self, p: ColouredPolymer):
        self.polymers.add(p)
        self.occupied |= p.vmask
        self.total_edges += p.size
        for e in p.edges:
            self.edge_owner[e] = p

    def remove(self, p: ColouredPolymer):
        self.polymers.discard(p)
        self.occupied ^= p.vmask
        self.total_edges -= p.size
        for e in p.edges:
            self.edge_owner[e] = None

    def family(self):
        return sorted(self.polymers, key=ColouredPolymer.sort_key)


class PolymerChain:
    """Bound instance: certified parameters plus per-edge mu0 candidate lists.

    check: "auto" accepts the instance when the fugacity ratios sit inside the
    chain region bound, falling back to direct verification of the sampling
    and mixing conditions on the full (gated) pool; "direct" skips the region
    test; "none" trusts the caller.
    """

    def __init__(self, G: MultiGraph, assign: SignatureAssignment, z,
                 xi: float = DEFAULT_XI, tau: float | None = None,
                 check: str = "auto"):
        if check not in ("auto", "direct", "none"):
            raise ValueError(f"unknown check mode {check!r}")
        self.G = G
        self.assign = assign
        self.z = _require_nonneg(assign, z)
        self.xi = xi
        self.kappa = assign.kappa
        delta = max(1, G.max_degree())
        self.delta = delta
        self.certificate = "none"
        if check != "none" and G.edge_count > 0:
            self._certify(check)
        floor = tau_floor(self.kappa, delta)
        self.tau = floor if tau is None else float(tau)
        if self.tau < floor:
            raise ValueError(f"tau = {self.tau} below floor {floor}")
        self.rho = self.tau - 2.0 - math.log(self.kappa * delta)
        # per-edge candidate polymers, weights at scale 1, ascending by size
        self._base: list = []
        for e0 in range(G.edge_count):
            entries = []
            for S in connected_edge_supersets(G, e0, G.edge_count):
                vmask = 0
                for v in G.edge_vertices(S):
                    vmask |= 1 << v
                for colouring in _product(range(1, self.kappa + 1), repeat=len(S)):
                    p = ColouredPolymer(S, colouring, vmask)
                    w = polymer_weight(G, assign, self.z, p).real
                    if w > 0:
                        entries.append((p, w))
            entries.sort(key=lambda t: (t[0].size, t[0].sort_key()))
            self._base.append(entries)
        self.scale = None
        self.set_scale(1.0)

    def _certify(self, check: str):
        ratios = [zi / self.z[0] for zi in self.z[1:]]
        bound = region_bounds(
            "mcmc-poly", delta=self.delta, kappa=self.kappa, r1=self.assign.r1()
        ).bound
        if check == "auto" and max(ratios, default=0.0) <= bound:
            self.certificate = "region"
            return
        ok_s, tau_star, need = check_sampling_condition(self.G, self.assign, self.z)
        ok_m, worst = check_mixing_condition(self.G, self.assign, self.z, self.xi)
        if ok_s and ok_m:
            self.certificate = "direct"
            return
        raise RegionViolation(
            "instance not certified for the chain: "
            f"fugacity ratio bound {bound:.6g} violated and direct checks give "
            f"tau* = {tau_star:.6g} (need >= {need:.6g}), mixing margin {worst:.6g}"
        )

    def set_scale(self, x: float):
        """Scale every weight by x^{|E(gamma)|} (annealing parameter)."""
        if not 0.0 <= x <= 1.0:
            raise ValueError("scale must be in [0, 1]")
        if x == self.scale:
            return
        self.scale = x
        self._lists = []
        for entries in self._base:
            cum = []
            acc = 0.0
            for p, w in entries:
                acc += w * x**p.size * math.exp(self.rho * p.size)
                cum.append(acc)
            self._lists.append((entries, cum))

    def mu0(self, e0: int, rng: random.Random):
        """One draw from the single-polymer distribution at edge e0 (or None)."""
        u = rng.random()
        k = int(-math.log(u) / self.rho)  # P(k >= i) = e^{-rho i}
        if k == 0:
            return None
        entries, cum = self._lists[e0]
        # restrict to polymers with size <= k
        hi = 0
        for p, _ in entries:
            if p.size <= k:
                hi += 1
            else:
                break
        if hi == 0:
            return None
        total = cum[hi - 1]
        if total > 1.0 + 1e-9:
            raise ConditionViolated(
                f"mu0 acceptance mass {total:.6g} > 1 at edge {e0}; "
                "weights violate the sampling condition for this tau"
            )
        u2 = rng.random()
        if u2 >= total:
            return None
        lo = 0
        while cum[lo] <= u2:
            lo += 1
        return entries[lo][0]

    def fresh_state(self) -> ChainState:
        return ChainState(self.G)

    def step(self, state: ChainState, rng: random.Random):
        e0 = rng.randrange(self.G.edge_count)
        owner = state.edge_owner[e0]
        if owner is not None:
            if rng.random() < 0.5:
                state.remove(owner)
            return
        p = self.mu0(e0, rng)
        if p is not None and (p.vmask & state.occupied) == 0:
            if rng.random() < 0.5:
                state.add(p)

    def run(self, state: ChainState, steps: int, rng: random.Random):
        for _ in range(steps):
            self.step(state, rng)


def _sample_trials(chain: PolymerChain, steps: int, seed: int, indices):
    out = []
    for t in indices:
        rng = substream(seed, t)
        state = chain.fresh_state()
        chain.run(state, steps, rng)
        out.append(family_to_assignment(chain.G, state.family()))
    return out


def _trial_worker(args):
    G, assign, z, xi, check, steps, seed, indices = args
    chain = PolymerChain(G, assign, z, xi=xi, check=check)
    return _sample_trials(chain, steps, seed, indices)


def sample_assignments(G: MultiGraph, assign: SignatureAssignment, z, eps: float,
                       seed: int, trials: int = 1, xi: float = DEFAULT_XI,
                       check: str = "auto", steps: int | None = None,
                       jobs: int = 1):
    """trials independent eps-approximate Gibbs samples (one chain each).

    Each trial runs its own substream; output is identical for any jobs >= 1.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if G.edge_count == 0:
        return [()] * trials
    T = mixing_time(G, eps, xi) if steps is None else int(steps)
    if jobs > 1 and trials > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [list(range(i, trials, jobs)) for i in range(jobs)]
        chunks = [c for c in chunks if c]
        argset = [(G, assign, z, xi, check, T, seed, c) for c in chunks]
        results: dict = {}
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            for chunk, res in zip(chunks, ex.map(_trial_worker, argset)):
                for idx, sigma in zip(chunk, res):
                    results[idx] = sigma
        return [results[i] for i in range(trials)]
    chain = PolymerChain(G, assign, z, xi=xi, check=check)
    return _sample_trials(chain, T, seed, range(trials))


def sample_assignment(G, assign, z, eps, seed, **kw):
    return sample_assignments(G, assign, z, eps, seed, trials=1, **kw)[0]


@dataclass
class FprasReport:
    value: float
    estimates: list
    stages: int
    samples_per_stage: int
    reps: int
    seed: int
    burn: int
    stride: int
    chain_steps: int = 0
    certificate: str = "none"


def _run_rep(chain: PolymerChain, seed: int, rep: int, K: int, S: int,
             burn: int, stride: int, prefactor: float) -> float:
    rng = substream(seed, rep)
    state = chain.fresh_state()
    log_prod = 0.0
    for k in range(1, K + 1):
        x_k = k / K
        ratio = (k - 1) / k  # x_{k-1} / x_k
        chain.set_scale(x_k)
        chain.run(state, burn, rng)
        acc = 0.0
        for _ in range(S):
            chain.run(state, stride, rng)
            acc += ratio**state.total_edges
        mean = acc / S
        if mean <= 0.0:
            raise ConditionViolated(
                f"stage {k}/{K} ratio estimate is zero; increase samples"
            )
        log_prod += math.log(mean)
    return prefactor * math.exp(-log_prod)


def _fpras_rep_worker(args):
    G, assign, zr, xi, check, seed, rep, K, S, burn, stride, prefactor = args
    chain = PolymerChain(G, assign, zr, xi=xi, check=check)
    return _run_rep(chain, seed, rep, K, S, burn, stride, prefactor)


def fpras_estimate(G: MultiGraph, assign: SignatureAssignment, z, eps: float,
                   seed: int, reps: int = 3, stages: int | None = None,
                   samples: int | None = None, xi: float = DEFAULT_XI,
                   check: str = "auto", jobs: int = 1) -> FprasReport:
    """Randomised approximation of the Holant value by simulated annealing.

    Anneals x from 0 to 1 over `stages` grid points; at each stage the chain
    samples families at weights Phi * x_k^{|E|} and accumulates the bounded
    statistic (x_{k-1}/x_k)^{total edges}, whose mean is Z(x_{k-1})/Z(x_k).
    The product telescopes to 1/Z(1); the estimate is the median over
    independent repetitions of prefactor / product. Repetitions use disjoint
    substreams, so jobs > 1 returns the identical value.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    zr = _require_nonneg(assign, z)
    prefactor = holant_prefactor(G, assign, z).real
    if G.edge_count == 0:
        return FprasReport(prefactor, [prefactor] * reps, 0, 0, reps, seed, 0, 0)
    K = stages if stages is not None else max(2, min(2 * G.edge_count, 24))
    S = samples if samples is not None else math.ceil(32.0 / eps**2)
    burn = mixing_time(G, 0.05, xi)
    stride = 2
    chain = PolymerChain(G, assign, zr, xi=xi, check=check)
    if jobs > 1 and reps > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [
            (G, assign, zr, xi, check, seed, r, K, S, burn, stride, prefactor)
            for r in range(reps)
        ]
        with ProcessPoolExecutor(max_workers=min(jobs, reps)) as ex:
            estimates = list(ex.map(_fpras_rep_worker, args))
    else:
        estimates = [
            _run_rep(chain, seed, r, K, S, burn, stride, prefactor)
            for r in range(reps)
        ]
    steps_total = reps * K * (burn + S * stride)
    return FprasReport(
        value=float(median(estimates)),
        estimates=estimates,
        stages=K,
        samples_per_stage=S,
        reps=reps,
        seed=seed,
        burn=burn,
        stride=stride,
        chain_steps=steps_total,
        certificate=chain.certificate,
    )
