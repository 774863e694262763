"""Shared random-instance generators for the test suite.

Everything is driven by explicit random.Random objects seeded from
MASTER_SEED so failures reproduce exactly.
"""

import random

from holant import (
    MultiGraph,
    SignatureAssignment,
    make_signature,
    region_bounds,
)

MASTER_SEED = 20260301

# filled by test_acceptance, printed by the conftest terminal-summary hook
ACCEPTANCE_RESULTS = []


def random_graph(rng, max_edges=8, max_degree=3, min_edges=1):
    """Random simple graph; every vertex touches an edge."""
    m = rng.randint(min_edges, max_edges)
    n = rng.randint(2, max(2, min(2 * m, 9)))
    edges, seen = [], set()
    deg = [0] * n
    for _ in range(400):
        if len(edges) == m:
            break
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        seen.add(key)
        deg[u] += 1
        deg[v] += 1
        edges.append(key)
    used = sorted({x for e in edges for x in e})
    relabel = {x: i for i, x in enumerate(used)}
    return MultiGraph(len(used), [(relabel[u], relabel[v]) for u, v in edges])


def random_f0_assignment(rng, G, kappa, spread=1.0, rmax=None):
    """Random dense tables with f(0) != 0; rmax caps r(f) when given."""
    sigs = []
    for v in range(G.vertex_count):
        ar = G.degree(v)
        size = (kappa + 1) ** ar
        tab = [
            complex(rng.uniform(-spread, spread), rng.uniform(-spread, spread))
            for _ in range(size)
        ]
        tab[0] = complex(
            rng.choice([-1, 1]) * rng.uniform(0.4, 1.0), rng.uniform(-0.5, 0.5)
        )
        if rmax is not None:
            cap = rmax * abs(tab[0])
            for i in range(1, size):
                if abs(tab[i]) > cap:
                    tab[i] *= cap / abs(tab[i])
        sigs.append(make_signature(tab, ar, kappa))
    return SignatureAssignment(G, sigs)


def random_instance(rng, max_edges=8, max_degree=3, rmax=None):
    G = random_graph(rng, max_edges=max_edges, max_degree=max_degree)
    kappa = rng.choice([1, 2])
    return G, random_f0_assignment(rng, G, kappa, rmax=rmax)


def corpus(count, seed=MASTER_SEED, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def half_bound_z(G, assign, frac=0.5):
    """Fugacities at frac x the polynomial-region bound, componentwise."""
    b = region_bounds(
        "holant-poly",
        delta=max(1, G.max_degree()),
        kappa=assign.kappa,
        r1=assign.r1(),
    ).bound
    return tuple([1.0 + 0j] + [frac * b + 0j] * assign.kappa)


def flat_problem_assignment(G, kappa=1, scale=0.5):
    """f(0)=1 and every other entry at scale x the all-ones-threshold."""
    thr = region_bounds(
        "holant-problem", delta=max(1, G.max_degree()), kappa=kappa
    ).bound
    s = scale * thr
    sigs = []
    for v in range(G.vertex_count):
        size = (kappa + 1) ** G.degree(v)
        sigs.append(make_signature([1.0] + [s] * (size - 1), G.degree(v), kappa))
    return SignatureAssignment(G, sigs)


def rel_close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


# small named graphs used all over the suite
def k2():
    return MultiGraph(2, [(0, 1)])


def p3():
    return MultiGraph(3, [(0, 1), (1, 2)])


def p4():
    return MultiGraph(4, [(0, 1), (1, 2), (2, 3)])


def c3():
    return MultiGraph(3, [(0, 1), (1, 2), (0, 2)])


def c4():
    return MultiGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def k4():
    return MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def star(k):
    return MultiGraph(k + 1, [(0, i + 1) for i in range(k)])
