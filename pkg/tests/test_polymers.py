import math
import random

import pytest

from holant import (
    InvalidFugacity,
    MultiGraph,
    NotInF0,
    Signature,
    SignatureAssignment,
    assignment_to_family,
    brute_holant,
    compact_domain,
    enumerate_polymers,
    family_to_assignment,
    holant_prefactor,
    incompatible,
    make_polymer,
    make_signature,
    polymer_weight,
    relabel_ground,
    uniform_assignment,
    weight_map,
)

from helpers import (
    MASTER_SEED,
    c3,
    k2,
    p3,
    random_f0_assignment,
    random_graph,
    random_instance,
    rel_close,
)


def test_make_polymer_validation():
    G = p3()
    p = make_polymer(G, (0, 1), (1, 1), kappa=1)
    assert p.size == 2
    assert p.vertices() == [0, 1, 2]
    with pytest.raises(ValueError):
        make_polymer(G, (), ())
    with pytest.raises(ValueError):
        make_polymer(G, (0,), (1, 1))  # length mismatch
    with pytest.raises(ValueError):
        make_polymer(G, (0,), (2,), kappa=1)  # colour out of range
    with pytest.raises(ValueError):
        make_polymer(G, (0,), (0,), kappa=1)  # ground colour not allowed
    # disconnected support must be rejected
    with pytest.raises(ValueError):
        make_polymer(MultiGraph(4, [(0, 1), (2, 3)]), (0, 1), (1, 1))


def test_incompatibility_is_reflexive_and_vertex_based():
    G = p3()
    a = make_polymer(G, (0,), (1,))
    b = make_polymer(G, (1,), (1,))
    assert incompatible(a, a)
    assert incompatible(a, b)  # share vertex 1
    # vertex-disjoint edges are compatible
    Gp4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3)])
    x = make_polymer(Gp4, (0,), (1,))
    y = make_polymer(Gp4, (2,), (1,))
    assert not incompatible(x, y)


def test_enumerate_polymers_c3():
    G = c3()
    pols = enumerate_polymers(G, 1, 3)
    assert len(pols) == 7  # 3 singletons + 3 pairs + 1 triangle
    sizes = sorted(p.size for p in pols)
    assert sizes == [1, 1, 1, 2, 2, 2, 3]
    # kappa=2 doubles each edge choice
    pols2 = enumerate_polymers(G, 2, 1)
    assert len(pols2) == 6
    assert len(set(pols2)) == 6


def test_enumerate_polymers_anchor_and_bound():
    rng = random.Random(MASTER_SEED + 5)
    for _ in range(20):
        G = random_graph(rng, max_edges=8, max_degree=3)
        kappa = rng.choice([1, 2])
        delta = max(1, G.max_degree())
        for v in range(G.vertex_count):
            for m in range(1, G.edge_count + 1):
                pols = enumerate_polymers(G, kappa, m, anchor=v)
                assert all(v in p.vertices() for p in pols)
                assert len(pols) <= (delta * kappa * math.e) ** m / 2


def test_single_edge_polymer_weight_matching():
    G = k2()
    a = uniform_assignment(G, "matching")
    p = make_polymer(G, (0,), (1,))
    w = polymer_weight(G, a, (1.0, 0.3), p)
    assert rel_close(w, 0.3)


def test_polymer_weight_errors():
    G = k2()
    a = uniform_assignment(G, "matching")
    p = make_polymer(G, (0,), (1,))
    with pytest.raises(InvalidFugacity):
        polymer_weight(G, a, (0.0, 0.3), p)
    with pytest.raises(InvalidFugacity):
        polymer_weight(G, a, (1.0,), p)  # colour 1 has no fugacity
    bad = make_signature([0, 1], 1, 1)
    b = SignatureAssignment(G, [bad, bad])
    with pytest.raises(NotInF0):
        polymer_weight(G, b, (1.0, 0.3), p)


def test_family_assignment_bijection_p3():
    G = p3()
    sigma = (1, 1)
    fam = assignment_to_family(G, sigma)
    assert len(fam) == 1
    assert fam[0].edges == (0, 1)
    assert fam[0].colours == (1, 1)
    assert family_to_assignment(G, fam) == sigma


def test_family_assignment_round_trip_random():
    rng = random.Random(MASTER_SEED + 6)
    for _ in range(30):
        G = random_graph(rng, max_edges=8)
        kappa = rng.choice([1, 2])
        sigma = tuple(rng.randint(0, kappa) for _ in range(G.edge_count))
        fam = assignment_to_family(G, sigma)
        assert family_to_assignment(G, fam) == sigma
        # families are pairwise compatible by construction
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                assert not incompatible(fam[i], fam[j])


def test_family_to_assignment_rejects_conflicts():
    G = p3()
    a = make_polymer(G, (0,), (1,))
    b = make_polymer(G, (1,), (1,))
    with pytest.raises(ValueError):
        family_to_assignment(G, [a, b])


def test_weight_multiplicativity():
    from holant.oracle import assignment_weight

    rng = random.Random(MASTER_SEED + 7)
    for _ in range(20):
        G, assign = random_instance(rng, max_edges=7)
        kappa = assign.kappa
        z = tuple(
            [1.0 + 0j]
            + [complex(rng.uniform(0.1, 0.6), rng.uniform(-0.2, 0.2)) for _ in range(kappa)]
        )
        sigma = tuple(rng.randint(0, kappa) for _ in range(G.edge_count))
        fam = assignment_to_family(G, sigma)
        pre = holant_prefactor(G, assign, z)
        prod = 1 + 0j
        for p in fam:
            prod *= polymer_weight(G, assign, z, p)
        direct = assignment_weight(G, assign, z, sigma)
        assert abs(pre * prod - direct) <= 1e-9 * max(1.0, abs(direct))


def test_weight_scaling_invariance():
    rng = random.Random(MASTER_SEED + 8)
    G, assign = random_instance(rng, max_edges=6)
    z = tuple([1.0] + [0.2] * assign.kappa)
    pols = enumerate_polymers(G, assign.kappa, G.edge_count)
    scaled = SignatureAssignment(
        G,
        [
            Signature(
                arity=s.arity,
                kappa=s.kappa,
                table=s.table * complex(rng.uniform(0.5, 2.0), rng.uniform(-1, 1)),
                name=s.name,
            )
            for s in assign.sigs
        ],
    )
    for p in pols:
        w1 = polymer_weight(G, assign, z, p)
        w2 = polymer_weight(G, scaled, z, p)
        assert abs(w1 - w2) <= 1e-9 * max(1.0, abs(w1))


def test_relabel_ground_preserves_holant():
    rng = random.Random(MASTER_SEED + 9)
    for _ in range(10):
        G, assign = random_instance(rng, max_edges=6)
        kappa = assign.kappa
        z = tuple(
            [complex(rng.uniform(0.5, 1.0))]
            + [complex(rng.uniform(0.1, 0.5)) for _ in range(kappa)]
        )
        before = brute_holant(G, assign, z).value
        a2, z2 = relabel_ground(assign, z, kappa)
        after = brute_holant(G, a2, z2).value
        assert rel_close(after, before)
        assert z2[0] == z[kappa]


def test_compact_domain_drops_zero_fugacities():
    G = c3()
    sig = make_signature([complex(i + 1) for i in range(9)], 2, 2)
    assign = SignatureAssignment(G, [sig] * 3)
    z = (1.0, 0.0, 0.4)
    before = brute_holant(G, assign, z).value
    a2, z2, kept = compact_domain(assign, z)
    assert kept == (0, 2)
    assert a2.kappa == 1
    after = brute_holant(G, a2, z2).value
    assert rel_close(after, before)
