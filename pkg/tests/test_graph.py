import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from holant import (
    MultiGraph,
    ParseError,
    connected_edge_sets,
    connected_edge_subgraphs,
    connected_edge_supersets,
)
from holant.graph import is_connected_edge_set

from helpers import MASTER_SEED, c3, random_graph


def brute_connected_sets(G, v=None, max_edges=None, anchor_edge=None):
    """Reference enumerator: filter every nonempty edge subset."""
    m = max_edges if max_edges is not None else G.edge_count
    out = []
    for size in range(1, m + 1):
        for sub in itertools.combinations(range(G.edge_count), size):
            if not is_connected_edge_set(G, sub):
                continue
            if v is not None and v not in G.edge_vertices(sub):
                continue
            if anchor_edge is not None and anchor_edge not in sub:
                continue
            out.append(tuple(sub))
    return sorted(out, key=lambda s: (len(s), s))


def test_parse_round_trip_idempotent():
    text = "# a comment\n4 4\n3 0\n0 1\n2 1\n2 3\n"
    G = MultiGraph.from_text(text)
    assert G.edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    G2 = MultiGraph.from_text(G.to_text())
    assert G2.edges == G.edges
    assert G2.to_text() == G.to_text()


def test_parse_errors():
    with pytest.raises(ParseError):
        MultiGraph.from_text("2\n0 1\n")  # bad header
    with pytest.raises(ParseError):
        MultiGraph.from_text("2 1\n0 0\n")  # loop
    with pytest.raises(ParseError):
        MultiGraph.from_text("2 2\n0 1\n1 0\n")  # duplicate edge
    with pytest.raises(ParseError):
        MultiGraph.from_text("2 1\n0 5\n")  # endpoint out of range
    with pytest.raises(ParseError):
        MultiGraph.from_text("2 2\n0 1\n")  # edge count mismatch


def test_loops_and_duplicates_rejected_in_constructor():
    with pytest.raises(ValueError):
        MultiGraph(2, [(1, 1)])
    with pytest.raises(ValueError):
        MultiGraph(3, [(0, 1), (1, 0)])


def test_incident_lists_sorted_and_degrees():
    G = MultiGraph.from_text("4 4\n3 0\n0 1\n2 1\n2 3\n")
    for v in range(4):
        inc = G.incident(v)
        assert list(inc) == sorted(inc)
        assert G.degree(v) == len(inc)
    assert G.max_degree() == 2


def test_c3_subgraphs_containing_vertex():
    G = c3()
    subs = connected_edge_subgraphs(G, 0, 3)
    assert len(subs) == 6
    by_size = {}
    for s in subs:
        by_size.setdefault(len(s), []).append(s)
    assert len(by_size[1]) == 2
    assert len(by_size[2]) == 3
    assert len(by_size[3]) == 1


def test_enumerator_matches_brute_filter_on_corpus():
    rng = random.Random(MASTER_SEED + 1)
    for _ in range(25):
        G = random_graph(rng, max_edges=10, max_degree=4)
        for v in range(G.vertex_count):
            for m in range(1, G.edge_count + 1):
                fast = connected_edge_subgraphs(G, v, m)
                assert list(fast) == brute_connected_sets(G, v=v, max_edges=m)


def test_supersets_match_brute_filter():
    rng = random.Random(MASTER_SEED + 2)
    for _ in range(15):
        G = random_graph(rng, max_edges=8, max_degree=3)
        for e in range(G.edge_count):
            fast = connected_edge_supersets(G, e, G.edge_count)
            assert list(fast) == brute_connected_sets(G, anchor_edge=e)


def test_all_connected_sets_unique_and_complete():
    rng = random.Random(MASTER_SEED + 3)
    for _ in range(15):
        G = random_graph(rng, max_edges=9, max_degree=4)
        allsets = connected_edge_sets(G, G.edge_count)
        assert len(set(allsets)) == len(allsets)
        assert list(allsets) == brute_connected_sets(G)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_subgraph_count_bound(seed):
    # counts never exceed (e*Delta)^m / 2 for any anchor vertex
    G = random_graph(random.Random(seed), max_edges=10, max_degree=4)
    delta = max(1, G.max_degree())
    for v in range(G.vertex_count):
        for m in range(1, G.edge_count + 1):
            count = len(connected_edge_subgraphs(G, v, m))
            assert count <= (math.e * delta) ** m / 2


def test_connected_check():
    G = MultiGraph(4, [(0, 1), (1, 2), (2, 3)])
    assert is_connected_edge_set(G, (0, 1))
    assert not is_connected_edge_set(G, (0, 2))
    assert is_connected_edge_set(G, (0,))
    with pytest.raises(ValueError):
        is_connected_edge_set(G, ())  # empty set has no connectivity status
