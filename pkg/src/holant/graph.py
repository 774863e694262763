"""Simple undirected graphs with a canonical edge order.

Everything downstream (signature argument tuples, polymer colourings, edge
assignments) is indexed against the canonical order fixed here: edges sorted
by (min endpoint, max endpoint), and each vertex's incident edges listed in
increasing edge id.
"""

from __future__ import annotations

from .errors import ParseError


class MultiGraph:
    """Undirected graph without loops or parallel edges.

    The name reflects the interface (edge ids are first-class, all bookkeeping
    is per-edge); the current implementation rejects parallel edges because
    every consumer in this package works on simple graphs.
    """

    def __init__(self, vertex_count: int, edges):
        if vertex_count < 0:
            raise ValueError("vertex_count must be >= 0")
        seen = set()
        canon = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range for {vertex_count} vertices")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            canon.append(key)
        canon.sort()
        self.vertex_count = vertex_count
        self.edges = tuple(canon)
        inc = [[] for _ in range(vertex_count)]
        for eid, (u, v) in enumerate(self.edges):
            inc[u].append(eid)
            inc[v].append(eid)
        # incident edge ids are ascending, so list position == canonical rank
        self._incident = tuple(tuple(lst) for lst in inc)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, eid: int):
        return self.edges[eid]

    def incident(self, v: int):
        """Edge ids at v, ascending (canonical rank order)."""
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def max_degree(self) -> int:
        if self.vertex_count == 0:
            return 0
        return max(len(i) for i in self._incident)

    def edge_vertices(self, eids) -> set:
        out = set()
        for e in eids:
            u, v = self.edges[e]
            out.add(u)
            out.add(v)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MultiGraph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"MultiGraph({self.vertex_count}, {list(self.edges)})"

    def to_text(self) -> str:
        lines = [f"{self.vertex_count} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MultiGraph":
        return _parse_graph_lines(_strip_comments(text))


def _strip_comments(text: str):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_graph_lines(lines) -> MultiGraph:
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"header promises {m} edges, file has {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected edge line 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"bad edge line {line!r}") from exc
    try:
        return MultiGraph(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def is_connected_edge_set(G: MultiGraph, eids) -> bool:
    """True iff the subgraph spanned by the edge ids is connected (and nonempty)."""
    eids = list(eids)
    if not eids:
        raise ValueError("empty edge set has no connectivity status")
    eset = set(eids)
    start = G.edges[eids[0]][0]
    seen_v = {start}
    stack = [start]
    seen_e = set()
    while stack:
        v = stack.pop()
        for e in G.incident(v):
            if e in eset and e not in seen_e:
                seen_e.add(e)
                u, w = G.edges[e]
                for x in (u, w):
                    if x not in seen_v:
                        seen_v.add(x)
                        stack.append(x)
    return len(seen_e) == len(eset)


def _grow_from_seeds(G: MultiGraph, seeds, max_edges: int):
    """All connected edge sets of size <= max_edges containing at least one seed.

    Seeds are processed in order; sets whose least seed is seeds[t] are grown
    with seeds[:t] forbidden, which makes the enumeration exactly-once: each
    connected superset is built by always extending with a boundary edge and
    banning an extension for all later sibling branches.
    """
    if max_edges < 1:
        return []
    out = []
    banned_seeds: set = set()
    for seed in seeds:
        if seed in banned_seeds:
            continue
        u, v = G.edges[seed]
        _grow(G, [seed], {u, v}, set(banned_seeds), max_edges, out)
        banned_seeds.add(seed)
    return out


def _grow(G, stack_edges, vset, banned, max_edges, out):
    out.append(tuple(sorted(stack_edges)))
    if len(stack_edges) == max_edges:
        return
    in_cur = set(stack_edges)
    cand = sorted(
        {e for x in vset for e in G.incident(x)} - in_cur - banned
    )
    newly: set = set()
    for e in cand:
        u, v = G.edges[e]
        added = [x for x in (u, v) if x not in vset]
        stack_edges.append(e)
        vset.update(added)
        _grow(G, stack_edges, vset, banned | newly, max_edges, out)
        stack_edges.pop()
        vset.difference_update(added)
        newly.add(e)


def _shortlex(sets):
    return sorted(sets, key=lambda t: (len(t), t))


def connected_edge_subgraphs(G: MultiGraph, v: int, max_edges: int):
    """Connected edge sets S, 1 <= |S| <= max_edges, whose subgraph contains v.

    Output is deterministic: sorted edge-id tuples in shortlex order.
    """
    if not (0 <= v < G.vertex_count):
        raise ValueError(f"vertex {v} out of range")
    if max_edges < 0:
        raise ValueError("max_edges must be >= 0")
    return _shortlex(_grow_from_seeds(G, G.incident(v), max_edges))


def connected_edge_supersets(G: MultiGraph, eid: int, max_edges: int):
    """Connected edge sets containing edge eid, |S| <= max_edges, shortlex."""
    if not (0 <= eid < G.edge_count):
        raise ValueError(f"edge {eid} out of range")
    return _shortlex(_grow_from_seeds(G, [eid], max_edges))


def connected_edge_sets(G: MultiGraph, max_edges: int):
    """All connected edge sets with 1 <= |S| <= max_edges, shortlex."""
    return _shortlex(_grow_from_seeds(G, range(G.edge_count), max_edges))
