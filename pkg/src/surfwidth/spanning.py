"""Spanning trees with bounded degree or bounded total excess."""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .embedding import EmbeddedGraph
from .errors import NotFound, PreconditionError, ResourceExhausted

DEFAULT_NODE_LIMIT = 10**8


@dataclass(frozen=True)
class SpanningSubgraph:
    """An edge subset of ``graph`` on all of its vertices."""

    graph: EmbeddedGraph
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        bad = [e for e in self.edges if not 0 <= e < self.graph.edge_count]
        if bad:
            raise PreconditionError(f"edge ids {sorted(bad)} are not edges of the parent graph")

    def degree(self, v: int) -> int:
        return sum(1 for e in self.graph.rotations[v] if e in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.graph.vertex_count
        for e in self.edges:
            u, v = self.graph.endpoints(e)
            deg[u] += 1
            deg[v] += 1
        return deg

    def component_count(self) -> int:
        parent = list(range(self.graph.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count = self.graph.vertex_count
        for e in self.edges:
            a, b = (find(x) for x in self.graph.endpoints(e))
            if a != b:
                parent[a] = b
                count -= 1
        return count

    def is_forest(self) -> bool:
        return len(self.edges) == self.graph.vertex_count - self.component_count()

    def is_tree(self) -> bool:
        return self.is_forest() and self.component_count() == 1

    def sorted_edges(self) -> list[int]:
        return sorted(self.edges, key=lambda e: _edge_key(self.graph, e))


def _edge_key(g: EmbeddedGraph, e: int) -> tuple[int, int]:
    u, v = g.endpoints(e)
    return (min(u, v), max(u, v))


def total_excess(f: SpanningSubgraph, k: int) -> int:
    if k < 1:
        raise ValueError("k must be a positive integer")
    return sum(max(d - k, 0) for d in f.degrees())


def find_low_excess_tree(
    g: EmbeddedGraph,
    k: int,
    budget: int = 0,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> SpanningSubgraph:
    """Spanning tree ``T`` with ``total_excess(T, k) <= budget``.

    Branch and bound over edges in lexicographic endpoint order, trying
    inclusion before exclusion.  A branch dies when its excess passes the
    budget or when the included plus undecided edges can no longer connect
    the graph, so the first tree found is the lexicographically first one in
    that search order.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    n = g.vertex_count
    order = sorted(range(g.edge_count), key=lambda e: _edge_key(g, e))
    ends = [g.endpoints(e) for e in order]
    m = len(order)
    if n == 1:
        return SpanningSubgraph(g, frozenset())

    parent = list(range(n))
    size = [1] * n
    history = []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a, b):
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        history.append(b)

    def undo():
        b = history.pop()
        a = parent[b]
        size[a] -= size[b]
        parent[b] = b

    def still_connectable(i):
        # included edges are already merged in parent; add undecided ones
        p = {}

        def f2(x):
            r = find(x)
            while r in p:
                r = p[r]
            return r

        comps = sum(1 for v in range(n) if parent[v] == v)
        for j in range(i, m):
            a, b = f2(ends[j][0]), f2(ends[j][1])
            if a != b:
                p[a] = b
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    deg = [0] * n
    chosen = []
    nodes = 0

    def search(i, excess):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise ResourceExhausted(f"spanning tree search exceeded {node_limit} nodes")
        if len(chosen) == n - 1:
            return True
        if i == m or (m - i) < (n - 1 - len(chosen)):
            return False
        u, v = ends[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            extra = (deg[u] >= k) + (deg[v] >= k)
            if excess + extra <= budget:
                deg[u] += 1
                deg[v] += 1
                chosen.append(order[i])
                union(ru, rv)
                if search(i + 1, excess + extra):
                    return True
                undo()
                chosen.pop()
                deg[u] -= 1
                deg[v] -= 1
        if still_connectable(i + 1):
            return search(i + 1, excess)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * m + 100))
    try:
        found = search(0, 0)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        raise NotFound(f"no spanning tree with total excess <= {budget} over degree {k}")
    return SpanningSubgraph(g, frozenset(chosen))


def delete_edge_for_sphere(t: SpanningSubgraph) -> SpanningSubgraph:
    """Remove the lexicographically smallest edge of a spanning tree."""
    if not t.is_tree():
        raise PreconditionError("delete_edge_for_sphere needs a spanning tree")
    if not t.edges:
        raise PreconditionError("tree has no edge to delete")
    smallest = min(t.edges, key=lambda e: _edge_key(t.graph, e))
    return SpanningSubgraph(t.graph, t.edges - {smallest})


def hamiltonian_path(g: EmbeddedGraph, node_limit: int = DEFAULT_NODE_LIMIT):
    """A Hamiltonian path as a vertex list, or ``None``.

    Backtracking from each start vertex in increasing order, extending with
    neighbours in increasing order.  A branch is cut when the unvisited
    vertices stop being reachable from the path end, or when more than one
    unvisited vertex is left with a single usable neighbour (each such vertex
    would have to end the path).
    """
    n = g.vertex_count
    adj = [0] * n
    for u, v, _ in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    nodes = 0

    def viable(end, visited):
        free = full & ~visited
        if not free:
            return True
        avail = free | (1 << end)
        # reachability of all free vertices from end through free vertices
        seen = 1 << end
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            nxt &= free & ~seen
            seen |= nxt
            frontier = nxt
        if seen & free != free:
            return False
        dangling = 0
        f = free
        while f:
            low = f & -f
            w = low.bit_length() - 1
            f ^= low
            d = (adj[w] & avail).bit_count()
            if d == 0:
                return False
            if d == 1:
                dangling += 1
                if dangling > 1:
                    return False
        return True

    path = []

    def extend(end, visited):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise ResourceExhausted(f"Hamiltonian path search exceeded {node_limit} nodes")
        if visited == full:
            return True
        cand = adj[end] & ~visited
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            vis = visited | low
            if viable(w, vis):
                path.append(w)
                if extend(w, vis):
                    return True
                path.pop()
        return False

    for s in range(n):
        path[:] = [s]
        if viable(s, 1 << s) and extend(s, 1 << s):
            return list(path)
    return None


def path_as_subgraph(g: EmbeddedGraph, path) -> SpanningSubgraph:
    if sorted(path) != list(range(g.vertex_count)):
        raise PreconditionError("path must visit every vertex exactly once")
    edges = set()
    for a, b in zip(path, path[1:]):
        if (a, b) not in g.edge_index:
            raise PreconditionError(f"consecutive path vertices {a} and {b} are not adjacent")
        edges.add(g.edge_index[(a, b)])
    return SpanningSubgraph(g, frozenset(edges))
