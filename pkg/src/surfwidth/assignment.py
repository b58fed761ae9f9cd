"""Edge-assignments built from spanning trees.

An edge-assignment maps every face to an edge on its boundary, injectively.
Starting from a spanning tree ``T`` (or, on the sphere, a spanning tree with
one edge removed), faces are joined whenever they share an edge outside
``T``.  That face graph is connected and has at least as many edges as
vertices, so it contains a connected unicyclic spanning subgraph.  Orienting
each of its edges towards a distinct endpoint gives the assignment.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .embedding import EmbeddedGraph, require_polyhedral
from .errors import PreconditionError
from .spanning import SpanningSubgraph


@dataclass(frozen=True)
class FaceAdjacencyGraph:
    """Graph on face ids whose edges are labelled by primal edge ids.

    ``edges`` maps a primal edge id to the (sorted) pair of faces it joins.
    """

    face_count: int
    edges: dict

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Sorted ``(neighbour, label)`` lists."""
        adj = [[] for _ in range(self.face_count)]
        for label, (f, h) in self.edges.items():
            adj[f].append((h, label))
            adj[h].append((f, label))
        for lst in adj:
            lst.sort()
        return adj

    def is_connected(self) -> bool:
        if self.face_count == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for h, _ in adj[f]:
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return len(seen) == self.face_count

    def is_simple(self) -> bool:
        pairs = list(self.edges.values())
        return len(pairs) == len(set(pairs)) and all(f != h for f, h in pairs)

    def is_unicyclic(self) -> bool:
        return len(self.edges) == self.face_count and self.is_connected()


@dataclass(frozen=True)
class EdgeAssignment:
    """Injective face -> boundary-edge map; ``tau[f]`` is an edge id."""

    tau: dict

    def image(self) -> frozenset:
        return frozenset(self.tau.values())

    def check(self, g: EmbeddedGraph) -> None:
        """Raise :class:`PreconditionError` unless ``tau`` is a valid assignment for ``g``."""
        faces = g.faces
        if set(self.tau) != set(range(len(faces))):
            raise PreconditionError("edge-assignment must be defined on every face")
        if len(self.image()) != len(self.tau):
            raise PreconditionError("edge-assignment is not injective")
        for f, e in self.tau.items():
            if e not in faces[f].edges:
                raise PreconditionError(f"edge {e} is not on the boundary of face {f}")

    def lines(self) -> list[str]:
        return [f"tau {f} {self.tau[f]}" for f in sorted(self.tau)]


def face_adjacency_graph(g: EmbeddedGraph, t: SpanningSubgraph) -> FaceAdjacencyGraph:
    """Faces joined by the edges of ``g`` outside ``t``."""
    require_polyhedral(g)
    edges = {}
    for e in range(g.edge_count):
        if e in t.edges:
            continue
        f, h = g.faces_of_edge[e]
        edges[e] = (min(f, h), max(f, h))
    tp = FaceAdjacencyGraph(len(g.faces), edges)
    if not tp.is_connected():
        raise AssertionError("face adjacency graph is disconnected; input is not a forest of the expected shape")
    return tp


def unicyclic_spanning_subgraph(tp: FaceAdjacencyGraph) -> FaceAdjacencyGraph:
    """BFS tree from face 0 plus the smallest remaining edge."""
    if len(tp.edges) < tp.face_count:
        raise PreconditionError("face graph has fewer edges than vertices; no unicyclic spanning subgraph")
    if not tp.is_connected():
        raise PreconditionError("face graph is disconnected")
    adj = tp.adjacency()
    keep = {}
    seen = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for h, label in adj[f]:
            if h not in seen:
                seen.add(h)
                keep[label] = tp.edges[label]
                queue.append(h)
    rest = [(pair, label) for label, pair in tp.edges.items() if label not in keep]
    pair, label = min(rest)
    keep[label] = pair
    return FaceAdjacencyGraph(tp.face_count, keep)


def incidence_bijection(tpp: FaceAdjacencyGraph) -> dict:
    """Map each face to an incident edge label of a unicyclic graph, bijectively.

    Cycle faces take the edge to their successor, the cycle being walked from
    its smallest face towards that face's smaller cycle neighbour.  Every
    other face takes the first edge of its path towards the cycle.
    """
    if not tpp.is_unicyclic():
        raise PreconditionError("incidence_bijection needs a connected unicyclic graph")
    adj = tpp.adjacency()
    degree = [len(a) for a in adj]
    on_cycle = [True] * tpp.face_count
    leaves = deque(f for f in range(tpp.face_count) if degree[f] == 1)
    while leaves:
        f = leaves.popleft()
        on_cycle[f] = False
        for h, _ in adj[f]:
            if on_cycle[h]:
                degree[h] -= 1
                if degree[h] == 1:
                    leaves.append(h)
    cycle_adj = {
        f: [(h, label) for h, label in adj[f] if on_cycle[h]]
        for f in range(tpp.face_count)
        if on_cycle[f]
    }
    sigma = {}
    start = min(cycle_adj)
    prev, cur = None, start
    nxt, label = min(cycle_adj[start])
    while True:
        sigma[cur] = label
        prev, cur = cur, nxt
        if cur == start:
            break
        (a, la), (b, lb) = cycle_adj[cur]
        nxt, label = (b, lb) if a == prev else (a, la)

    queue = deque(sorted(cycle_adj))
    while queue:
        f = queue.popleft()
        for h, label in adj[f]:
            if h not in sigma:
                sigma[h] = label
                queue.append(h)
    return sigma


def edge_assignment(g: EmbeddedGraph, t: SpanningSubgraph) -> EdgeAssignment:
    """Edge-assignment avoiding the edges of ``t``.

    On the sphere ``t`` must be a spanning tree minus one edge and the face
    graph is already unicyclic, so the residual graph equals ``t``.  On every
    other surface ``t`` must be a spanning tree.
    """
    require_polyhedral(g)
    chi = g.chi
    if chi == 2:
        if not (t.is_forest() and t.component_count() == 2):
            raise PreconditionError("on the sphere t must be a spanning tree minus one edge")
    elif not t.is_tree():
        raise PreconditionError("t must be a spanning tree")
    tp = face_adjacency_graph(g, t)
    tpp = unicyclic_spanning_subgraph(tp)
    sigma = incidence_bijection(tpp)
    tau = EdgeAssignment({f: sigma[f] for f in range(len(g.faces))})
    tau.check(g)
    if not tau.image().isdisjoint(t.edges):
        raise AssertionError("edge-assignment uses an edge of t")
    return tau


def residual_graph(g: EmbeddedGraph, tau: EdgeAssignment) -> SpanningSubgraph:
    """``g`` without the edges in the image of ``tau``."""
    tau.check(g)
    return SpanningSubgraph(g, frozenset(range(g.edge_count)) - tau.image())
