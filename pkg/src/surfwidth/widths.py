"""Exact pathwidth and treewidth for small graphs, with witnesses.

Pathwidth is computed as the vertex separation number by a dynamic program
over all vertex subsets (vectorized with numpy, one popcount layer at a
time).  Treewidth is the least maximum back-degree over elimination orders,
found by a memoized search over eliminated-vertex subsets.  The oracles at
the bottom enumerate orders directly and share no code with the solvers.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .decomposition import Decomposition, path_decomposition
from .errors import ResourceExhausted

DEFAULT_LIMIT = 22
ORACLE_LIMIT = 9


def vertex_limit(limit=None) -> int:
    if limit is not None:
        return int(limit)
    env = os.environ.get("SURFWIDTH_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


@dataclass(frozen=True)
class WidthCertificate:
    order: tuple
    value: int
    kind: str  # "pathwidth" or "treewidth"


def _index(g: nx.Graph):
    try:
        nodes = sorted(g.nodes)
    except TypeError:
        nodes = sorted(g.nodes, key=repr)
    pos = {v: i for i, v in enumerate(nodes)}
    adj = [0] * len(nodes)
    for u, v in g.edges:
        if u == v:
            continue
        adj[pos[u]] |= 1 << pos[v]
        adj[pos[v]] |= 1 << pos[u]
    return nodes, adj


def _check_size(g: nx.Graph, limit):
    n = g.number_of_nodes()
    cap = vertex_limit(limit)
    if n > cap:
        raise ResourceExhausted(f"graph has {n} vertices; exact solver limit is {cap}")


def vertex_separation(g: nx.Graph, order) -> int:
    """Max over prefixes of the number of prefix vertices with a neighbour outside."""
    outside = {v: sum(1 for w in g.adj[v] if w != v) for v in g.nodes}
    placed = set()
    boundary = best = 0
    for v in order:
        placed.add(v)
        if outside[v]:
            boundary += 1
        for w in g.adj[v]:
            if w == v:
                continue
            outside[w] -= 1
            if w in placed and outside[w] == 0:
                boundary -= 1
        best = max(best, boundary)
    return best


def elimination_width(g: nx.Graph, order) -> int:
    """Max back-degree when eliminating vertices in ``order`` with fill-in."""
    adj = {v: set(g.adj[v]) - {v} for v in g.nodes}
    best = 0
    for v in order:
        nbrs = adj.pop(v)
        best = max(best, len(nbrs))
        for u in nbrs:
            adj[u].discard(v)
            adj[u] |= nbrs - {u}
    return best


# ------------------------------------------------------------------ pathwidth


def pathwidth_exact(g: nx.Graph, limit=None) -> WidthCertificate:
    """Vertex separation number by subset DP.

    ``best[S]`` is the least achievable maximum boundary over orders of
    ``S`` placed first; ``best[S] = max(cost[S], min_v best[S - v])``.
    """
    _check_size(g, limit)
    nodes, adj = _index(g)
    n = len(nodes)
    if n == 0:
        return WidthCertificate((), 0, "pathwidth")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    cost = np.zeros(size, dtype=np.int8)
    for v in range(n):
        inside = ((masks >> v) & 1).astype(bool)
        open_ = (masks & adj[v]) != adj[v]
        cost += (inside & open_).astype(np.int8)

    pop = np.zeros(size, dtype=np.int8)
    for v in range(n):
        pop += ((masks >> v) & 1).astype(np.int8)
    by_layer = np.argsort(pop, kind="stable")
    bounds = np.searchsorted(pop[by_layer], np.arange(n + 2))

    best = np.zeros(size, dtype=np.int8)
    for k in range(1, n + 1):
        layer = by_layer[bounds[k]:bounds[k + 1]]
        low = np.full(layer.shape, 127, dtype=np.int8)
        for v in range(n):
            bit = 1 << v
            has = (layer & bit) != 0
            sub = layer[has] ^ bit
            low[has] = np.minimum(low[has], best[sub])
        best[layer] = np.maximum(cost[layer], low)

    value = int(best[size - 1])
    # walk back from the full set, removing the smallest vertex that keeps the bound
    order_rev = []
    s = size - 1
    while s:
        for v in range(n):
            bit = 1 << v
            if s & bit and best[s ^ bit] <= value:
                order_rev.append(v)
                s ^= bit
                break
    order = tuple(nodes[i] for i in reversed(order_rev))
    return WidthCertificate(order, value, "pathwidth")


def pathwidth_oracle(g: nx.Graph) -> int:
    """Minimum vertex separation over all ``n!`` orders (``n <= 9``)."""
    n = g.number_of_nodes()
    if n > ORACLE_LIMIT:
        raise ResourceExhausted(f"oracle limited to {ORACLE_LIMIT} vertices, got {n}")
    if n == 0:
        return 0
    return min(vertex_separation(g, order) for order in itertools.permutations(g.nodes))


# ------------------------------------------------------------------ treewidth


def _reach(adj, eliminated, v):
    """Vertices outside ``eliminated + v`` joined to ``v`` through eliminated ones."""
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        seen |= nxt
        frontier = nxt & eliminated
    return seen & ~eliminated & ~(1 << v)


def _min_degree_order(adj, n):
    work = {v: set(i for i in range(n) if adj[v] >> i & 1) for v in range(n)}
    order, best = [], 0
    while work:
        v = min(work, key=lambda x: (len(work[x]), x))
        nbrs = work.pop(v)
        best = max(best, len(nbrs))
        for u in nbrs:
            work[u].discard(v)
            work[u] |= nbrs - {u}
        order.append(v)
    return order, best


def _contraction_degeneracy(adj, n):
    """Minor-min-width lower bound: contract a min-degree vertex into its
    min-degree neighbour, recording the largest min degree seen."""
    work = {v: {i for i in range(n) if adj[v] >> i & 1} for v in range(n)}
    best = 0
    while len(work) > 1:
        v = min(work, key=lambda x: (len(work[x]), x))
        nbrs = work[v]
        best = max(best, len(nbrs))
        if not nbrs:
            del work[v]
            continue
        u = min(nbrs, key=lambda x: (len(work[x]), x))
        for w in nbrs - {u}:
            work[w].discard(v)
            work[w].add(u)
            work[u].add(w)
        work[u].discard(v)
        del work[v]
    return best


def treewidth_exact(g: nx.Graph, limit=None) -> WidthCertificate:
    """Least maximum back-degree over elimination orders.

    The min-degree heuristic gives an upper bound and contraction degeneracy
    a lower bound.  Feasibility of width ``k`` is decided by a depth-first
    search over eliminated sets that memoizes dead sets; ``k`` walks down
    from the upper bound until the search fails, so only the last step has
    to exhaust the space.  Vertices are tried in increasing order, so the
    witness is the first feasible order the search meets.
    """
    _check_size(g, limit)
    nodes, adj = _index(g)
    n = len(nodes)
    if n == 0:
        return WidthCertificate((), 0, "treewidth")
    full = (1 << n) - 1
    heuristic, upper = _min_degree_order(adj, n)
    lower = _contraction_degeneracy(adj, n)

    def feasible(k):
        dead = set()
        stack_order = []

        def search(eliminated):
            rest = full & ~eliminated
            if rest.bit_count() <= k + 1:
                return True
            if eliminated in dead:
                return False
            for v in _bits(rest):
                if _reach(adj, eliminated, v).bit_count() <= k:
                    stack_order.append(v)
                    if search(eliminated | (1 << v)):
                        return True
                    stack_order.pop()
            dead.add(eliminated)
            return False

        if search(0):
            placed = set(stack_order)
            return stack_order + [v for v in range(n) if v not in placed]
        return None

    best_k, best_order = upper, heuristic
    for k in range(upper - 1, lower - 1, -1):
        order = feasible(k)
        if order is None:
            break
        best_k, best_order = k, order
    return WidthCertificate(tuple(nodes[i] for i in best_order), best_k, "treewidth")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def treewidth_oracle(g: nx.Graph) -> int:
    """Minimum elimination width over all ``n!`` orders (``n <= 9``)."""
    n = g.number_of_nodes()
    if n > ORACLE_LIMIT:
        raise ResourceExhausted(f"oracle limited to {ORACLE_LIMIT} vertices, got {n}")
    if n == 0:
        return 0
    return min(elimination_width(g, order) for order in itertools.permutations(g.nodes))


# ------------------------------------------------------------- certificates


def certificate_value(c: WidthCertificate, g: nx.Graph) -> int:
    if c.kind == "pathwidth":
        return vertex_separation(g, c.order)
    if c.kind == "treewidth":
        return elimination_width(g, c.order)
    raise ValueError(f"unknown certificate kind {c.kind!r}")


def decomposition_from_certificate(c: WidthCertificate, g: nx.Graph) -> Decomposition:
    """Explicit path or tree decomposition of width exactly ``c.value``."""
    if len(c.order) != g.number_of_nodes() or set(c.order) != set(g.nodes):
        raise ValueError("certificate order does not match the graph's vertices")
    if certificate_value(c, g) != c.value:
        raise ValueError("certificate value does not match its order on this graph")
    if c.kind == "pathwidth":
        return path_decomposition_from_order(g, c.order)
    return tree_decomposition_from_order(g, c.order)


def path_decomposition_from_order(g: nx.Graph, order) -> Decomposition:
    """Bag ``i`` is ``order[i]`` plus earlier vertices with a neighbour at ``i`` or later."""
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max([pos[v]] + [pos[u] for u in g.adj[v]]) for v in order}
    bags = []
    for i, v in enumerate(order):
        bag = {v} | {u for u in order[:i] if last[u] >= i}
        bags.append(bag)
    return path_decomposition(bags)


def tree_decomposition_from_order(g: nx.Graph, order) -> Decomposition:
    """Bag per vertex: the vertex and its later neighbours in the filled graph.

    Each bag hangs off the bag of its earliest-eliminated later neighbour;
    roots of different components are chained so the host is one tree.
    """
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.adj[v]) - {v} for v in g.nodes}
    bags = {}
    host = nx.Graph()
    host.add_nodes_from(order)
    roots = []
    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        bags[v] = later | {v}
        for u in later:
            adj[u] |= later - {u}
        if later:
            host.add_edge(v, min(later, key=pos.get))
        else:
            roots.append(v)
    for a, b in zip(roots, roots[1:]):
        host.add_edge(a, b)
    return Decomposition(host, bags, "tree")
