import functools

import networkx as nx
import pytest

from surfwidth.decomposition import Decomposition
from surfwidth.embedding import EmbeddedGraph, dual_graph, face_subdivision
from surfwidth.generators import corpus as _corpus
from surfwidth.widths import (
    path_decomposition_from_order,
    pathwidth_exact,
    tree_decomposition_from_order,
    treewidth_exact,
)

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def corpus_instances():
    return _corpus()


@functools.lru_cache(maxsize=None)
def target_graph(name, target):
    g = corpus_instances()[name]
    if target == "graph":
        return g.graph
    if target == "dual":
        return dual_graph(g)
    if target == "fs":
        return face_subdivision(g)
    raise ValueError(target)


@functools.lru_cache(maxsize=None)
def exact_width(name, target, kind):
    """Cached exact width certificate (tests share one solver run per graph)."""
    solver = pathwidth_exact if kind == "pw" else treewidth_exact
    return solver(target_graph(name, target))


def switch(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Local switch at ``v``: reverse its rotation, negate incident signs."""
    edges = [list(e) for e in g.edges]
    for e in g.rotations[v]:
        edges[e][2] = -edges[e][2]
    rots = list(g.rotations)
    rots[v] = tuple(reversed(rots[v]))
    return EmbeddedGraph(g.vertex_count, tuple(map(tuple, edges)), tuple(rots))


def relabel(g: EmbeddedGraph, perm) -> EmbeddedGraph:
    """Same embedding with vertex ``v`` renamed ``perm[v]``."""
    rots = [None] * g.vertex_count
    for v, rot in enumerate(g.rotations):
        rots[perm[v]] = rot
    edges = tuple((perm[u], perm[w], s) for u, w, s in g.edges)
    return EmbeddedGraph(g.vertex_count, edges, tuple(rots))


def abstract_embedding(graph: nx.Graph) -> EmbeddedGraph:
    """Some rotation system for a connected graph on ``0..n-1`` (neighbour order)."""
    edges = tuple((u, v, 1) for u, v in sorted((min(a, b), max(a, b)) for a, b in graph.edges))
    index = {(u, v): i for i, (u, v, _) in enumerate(edges)}
    rots = tuple(
        tuple(index[(min(v, w), max(v, w))] for w in sorted(graph.adj[v]))
        for v in range(graph.number_of_nodes())
    )
    return EmbeddedGraph(graph.number_of_nodes(), edges, rots)


def random_decomposition(graph: nx.Graph, rng, kind: str) -> Decomposition:
    """A valid decomposition of ``graph`` of the requested kind.

    ``path``/``tree`` come from a random vertex order; ``general`` contracts
    random edges and uses the quotient graph as host, one part per bag.
    """
    nodes = list(graph.nodes)
    if kind in ("path", "tree"):
        rng.shuffle(nodes)
        build = path_decomposition_from_order if kind == "path" else tree_decomposition_from_order
        return build(graph, nodes)
    part = {v: v for v in nodes}
    edges = list(graph.edges)
    rng.shuffle(edges)
    for u, v in edges[: rng.randrange(len(edges) + 1) // 2]:
        a, b = part[u], part[v]
        if a != b:
            for x in nodes:
                if part[x] == b:
                    part[x] = a
    labels = {p: i for i, p in enumerate(sorted(set(part.values())))}
    host = nx.Graph()
    host.add_nodes_from(labels.values())
    for u, v in graph.edges:
        a, b = labels[part[u]], labels[part[v]]
        if a != b:
            host.add_edge(a, b)
    bags = {i: set() for i in labels.values()}
    for v in nodes:
        bags[labels[part[v]]].add(v)
    return Decomposition(host, bags, "general")


@pytest.fixture(scope="session")
def corpus():
    return corpus_instances()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
