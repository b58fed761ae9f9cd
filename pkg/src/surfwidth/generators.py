"""Desk-scale corpus of polyhedral embeddings and a small embedding search.

Every fixed embedding is written down as a face list and assembled with
:func:`~surfwidth.embedding.from_faces`, which re-traces the faces and refuses
inconsistent tables.
"""

from __future__ import annotations

import itertools
import math

import networkx as nx

from .embedding import EmbeddedGraph, check_polyhedral, from_faces
from .errors import NotFound, PreconditionError, ResourceExhausted

PLATONIC = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")


def _tetrahedron_faces():
    return [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]


def _octahedron_faces():
    # 0 and 5 are the poles, 1..4 the equator
    top = [(0, i, i % 4 + 1) for i in range(1, 5)]
    bottom = [(5, i % 4 + 1, i) for i in range(1, 5)]
    return top + bottom


def _icosahedron_faces():
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    up = lambda i: 1 + i % 5
    lo = lambda i: 6 + i % 5
    faces = []
    for i in range(5):
        faces.append((0, up(i), up(i + 1)))
        faces.append((up(i), lo(i), up(i + 1)))
        faces.append((up(i + 1), lo(i), lo(i + 1)))
        faces.append((11, lo(i + 1), lo(i)))
    return faces


def _dodecahedron_faces():
    # four layers of five: a top pentagon, b and c the middle zigzag, d bottom
    a = lambda i: i % 5
    b = lambda i: 5 + i % 5
    c = lambda i: 10 + i % 5
    d = lambda i: 15 + i % 5
    faces = [tuple(a(i) for i in range(5))]
    for i in range(5):
        faces.append((a(i + 1), a(i), b(i), c(i), b(i + 1)))
        faces.append((b(i + 1), c(i), d(i), d(i + 1), c(i + 1)))
    faces.append(tuple(d(i) for i in range(4, -1, -1)))
    return faces


def _prism_faces(n):
    top = tuple(range(n))
    bottom = tuple(n + i for i in range(n - 1, -1, -1))
    sides = [((i + 1) % n, i, n + i, n + (i + 1) % n) for i in range(n)]
    return [top, bottom] + sides


def platonic(name: str) -> EmbeddedGraph:
    if name == "tetrahedron":
        return from_faces(4, _tetrahedron_faces())
    if name == "cube":
        return from_faces(8, _prism_faces(4))
    if name == "octahedron":
        return from_faces(6, _octahedron_faces())
    if name == "dodecahedron":
        return from_faces(20, _dodecahedron_faces())
    if name == "icosahedron":
        return from_faces(12, _icosahedron_faces())
    raise PreconditionError(f"unknown Platonic solid {name!r}; choose from {', '.join(PLATONIC)}")


def prism(n: int) -> EmbeddedGraph:
    """``C_n x K_2`` on the sphere."""
    if n < 3:
        raise PreconditionError("prism needs n >= 3")
    return from_faces(2 * n, _prism_faces(n))


def toroidal_grid(m: int, n: int) -> EmbeddedGraph:
    """``C_m x C_n`` quadrangulating the torus; vertex ``(i, j)`` is ``i*n + j``."""
    if m < 3 or n < 3:
        raise PreconditionError("toroidal grid needs m, n >= 3")
    at = lambda i, j: (i % m) * n + j % n
    faces = [
        (at(i, j), at(i, j + 1), at(i + 1, j + 1), at(i + 1, j))
        for i in range(m)
        for j in range(n)
    ]
    return from_faces(m * n, faces)


def klein_grid(m: int, n: int) -> EmbeddedGraph:
    """Quadrangulated Klein bottle.

    An ``m x n`` grid that is periodic in the row direction; the last column
    is glued to the first with rows reflected by ``i -> -i mod m``.
    """
    if m < 3 or n < 3:
        raise PreconditionError("Klein grid needs m, n >= 3")
    at = lambda i, j: (i % m) * n + j
    faces = []
    for i in range(m):
        for j in range(n - 1):
            faces.append((at(i, j), at(i, j + 1), at(i + 1, j + 1), at(i + 1, j)))
        faces.append((at(i, n - 1), at(-i, 0), at(-i - 1, 0), at(i + 1, n - 1)))
    return from_faces(m * n, faces)


def k6_projective() -> EmbeddedGraph:
    """Triangular embedding of K6 in the projective plane (hemi-icosahedron)."""
    faces = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
    ]
    return from_faces(6, faces)


def k7_torus() -> EmbeddedGraph:
    """Triangular embedding of K7 on the torus from the Z_7 difference triangles."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 3) % 7, (i + 2) % 7))
    return from_faces(7, faces)


def connected_sum(g1: EmbeddedGraph, g2: EmbeddedGraph, face1: int = 0, face2: int = 0) -> EmbeddedGraph:
    """Glue two embeddings along a triangular face of each.

    The two faces are removed and their boundaries identified vertex by
    vertex in walk order.  The Euler characteristic of the result is
    ``chi(g1) + chi(g2) - 2``; two triangulations that are simplicial give a
    polyhedral result.
    """
    w1 = g1.faces[face1].vertices
    w2 = g2.faces[face2].vertices
    if len(w1) != 3 or len(w2) != 3:
        raise PreconditionError("connected sum glues along triangular faces")
    n1 = g1.vertex_count
    relabel = dict(zip(w2, w1))
    nxt = n1
    for v in range(g2.vertex_count):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    faces = [w.vertices for f, w in enumerate(g1.faces) if f != face1]
    faces += [tuple(relabel[v] for v in w.vertices) for f, w in enumerate(g2.faces) if f != face2]
    return from_faces(nxt, faces)


def k6_k7_sum() -> EmbeddedGraph:
    """K6 projective # K7 torus: chi = -1, 10 vertices, 22 faces."""
    return connected_sum(k6_projective(), k7_torus())


def k7_k7_sum() -> EmbeddedGraph:
    """K7 torus # K7 torus: chi = -2, 11 vertices, 26 faces."""
    return connected_sum(k7_torus(), k7_torus())


def corpus() -> dict[str, EmbeddedGraph]:
    """Named polyhedral instances used by the test and acceptance suites."""
    out = {name: platonic(name) for name in PLATONIC}
    for n in range(3, 9):
        out[f"prism{n}"] = prism(n)
    for m, n in ((3, 3), (3, 4), (3, 5), (4, 4), (4, 5)):
        out[f"torus{m}x{n}"] = toroidal_grid(m, n)
    for m, n in ((3, 3), (4, 4)):
        out[f"klein{m}x{n}"] = klein_grid(m, n)
    out["k6_projective"] = k6_projective()
    out["k7_torus"] = k7_torus()
    out["k6_k7_sum"] = k6_k7_sum()
    out["k7_k7_sum"] = k7_k7_sum()
    return out


def by_name(name: str, params=()) -> EmbeddedGraph:
    """Resolve a generator name as used on the command line."""
    params = [int(p) for p in params]
    key = name.replace("-", "_")
    if key in PLATONIC:
        return platonic(key)
    table = {
        "prism": (prism, 1),
        "toroidal_grid": (toroidal_grid, 2),
        "torus": (toroidal_grid, 2),
        "klein_grid": (klein_grid, 2),
        "klein": (klein_grid, 2),
        "k6_projective": (k6_projective, 0),
        "k7_torus": (k7_torus, 0),
        "k6_k7_sum": (k6_k7_sum, 0),
        "k7_k7_sum": (k7_k7_sum, 0),
    }
    if key in table:
        fn, arity = table[key]
        if len(params) != arity:
            raise PreconditionError(f"{name} takes {arity} integer parameter(s)")
        return fn(*params)
    named = corpus()
    if key in named and not params:
        return named[key]
    raise PreconditionError(f"unknown generator {name!r}")


# ------------------------------------------------------------ embedding search


def _cyclic_orders(nbrs, canonical_reflection=False):
    """All cyclic orders of ``nbrs`` with the smallest element first."""
    first, rest = nbrs[0], nbrs[1:]
    for perm in itertools.permutations(rest):
        if canonical_reflection and len(perm) >= 2 and perm[0] > perm[-1]:
            continue
        yield (first,) + perm


def embedding_search(
    graph: nx.Graph,
    target_chi: int,
    require_polyhedral: bool = False,
    budget: int = 10**6,
) -> EmbeddedGraph:
    """Exhaustive search over signed rotation systems for a given Euler characteristic.

    Vertices must be ``0..n-1``.  Vertex 0's rotation is fixed up to
    reflection.  Orientable embeddings (all signs positive) are tried first
    when ``target_chi`` is even; non-orientable sign patterns put ``+`` on a
    BFS tree and range over the remaining edges.  The first hit in this fixed
    order is returned.

    Raises :class:`ResourceExhausted` when the number of rotation systems
    exceeds ``budget`` (checked up front) or the number of evaluated
    candidates does, and :class:`NotFound` when the space is exhausted.
    """
    n = graph.number_of_nodes()
    if sorted(graph.nodes) != list(range(n)):
        raise PreconditionError("embedding_search expects vertices 0..n-1")
    if not nx.is_connected(graph):
        raise PreconditionError("graph must be connected")
    edge_list = sorted((min(u, v), max(u, v)) for u, v in graph.edges)
    m = len(edge_list)
    if target_chi > 2:
        raise NotFound(f"no cellular embedding has chi = {target_chi}")

    eid = {}
    for i, (u, v) in enumerate(edge_list):
        eid[(u, v)] = eid[(v, u)] = i
    nbrs = [sorted(graph.neighbors(v)) for v in range(n)]
    space = math.prod(math.factorial(max(len(x) - 1, 0)) for x in nbrs)
    if space > budget:
        raise ResourceExhausted(
            f"{space} rotation systems exceed the search budget of {budget}"
        )

    tree = set()
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop(0)
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                tree.add(eid[(u, w)])
                frontier.append(w)
    cotree = [i for i in range(m) if i not in tree]

    sign_patterns = []
    if target_chi % 2 == 0:
        sign_patterns.append(())
    if target_chi <= 1 and cotree:
        for bits in itertools.product((1, -1), repeat=len(cotree)):
            if -1 in bits:
                sign_patterns.append(tuple(i for i, b in zip(cotree, bits) if b == -1))

    options = [list(_cyclic_orders(nbrs[0], canonical_reflection=True))]
    options += [list(_cyclic_orders(nbrs[v])) for v in range(1, n)]
    evaluated = 0
    for negative in sign_patterns:
        neg = set(negative)
        edges = tuple((u, v, -1 if i in neg else 1) for i, (u, v) in enumerate(edge_list))
        for choice in itertools.product(*options):
            evaluated += 1
            if evaluated > budget:
                raise ResourceExhausted(f"embedding search exceeded {budget} candidates")
            rotations = tuple(
                tuple(eid[(v, u)] for u in order) for v, order in enumerate(choice)
            )
            g = EmbeddedGraph(n, edges, rotations)
            if g.vertex_count - m + len(g.faces) != target_chi:
                continue
            if require_polyhedral and not check_polyhedral(g):
                continue
            return g
    raise NotFound(f"no embedding with chi = {target_chi} found")
