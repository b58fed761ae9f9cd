"""Cellular embeddings of simple graphs on closed surfaces.

An embedding is stored as a signed rotation system: every vertex carries the
cyclic order of its incident edges and every edge carries a sign.  A negative
edge reverses the local orientation when crossed, which is enough to describe
embeddings on non-orientable surfaces as well.

A dart is a pair ``(edge_id, end)``; it leaves ``edges[edge_id][end]``.  Darts
are numbered ``2 * edge_id + end`` when an integer key is needed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import networkx as nx

from .errors import EmbeddingError, PreconditionError

Dart = tuple[int, int]


class SurfaceInfo(NamedTuple):
    chi: int
    orientable: bool


@dataclass(frozen=True)
class FacialWalk:
    """A closed walk bounding one face.

    ``darts`` lists the traversed darts in order, so ``vertices[i]`` is the
    tail of ``darts[i]``.
    """

    darts: tuple[Dart, ...]
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.darts)

    def is_cycle(self) -> bool:
        n = len(self.darts)
        return n >= 3 and len(set(self.vertices)) == n and len(set(self.edges)) == n


@dataclass(frozen=True)
class PolyhedralReport:
    ok: bool
    reason: str = ""
    faces: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class EmbeddedGraph:
    """Signed rotation system of a simple connected graph.

    ``edges[i] = (u, v, sign)`` and ``rotations[v]`` is the cyclic sequence of
    edge ids at ``v``.  Construction validates the structure and raises
    :class:`EmbeddingError` on loops, parallel edges, disconnected graphs or
    rotations that miss or repeat an incident edge.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "rotations", tuple(tuple(r) for r in self.rotations))
        n = self.vertex_count
        if n < 1:
            raise EmbeddingError("an embedding needs at least one vertex")
        if len(self.rotations) != n:
            raise EmbeddingError(f"expected {n} rotations, got {len(self.rotations)}")
        seen = set()
        incident = [set() for _ in range(n)]
        for i, (u, v, s) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise EmbeddingError(f"edge {i} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise EmbeddingError(f"edge {i} is a loop at vertex {u}")
            if s not in (1, -1):
                raise EmbeddingError(f"edge {i} has sign {s!r}; expected +1 or -1")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise EmbeddingError(f"edge {i} duplicates {key}")
            seen.add(key)
            incident[u].add(i)
            incident[v].add(i)
        for v, rot in enumerate(self.rotations):
            if len(rot) != len(set(rot)):
                raise EmbeddingError(f"rotation at {v} repeats an edge")
            if set(rot) != incident[v]:
                missing = sorted(incident[v] - set(rot))
                extra = sorted(set(rot) - incident[v])
                raise EmbeddingError(
                    f"rotation at {v} is incomplete: missing {missing}, foreign {extra}"
                )
        if n > 1 and not nx.is_connected(self.graph):
            raise EmbeddingError("graph is not connected")

    # ------------------------------------------------------------------ basics

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def other(self, e: int, v: int) -> int:
        u, w, _ = self.edges[e]
        return w if u == v else u

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e][0], self.edges[e][1]

    def sign(self, e: int) -> int:
        return self.edges[e][2]

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.rotations[v]]

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        index = {}
        for i, (u, v, _) in enumerate(self.edges):
            index[(u, v)] = i
            index[(v, u)] = i
        return index

    @cached_property
    def graph(self) -> nx.Graph:
        """The underlying abstract graph; edges carry their id as ``id``."""
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        for i, (u, v, _) in enumerate(self.edges):
            g.add_edge(u, v, id=i)
        return g

    @cached_property
    def faces(self) -> tuple[FacialWalk, ...]:
        return tuple(trace_faces(self))

    @cached_property
    def surface(self) -> SurfaceInfo:
        return euler_characteristic(self)

    @property
    def chi(self) -> int:
        return self.surface.chi

    @cached_property
    def faces_of_edge(self) -> tuple[tuple[int, ...], ...]:
        """For each edge, the ids of the faces whose walks traverse it."""
        table = [[] for _ in self.edges]
        for f, walk in enumerate(self.faces):
            for e in walk.edges:
                table[e].append(f)
        return tuple(tuple(t) for t in table)

    # ------------------------------------------------------- sign normalization

    def normalized(self) -> "EmbeddedGraph":
        """Equivalent embedding with all spanning-tree edges made positive.

        Vertices are flipped (rotation reversed, incident signs negated) along
        a BFS tree from vertex 0.  The result is all-positive exactly when the
        embedding is orientable.
        """
        flip = [0] * self.vertex_count
        flip[0] = 1
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for e in sorted(self.rotations[u]):
                w = self.other(e, u)
                if flip[w] == 0:
                    flip[w] = flip[u] * self.sign(e)
                    queue.append(w)
        edges = tuple((u, v, s * flip[u] * flip[v]) for u, v, s in self.edges)
        rotations = tuple(
            rot if flip[v] == 1 else tuple(reversed(rot))
            for v, rot in enumerate(self.rotations)
        )
        return EmbeddedGraph(self.vertex_count, edges, rotations)


def _dart_tail(g: EmbeddedGraph, dart: int) -> int:
    return g.edges[dart >> 1][dart & 1]


def trace_faces(g: EmbeddedGraph) -> list[FacialWalk]:
    """Trace every face of ``g`` once.

    A walk keeps a side flag that flips on negative edges.  On arriving at a
    vertex through edge ``e`` it leaves by the rotation successor of ``e``
    when the flag is positive, by the predecessor otherwise.  Every face is
    found as a pair of mutually reverse walks over side-marked darts; only the
    first one met, scanning darts in increasing order with ``+`` before ``-``,
    is kept.
    """
    position = [{e: i for i, e in enumerate(rot)} for rot in g.rotations]
    m = g.edge_count
    used = set()
    faces = []
    for start in range(2 * m):
        for start_flag in (1, -1):
            if (start, start_flag) in used:
                continue
            darts, vertices = [], []
            dart, flag = start, start_flag
            while True:
                if len(darts) > 2 * m:
                    raise EmbeddingError("face tracing did not close; rotation system is malformed")
                used.add((dart, flag))
                e, end = dart >> 1, dart & 1
                head = g.edges[e][1 - end]
                flag_after = flag * g.edges[e][2]
                # reverse traversal of this step lives in the mirrored walk
                used.add((2 * e + (1 - end), -flag_after))
                darts.append((e, end))
                vertices.append(g.edges[e][end])
                rot = g.rotations[head]
                nxt = rot[(position[head][e] + flag_after) % len(rot)]
                dart = 2 * nxt + (0 if g.edges[nxt][0] == head else 1)
                flag = flag_after
                if (dart, flag) == (start, start_flag):
                    break
            faces.append(FacialWalk(tuple(darts), tuple(vertices)))
    return faces


def euler_characteristic(g: EmbeddedGraph) -> SurfaceInfo:
    chi = g.vertex_count - g.edge_count + len(g.faces)
    orientable = all(s == 1 for _, _, s in g.normalized().edges)
    return SurfaceInfo(chi, orientable)


def check_polyhedral(g: EmbeddedGraph) -> PolyhedralReport:
    """Check that all facial walks are cycles meeting pairwise properly.

    Two distinct faces may share nothing, one vertex, or one edge together
    with its two endpoints.  The first violation is reported.
    """
    faces = g.faces
    for f, walk in enumerate(faces):
        if not walk.is_cycle():
            return PolyhedralReport(False, f"facial walk {f} is not a cycle", (f,))
    vsets = [frozenset(w.vertices) for w in faces]
    esets = [frozenset(w.edges) for w in faces]
    for f in range(len(faces)):
        for h in range(f + 1, len(faces)):
            common = vsets[f] & vsets[h]
            if len(common) <= 1:
                continue
            if len(common) == 2:
                a, b = common
                e = g.edge_index.get((a, b))
                if e is not None and e in esets[f] and e in esets[h]:
                    continue
            return PolyhedralReport(
                False,
                f"faces {f} and {h} share vertices {sorted(common)}",
                (f, h),
            )
    return PolyhedralReport(True)


def require_polyhedral(g: EmbeddedGraph) -> None:
    report = check_polyhedral(g)
    if not report:
        raise PreconditionError(f"embedding is not polyhedral: {report.reason}")


def dual(g: EmbeddedGraph) -> EmbeddedGraph:
    """Geometric dual of a polyhedral embedding.

    Dual vertex ``f`` is face ``f`` of ``g`` and dual edge ``i`` crosses
    primal edge ``i``, so the edge-id correspondence is the identity.  The
    rotation at ``f`` follows the facial walk.  A dual edge is positive when
    the two faces traverse the primal edge in opposite directions, i.e. when
    their walk orientations agree across it.  The result is sign-normalized.
    """
    require_polyhedral(g)
    occurrences = [[] for _ in g.edges]
    for f, walk in enumerate(g.faces):
        for e, end in walk.darts:
            occurrences[e].append((f, end))
    edges = []
    for e, occ in enumerate(occurrences):
        (f, end_f), (h, end_h) = occ
        sign = 1 if end_f != end_h else -1
        edges.append((min(f, h), max(f, h), sign))
    rotations = [walk.edges for walk in g.faces]
    return EmbeddedGraph(len(g.faces), tuple(edges), tuple(rotations)).normalized()


def face_subdivision(g: EmbeddedGraph) -> nx.Graph:
    """``G`` plus one vertex ``n + f`` per face joined to the face boundary."""
    require_polyhedral(g)
    n = g.vertex_count
    fs = g.graph.copy()
    for f, walk in enumerate(g.faces):
        fs.add_node(n + f)
        for v in walk.vertices:
            fs.add_edge(v, n + f)
    return fs


def radial_union(g: EmbeddedGraph) -> nx.Graph:
    """Union of the face subdivisions of ``g`` and its dual.

    Face ``f`` is vertex ``n + f``; vertex-face incidence edges appear once.
    """
    fs = face_subdivision(g)
    n = g.vertex_count
    for f, h in (g.faces_of_edge[e] for e in range(g.edge_count)):
        fs.add_edge(n + f, n + h)
    return fs


def dual_graph(g: EmbeddedGraph) -> nx.Graph:
    """Abstract dual graph on face ids, without building the dual rotations."""
    require_polyhedral(g)
    d = nx.Graph()
    d.add_nodes_from(range(len(g.faces)))
    for e in range(g.edge_count):
        f, h = g.faces_of_edge[e]
        d.add_edge(f, h, id=e)
    return d


def from_faces(vertex_count: int, faces) -> EmbeddedGraph:
    """Build a sign-normalized embedding from its faces given as vertex cycles.

    Faces need not be consistently oriented.  Each edge must lie on exactly
    two face sides and the faces around every vertex must close up into a
    single disk.  Edge ids follow the sorted endpoint pairs.
    """
    faces = [tuple(f) for f in faces]
    sides = {}
    for f, cyc in enumerate(faces):
        k = len(cyc)
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            if a == b:
                raise EmbeddingError(f"face {f} has a loop at {a}")
            sides.setdefault((min(a, b), max(a, b)), []).append(f)
    for key, fl in sides.items():
        if len(fl) != 2:
            raise EmbeddingError(f"edge {key} lies on {len(fl)} face sides, expected 2")
    keys = sorted(sides)
    eid = {key: i for i, key in enumerate(keys)}

    def edge_of(a, b):
        return eid[(min(a, b), max(a, b))]

    # corners (prev, v, next) around each vertex
    corners = [[] for _ in range(vertex_count)]
    for f, cyc in enumerate(faces):
        k = len(cyc)
        for i, v in enumerate(cyc):
            corners[v].append((f, cyc[i - 1], cyc[(i + 1) % k]))

    succ = [dict() for _ in range(vertex_count)]
    rotations = []
    for v in range(vertex_count):
        if not corners[v]:
            raise EmbeddingError(f"vertex {v} lies on no face")
        link = {}
        for _, a, b in corners[v]:
            link.setdefault(a, []).append(b)
            link.setdefault(b, []).append(a)
        if any(len(x) != 2 for x in link.values()):
            raise EmbeddingError(f"faces around vertex {v} do not form a disk")
        start = min(link)
        order = [start]
        prev, cur = None, start
        nxt = min(link[start])
        while nxt != start:
            order.append(nxt)
            prev, cur = cur, nxt
            a, b = link[cur]
            nxt = b if a == prev else a
            if len(order) > len(link):
                break
        if len(order) != len(link):
            raise EmbeddingError(f"faces around vertex {v} form more than one disk")
        for i, u in enumerate(order):
            succ[v][u] = order[(i + 1) % len(order)]
        rotations.append(tuple(edge_of(v, u) for u in order))

    def alignment(v, a, b):
        return 1 if succ[v][a] == b else -1

    align = {}
    for f, cyc in enumerate(faces):
        k = len(cyc)
        for i, v in enumerate(cyc):
            align[(f, v)] = alignment(v, cyc[i - 1], cyc[(i + 1) % k])
    edges = []
    for key in keys:
        f = sides[key][0]
        a, b = key
        edges.append((a, b, align[(f, a)] * align[(f, b)]))
    g = EmbeddedGraph(vertex_count, tuple(edges), tuple(rotations)).normalized()

    traced = sorted(_cycle_key(w.vertices) for w in g.faces)
    wanted = sorted(_cycle_key(c) for c in faces)
    if traced != wanted:
        raise EmbeddingError("face list is not consistent with any rotation system")
    return g


def _cycle_key(cyc) -> tuple[int, ...]:
    """Canonical rotation/reflection representative of a vertex cycle."""
    cyc = list(cyc)
    k = len(cyc)
    best = None
    for seq in (cyc, cyc[::-1]):
        for i in range(k):
            cand = tuple(seq[i:] + seq[:i])
            if best is None or cand < best:
                best = cand
    return best


def face_subdivision_embedding(g: EmbeddedGraph) -> EmbeddedGraph:
    """The face subdivision as a triangulation of the same surface."""
    require_polyhedral(g)
    n = g.vertex_count
    triangles = []
    for f, walk in enumerate(g.faces):
        vs = walk.vertices
        for i in range(len(vs)):
            triangles.append((vs[i], vs[(i + 1) % len(vs)], n + f))
    return from_faces(n + len(g.faces), triangles)


def face_cycles(g: EmbeddedGraph) -> list[tuple[int, ...]]:
    return [w.vertices for w in g.faces]
