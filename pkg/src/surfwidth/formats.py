"""Text formats: ``.emb`` embeddings and ``.dec`` decompositions.

``.emb``::

    vertices <n>
    edge <id> <u> <v> <+|->
    rot <v>: <edge-id> <edge-id> ...

``.dec``::

    kind <general|tree|path>
    host <n>
    hostedge <h1> <h2>
    bag <h>: <v> <v> ...
    apex <v> ...
    tau <face-id> <edge-id>

Host lines are omitted for ``path`` decompositions, whose host is the path
``0..n-1`` over the listed bags.  ``apex`` and ``tau`` lines are optional
annotations.  Blank lines and ``#`` comments are ignored in both formats.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .decomposition import KINDS, Decomposition
from .embedding import EmbeddedGraph
from .errors import EmbeddingError, FormatError


def _lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _int(token, number):
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", number) from None


def parse_emb(text: str) -> EmbeddedGraph:
    n = None
    edges = {}
    seen_pairs = {}
    rotations = {}
    for number, line in _lines(text):
        head, *rest = line.split()
        if head == "vertices":
            if n is not None:
                raise FormatError("duplicate 'vertices' line", number)
            if len(rest) != 1:
                raise FormatError("usage: vertices <n>", number)
            n = _int(rest[0], number)
            if n < 1:
                raise FormatError("vertex count must be positive", number)
        elif head == "edge":
            if n is None:
                raise FormatError("'edge' before 'vertices'", number)
            if len(rest) != 4 or rest[3] not in ("+", "-"):
                raise FormatError("usage: edge <id> <u> <v> <+|->", number)
            e, u, v = (_int(t, number) for t in rest[:3])
            if e in edges:
                raise FormatError(f"edge id {e} defined twice", number)
            if u == v:
                raise FormatError(f"edge {e} is a loop at vertex {u}", number)
            for x in (u, v):
                if not 0 <= x < n:
                    raise FormatError(f"vertex {x} out of range 0..{n - 1}", number)
            pair = (min(u, v), max(u, v))
            if pair in seen_pairs:
                raise FormatError(f"edge {e} duplicates edge {seen_pairs[pair]} ({u}-{v})", number)
            seen_pairs[pair] = e
            edges[e] = (u, v, 1 if rest[3] == "+" else -1)
        elif head.startswith("rot"):
            if n is None:
                raise FormatError("'rot' before 'vertices'", number)
            body = line[3:].strip()
            if ":" not in body:
                raise FormatError("usage: rot <v>: <edge-id> ...", number)
            vtok, etoks = body.split(":", 1)
            v = _int(vtok.strip(), number)
            if not 0 <= v < n:
                raise FormatError(f"vertex {v} out of range 0..{n - 1}", number)
            if v in rotations:
                raise FormatError(f"rotation of vertex {v} given twice", number)
            rot = [_int(t, number) for t in etoks.split()]
            for e in rot:
                if e not in edges:
                    raise FormatError(f"rotation of {v} names unknown edge {e}", number)
                if v not in edges[e][:2]:
                    raise FormatError(f"edge {e} is not incident with vertex {v}", number)
            if len(set(rot)) != len(rot):
                raise FormatError(f"rotation of {v} repeats an edge", number)
            incident = {e for e, (a, b, _) in edges.items() if v in (a, b)}
            if set(rot) != incident:
                raise FormatError(
                    f"rotation of {v} is incomplete: missing {sorted(incident - set(rot))}",
                    number,
                )
            rotations[v] = (number, tuple(rot))
        else:
            raise FormatError(f"unknown declaration {head!r}", number)
    if n is None:
        raise FormatError("missing 'vertices' line")
    if sorted(edges) != list(range(len(edges))):
        raise FormatError("edge ids must be 0..m-1")
    missing = [v for v in range(n) if v not in rotations]
    if missing:
        raise FormatError(f"no rotation given for vertices {missing}")
    # edges declared after a rot line can make an earlier rotation stale
    for v, (number, rot) in rotations.items():
        incident = {e for e, (a, b, _) in edges.items() if v in (a, b)}
        if set(rot) != incident:
            raise FormatError(f"rotation of {v} is incomplete", number)
    try:
        return EmbeddedGraph(
            n,
            tuple(edges[e] for e in range(len(edges))),
            tuple(rotations[v][1] for v in range(n)),
        )
    except EmbeddingError as exc:
        raise FormatError(str(exc)) from None


def format_emb(g: EmbeddedGraph) -> str:
    out = [f"vertices {g.vertex_count}"]
    for i, (u, v, s) in enumerate(g.edges):
        out.append(f"edge {i} {u} {v} {'+' if s == 1 else '-'}")
    for v, rot in enumerate(g.rotations):
        out.append(f"rot {v}: " + " ".join(map(str, rot)))
    return "\n".join(out) + "\n"


@dataclass
class DecFile:
    """A parsed ``.dec`` file: the decomposition plus optional annotations."""

    decomposition: Decomposition
    apex: frozenset = frozenset()
    tau: dict = field(default_factory=dict)


def parse_dec(text: str) -> DecFile:
    kind = None
    host_n = None
    host_edges = []
    bags = {}
    apex = set()
    tau = {}
    for number, line in _lines(text):
        head, *rest = line.split()
        if head == "kind":
            if len(rest) != 1 or rest[0] not in KINDS:
                raise FormatError(f"kind must be one of {', '.join(KINDS)}", number)
            kind = rest[0]
        elif head == "host":
            if len(rest) != 1:
                raise FormatError("usage: host <n>", number)
            host_n = _int(rest[0], number)
        elif head == "hostedge":
            if len(rest) != 2:
                raise FormatError("usage: hostedge <h1> <h2>", number)
            host_edges.append((_int(rest[0], number), _int(rest[1], number), number))
        elif head.startswith("bag"):
            body = line[3:].strip()
            if ":" not in body:
                raise FormatError("usage: bag <h>: <v> ...", number)
            htok, vtoks = body.split(":", 1)
            h = _int(htok.strip(), number)
            if h in bags:
                raise FormatError(f"bag {h} given twice", number)
            bags[h] = frozenset(_int(t, number) for t in vtoks.split())
        elif head == "apex":
            apex.update(_int(t, number) for t in rest)
        elif head == "tau":
            if len(rest) != 2:
                raise FormatError("usage: tau <face-id> <edge-id>", number)
            tau[_int(rest[0], number)] = _int(rest[1], number)
        else:
            raise FormatError(f"unknown declaration {head!r}", number)
    if kind is None:
        raise FormatError("missing 'kind' line")
    if kind == "path":
        if host_n is not None or host_edges:
            raise FormatError("path decompositions take no host lines")
        host = nx.path_graph(len(bags))
        if sorted(bags) != list(range(len(bags))):
            raise FormatError("path bags must be numbered 0..n-1")
    else:
        if host_n is None:
            raise FormatError("missing 'host' line")
        host = nx.Graph()
        host.add_nodes_from(range(host_n))
        for a, b, number in host_edges:
            if not (0 <= a < host_n and 0 <= b < host_n):
                raise FormatError("host edge endpoint out of range", number)
            host.add_edge(a, b)
        for h in range(host_n):
            bags.setdefault(h, frozenset())
        if set(bags) != set(range(host_n)):
            raise FormatError("bag index out of host range")
    return DecFile(Decomposition(host, bags, kind), frozenset(apex), tau)


def format_dec(d: Decomposition, apex=(), tau=None, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"kind {d.kind}")
    hosts = sorted(d.host.nodes)
    if d.kind != "path":
        if hosts != list(range(len(hosts))):
            raise ValueError("host vertices must be 0..n-1 to serialize")
        out.append(f"host {len(hosts)}")
        for a, b in sorted((min(a, b), max(a, b)) for a, b in d.host.edges):
            out.append(f"hostedge {a} {b}")
    else:
        hosts = _path_order(d.host)
    for i, h in enumerate(hosts):
        label = i if d.kind == "path" else h
        out.append(f"bag {label}: " + " ".join(map(str, sorted(d.bags[h]))))
    if apex:
        out.append("apex " + " ".join(map(str, sorted(apex))))
    if tau:
        out.extend(f"tau {f} {tau[f]}" for f in sorted(tau))
    return "\n".join(out).rstrip() + "\n"


def _path_order(host):
    nodes = list(host.nodes)
    if len(nodes) <= 1:
        return nodes
    ends = sorted(v for v in nodes if host.degree(v) <= 1)
    order = [ends[0]]
    prev = None
    while len(order) < len(nodes):
        cur = order[-1]
        nxt = [w for w in host.adj[cur] if w != prev]
        prev = cur
        order.append(nxt[0])
    return order
