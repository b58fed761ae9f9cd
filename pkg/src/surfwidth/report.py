"""Bound table for one embedding: every construction run and checked."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .decomposition import (
    Decomposition,
    apex_bound,
    dual_decomposition,
    fs_decomposition,
    theorem_pipeline,
    verify,
)
from .embedding import EmbeddedGraph, dual_graph, face_subdivision
from .errors import ResourceExhausted
from .spanning import hamiltonian_path, total_excess
from .widths import (
    decomposition_from_certificate,
    path_decomposition_from_order,
    pathwidth_exact,
    treewidth_exact,
    vertex_limit,
)

COLUMNS = ("row", "instance", "chi", "pw(G)", "pw(G*)", "bound", "certified_width", "status")


@dataclass(frozen=True)
class Row:
    row: str
    instance: str
    chi: int
    p_source: str
    p_target: str
    bound: int
    certified: int
    status: str  # OK, FAIL or SKIP
    note: str = ""

    def cells(self):
        return (self.row, self.instance, str(self.chi), self.p_source, self.p_target,
                str(self.bound), str(self.certified), self.status)


def _exact(solver, graph, limit):
    try:
        return solver(graph, limit=limit)
    except ResourceExhausted:
        return None


def _fallback_path(graph):
    order = sorted(graph.nodes)
    return path_decomposition_from_order(graph, order)


def _show(cert):
    return "-" if cert is None else str(cert.value)


def instance_report(g: EmbeddedGraph, name: str = "input", limit: Optional[int] = None) -> list[Row]:
    limit = vertex_limit(limit)
    chi = g.chi
    G = g.graph
    Gd = dual_graph(g)
    Gfs = face_subdivision(g)
    pw_g = _exact(pathwidth_exact, G, limit)
    tw_g = _exact(treewidth_exact, G, limit)
    pw_d = _exact(pathwidth_exact, Gd, limit)
    pw_fs = _exact(pathwidth_exact, Gfs, limit)
    tw_fs = _exact(treewidth_exact, Gfs, limit)

    path_in = decomposition_from_certificate(pw_g, G) if pw_g else _fallback_path(G)
    tree_in = decomposition_from_certificate(tw_g, G) if tw_g else path_in
    pw_label = _show(pw_g) if pw_g else f"<={path_in.max_bag() - 1}"
    tw_label = _show(tw_g) if tw_g else f"<={tree_in.max_bag() - 1}"
    rows = []

    cons = dual_decomposition(g, "tree3")
    te_h, te_t, growth = cons.te_chain()
    degs = cons.residual.degrees()
    ok = (
        len(cons.apex) <= apex_bound(chi)
        and cons.reduced.max_bag() <= 3
        and len(cons.apex) <= te_h <= te_t + 2 * growth
        and all(len(cons.bags.bags[v]) == degs[v] for v in range(g.vertex_count))
        and bool(verify(cons.bags, Gd))
    )
    rows.append(Row("thm6", name, chi, pw_label, _show(pw_d), apex_bound(chi), len(cons.apex),
                    "OK" if ok else "FAIL", "certified = |S|"))

    fcons = fs_decomposition(g, "tree3")
    ok = (
        len(fcons.apex) <= apex_bound(chi)
        and fcons.reduced.max_bag() <= 4
        and bool(verify(fcons.bags, fcons.target))
        and bool(verify(fcons.bags, Gfs))
    )
    rows.append(Row("thm11", name, chi, pw_label, _show(pw_fs), apex_bound(chi), len(fcons.apex),
                    "OK" if ok else "FAIL", "certified = |S|"))

    general_in = Decomposition(path_in.host, path_in.bags, "general")
    res = theorem_pipeline(g, "thm3", general_in)
    rows.append(Row("thm3", name, chi, pw_label, _show(pw_d), res.bound, res.certified_width,
                    "OK" if res.ok else "FAIL", f"H = path host, H-width {res.input_width}"))

    res = theorem_pipeline(g, "thm4", path_in)
    ok = res.ok and (pw_d is None or pw_d.value <= res.bound)
    note = "derived" if chi == 2 else ""
    rows.append(Row("thm4", name, chi, pw_label, _show(pw_d), res.bound, res.certified_width,
                    "OK" if ok else "FAIL", note))

    res = theorem_pipeline(g, "thm5-tw", tree_in)
    ok = res.ok and (tw_fs is None or tw_fs.value <= res.bound)
    rows.append(Row("thm5-tw", name, chi, tw_label, _show(tw_fs), res.bound, res.certified_width,
                    "OK" if ok else "FAIL", "columns hold tw(G), tw(G^fs)"))

    res = theorem_pipeline(g, "thm5-pw", path_in)
    ok = res.ok and (pw_fs is None or pw_fs.value <= res.bound)
    rows.append(Row("thm5-pw", name, chi, pw_label, _show(pw_fs), res.bound, res.certified_width,
                    "OK" if ok else "FAIL", "columns hold pw(G), pw(G^fs)"))

    if hamiltonian_path(g) is None:
        rows.append(Row("hampath", name, chi, pw_label, _show(pw_d), 0, 0, "SKIP", "no Hamiltonian path"))
    else:
        res = theorem_pipeline(g, "hampath-pw", path_in)
        cons2 = res.construction
        ok = (
            res.ok
            and cons2.reduced.max_bag() <= 2
            and len(cons2.apex) <= apex_bound(chi, "hampath")
            and total_excess(cons2.residual, 2) <= 2 * max(1 - chi, 0)
            and (pw_d is None or pw_d.value <= res.bound)
        )
        rows.append(Row("hampath", name, chi, pw_label, _show(pw_d), res.bound, res.certified_width,
                        "OK" if ok else "FAIL", "Hamiltonian path instead of a 3-tree"))
    return rows


def format_report(rows) -> str:
    table = [COLUMNS] + [r.cells() for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(COLUMNS))]
    out = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in table]
    return "\n".join(out) + "\n"


def all_ok(rows) -> bool:
    return all(r.status != "FAIL" for r in rows)
