"""Command-line interface: ``surfwidth <subcommand> ...``.

Data goes to stdout (or ``-o``), diagnostics to stderr.  Exit codes: 0 on
success, 1 when a check fails, 2 on usage or input errors, 3 when a solver
limit is hit.
"""

from __future__ import annotations

import argparse
import sys

from . import generators
from .assignment import face_adjacency_graph
from .decomposition import compose, dual_decomposition, fs_decomposition, verify, width
from .embedding import (
    check_polyhedral,
    dual,
    dual_graph,
    face_subdivision,
    face_subdivision_embedding,
    radial_union,
)
from .errors import EmbeddingError, FormatError, NotFound, PreconditionError, ResourceExhausted
from .formats import format_dec, format_emb, parse_dec, parse_emb
from .report import all_ok, format_report, instance_report
from .widths import decomposition_from_certificate, pathwidth_exact, treewidth_exact

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
TARGETS = ("graph", "dual", "fs", "radial")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(path):
    return parse_emb(_read(path))


def _target(g, name):
    if name == "graph":
        return g.graph
    if name == "dual":
        return dual_graph(g)
    if name == "fs":
        return face_subdivision(g)
    return radial_union(g)


def cmd_gen(args):
    g = generators.by_name(args.name, args.params)
    _write(format_emb(g), args.output)
    return EXIT_OK


def cmd_check(args):
    g = _load(args.file)
    rep = check_polyhedral(g)
    surf = g.surface
    print(f"vertices {g.vertex_count}")
    print(f"edges {g.edge_count}")
    print(f"faces {len(g.faces)}")
    print(f"chi {surf.chi}")
    print(f"orientable {'yes' if surf.orientable else 'no'}")
    print(f"polyhedral {'yes' if rep.ok else 'no'}")
    if not rep.ok:
        print(f"check: {rep.reason}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_dual(args):
    _write(format_emb(dual(_load(args.file))), args.output)
    return EXIT_OK


def cmd_fs(args):
    _write(format_emb(face_subdivision_embedding(_load(args.file))), args.output)
    return EXIT_OK


def cmd_assign(args):
    g = _load(args.file)
    cons = dual_decomposition(g, "hampath" if args.ham else "tree3")
    tp = face_adjacency_graph(g, cons.tree)
    te_h, te_t, growth = cons.te_chain()
    lines = [
        f"# chi {g.chi}",
        f"# mode {cons.mode}",
        "tree " + " ".join(map(str, sorted(cons.tree.edges))),
        "faceadj " + " ".join(map(str, sorted(tp.edges))),
        *cons.tau.lines(),
        "residual " + " ".join(map(str, sorted(cons.residual.edges))),
        f"te {te_h} {te_t} {growth}",
    ]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _decompose(args, builder):
    g = _load(args.file)
    cons = builder(g, "hampath" if args.ham else "tree3")
    comments = [f"chi {g.chi}", f"mode {cons.mode}", f"max bag after apex removal {cons.reduced.max_bag()}"]
    _write(format_dec(cons.bags, apex=cons.apex, tau=cons.tau.tau, comments=comments), args.output)
    return EXIT_OK


def cmd_decompose_dual(args):
    return _decompose(args, dual_decomposition)


def cmd_decompose_fs(args):
    return _decompose(args, fs_decomposition)


def _width(args, solver):
    g = _load(args.file)
    target = _target(g, args.target)
    cert = solver(target, limit=args.limit)
    d = decomposition_from_certificate(cert, target)
    print(f"{cert.kind} {cert.value}")
    if args.output:
        _write(format_dec(d, comments=[f"{cert.kind} {cert.value} of {args.target}"]), args.output)
    return EXIT_OK


def cmd_pw(args):
    return _width(args, pathwidth_exact)


def cmd_tw(args):
    return _width(args, treewidth_exact)


def cmd_compose(args):
    d1 = parse_dec(_read(args.first)).decomposition
    d2 = parse_dec(_read(args.second)).decomposition
    out = compose(d1, d2)
    _write(format_dec(out, comments=[f"width {width(out)}"]), args.output)
    return EXIT_OK


def cmd_verify(args):
    g = _load(args.emb)
    d = parse_dec(_read(args.dec)).decomposition
    verdict = verify(d, _target(g, args.target))
    print(f"{verdict}")
    if verdict:
        print(f"width {width(d)}")
        return EXIT_OK
    return EXIT_FAIL


def cmd_report(args):
    g = _load(args.file)
    name = args.name or ("stdin" if args.file == "-" else args.file.rsplit("/", 1)[-1].removesuffix(".emb"))
    rows = instance_report(g, name, limit=args.limit)
    _write(format_report(rows), args.output)
    return EXIT_OK if all_ok(rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfwidth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a generated embedding")
    s.add_argument("name")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", help="polyhedrality and Euler characteristic")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    for name, func, helptext in (
        ("dual", cmd_dual, "dual embedding"),
        ("fs", cmd_fs, "face-subdivision embedding"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    for name, func, helptext in (
        ("assign", cmd_assign, "spanning tree, edge-assignment and residual graph"),
        ("decompose-dual", cmd_decompose_dual, "decomposition of the dual with apex set"),
        ("decompose-fs", cmd_decompose_fs, "decomposition of the radial union with apex set"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--ham", action="store_true", help="use a Hamiltonian path instead of a 3-tree")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    for name, func in (("pw", cmd_pw), ("tw", cmd_tw)):
        s = sub.add_parser(name, help=f"exact {'pathwidth' if name == 'pw' else 'treewidth'}")
        s.add_argument("file")
        s.add_argument("--target", choices=TARGETS, default="graph")
        s.add_argument("--limit", type=int, help="vertex limit (default SURFWIDTH_LIMIT or 22)")
        s.add_argument("-o", "--output", help="write the witness decomposition here")
        s.set_defaults(func=func)

    s = sub.add_parser("compose", help="pull the first decomposition back along the second")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("verify", help="check a decomposition against a graph")
    s.add_argument("emb")
    s.add_argument("dec")
    s.add_argument("--target", choices=TARGETS, default="dual")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", help="bound table for one embedding")
    s.add_argument("file")
    s.add_argument("--name")
    s.add_argument("--limit", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_report)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceExhausted as exc:
        print(f"surfwidth: limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except NotFound as exc:
        print(f"surfwidth: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (FormatError, EmbeddingError, PreconditionError, ValueError, OSError) as exc:
        print(f"surfwidth: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
