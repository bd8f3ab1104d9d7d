"""Command line entry point: ``quiverdual <command> <file> ...``.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 theorem hypothesis unmet (or slice rejected), 2 internal identity violated,
3 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .algebra import graded_basis, homogeneity_degree, normalize_relations
from .dual import quadratic_dual
from .errors import InconsistencyError, QuiverDualError
from .preprojective import oracle_agrees, preproj_presentation
from .resolution import koszul_witness
from .translation import SliceSpec, slice_problem, slice_presentation, znq_window
from .trivext import trivial_extension
from .verify import verify_main_theorem

OK, UNMET, VIOLATION, INPUT = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_check(args) -> int:
    doc = io.load(args.file)
    p = normalize_relations(doc.presentation)
    q = p.quiver
    print(f"vertices: {len(q.vertices)}, arrows: {len(q.arrows)}, relations: {len(p.relations)}")
    print(f"quadratic: {'yes' if p.is_quadratic else 'no'}")
    gb = graded_basis(p)
    n = homogeneity_degree(gb)
    print(f"n-homogeneous: {'yes (n = %d)' % n if n is not None else 'no'}")
    if doc.n is not None and doc.n != n:
        _err(f"note: document declares n = {doc.n}, computed {n}")
    print(f"koszul witness: {koszul_witness(p, args.depth, gb).message}")
    return OK


def cmd_dual(args) -> int:
    p = io.load(args.file).presentation
    sys.stdout.write(io.serialize(quadratic_dual(p)))
    return OK


def cmd_trivext(args) -> int:
    p = io.load(args.file).presentation
    te = trivial_extension(p, twist=args.twist)
    sys.stdout.write(io.serialize(te.cover))
    _err(f"{te.quadraticity.message} (cover dims {te.quadraticity.cover_dims}, "
         f"expected {te.quadraticity.expected_dims})")
    return OK


def cmd_preproj(args) -> int:
    p = io.load(args.file).presentation
    pp = preproj_presentation(p)
    if args.verify_oracle:
        key = pp.raq.quiver.path_key
        bad = [(q, z, o) for q, (z, o) in oracle_agrees(p).items() if z != o]
        for q, z, o in bad:
            _err(f"oracle mismatch at {q}: formula {z.render(key)}, oracle {o.render(key)}")
        if bad:
            return VIOLATION
        _err(f"oracle agrees on all {len(pp.zeta_index)} elements of M_{pp.n - 1}")
    sys.stdout.write(io.serialize(pp.presentation))
    return OK


def cmd_verify(args) -> int:
    p = io.load(args.file).presentation
    rep = verify_main_theorem(p, depth=args.depth, order=args.order, force=args.force, name=args.file)
    sys.stdout.write(rep.to_machine() if args.format == "machine" else rep.to_text())
    if rep.exit_code == UNMET:
        failed = [s for s in rep.stages if s.passed is False]
        _err(f"{failed[0].detail}" if failed else "theorem hypothesis unmet")
    elif rep.exit_code == VIOLATION:
        _err("theorem identity failed; this indicates a bug")
    return rep.exit_code


def cmd_znq(args) -> int:
    p = io.load(args.file).presentation
    w = znq_window(p, args.lo, args.hi)
    for note in w.notes:
        _err(f"note: {note}")
    if not args.slice:
        sys.stdout.write(io.serialize(w.presentation))
        return OK
    cut = SliceSpec(io.load_levels(args.slice))
    why = slice_problem(w, cut)
    if why:
        _err(f"not a complete tau-slice: {why}")
        return UNMET
    sys.stdout.write(io.serialize(slice_presentation(w, cut)))
    return OK


def cmd_hilbert(args) -> int:
    p = normalize_relations(io.load(args.file).presentation)
    gb = graded_basis(p, max_degree=args.max_degree)
    print("degree\tdim\tblocks")
    for t in range(args.max_degree + 1):
        blocks = " ".join(f"{i}->{j}:{d}" for (i, j), d in sorted(
            gb.block_dims(t).items(), key=lambda kv: (p.quiver.vertex_index[kv[0][0]], p.quiver.vertex_index[kv[0][1]])))
        print(f"{t}\t{gb.dim(t)}\t{blocks}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quiverdual", description="Quadratic duals, trivial extensions and "
                                 "preprojective presentations of bound quivers.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="homogeneity, quadraticity, Koszul witness")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=6)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dual", help="emit the quadratic dual document")
    s.add_argument("file")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("trivext", help="emit the quadratic cover of the twisted trivial extension")
    s.add_argument("file")
    s.add_argument("--twist", choices=["nu", "id"], default="nu")
    s.set_defaults(func=cmd_trivext)

    s = sub.add_parser("preproj", help="emit the preprojective presentation")
    s.add_argument("file")
    s.add_argument("--verify-oracle", action="store_true", help="cross-check zeta against the Koszul complex")
    s.set_defaults(func=cmd_preproj)

    s = sub.add_parser("verify-theorem", help="run the full verification pipeline")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--format", choices=["text", "machine"], default="text")
    s.add_argument("--order", choices=["lex", "revlex"], default="lex", help="path order used to pick M_t")
    s.add_argument("--force", action="store_true", help="run the subspace stages even if a hypothesis fails")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("znq", help="window of the translation quiver, optionally cut along a slice")
    s.add_argument("file")
    s.add_argument("--from", dest="lo", type=int, required=True)
    s.add_argument("--to", dest="hi", type=int, required=True)
    s.add_argument("--slice", help='JSON file {"levels": {vertex: level}}')
    s.set_defaults(func=cmd_znq)

    s = sub.add_parser("hilbert", help="graded dimension table")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_hilbert)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code else OK
    for opt in ("depth", "max_degree"):
        if (getattr(args, opt, None) or 0) < 0:
            _err(f"error: --{opt.replace('_', '-')} must be nonnegative")
            return INPUT
    try:
        return args.func(args)
    except InconsistencyError as exc:
        _err(f"internal inconsistency: {exc}")
        return VIOLATION
    except QuiverDualError as exc:
        _err(f"error: {exc}")
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
