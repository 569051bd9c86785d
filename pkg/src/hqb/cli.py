"""``hqb`` command-line front end.

Exit codes: 0 success, 1 an axiom or precondition failed, 2 the input did not parse.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import catalog, checks, constructions, io
from .quantum import InvalidCocycle, build_dw_double, cyclic_group, trivial_cocycle
from .scalar import ScalarError
from .structures import HomAlgebra, HomBialgebra, HomCoalgebra, HQBialgebra, QTHQBialgebra, StructureError
from .tensor import TensorError

OK, FAIL, INPUT = 0, 1, 2

STRUCTURE_LEVELS = ("auto", "algebra", "coalgebra", "bialgebra", "hq", "qt")


class UsageError(Exception):
    """Well-formed input that the requested command cannot act on."""


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text if text.endswith("\n") else text + "\n")


def _load_structure(path: str):
    return io.structure_from_doc(io.load(path))


def _level_supported(s, level: str) -> bool:
    need = {
        "algebra": (HomAlgebra, HomBialgebra),
        "coalgebra": (HomCoalgebra, HomBialgebra),
        "bialgebra": (HomBialgebra,),
        "hq": (HQBialgebra,),
        "qt": (QTHQBialgebra,),
    }
    return level == "auto" or isinstance(s, need[level])


def render_report(rep, mode: str = "full") -> str:
    lines = []
    for e in rep.entries:
        if e.passed:
            lines.append(f"PASS {e.axiom}")
            continue
        line = f"FAIL {e.axiom}"
        if e.witness:
            line += f" at {e.render_witness(rep.space)}"
        if e.residual is not None:
            line += f": residual {e.residual.render(rep.space)}"
        if e.failures > 1:
            line += f" ({e.failures} failing tuples)"
        lines.append(line)
        if mode == "first":
            break
    for n in rep.notes:
        lines.append(f"note: {n}")
    lines.append("overall: " + ("pass" if rep.overall else "fail"))
    return "\n".join(lines)


def _emit_report(rep, args) -> None:
    if getattr(args, "json", False):
        _out(json.dumps(io.report_to_doc(rep, args.report), indent=1, ensure_ascii=False))
    else:
        _out(render_report(rep, args.report))


def _write_checked(s, doc: dict, out: str | None, force: bool) -> int:
    """Re-check ``s`` at its own level; write it and a sidecar report unless it fails without ``--force``."""
    rep = checks.check_structure(s, checks.auto_level(s))
    if not rep.overall and not force:
        _err("constructed structure fails its axioms; nothing written (use --force to write anyway)")
        _err(render_report(rep, "first"))
        return FAIL
    if out:
        io.save(doc, out)
        io.save(io.report_to_doc(rep), out + ".report.json")
        _out(f"wrote {out} ({rep.overall and 'verified' or 'FAILED, forced'})")
    else:
        _out(io.dumps(doc))
    return OK if rep.overall else FAIL


def _construction_failed(exc: constructions.ConstructionError) -> int:
    _err(f"precondition failed: {exc}")
    if exc.report is not None:
        _err(render_report(exc.report, "first"))
    return FAIL


# commands


def cmd_check(args) -> int:
    s = _load_structure(args.file)
    if not _level_supported(s, args.level):
        raise UsageError(f"level {args.level!r} does not apply to a {io.kind_of(s)} file")
    rep = checks.check_structure(s, args.level)
    _emit_report(rep, args)
    return OK if rep.overall else FAIL


def cmd_twist(args) -> int:
    s = _load_structure(args.file)
    f = io.morphism_from_doc(io.load(args.by), s.dim, s.ctx, "$")
    level = args.level
    if level == "auto":
        level = {QTHQBialgebra: "hq", HQBialgebra: "hq", HomBialgebra: "bialgebra",
                 HomCoalgebra: "coalgebra", HomAlgebra: "algebra"}[type(s)]
    if not _level_supported(s, level):
        raise UsageError(f"level {level!r} does not apply to a {io.kind_of(s)} file")
    verify = not args.force
    try:
        if level == "algebra":
            out = constructions.twist_algebra(s if isinstance(s, HomAlgebra) else s.algebra(), f, verify)
        elif level == "coalgebra":
            out = constructions.twist_coalgebra(s if isinstance(s, HomCoalgebra) else s.coalgebra(), f, verify)
        elif level == "bialgebra":
            out = constructions.twist_bialgebra(s, f, verify)
        elif level == "hq":
            out = constructions.twist_hq(s, f, verify)
        else:
            out = constructions.twist_qt(s, f, verify)
    except constructions.ConstructionError as exc:
        return _construction_failed(exc)
    return _write_checked(out, io.structure_to_doc(out), args.output, args.force)


def cmd_gauge(args) -> int:
    s = _load_structure(args.file)
    if not isinstance(s, HQBialgebra):
        raise UsageError("gauge needs an hq_bialgebra file")
    F = io.element_from_doc(io.load(args.f), s.dim, s.ctx, "$")
    if F.power != 2:
        raise UsageError("the gauge element must have power 2")
    if isinstance(s, QTHQBialgebra):
        s = HQBialgebra(s.space, s.mu, s.eta, s.delta, s.eps, s.alpha, s.phi)
    try:
        out = constructions.gauge_transform(s, F, verify=not args.force)
    except constructions.ConstructionError as exc:
        return _construction_failed(exc)
    return _write_checked(out, io.structure_to_doc(out), args.output, args.force)


def cmd_dual(args) -> int:
    s = _load_structure(args.file)
    try:
        if isinstance(s, HQBialgebra):
            raise UsageError("the dual of an HQ-bialgebra is a dual quasi-bialgebra, which has no file kind")
        if isinstance(s, HomBialgebra):
            out = constructions.dual_bialgebra(s, verify=not args.force)
        elif isinstance(s, HomCoalgebra):
            out = constructions.dual_coalgebra_to_algebra(s)
        else:
            out = constructions.dual_algebra_to_coalgebra(s)
    except constructions.ConstructionError as exc:
        return _construction_failed(exc)
    return _write_checked(out, io.structure_to_doc(out), args.output, args.force)


def cmd_antipode(args) -> int:
    s = _load_structure(args.file)
    if not isinstance(s, HomBialgebra):
        raise UsageError("antipode needs a hom_bialgebra file")
    sol = constructions.solve_antipode(s)
    if sol is None:
        _out("no antipode")
        return FAIL
    S = sol.value
    labels = s.space.labels
    for j in range(s.dim):
        _out(f"S({labels[j]}) = {S.image((j,)).render(s.space)}")
    _out("unique" if sol.unique else f"not unique (solution space of dimension {sol.nullity})")
    if args.output:
        io.save(io.morphism_to_doc(S, s.ctx, s.space), args.output)
    return OK


def _parse_sets(pairs: Sequence[str]) -> dict[str, str]:
    out = {}
    for p in pairs:
        if "=" not in p:
            raise UsageError(f"--set expects name=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name, e in catalog.CATALOG.items():
            params = ", ".join(f"{k}={v}" for k, v in e.params.items())
            _out(f"{name}: {e.description}" + (f" [{params}]" if params else ""))
        return OK
    if args.name not in catalog.CATALOG:
        raise UsageError(f"unknown catalog entry {args.name!r}; try 'hqb catalog list'")
    entry = catalog.CATALOG[args.name]
    try:
        built = entry.build(**_parse_sets(args.set or []))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    if isinstance(built, tuple):
        base, f = built
        rep = checks.check_morphism("hq" if isinstance(base, HQBialgebra) else checks.auto_level(base), f, base)
        doc = io.morphism_to_doc(f, base.ctx, base.space)
        if args.output:
            io.save(doc, args.output)
            io.save(io.report_to_doc(rep), args.output + ".report.json")
            _out(f"wrote {args.output} (morphism check: {'pass' if rep.overall else 'fail'})")
        else:
            _out(io.dumps(doc))
        return OK
    return _write_checked(built, io.structure_to_doc(built), args.output, args.force)


def _group_from_spec(spec: str):
    if spec.startswith("cyclic:"):
        try:
            return cyclic_group(int(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise io.InputError("--group", f"bad cyclic order in {spec!r}") from exc
    return io.group_from_doc(io.load(spec))


def cmd_dwdouble(args) -> int:
    G = _group_from_spec(args.group)
    if args.cocycle:
        w = io.cocycle_from_doc(io.load(args.cocycle), G)
        if w.group != G:
            raise UsageError("the cocycle file names a different group")
    else:
        w = trivial_cocycle(G, io.context_from_doc({}))
    try:
        D = build_dw_double(G, w)
    except InvalidCocycle as exc:
        _err(f"precondition failed: {exc}")
        if exc.report is not None:
            _err(render_report(exc.report, "first"))
        return FAIL
    return _write_checked(D, io.structure_to_doc(D), args.output, args.force)


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hqb", description="Exact checks and constructions for Hom-(quasi-)bialgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify every axiom of a structure file")
    c.add_argument("file")
    c.add_argument("--level", choices=STRUCTURE_LEVELS, default="auto")
    c.add_argument("--report", choices=("full", "first"), default="full")
    c.add_argument("--json", action="store_true", help="print the report as JSON")
    c.set_defaults(func=cmd_check)

    def output(sp):
        sp.add_argument("-o", "--output", help="output file (a .report.json sidecar is written next to it)")
        sp.add_argument("--force", action="store_true", help="write the output even if it fails its checks")

    t = sub.add_parser("twist", help="twisting principle by a self-morphism")
    t.add_argument("file")
    t.add_argument("--by", required=True, help="morphism file")
    t.add_argument("--level", choices=STRUCTURE_LEVELS, default="auto",
                   help="auto keeps the richest level except that R is dropped (use qt to keep it)")
    output(t)
    t.set_defaults(func=cmd_twist)

    g = sub.add_parser("gauge", help="Drinfeld gauge transformation by a 2-tensor")
    g.add_argument("file")
    g.add_argument("--f", required=True, help="element file of power 2")
    output(g)
    g.set_defaults(func=cmd_gauge)

    d = sub.add_parser("dual", help="finite-dimensional dual")
    d.add_argument("file")
    output(d)
    d.set_defaults(func=cmd_dual)

    a = sub.add_parser("antipode", help="solve for the antipode of a Hom-bialgebra")
    a.add_argument("file")
    a.add_argument("-o", "--output", help="write the antipode as a morphism file")
    a.set_defaults(func=cmd_antipode)

    k = sub.add_parser("catalog", help="list or build the worked examples")
    k.add_argument("action", choices=("list", "build"))
    k.add_argument("name", nargs="?")
    k.add_argument("--set", action="append", metavar="NAME=VALUE", help="override a builder parameter")
    output(k)
    k.set_defaults(func=cmd_catalog)

    w = sub.add_parser("dwdouble", help="twisted quantum double of a finite group")
    w.add_argument("--group", required=True, help="'cyclic:N' or a group file")
    w.add_argument("--cocycle", help="cocycle file (default: trivial cocycle)")
    output(w)
    w.set_defaults(func=cmd_dwdouble)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "build" and not args.name:
        parser.error("catalog build needs a NAME")
    try:
        return args.func(args)
    except io.InputError as exc:
        _err(f"input error: {exc}")
        return INPUT
    except UsageError as exc:
        _err(f"error: {exc}")
        return INPUT
    except (ScalarError, TensorError, StructureError, ValueError) as exc:
        _err(f"input error: {exc}")
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
