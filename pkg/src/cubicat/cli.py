"""Command-line interface.

Exit codes: 0 pass, 1 violations found (or no inverse), 2 usage error,
3 malformed document or structure, 4 unknown cell.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import document
from .classical import ClassicalStructure, R_inverse, check_classical_axioms, check_classical_np
from .core import SingleSetStructure, StructureError, fixed_point_lattice
from .equivalence import check_eta, check_mu, fc, fs
from .inverses import (NotOmegaZero, check_inverse_lemmas, check_np, ri_inverse,
                       synthesize_inverse_dim0)
from .laws import (LAWS, CheckReport, check_category_axioms, check_connection_axioms,
                   check_cubical_axioms, check_derived_lemmas)
from .models import cube_nerve, parse_base, terminal
from .normalizer import default_rules, format_word, normalize, parse_word

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_STRUCTURE, EXIT_LOOKUP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _out(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _label(obj):
    return obj.label


def _print_report(report: CheckReport, obj, as_json: bool):
    if as_json:
        print(json.dumps(report.to_dict(_label(obj)), indent=1))
        return
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: {len(report.violations)} violation(s) in {report.checked_count} instance(s)")
    for note in report.notes:
        print(f"note: {note}")
    for v in report.violations:
        print(f"  [{v.severity}] {v.describe(_label(obj))}")


def single_set_suite(S: SingleSetStructure, suite: str, threads: int = 1) -> CheckReport:
    if suite.startswith("np:"):
        return check_np(S, _int(suite[3:], "np level"))
    runners = {
        "category": check_category_axioms,
        "cubical": check_cubical_axioms,
        "connections": check_connection_axioms,
        "derived": lambda S, threads: check_derived_lemmas(S, threads).merge(check_inverse_lemmas(S, threads)),
    }
    if suite == "all":
        names = ["category", "cubical"] + (["connections"] if S.has_connections else []) + ["derived"]
        report = CheckReport()
        for name in names:
            report = report.merge(runners[name](S, threads=threads))
        return report
    if suite not in runners:
        raise UsageError(f"unknown suite {suite!r}")
    return runners[suite](S, threads=threads)


def classical_suite(C: ClassicalStructure, suite: str, threads: int = 1) -> CheckReport:
    if suite.startswith("np:"):
        return check_classical_np(C, _int(suite[3:], "np level"))
    if suite in ("all", "classical"):
        return check_classical_axioms(C, threads)
    raise UsageError(f"suite {suite!r} does not apply to classical structures")


def _int(text, what):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _validated(obj, threads=1):
    """Copy flagged validated, or ``None`` with the failing report printed."""
    import dataclasses

    report = single_set_suite(obj, "all", threads) if isinstance(obj, SingleSetStructure) \
        else classical_suite(obj, "all", threads)
    if report.violations:
        print("input does not satisfy the axioms:", file=sys.stderr)
        _print_report(report, obj, False)
        return None
    return dataclasses.replace(obj, validated=True)


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args):
    if args.model == "terminal":
        S = terminal(args.dim, args.connections)
    else:
        if not args.base:
            raise UsageError("--base is required for nerve models")
        S = cube_nerve(parse_base(args.base), args.dim, args.connections)
    _out(args, document.dumps(S))
    return EXIT_OK


def cmd_check(args):
    obj = document.load(args.file)
    if isinstance(obj, SingleSetStructure):
        report = single_set_suite(obj, args.suite, args.threads)
    else:
        report = classical_suite(obj, args.suite, args.threads)
    _print_report(report, obj, args.json)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def cmd_translate(args):
    obj = document.load(args.file)
    want_classical = args.to == "classical"
    if want_classical != isinstance(obj, SingleSetStructure):
        raise UsageError(f"input is already {'classical' if want_classical else 'single-set'}")
    obj = _validated(obj, args.threads)
    if obj is None:
        return EXIT_VIOLATIONS
    _out(args, document.dumps(fc(obj) if want_classical else fs(obj)))
    return EXIT_OK


def cmd_roundtrip(args):
    obj = document.load(args.file)
    obj = _validated(obj, args.threads)
    if obj is None:
        return EXIT_VIOLATIONS
    report = check_mu(obj) if isinstance(obj, SingleSetStructure) else check_eta(obj)
    _print_report(report, obj, args.json)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def _lookup(index, *key):
    try:
        return index(*key)
    except KeyError as exc:
        raise LookupError(str(exc.args[0]) if exc.args else str(key)) from None


def cmd_invert(args):
    obj = document.load(args.file)
    i = args.direction
    if isinstance(obj, ClassicalStructure):
        k = obj.top if args.level is None else args.level
        a = _lookup(obj.index, k, args.cell)
        b = R_inverse(obj, k, i, a)
        print("none" if b is None else f"inverse: {obj.cells[k][b]}")
        return EXIT_OK if b is not None else EXIT_VIOLATIONS
    x = _lookup(obj.index, args.cell)
    if not 1 <= i <= obj.dim:
        raise UsageError(f"--direction must be in 1..{obj.dim}")
    if args.constructive:
        obj = _validated(obj)
        if obj is None:
            return EXIT_VIOLATIONS
        try:
            cert = synthesize_inverse_dim0(obj, i, x)
        except NotOmegaZero as exc:
            print(f"none: {exc}")
            return EXIT_VIOLATIONS
    else:
        cert = ri_inverse(obj, i, x)
    if cert is None:
        print("none")
        return EXIT_VIOLATIONS
    print(f"direction: {cert.direction}")
    print(f"cell: {obj.label(cert.cell)}")
    print(f"inverse: {obj.label(cert.inverse)}")
    names = ("x o y defined", "x o y = lower face", "y o x defined", "y o x = upper face")
    for name, flag in zip(names, cert.evidence):
        print(f"  {name}: {str(flag).lower()}")
    for j, a, face, z in cert.shell:
        print(f"  shell d{j}{a}: {obj.label(face)} -> {obj.label(z)}")
    return EXIT_OK


def cmd_normalize(args):
    if args.rules != "default":
        raise UsageError(f"unknown rule set {args.rules!r}")
    word = parse_word(args.word)
    print(format_word(normalize(word, args.level, default_rules())))
    return EXIT_OK


def cmd_lattice(args):
    obj = document.load(args.file)
    if not isinstance(obj, SingleSetStructure):
        raise UsageError("lattice needs a single-set structure")
    nodes, edges = fixed_point_lattice(obj)

    def name(I):
        return "S^{" + ",".join(map(str, I)) + "}" if I else "S"

    if args.json:
        print(json.dumps({
            "nodes": [{"directions": list(I), "size": len(cells)} for I, cells in nodes.items()],
            "edges": [{"sub": list(a), "sup": list(b)} for a, b in edges],
        }, indent=1))
        return EXIT_OK
    for I, cells in nodes.items():
        print(f"{name(I)}: {len(cells)}")
    for a, b in edges:
        print(f"{name(a)} <= {name(b)}")
    return EXIT_OK


def cmd_laws(args):
    for law in sorted(LAWS.values(), key=lambda l: (l.suite, l.id)):
        print(f"{law.suite:12} {law.severity:18} {law.id}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicat", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a model and write it as JSON")
    g.add_argument("--model", choices=("nerve", "terminal"), default="nerve")
    g.add_argument("--base", help="base thin category, e.g. pair_groupoid:2")
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--connections", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run a law suite")
    c.add_argument("file")
    c.add_argument("--suite", default="all",
                   help="category|cubical|connections|derived|np:<p>|all (classical: classical|np:<p>|all)")
    c.add_argument("--json", action="store_true")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("translate", help="translate between presentations")
    t.add_argument("file")
    t.add_argument("--to", choices=("classical", "single-set"), required=True)
    t.add_argument("-o", "--output")
    t.add_argument("--threads", type=int, default=1)
    t.set_defaults(func=cmd_translate)

    r = sub.add_parser("roundtrip", help="check the round trip through the other presentation")
    r.add_argument("file")
    r.add_argument("--json", action="store_true")
    r.add_argument("--threads", type=int, default=1)
    r.set_defaults(func=cmd_roundtrip)

    i = sub.add_parser("invert", help="find an inverse")
    i.add_argument("file")
    i.add_argument("--direction", type=int, required=True)
    i.add_argument("--cell", required=True, help="cell label")
    i.add_argument("--level", type=int, help="level of the cell (classical input)")
    i.add_argument("--constructive", action="store_true")
    i.set_defaults(func=cmd_invert)

    n = sub.add_parser("normalize", help="normal form of a structural word")
    n.add_argument("--word", required=True)
    n.add_argument("--level", type=int, required=True)
    n.add_argument("--rules", default="default")
    n.set_defaults(func=cmd_normalize)

    lat = sub.add_parser("lattice", help="print the fixed-point lattice")
    lat.add_argument("file")
    lat.add_argument("--json", action="store_true")
    lat.set_defaults(func=cmd_lattice)

    lw = sub.add_parser("laws", help="list law identifiers")
    lw.set_defaults(func=cmd_laws)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LookupError as exc:
        print(f"unknown cell: {exc}", file=sys.stderr)
        return EXIT_LOOKUP
    except (StructureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE


if __name__ == "__main__":
    sys.exit(main())
