"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails or a grading is
not determined, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import diagram as dg
from . import grgroup, modules
from .builders import slope_diagram
from .errors import InputError, MathError, ParseError, QGradeError, UnknownGenerator
from .pmc import torus
from .gluing import compare_with_closed, glue
from .grgroup import fmt
from .serialize import dumps, element_to_json, load_json, relative_to_json

_SLOPE = re.compile(r"^slope:(-?\d+),(-?\d+)$")


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = modules.data_path(path)
    if bundled.exists():
        return bundled
    raise ParseError(f"{path}: no such file (not bundled either)")


def load_diagram(spec: str) -> dg.BorderedDiagram:
    """A diagram file, a bundled fixture name, or ``slope:p,q`` for a built-in solid torus."""
    match = _SLOPE.match(spec)
    if match:
        return slope_diagram(int(match.group(1)), int(match.group(2)))
    path = _resolve(spec)
    return dg.from_dict(load_json(path), name=path.name)


def load_module(spec: str) -> modules.GradedModulePresentation:
    return modules.load_presentation(_resolve(spec))


def _generator(d: dg.BorderedDiagram, name: str) -> dg.Generator:
    return d.check_generator([p for p in name.split(",") if p])


# ---------------------------------------------------------------------- commands
def cmd_check(args, out) -> int:
    m = load_module(args.module)
    side = m.side
    if args.side and args.side != m.side:
        if not args.force:
            raise InputError(f"{args.module} is a type {m.side} presentation; pass --force to check it as type {args.side}")
        side = args.side
    m = modules.GradedModulePresentation(side, m.pmc, m.subgroup, m.algebra, m.generators, m.operations, m.torus_algebra, m.name)
    report = modules.check(m)
    if args.json:
        out(dumps({
            "module": report.module,
            "side": side,
            "passed": report.passed,
            "checks": [
                {"operation": str(c.operation), "passed": c.passed, "membership": c.membership.name.lower(),
                 "idempotents_ok": c.idempotents_ok}
                for c in report.checks
            ],
        }))
    else:
        for c in report.checks:
            idem = "" if c.idempotents_ok in (None, True) else "  (idempotents incompatible)"
            out(f"{'pass' if c.passed else 'FAIL'}  {c.operation}{idem}")
        out(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} operations consistent")
    return 0 if report.passed else 1


def _tensors(args):
    mA, mD = load_module(args.a_module), load_module(args.d_module)
    return modules.tensor_generators(mA, mD)


def cmd_tensor(args, out) -> int:
    tensors = _tensors(args)
    table = modules.grading_table(tensors, args.base)
    if args.json:
        out(dumps({
            "generators": [{"name": t.name, "rep": element_to_json(t.grading.rep)} for t in tensors],
            "classes": [
                {"base": c.base, "offsets": {k: None if v is None else fmt(v) for k, v in c.offsets.items()}}
                for c in table
            ],
        }))
    else:
        out(f"{len(tensors)} tensor generators")
        for t in tensors:
            out(f"  {t.name}: {t.grading}")
        for i, c in enumerate(table, 1):
            out(f"class {i} (base {c.base}):")
            for name, q in c.offsets.items():
                out(f"  {name}: {'indeterminate' if q is None else fmt(q)}")
    return 0


def cmd_grade_pair(args, out) -> int:
    by_name = {t.name: t for t in _tensors(args)}
    try:
        t1, t2 = by_name[args.first], by_name[args.second]
    except KeyError as exc:
        raise UnknownGenerator(f"no tensor generator {exc.args[0]!r}; have {sorted(by_name)}") from exc
    r = modules.relative_Q_grading(t1, t2)
    out(dumps(relative_to_json(r)) if args.json else str(r))
    return 0 if r.is_same else 1


def cmd_diagram_grade(args, out) -> int:
    d = load_diagram(args.diagram)
    x, y = _generator(d, args.first), _generator(d, args.second)
    if d.is_closed:
        q = dg.closed_relative_grading(d, x, y)
        out(dumps({"grading_difference": fmt(q)}) if args.json else fmt(q))
        return 0
    side = args.side or "A"
    coset = dg.generator_grading(d, x, y, side)
    out(dumps({"coset": str(coset)}) if args.json else str(coset))
    return 0


def cmd_glue_oracle(args, out) -> int:
    glued = glue(load_diagram(args.first), load_diagram(args.second))
    rows = compare_with_closed(glued)
    if args.json:
        out(dumps([
            {"x": r.x.name, "y": r.y.name, "closed": relative_to_json(r.closed),
             "bordered": relative_to_json(r.bordered), "agree": r.agree}
            for r in rows
        ]))
    else:
        out(f"{len(dg.enumerate_generators(glued.diagram))} closed generators")
        for r in rows:
            out(f"{'ok ' if r.agree else 'BAD'}  {r.x.name} -> {r.y.name}: closed {r.closed}, bordered {r.bordered}")
    return 0 if all(r.agree for r in rows) else 1


def selftest_checks() -> list[tuple[str, Callable[[], bool]]]:
    """Named regression checks over the bundled fixtures."""
    T = torus()
    e = lambda m, *h: grgroup.element(T, Fraction(m), [Fraction(c) for c in h])  # noqa: E731
    half = Fraction(1, 2)

    def product_identity():
        chain = grgroup.mul(e("3/4", "-3/2", "-3/2", 0), e("3/2", 0, 2, 1), e("3/4", "1/2", "-1/2", -1))
        return chain == e(1, -1, 0, 0)

    def relation_identity():
        return grgroup.mul(e(-half, 0, 1, 0), e(-half, 1, 0, 0), grgroup.lambda_pow(T)) == e(-half, 1, 1, 0)

    def pairing(d_file):
        A = load_module("solid_torus_inf.cfa.json")
        return {t.name: t for t in modules.tensor_generators(A, load_module(d_file))}

    def trefoil():
        ts = pairing("trefoil_m2.cfd.json")
        return len(ts) == 2 and modules.relative_Q_grading(ts["n*y2"], ts["n*y1"]) == grgroup.Same(Fraction(3, 2))

    def unknot():
        ts = pairing("unknot_m2.cfd.json")
        r = modules.relative_Q_grading(ts["n*b1"], ts["n*b2"])
        return r.is_same and abs(r.q) == half

    def consistent(name):
        return lambda: modules.check(load_module(name)).passed

    def closed(name, value):
        def run():
            d = load_diagram(name)
            x, y = dg.enumerate_generators(d)
            return dg.closed_relative_grading(d, x, y) == value
        return run

    def oracle():
        pairs = [("slope:2,1", "slope:1,-1"), ("slope:3,2", "slope:2,-3"), ("slope:1,-2", "slope:3,1")]
        return all(all(r.agree for r in compare_with_closed(glue(load_diagram(a), load_diagram(b)))) for a, b in pairs)

    def spinc():
        lens, bigon = load_diagram("lens_2_1.diagram.json"), load_diagram("two_bigon.diagram.json")
        x, y = dg.enumerate_generators(lens)
        u, v = dg.enumerate_generators(bigon)
        return (not dg.same_spinc(lens, x, y) and dg.torsion_difference(lens, x, y)
                and dg.same_spinc(bigon, u, v) and dg.torsion_difference(bigon, u, v))

    return [
        ("product identity ending in (1;-1,0,0)", product_identity),
        ("solid torus relation (-1/2;1,1,0)", relation_identity),
        ("trefoil pairing: two generators, Same(3/2)", trefoil),
        ("unknot pairing: |q| = 1/2", unknot),
        ("trefoil type D gradings consistent", consistent("trefoil_m2.cfd.json")),
        ("unknot type D gradings consistent (as recorded)", consistent("unknot_m2.cfd.json")),
        ("solid torus type A gradings consistent", consistent("solid_torus_inf.cfa.json")),
        ("two-bigon closed grading = 1", closed("two_bigon.diagram.json", 1)),
        ("L(2,1) closed grading = 1/2", closed("lens_2_1.diagram.json", half)),
        ("glued bordered gradings match closed gradings", oracle),
        ("spin^c detection on L(2,1) and the two-bigon diagram", spinc),
    ]


def cmd_selftest(args, out) -> int:
    results = []
    for name, fn in selftest_checks():
        try:
            ok = bool(fn())
        except QGradeError as exc:
            ok, name = False, f"{name} ({type(exc).__name__}: {exc})"
        results.append((name, ok))
    if args.json:
        out(dumps([{"check": n, "passed": ok} for n, ok in results]))
    else:
        for n, ok in results:
            out(f"{'PASS' if ok else 'FAIL'}  {n}")
    return 0 if all(ok for _, ok in results) else 1


# -------------------------------------------------------------------------- main
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgrade", description="Exact rational gradings from bordered invariants.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check grading consistency of a module presentation")
    p.add_argument("module")
    p.add_argument("--side", choices=["A", "D"], help="check as this side instead of the file's own")
    p.add_argument("--force", action="store_true", help="confirm a --side override")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tensor", parents=[common], help="tensor generators and their relative gradings")
    p.add_argument("a_module")
    p.add_argument("d_module")
    p.add_argument("--base", help="base generator for the offsets of its class")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("grade-pair", parents=[common], help="relative grading q with gr(second) = lambda^q gr(first)")
    p.add_argument("a_module")
    p.add_argument("d_module")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_grade_pair)

    p = sub.add_parser("diagram-grade", parents=[common], help="gr(second) - gr(first) on a closed diagram")
    p.add_argument("diagram")
    p.add_argument("first", help="comma-separated intersection points")
    p.add_argument("second")
    p.add_argument("--side", choices=["A", "D"], help="for bordered diagrams: coset side (default A)")
    p.set_defaults(func=cmd_diagram_grade)

    p = sub.add_parser("glue-oracle", parents=[common], help="compare bordered and closed gradings after gluing")
    p.add_argument("first", help="diagram file or slope:p,q")
    p.add_argument("second")
    p.set_defaults(func=cmd_glue_oracle)

    p = sub.add_parser("selftest", parents=[common], help="run the bundled regression checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None, out: Callable[[str], None] = print) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
