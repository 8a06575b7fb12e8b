"""Command-line interface: ``rellattice <command> ...``.

Exit status is 0 on success, 1 on evaluation errors, failed law checks or
an unsuccessful counterexample search, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import TextIO

from . import fixtures, kernel
from .errors import EvalError, ParseError, RelationError
from .fca import (
    check_bridge,
    concept_to_relation,
    emit_dot,
    enumerate_concepts,
    parse_context,
)
from .query import check_env_name, format_relation, parse, evaluate
from .relation import Relation
from .serialize import load_relation, to_csv, to_json


class UsageError(Exception):
    pass


def _parse_binding(spec: str) -> tuple[str, str]:
    name, sep, path = spec.partition("=")
    if not sep or not name or not path:
        raise UsageError(f"expected NAME=PATH, got {spec!r}")
    try:
        check_env_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return name, path


def _load_env(bindings: Sequence[str], with_fixtures: bool) -> dict[str, Relation]:
    env = fixtures.example_env() if with_fixtures else {}
    for spec in bindings or ():
        name, path = _parse_binding(spec)
        env[name] = load_relation(path)
    return env


def _render(rel: Relation, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(rel)
    if fmt == "json":
        return to_json(rel) + "\n"
    return format_relation(rel)


def _describe(rel: Relation, names: dict[Relation, str]) -> str:
    if rel in names:
        return names[rel]
    return f"derived relation over {{{', '.join(rel.attrs)}}}"


# -- commands ---------------------------------------------------------------


def cmd_eval(args, out: TextIO, err: TextIO) -> int:
    env = _load_env(args.relation, not args.no_fixtures)
    expr = parse(args.query)
    out.write(_render(evaluate(expr, env), args.format))
    return 0


def repl(env: dict[str, Relation], inp: TextIO, out: TextIO, prompt: str = "") -> int:
    """Read-eval-print loop.  ``:load NAME PATH``, ``:list``, ``:quit``."""
    while True:
        if prompt:
            out.write(prompt)
            out.flush()
        line = inp.readline()
        if not line:
            return 0
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(":"):
            cmd, *rest = line.split()
            if cmd in (":quit", ":q", ":exit"):
                return 0
            if cmd == ":list":
                for name in sorted(env):
                    out.write(f"{name}({', '.join(env[name].attrs)}) [{len(env[name])} rows]\n")
                continue
            if cmd == ":load" and len(rest) == 2:
                try:
                    env[check_env_name(rest[0])] = load_relation(rest[1])
                    out.write(f"loaded {rest[0]}\n")
                except (OSError, RelationError, ValueError) as exc:
                    out.write(f"error: {exc}\n")
                continue
            out.write("error: commands are :load NAME PATH, :list, :quit\n")
            continue
        try:
            out.write(format_relation(evaluate(parse(line), env)))
        except RelationError as exc:
            out.write(f"error: {exc}\n")


def cmd_repl(args, out: TextIO, err: TextIO) -> int:
    env = _load_env(args.relation, not args.no_fixtures)
    prompt = "rel> " if sys.stdin.isatty() else ""
    return repl(env, sys.stdin, out, prompt)


def _print_reports(reports, out: TextIO, names: dict[Relation, str]) -> bool:
    ok = True
    for r in reports:
        out.write(f"{'PASS' if r.holds else 'FAIL'} {r.law} ({r.cases} cases)\n")
        if not r.holds:
            ok = False
            _print_witness(r.witness, out, names)
    return ok


def _print_witness(w: kernel.Witness, out: TextIO, names: dict[Relation, str]) -> None:
    for label, rel in zip("abc", w.operands):
        out.write(f"  {label} = {_describe(rel, names)}\n")
        if rel not in names:
            out.write(_indent(format_relation(rel)))
    out.write("  left side:\n" + _indent(format_relation(w.lhs)))
    out.write("  right side:\n" + _indent(format_relation(w.rhs)))


def _indent(text: str, by: str = "    ") -> str:
    return "".join(by + ln + "\n" for ln in text.splitlines())


def cmd_check_laws(args, out: TextIO, err: TextIO) -> int:
    if args.cases < 1:
        raise UsageError("--cases must be at least 1")
    reports = kernel.check_laws(kernel.relation_sampler(args.seed), args.cases)
    ok = _print_reports(reports, out, {})
    out.write(f"seed {args.seed}: {'all laws hold' if ok else 'LAW VIOLATION'}\n")
    return 0 if ok else 1


def cmd_laws_on_file(args, out: TextIO, err: TextIO) -> int:
    env = _load_env(args.relation, not args.no_fixtures)
    if not env:
        raise UsageError("no relations given")
    names = {rel: name for name, rel in env.items()}
    rels = list(env.values())
    witnesses = dict.fromkeys(kernel.LATTICE_LAWS)
    cases = 0
    for triple in itertools.product(rels, repeat=3):
        cases += 1
        for law in kernel.LATTICE_LAWS:
            if witnesses[law] is None:
                witnesses[law] = kernel.evaluate_law(law, *triple)
    reports = [kernel.LawReport(law, cases, witnesses[law] is None, witnesses[law])
               for law in kernel.LATTICE_LAWS]
    return 0 if _print_reports(reports, out, names) else 1


def cmd_counterexample(args, out: TextIO, err: TextIO) -> int:
    if args.sources:
        named = {Path(p).stem: load_relation(p) for p in args.sources}
    else:
        named = fixtures.example_env()
    names = {rel: name for name, rel in named.items()}
    gens = list(named.values())
    for name, rel in named.items():
        out.write(f"{name} =\n" + _indent(format_relation(rel)))
    closure = kernel.lattice_closure(gens, args.cap)
    out.write(f"closure: {len(closure)} elements{' (truncated)' if closure.truncated else ''}\n")
    found = False
    highlight: list[int] = []
    if args.kind == "distributivity":
        report = None
        if not args.sources:
            # C & (A | B) against (C & A) | (C & B)
            report = kernel.check_distributivity(named["C"], named["A"], named["B"])[0]
        if report is None or report.holds:
            report = _search_distributivity(gens, closure)
        if report is not None:
            found = True
            out.write(f"FAIL {report.law}\n")
            _print_witness(report.witness, out, names)
    else:
        if closure.truncated:
            raise UsageError("closure truncated; raise --cap to search for a modular violation")
        report = kernel.find_modularity_violation(closure)
        if report is not None:
            found = True
            out.write("FAIL modular  (a <= c, a & (b | c) vs (a & b) | c)\n")
            _print_witness(report.witness, out, names)
        pentagon = kernel.find_n5(closure)
        if pentagon is not None:
            out.write("pentagon (bot, top, x, a, b):\n")
            for label, rel in zip(("bot", "top", "x", "a", "b"), pentagon):
                out.write(f"  {label} = {_describe(rel, names)}\n")
                if rel not in names:
                    out.write(_indent(format_relation(rel)))
            highlight = [closure.index(r) for r in pentagon]
    if args.figure:
        if closure.truncated:
            raise UsageError("closure truncated; cannot draw its Hasse diagram")
        from .plotting import plot_hasse

        labels = [names.get(r, f"{{{','.join(r.attrs)}}}:{len(r)}") for r in closure.elements]
        plot_hasse(labels, kernel.hasse_edges(closure), args.figure,
                   title=f"closure of {', '.join(named)}", highlight=highlight)
        out.write(f"figure written to {args.figure}\n")
    if not found:
        out.write(f"no {args.kind} counterexample found\n")
    return 0 if found else 1


def _search_distributivity(gens, closure):
    pool = list(gens) + [r for r in closure.elements if r not in gens]
    for a, b, c in itertools.product(pool, repeat=3):
        for report in kernel.check_distributivity(a, b, c):
            if not report.holds:
                return report
    return None


def cmd_fca(args, out: TextIO, err: TextIO) -> int:
    if args.context:
        ctx = parse_context(Path(args.context).read_text(encoding="utf-8"))
    else:
        ctx = fixtures.famous_animals()
    lattice = enumerate_concepts(ctx)
    out.write(
        f"context: {len(ctx.objects)} objects, {len(ctx.attributes)} attributes, "
        f"{len(ctx.incidence)} incidences\n"
    )
    out.write(f"concepts: {len(lattice)}, covering edges: {len(lattice.hasse_edges)}\n")
    for k, c in enumerate(lattice.concepts):
        out.write(f"  c{k}: extent {{{', '.join(g for g in ctx.objects if g in c.extent)}}}"
                  f"  intent {{{', '.join(m for m in ctx.attributes if m in c.intent)}}}\n")
    bridge = check_bridge(ctx, lattice)
    out.write(f"{'PASS' if bridge.holds else 'FAIL'} {bridge.law} ({bridge.cases} pairs)")
    out.write(f": {bridge.note}\n" if bridge.note else "\n")
    if args.relations:
        for k, c in enumerate(lattice.concepts):
            out.write(f"c{k}:\n" + _indent(format_relation(concept_to_relation(ctx, c))))
    if args.dot:
        dot = emit_dot(lattice)
        if args.dot == "-":
            out.write(dot)
        else:
            Path(args.dot).write_text(dot, encoding="utf-8")
            out.write(f"DOT written to {args.dot}\n")
    if args.figure:
        from .plotting import plot_concept_lattice

        plot_concept_lattice(lattice, args.figure)
        out.write(f"figure written to {args.figure}\n")
    return 0 if bridge.holds else 1


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rellattice",
        description="Relational algebra from natural join and generalized union.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def relation_flags(sp):
        sp.add_argument("-r", "--relation", action="append", default=[], metavar="NAME=PATH",
                        help="bind NAME to a CSV or JSON relation file (repeatable)")
        sp.add_argument("--no-fixtures", action="store_true",
                        help="do not preload the example relations A, B, C")

    sp = sub.add_parser("eval", help="evaluate one query")
    relation_flags(sp)
    sp.add_argument("-q", "--query", required=True)
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("repl", help="interactive query loop")
    relation_flags(sp)
    sp.set_defaults(func=cmd_repl)

    sp = sub.add_parser("check-laws", help="property-check the eight lattice identities")
    sp.add_argument("--cases", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check_laws)

    sp = sub.add_parser("laws-on-file", help="check the lattice identities on all triples of given relations")
    relation_flags(sp)
    sp.set_defaults(func=cmd_laws_on_file)

    sp = sub.add_parser("counterexample", help="search for distributivity or modularity failures")
    sp.add_argument("--kind", choices=("distributivity", "modularity"), required=True)
    sp.add_argument("--from", dest="sources", nargs="+", metavar="PATH",
                    help="generator relations (default: the example relations A, B, C)")
    sp.add_argument("--cap", type=int, default=512, help="closure size limit")
    sp.add_argument("--figure", metavar="PNG", help="draw the closure's Hasse diagram")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("fca", help="concept lattice of a formal context")
    sp.add_argument("--context", metavar="PATH",
                    help="cross-table CSV (default: the famous-animals context)")
    sp.add_argument("--dot", metavar="OUT", help="write the Hasse diagram as DOT ('-' for stdout)")
    sp.add_argument("--relations", action="store_true", help="print each concept as a relation")
    sp.add_argument("--figure", metavar="PNG", help="draw the Hasse diagram to an image file")
    sp.set_defaults(func=cmd_fca)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"rellattice {args.command}: usage error: {exc}\n")
        return 2
    except ParseError as exc:
        err.write(f"rellattice {args.command}: parse error: {exc}\n")
        return 1
    except EvalError as exc:
        err.write(f"rellattice {args.command}: evaluation error: {exc}\n")
        return 1
    except (RelationError, OSError) as exc:
        err.write(f"rellattice {args.command}: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
