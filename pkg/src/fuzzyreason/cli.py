"""Command-line entry point: ``fuzzyreason <command> ...``.

Exit status is 0 on success, 1 for user errors (bad flags, bad input files,
failed computations on user data) and 2 for internal errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import fstds, jsonio, tables
from .core import FuzzySet, Hedge, HedgeKind, apply_hedge, format_set
from .defuzz import DefuzzMethod, defuzzify, defuzzify_firings
from .grammar import FuzzyGrammar, GrammarError, derive
from .inference import gmp, gmt, ite_infer, multi_infer
from .linguistics import age_variable, neither_quite_young_nor_quite_old, parse_noun, tree_membership
from .logic.classes import analyze, constraints_to_json, synthesize, systems_from_json
from .logic.formula import parse, to_text
from .logic.terms import fpi, simplest_forms
from .relations import CompositionRule, ElseKind, Implication


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") or not text else text + "\n")


# -- commands -----------------------------------------------------------------

def cmd_run(args, out):
    for line in fstds.run_script(Path(args.script).read_text()):
        _emit(out, line)


def cmd_infer(args, out):
    doc = jsonio.load(args.file)
    named = jsonio.named_universes(doc)
    kind = Implication.parse(args.implication)
    rule = CompositionRule.parse(args.composition)

    def s(key):
        if key not in doc:
            raise jsonio.SchemaError(f"{args.mode} input needs a {key!r} set")
        return jsonio.set_from(doc[key], named)

    firings = None
    if args.mode == "gmp":
        result = gmp(kind, s("A"), s("B"), s("observed"), rule, args.rstar)
    elif args.mode == "gmt":
        result = gmt(kind, s("A"), s("B"), s("observed"), rule, args.rstar)
    elif args.mode == "ite":
        result = ite_infer(ElseKind.parse(args.else_kind), s("A"), s("B"), s("C"), s("observed"))
    else:
        result, firings = multi_infer(jsonio.rules_from(doc, named), jsonio.inputs_from(doc, named))
    _emit(out, "result: " + format_set(result))
    if firings is not None:
        for k, f in enumerate(firings):
            _emit(out, f"rule {k + 1}: strength {_fmt(f.strength)} area {_fmt(f.area)}")
    if args.defuzz:
        method = DefuzzMethod.parse(args.defuzz)
        if method.on_firings:
            if firings is None:
                raise ValueError(f"{method.value} needs rule firings; use the multi mode")
            value = defuzzify_firings(method, firings)
        else:
            value = defuzzify(method, result)
        _emit(out, f"{method.value}: {_fmt(value)}")


def cmd_minimize(args, out):
    f = parse(args.formula)
    forms = [fpi(f)] if args.mode == "fpi" else simplest_forms(f)
    for nf in forms:
        _emit(out, nf.text())


def cmd_analyze(args, out):
    j = int(args.class_index) if args.class_index.isdigit() else args.class_index
    c = analyze(parse(args.formula), j, top=args.top)
    _emit(out, json.dumps(constraints_to_json(c), indent=2) if args.json else c.text())


def cmd_synthesize(args, out):
    doc = jsonio.load(args.file)
    j = doc.get("class", "j")
    names = doc.get("names")
    if not names:
        raise jsonio.SchemaError("synthesis input needs a 'names' list")
    f = synthesize(systems_from_json(doc["systems"], j), names, j)
    _emit(out, to_text(f))


def cmd_grammar(args, out):
    if args.action == "derive":
        g = FuzzyGrammar.parse(Path(args.target).read_text())
        d = derive(g, args.sentence, args.max_steps)
        if d is None:
            _emit(out, "none")
            return
        _emit(out, f"grade: {d.grade:g}")
        for form in d.forms(g):
            _emit(out, " ".join(form))
    elif args.action == "noun":
        v = age_variable()
        s = parse_noun(v, args.target)
        ages = args.at if args.at else None
        if ages is None:
            _emit(out, format_set(s))
        else:
            for a in ages:
                _emit(out, f"{a}: {_fmt(s[str(a)])}")
    else:
        m = tree_membership(neither_quite_young_nor_quite_old())
        _emit(out, m.text)
        _emit(out, str(m.expression))


def cmd_tables(args, out):
    fmt = tables.to_csv if args.format == "csv" else tables.to_markdown
    parts = []
    if args.which in ("ponens", "tollens", "all"):
        rows = tables.table_rows(args.grid_n)
        if args.which != "all":
            rows = [r for r in rows if r["table"] == args.which]
        parts.append(fmt(rows))
    if args.which in ("syllogism", "all"):
        parts.append(fmt(tables.syllogism_rows(args.syllogism_grid_n)))
    if args.which in ("ite", "all"):
        parts.append(fmt(tables.ite_rows(args.grid_n)))
    out.write("\n".join(parts))


def cmd_hedge(args, out):
    s = jsonio.set_from(jsonio.load(args.file))
    kind = HedgeKind(args.name.replace("-", " ").replace("_", " ").lower())
    h = Hedge(kind, args.param, args.variant)
    _emit(out, format_set(apply_hedge(h, s)))


def cmd_defuzz(args, out):
    s: FuzzySet = jsonio.set_from(jsonio.load(args.file))
    _emit(out, _fmt(defuzzify(args.method, s)))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fuzzyreason", description="Fuzzy sets, inference, fuzzy logic functions and FSTDS scripts.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="execute an FSTDS script")
    r.add_argument("script")
    r.set_defaults(func=cmd_run, module="fstds")

    i = sub.add_parser("infer", help="fuzzy inference from a JSON input file")
    i.add_argument("mode", choices=["gmp", "gmt", "ite", "multi"])
    i.add_argument("file")
    i.add_argument("--implication", default="Rc")
    i.add_argument("--composition", default="maxmin")
    i.add_argument("--else-kind", default="RmPrime")
    i.add_argument("--rstar", choices=["printed", "difference"], default="printed")
    i.add_argument("--defuzz")
    i.set_defaults(func=cmd_infer, module="inference")

    m = sub.add_parser("minimize", help="prime implicants or simplest forms of a formula")
    m.add_argument("formula")
    m.add_argument("--mode", choices=["fpi", "simplest"], default="fpi")
    m.set_defaults(func=cmd_minimize, module="logic")

    a = sub.add_parser("analyze", help="class constraints of a sum-of-products formula")
    a.add_argument("formula")
    a.add_argument("--class", dest="class_index", default="j")
    a.add_argument("--top", action="store_true", help="the top class has no upper bound")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze, module="logic")

    s = sub.add_parser("synthesize", help="formula from class constraint systems (JSON)")
    s.add_argument("file")
    s.set_defaults(func=cmd_synthesize, module="logic")

    g = sub.add_parser("grammar", help="fuzzy grammar derivations and noun phrases")
    g.add_argument("action", choices=["derive", "noun", "tree"])
    g.add_argument("target", nargs="?", default="", help="grammar file (derive) or noun phrase (noun)")
    g.add_argument("sentence", nargs="?", default="")
    g.add_argument("--max-steps", type=int)
    g.add_argument("--at", type=int, nargs="+", help="ages to print for a noun phrase")
    g.set_defaults(func=cmd_grammar, module="grammar")

    t = sub.add_parser("tables", help="emit the inference tables")
    t.add_argument("--grid-n", type=int, default=1000)
    t.add_argument("--syllogism-grid-n", type=int, default=101)
    t.add_argument("--format", choices=["csv", "markdown"], default="csv")
    t.add_argument("--which", choices=["ponens", "tollens", "syllogism", "ite", "all"], default="all")
    t.set_defaults(func=cmd_tables, module="tables")

    h = sub.add_parser("hedge", help="apply a hedge to a JSON fuzzy set")
    h.add_argument("name", help="|".join(k.value.replace(" ", "-") for k in HedgeKind))
    h.add_argument("file")
    h.add_argument("--param", type=float)
    h.add_argument("--variant", type=int, default=1)
    h.set_defaults(func=cmd_hedge, module="core")

    d = sub.add_parser("defuzz", help="defuzzify a JSON fuzzy set")
    d.add_argument("method")
    d.add_argument("file")
    d.set_defaults(func=cmd_defuzz, module="defuzz")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"fuzzyreason: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.command == "grammar" and args.action in ("derive", "noun") and not args.target:
        print(f"fuzzyreason: error: grammar {args.action} needs a target", file=sys.stderr)
        return 1
    try:
        args.func(args, out)
    except (ValueError, OSError, KeyError, GrammarError) as exc:
        print(f"fuzzyreason: {args.module}: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - reported as an internal error
        print(f"fuzzyreason: internal error in {args.module}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
