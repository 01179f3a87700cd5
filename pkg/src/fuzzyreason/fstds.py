"""Interpreter for FSTDS, a small scripting language over fuzzy sets and
relations.

Every fuzzy set in a script lives on one universe: the element labels in
order of first appearance, unless a ``Universe(a, b, ...)`` statement fixes
the order.  Relations are fuzzy subsets of that universe squared.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import core, relations
from .core import FuzzySet, SetOp, Universe, UniverseMismatch
from .relations import FuzzyRelation


class ScriptError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


# -- values -------------------------------------------------------------------------

@dataclass(frozen=True)
class CrispSet:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class Graph:
    vertices: CrispSet
    edges: FuzzyRelation


Value = Union[FuzzySet, FuzzyRelation, CrispSet, Graph, float, bool]


# -- lexer --------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_LEX = re.compile(r"""
    (?P<ws>[ \t\r]+|//[^\n]*)
  | (?P<nl>\n)
  | (?P<assign>:=)
  | (?P<num>\d+(?:\.\d*)?|\.\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[()\[\],/<>#;])
""", re.VERBOSE)


def tokenize(source: str) -> list[Token]:
    toks: list[Token] = []
    line, line_start, pos, depth = 1, 0, 0, 0
    while pos < len(source):
        m = _LEX.match(source, pos)
        col = pos - line_start + 1
        if not m:
            raise ScriptError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group(kind)
        if kind == "nl":
            if depth == 0:
                toks.append(Token("sep", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "ws":
            pass
        elif kind == "name" and text == "Printc" and source[m.end():m.end() + 1] == "(":
            close = source.find(")", m.end())
            if close < 0:
                raise ScriptError("unterminated Printc(", line, col)
            toks.append(Token("printc", source[m.end() + 1:close], line, col))
            line += source.count("\n", m.end(), close)
            pos = close + 1
            continue
        elif kind == "sym" and text == ";":
            toks.append(Token("sep", ";", line, col))
        else:
            if text in "([<":
                depth += 1
            elif text in ")]>":
                depth = max(0, depth - 1)
            toks.append(Token(kind, text, line, col))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1))
    return toks


# -- syntax tree ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Ref:
    name: str
    line: int
    col: int


@dataclass(frozen=True)
class SetLit:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class FsetLit:
    # each item is (grade, label) or (grade, (row, col))
    items: tuple[tuple[float, Union[str, tuple[str, str]]], ...]
    line: int
    col: int


@dataclass(frozen=True)
class GraphLit:
    vertices: "Expr"
    edges: "Expr"
    line: int
    col: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]
    line: int
    col: int


Expr = Union[Num, Ref, SetLit, FsetLit, GraphLit, Call]


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Expr


@dataclass(frozen=True)
class Print:
    kind: str  # Print | Printb | Prints | Printn | Printc
    expr: Expr | None = None
    text: str = ""


@dataclass(frozen=True)
class End:
    pass


@dataclass(frozen=True)
class Dump:
    name: str


@dataclass(frozen=True)
class Snap:
    pass


@dataclass(frozen=True)
class Para:
    pass


@dataclass(frozen=True)
class UniverseDecl:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr


Statement = Union[Assign, Print, End, Dump, Snap, Para, UniverseDecl, ExprStmt]


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]
    universe_labels: tuple[str, ...] = ()


FUNCTIONS = {
    "Union", "Intersection", "Prod", "Asum", "Bsum", "Bdif",
    "Compose", "Converse", "Image", "Domain",
    "EQ", "Subset", "Element",
    "Cut", "EXP", "Dlt", "Assign",
}
PRINTS = {"Print", "Printb", "Prints", "Printn"}


class _Parser:
    def __init__(self, source: str):
        self.toks = tokenize(source)
        self.i = 0
        self.labels: list[str] = []

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = text if text is not None else kind
            found = t.text or "end of input"
            raise ScriptError(f"expected {want!r}, found {found!r}", t.line, t.col)
        self.i += 1
        return t

    def note(self, label: str) -> None:
        if label not in self.labels:
            self.labels.append(label)

    def script(self) -> Script:
        stmts: list[Statement] = []
        declared: tuple[str, ...] | None = None
        while self.peek().kind != "eof":
            if self.peek().kind == "sep":
                self.i += 1
                continue
            st = self.statement()
            if isinstance(st, UniverseDecl):
                if declared is not None:
                    t = self.peek()
                    raise ScriptError("Universe declared twice", t.line, t.col)
                declared = st.labels
            stmts.append(st)
            t = self.peek()
            if t.kind not in ("sep", "eof"):
                raise ScriptError(f"expected end of statement, found {t.text!r}", t.line, t.col)
        if declared is not None:
            missing = [l for l in self.labels if l not in declared]
            if missing:
                raise ScriptError(f"labels not in the declared Universe: {', '.join(missing)}")
            labels = declared
        else:
            labels = tuple(self.labels)
        return Script(tuple(stmts), labels)

    def statement(self) -> Statement:
        t = self.peek()
        if t.kind == "printc":
            self.i += 1
            return Print("Printc", text=t.text.strip())
        if t.kind != "name":
            raise ScriptError(f"statement cannot start with {t.text!r}", t.line, t.col)
        word = t.text
        if word.upper() == "END":
            self.i += 1
            return End()
        if word in ("Snap", "Para"):
            self.i += 1
            if self.peek().text == "(":
                self.take("(")
                self.take(")")
            return Snap() if word == "Snap" else Para()
        if word == "Dump":
            self.i += 1
            self.take("(")
            name = self.take(kind="name").text
            self.take(")")
            return Dump(name)
        if word == "Universe":
            self.i += 1
            self.take("(")
            labels = self.label_list(")")
            for l in labels:
                self.note(l)
            return UniverseDecl(tuple(labels))
        if word in PRINTS:
            self.i += 1
            self.take("(")
            if self.peek().text == ")":
                if word != "Printn":
                    raise ScriptError(f"{word} needs an argument", t.line, t.col)
                self.take(")")
                return Print(word)
            e = self.expr()
            self.take(")")
            return Print(word, e)
        if self.peek(1).kind == "assign":
            self.i += 2
            return Assign(word, self.expr())
        if word == "Assign":
            e = self.expr()
            return ExprStmt(e)
        return ExprStmt(self.expr())

    def label_list(self, close: str) -> list[str]:
        out = []
        if self.peek().text == close:
            self.take(close)
            return out
        while True:
            tok = self.peek()
            if tok.kind not in ("name", "num"):
                raise ScriptError(f"expected an element label, found {tok.text!r}", tok.line, tok.col)
            self.i += 1
            out.append(tok.text)
            if self.peek().text == ",":
                self.take(",")
                continue
            self.take(close)
            return out

    def expr(self) -> Expr:
        t = self.peek()
        if t.kind == "num":
            self.i += 1
            return Num(float(t.text))
        if t.text == "#":
            self.i += 1
            # '#A' and '#(A)' both count the support
            if self.peek().text == "(":
                self.take("(")
                e = self.expr()
                self.take(")")
            else:
                e = self.expr()
            return Call("#", (e,), t.line, t.col)
        if t.kind != "name":
            raise ScriptError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)
        self.i += 1
        if t.text == "Set" and self.peek().text == "(":
            self.take("(")
            labels = self.label_list(")")
            for l in labels:
                self.note(l)
            return SetLit(tuple(labels))
        if t.text == "Fset" and self.peek().text == "(":
            return self.fset(t)
        if self.peek().text == "(":
            if t.text not in FUNCTIONS:
                raise ScriptError(f"unknown operation {t.text!r}", t.line, t.col)
            self.take("(")
            args = []
            if self.peek().text != ")":
                args.append(self.expr())
                while self.peek().text == ",":
                    self.take(",")
                    args.append(self.expr())
            self.take(")")
            return Call(t.text, tuple(args), t.line, t.col)
        return Ref(t.text, t.line, t.col)

    def fset(self, head: Token) -> Expr:
        self.take("(")
        if self.peek().text == "<" and self.peek(1).kind == "name" and self.peek(2).text == ",":
            # graph literal <vertices, edges>
            self.take("<")
            v = self.expr()
            self.take(",")
            e = self.expr()
            self.take(">")
            self.take(")")
            return GraphLit(v, e, head.line, head.col)
        items = []
        if self.peek().text != ")":
            while True:
                g = self.take(kind="num")
                grade = float(g.text)
                if not 0.0 <= grade <= 1.0:
                    raise ScriptError(f"grade {g.text} is outside [0, 1]", g.line, g.col)
                self.take("/")
                if self.peek().text in ("[", "<"):
                    close = "]" if self.take().text == "[" else ">"
                    pair = self.label_list(close)
                    if len(pair) != 2:
                        raise ScriptError("a relation element needs exactly two labels", g.line, g.col)
                    for l in pair:
                        self.note(l)
                    items.append((grade, (pair[0], pair[1])))
                else:
                    lab = self.take()
                    if lab.kind not in ("name", "num"):
                        raise ScriptError(f"expected an element label, found {lab.text!r}", lab.line, lab.col)
                    self.note(lab.text)
                    items.append((grade, lab.text))
                if self.peek().text == ",":
                    self.take(",")
                    continue
                break
        self.take(")")
        return FsetLit(tuple(items), head.line, head.col)


def parse_script(source: str) -> Script:
    return _Parser(source).script()


# -- evaluation -------------------------------------------------------------------------

def format_grade(g: float) -> str:
    s = f"{g:.6f}".rstrip("0").rstrip(".")
    return s or "0"


def format_value(v: Value) -> str:
    if isinstance(v, bool):
        return "TRUE" if v else "FALSE"
    if isinstance(v, float):
        return format_grade(v) if 0 <= v <= 1 else f"{v:.6g}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, CrispSet):
        return "Set(" + ", ".join(v.labels) + ")"
    if isinstance(v, FuzzySet):
        return "Fset(" + ", ".join(f"{format_grade(g)}/{l}" for l, g in v.items() if g > 0) + ")"
    if isinstance(v, FuzzyRelation):
        items = []
        for i, r in enumerate(v.rows.labels):
            for j, c in enumerate(v.cols.labels):
                g = float(v.grades[i, j])
                if g > 0:
                    items.append(f"{format_grade(g)}/[{r},{c}]")
        return "Fset(" + ", ".join(items) + ")"
    if isinstance(v, Graph):
        return f"Fset(<{format_value(v.vertices)}, {format_value(v.edges)}>)"
    raise AssertionError(type(v))


MANIFEST = (
    "FSTDS interpreter",
    "constructors: Set Fset",
    "assignment: := Assign",
    "set operations: Union Intersection Prod Asum Bsum Bdif",
    "relation operations: Compose Converse Image Domain",
    "relational tests: EQ Subset Element",
    "other: Cut EXP # Dlt",
    "output: Print Printb Prints Printn Printc",
    "control: End Dump Snap Para Universe",
)

_SETOPS = {"Union": SetOp.UNION, "Intersection": SetOp.INTERSECTION, "Prod": SetOp.ALGEBRAIC_PRODUCT,
           "Asum": SetOp.ALGEBRAIC_SUM, "Bsum": SetOp.BOUNDED_SUM, "Bdif": SetOp.BOUNDED_DIFFERENCE}


@dataclass
class Environment:
    universe: Universe
    bindings: dict[str, Value] = field(default_factory=dict)


class Interpreter:
    def __init__(self, script: Script):
        self.script = script
        self.env = Environment(Universe.from_labels(script.universe_labels, "X"))
        self.out: list[str] = []

    def run(self) -> list[str]:
        for st in self.script.statements:
            if isinstance(st, End):
                break
            self.execute(st)
        return self.out

    def execute(self, st: Statement) -> None:
        env = self.env
        if isinstance(st, Assign):
            env.bindings.pop(st.name, None)
            env.bindings[st.name] = self.eval(st.expr)
        elif isinstance(st, ExprStmt):
            self.eval(st.expr)
        elif isinstance(st, Print):
            self.print(st)
        elif isinstance(st, Dump):
            if st.name not in env.bindings:
                raise ScriptError(f"cannot Dump unbound name {st.name!r}")
            del env.bindings[st.name]
        elif isinstance(st, Snap):
            for name, v in env.bindings.items():
                self.out.append(f"{name} = {format_value(v)}")
        elif isinstance(st, Para):
            self.out.extend(MANIFEST)
            self.out.append("universe: " + ", ".join(env.universe.labels))
        elif isinstance(st, UniverseDecl):
            pass
        else:
            raise AssertionError(st)

    def print(self, st: Print) -> None:
        if st.kind == "Printc":
            self.out.append(st.text)
            return
        if st.kind == "Printn":
            self.out.append(st.expr.name if isinstance(st.expr, Ref) else "***")
            return
        v = self.eval(st.expr)
        if st.kind == "Printb":
            if not isinstance(v, bool):
                raise ScriptError("Printb needs a boolean value")
            self.out.append(format_value(v))
        elif st.kind == "Prints":
            if isinstance(v, FuzzySet):
                v = CrispSet(v.support())
            self.out.append(format_value(v))
        else:
            self.out.append(format_value(v))

    # expression evaluation

    def eval(self, e: Expr) -> Value:
        if isinstance(e, Num):
            return e.value
        if isinstance(e, Ref):
            if e.name in self.env.bindings:
                return self.env.bindings[e.name]
            if e.name in self.env.universe.labels:
                return CrispSet((e.name,))
            raise ScriptError(f"unbound name {e.name!r}", e.line, e.col)
        if isinstance(e, SetLit):
            return CrispSet(self._ordered(e.labels))
        if isinstance(e, FsetLit):
            return self._fset(e)
        if isinstance(e, GraphLit):
            v, r = self.eval(e.vertices), self.eval(e.edges)
            if not isinstance(v, CrispSet) or not isinstance(r, FuzzyRelation):
                raise ScriptError("a graph literal needs <vertex set, relation>", e.line, e.col)
            return Graph(v, r)
        if isinstance(e, Call):
            try:
                return self._call(e)
            except ScriptError:
                raise
            except (ValueError, KeyError, TypeError) as exc:
                raise ScriptError(f"{e.name}: {exc}", e.line, e.col) from exc
        raise AssertionError(e)

    def _ordered(self, labels) -> tuple[str, ...]:
        keep = set(labels)
        return tuple(l for l in self.env.universe.labels if l in keep)

    def _fset(self, e: FsetLit) -> Value:
        u = self.env.universe
        pairs = [i for i in e.items if isinstance(i[1], tuple)]
        if pairs and len(pairs) != len(e.items):
            raise ScriptError("Fset mixes elements and pairs", e.line, e.col)
        if pairs:
            m = np.zeros((len(u), len(u)))
            for g, (a, b) in pairs:
                m[u.index(a), u.index(b)] = g
            return FuzzyRelation(u, u, m)
        g = np.zeros(len(u))
        for grade, label in e.items:
            g[u.index(label)] = grade
        return FuzzySet(u, g)

    def _call(self, e: Call) -> Value:
        name = e.name
        if name == "Assign":
            if len(e.args) != 2 or not isinstance(e.args[0], Ref):
                raise ScriptError("Assign takes a name and a value", e.line, e.col)
            v = self.eval(e.args[1])
            self.env.bindings.pop(e.args[0].name, None)
            self.env.bindings[e.args[0].name] = v
            return v
        args = [self.eval(a) for a in e.args]

        def need(n: int):
            if len(args) != n:
                raise ScriptError(f"{name} takes {n} argument(s), got {len(args)}", e.line, e.col)

        if name in _SETOPS:
            need(2)
            a, b = args
            if isinstance(a, FuzzyRelation) and isinstance(b, FuzzyRelation):
                if name == "Union":
                    return relations.relation_union(a, b)
                if name == "Intersection":
                    return relations.relation_intersection(a, b)
            if isinstance(a, CrispSet) and isinstance(b, CrispSet) and name in ("Union", "Intersection"):
                keep = set(a.labels) | set(b.labels) if name == "Union" else set(a.labels) & set(b.labels)
                return CrispSet(self._ordered(keep))
            return core.combine(_SETOPS[name], self._set(a, e), self._set(b, e))
        if name == "Compose":
            need(2)
            a, b = args
            if isinstance(a, FuzzySet) and isinstance(b, FuzzyRelation):
                return relations.compose(a, b)
            if isinstance(a, FuzzyRelation) and isinstance(b, FuzzySet):
                return relations.compose_rel_set(a, b)
            if isinstance(a, FuzzyRelation) and isinstance(b, FuzzyRelation):
                return relations.compose_rel_rel(a, b)
            raise ScriptError("Compose needs a relation and a set or two relations", e.line, e.col)
        if name == "Converse":
            need(1)
            return relations.converse(self._rel(args[0], e))
        if name == "Image":
            need(2)
            return relations.image(self._rel(args[0], e), self._set(args[1], e))
        if name == "Domain":
            need(1)
            return relations.domain(self._rel(args[0], e))
        if name == "EQ":
            need(2)
            a, b = args
            if isinstance(a, (FuzzySet, FuzzyRelation, CrispSet)) and type(a) is type(b):
                return a == b
            if isinstance(a, float) and isinstance(b, float):
                return a == b
            raise ScriptError("EQ needs two values of the same kind", e.line, e.col)
        if name == "Subset":
            need(2)
            a, b = args
            if isinstance(a, CrispSet) and isinstance(b, CrispSet):
                return set(a.labels) <= set(b.labels)
            if isinstance(a, FuzzyRelation) and isinstance(b, FuzzyRelation):
                return bool(np.all(a.grades <= b.grades))
            return self._set(a, e) <= self._set(b, e)
        if name == "Element":
            need(2)
            a, b = args
            if not (isinstance(a, CrispSet) and len(a.labels) == 1):
                raise ScriptError("Element needs an element label first", e.line, e.col)
            label = a.labels[0]
            if isinstance(b, CrispSet):
                return label in b.labels
            return self._set(b, e)[label] > 0.0
        if name == "Cut":
            need(2)
            return CrispSet(core.lambda_cut(self._set(args[0], e), self._num(args[1], e)))
        if name == "EXP":
            need(2)
            return core.power(self._set(args[0], e), self._num(args[1], e))
        if name == "#":
            need(1)
            v = args[0]
            if isinstance(v, CrispSet):
                return float(len(v.labels))
            if isinstance(v, FuzzyRelation):
                return float(np.count_nonzero(v.grades))
            return float(len(self._set(v, e).support()))
        if name == "Dlt":
            need(2)
            v, x = args
            if not (isinstance(x, CrispSet) and len(x.labels) == 1):
                raise ScriptError("Dlt needs an element label second", e.line, e.col)
            label = x.labels[0]
            if isinstance(v, CrispSet):
                return CrispSet(tuple(l for l in v.labels if l != label))
            s = self._set(v, e)
            g = s.grades.copy()
            g[s.universe.index(label)] = 0.0
            return FuzzySet(s.universe, g)
        raise ScriptError(f"unknown operation {name!r}", e.line, e.col)

    def _set(self, v: Value, e: Call) -> FuzzySet:
        if isinstance(v, FuzzySet):
            return v
        if isinstance(v, CrispSet):
            return FuzzySet.from_mapping(self.env.universe, {l: 1.0 for l in v.labels})
        raise ScriptError(f"{e.name} needs a fuzzy set, got {type(v).__name__}", e.line, e.col)

    def _rel(self, v: Value, e: Call) -> FuzzyRelation:
        if isinstance(v, FuzzyRelation):
            return v
        if isinstance(v, Graph):
            return v.edges
        raise ScriptError(f"{e.name} needs a relation, got {type(v).__name__}", e.line, e.col)

    def _num(self, v: Value, e: Call) -> float:
        if isinstance(v, float) and not isinstance(v, bool):
            return v
        raise ScriptError(f"{e.name} needs a number, got {type(v).__name__}", e.line, e.col)


def run_script(source: str) -> list[str]:
    """Parse and execute ``source``; return the printed lines."""
    script = parse_script(source)
    try:
        return Interpreter(script).run()
    except UniverseMismatch as exc:
        raise ScriptError(str(exc)) from exc


DEMO = """\
A := Fset(1/a, 0.9/b, 0.3/c)
B := Fset(0.1/a, 0.7/b, 0.9/c)
R := Fset(1/[a, a], 0.8/[a, b], 0.7/[b, a], 1/[b, b], 0.2/[b, c],
          0.5/[c, b], 0.1/[c, c])
Print(Assign(C, Union(A, B)))
Print(Image(R, C))
D := Image(R, A)
E := Image(R, B)
Print(Union(D, E))
END
"""

GRAPH_DEMO = """\
V := Set(x, y, z, w)
A := Fset(0.1/<x, y>, 0.7/<y, z>,
          0.4/<w, z>, 0.4/<w, y>, 0.3/<x, w>, 0.9/<w, x>)
G := Fset(<V, A>)
Snap
"""
