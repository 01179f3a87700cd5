"""Fuzzy logic formulas: syntax tree, parser, printer and evaluation.

Connectives follow max/min/complement semantics.  Implication uses the
bounded form ``min(1, 1 - p + q)``.  A formula carries its variable names
explicitly, so its arity is always known.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
import sympy


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int  # 0-based position in the formula's variable tuple


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class And:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Implies:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Scaled:
    """A literal multiplied by a weight; the weight may be symbolic."""

    weight: object
    child: "Node"


Node = Union[Var, Const, Not, And, Or, Implies, Scaled]


@dataclass(frozen=True)
class FFormula:
    root: Node
    names: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.names)

    def __str__(self) -> str:
        return to_text(self)

    def __call__(self, *values: float) -> float:
        return evaluate(self, values)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<weight>\{[^}]*\})|(?P<op>[-+*&|~!'()·∨∧¬]))"
)


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0
        self.seen: list[str] = []

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value=None):
        t = self.peek()
        if t is None:
            raise FormulaError("unexpected end of formula")
        if value is not None and t[1] != value:
            raise FormulaError(f"expected {value!r} at column {t[2] + 1}, found {t[1]!r}")
        self.i += 1
        return t

    def parse(self):
        node = self.implies()
        t = self.peek()
        if t is not None:
            raise FormulaError(f"unexpected {t[1]!r} at column {t[2] + 1}")
        return node

    def implies(self):
        left = self.disj()
        t = self.peek()
        if t and t[0] == "arrow":
            self.take()
            return ("imp", left, self.implies())
        return left

    def disj(self):
        items = [self.conj()]
        while (t := self.peek()) and t[1] in ("+", "|", "∨"):
            self.take()
            items.append(self.conj())
        return items[0] if len(items) == 1 else ("or", items)

    def conj(self):
        items = [self.unary()]
        while (t := self.peek()) and t[1] in ("*", "&", "·", "∧"):
            self.take()
            items.append(self.unary())
        return items[0] if len(items) == 1 else ("and", items)

    def unary(self):
        t = self.peek()
        if t and t[1] in ("~", "!", "¬"):
            self.take()
            return self.postfix(("not", self.unary()))
        if t and t[0] == "weight":
            self.take()
            try:
                w = sympy.sympify(t[1][1:-1])
            except (sympy.SympifyError, SyntaxError) as exc:
                raise FormulaError(f"bad weight {t[1]!r} at column {t[2] + 1}") from exc
            if (p := self.peek()) and p[1] == "*":
                self.take()
            return ("scaled", w, self.unary())
        return self.postfix(self.atom())

    def postfix(self, node):
        while (t := self.peek()) and t[1] == "'":
            self.take()
            node = ("not", node)
        return node

    def atom(self):
        t = self.take()
        kind, val, col = t
        if val == "(":
            node = self.implies()
            self.take(")")
            return node
        if kind == "num":
            v = float(val)
            if not 0.0 <= v <= 1.0:
                raise FormulaError(f"constant {val} at column {col + 1} is outside [0, 1]")
            return ("const", v)
        if kind == "name":
            if val not in self.seen:
                self.seen.append(val)
            return ("var", val)
        raise FormulaError(f"unexpected {val!r} at column {col + 1}")


_XN = re.compile(r"x(\d+)$")


def _default_names(seen: list[str], arity: int | None) -> tuple[str, ...]:
    if seen and all(_XN.match(s) for s in seen):
        top = max(int(_XN.match(s).group(1)) for s in seen)
        if min(int(_XN.match(s).group(1)) for s in seen) < 1:
            raise FormulaError("indexed variables start at x1")
        n = max(top, arity or 0)
        return tuple(f"x{i}" for i in range(1, n + 1))
    if not seen and arity:
        return tuple(f"x{i}" for i in range(1, arity + 1))
    names = tuple(seen)
    if arity is not None and arity != len(names):
        raise FormulaError(f"formula uses {len(names)} named variables but arity {arity} was given")
    return names


def parse(text: str, names: Sequence[str] | None = None, arity: int | None = None) -> FFormula:
    """Parse a formula.

    Operators: ``+`` or ``|`` (or), ``*`` or ``&`` (and), prefix ``~`` or a
    trailing ``'`` (not), ``->`` (implication) and parentheses.  Variables
    named ``x1..xn`` get arity ``n`` (or ``arity`` if larger); any other
    names are ordered by first appearance unless ``names`` is given.
    """
    p = _Parser(text)
    raw = p.parse() if p.toks else None
    if raw is None:
        raise FormulaError("empty formula")
    if names is None:
        names = _default_names(p.seen, arity)
    else:
        names = tuple(names)
        unknown = [s for s in p.seen if s not in names]
        if unknown:
            raise FormulaError(f"unknown variable(s): {', '.join(unknown)}")
    index = {n: i for i, n in enumerate(names)}

    def build(r) -> Node:
        tag = r[0]
        if tag == "var":
            return Var(index[r[1]])
        if tag == "const":
            return Const(r[1])
        if tag == "not":
            return Not(build(r[1]))
        if tag == "and":
            return And(tuple(build(c) for c in r[1]))
        if tag == "or":
            return Or(tuple(build(c) for c in r[1]))
        if tag == "imp":
            return Implies(build(r[1]), build(r[2]))
        if tag == "scaled":
            return Scaled(r[1], build(r[2]))
        raise AssertionError(tag)

    return FFormula(build(raw), names)


# -- printing -----------------------------------------------------------------

def _fmt_const(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".") if v not in (0.0, 1.0) else str(int(v))


def node_text(node: Node, names: Sequence[str]) -> str:
    def go(n, ctx: int) -> str:
        # ctx: 0 top, 1 inside or, 2 inside and, 3 unary operand
        if isinstance(n, Var):
            return names[n.index]
        if isinstance(n, Const):
            return _fmt_const(n.value)
        if isinstance(n, Not):
            return "~" + go(n.child, 3)
        if isinstance(n, Scaled):
            return "{" + str(n.weight) + "}*" + go(n.child, 3)
        if isinstance(n, And):
            s = "*".join(go(c, 2) for c in n.children)
            return f"({s})" if ctx >= 3 else s
        if isinstance(n, Or):
            s = " + ".join(go(c, 1) for c in n.children)
            return f"({s})" if ctx >= 2 else s
        if isinstance(n, Implies):
            s = f"{go(n.left, 1)} -> {go(n.right, 0)}"
            return f"({s})" if ctx >= 1 else s
        raise AssertionError(n)

    return go(node, 0)


def to_text(f: FFormula) -> str:
    return node_text(f.root, f.names)


# -- evaluation ---------------------------------------------------------------

def eval_node(node: Node, values: np.ndarray):
    """Evaluate on ``values`` of shape ``(arity, ...)``; broadcasts over the rest."""
    if isinstance(node, Var):
        return values[node.index]
    if isinstance(node, Const):
        return np.full(values.shape[1:], node.value) if values.ndim > 1 else node.value
    if isinstance(node, Not):
        return 1.0 - eval_node(node.child, values)
    if isinstance(node, And):
        out = eval_node(node.children[0], values)
        for c in node.children[1:]:
            out = np.minimum(out, eval_node(c, values))
        return out
    if isinstance(node, Or):
        out = eval_node(node.children[0], values)
        for c in node.children[1:]:
            out = np.maximum(out, eval_node(c, values))
        return out
    if isinstance(node, Implies):
        return np.minimum(1.0, 1.0 - eval_node(node.left, values) + eval_node(node.right, values))
    if isinstance(node, Scaled):
        try:
            w = float(node.weight)
        except TypeError as exc:
            raise FormulaError(f"weight {node.weight} is symbolic; substitute values before evaluating") from exc
        return w * eval_node(node.child, values)
    raise AssertionError(node)


def evaluate(f: FFormula, assignment: Sequence[float]) -> float:
    if len(assignment) != f.arity:
        raise FormulaError(f"expected {f.arity} values for {f.names}, got {len(assignment)}")
    vals = np.asarray(assignment, dtype=float)
    if np.any((vals < 0) | (vals > 1)):
        raise FormulaError("assignment values must lie in [0, 1]")
    return float(eval_node(f.root, vals))


def full_grid(arity: int, levels: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0)) -> np.ndarray:
    """Every assignment over ``levels``, as an array of shape ``(arity, len(levels)**arity)``."""
    pts = np.array(list(itertools.product(levels, repeat=arity)), dtype=float)
    return pts.T.reshape(arity, -1) if arity else np.zeros((0, 1))


def eval_grid(f: FFormula, grid: np.ndarray) -> np.ndarray:
    out = eval_node(f.root, grid)
    return np.broadcast_to(np.asarray(out, dtype=float), grid.shape[1:])


def has_implies(node: Node) -> bool:
    if isinstance(node, Implies):
        return True
    if isinstance(node, (Not, Scaled)):
        return has_implies(node.child)
    if isinstance(node, (And, Or)):
        return any(has_implies(c) for c in node.children)
    return False


def has_negation(node: Node) -> bool:
    if isinstance(node, (Not, Implies)):
        return True
    if isinstance(node, Scaled):
        return has_negation(node.child)
    if isinstance(node, (And, Or)):
        return any(has_negation(c) for c in node.children)
    return False


# -- classification -----------------------------------------------------------

class Classification(enum.Enum):
    ALWAYS_TRUE = "fuzzy always true"
    CONTRADICTION = "fuzzy contradiction"
    NEITHER = "neither"


def classify(f: FFormula) -> Classification:
    """Decide fuzzy validity from the formula's two-valued truth table.

    A formula over and/or/not is never below 1/2 exactly when it is a
    classical tautology, and never above 1/2 exactly when it is
    unsatisfiable.  The bound 1/2 is reached only where some variable sits
    at 1/2 (``x * ~x`` at ``x = 1/2``), so off that set a contradiction
    stays strictly below 1/2.
    """
    if has_implies(f.root):
        raise FormulaError("classify supports and/or/not formulas only; implication found")
    values = eval_grid(f, full_grid(f.arity, (0.0, 1.0)))
    if np.all(values >= 0.5):
        return Classification.ALWAYS_TRUE
    if np.all(values < 0.5):
        return Classification.CONTRADICTION
    return Classification.NEITHER


# -- monotonicity ---------------------------------------------------------------

def more_ambiguous(x: Sequence[float], y: Sequence[float]) -> bool:
    """True when every ``x_i`` lies between ``y_i`` and 1/2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return bool(np.all(np.minimum(y, 0.5) <= x) & np.all(x <= np.maximum(y, 0.5)))


def monotone_check(f: FFormula, x: Sequence[float], y: Sequence[float], order: str = "ambiguity") -> bool:
    """Check the monotonicity conclusion for an ordered pair ``x ⪰ y``.

    ``order="ambiguity"``: ``x`` is at least as close to 1/2 as ``y`` in each
    coordinate; the conclusion is that ``F(x)`` lies between ``F(y)`` and 1/2,
    so in particular ``F(x) >= F(y)`` whenever ``F(y) <= 1/2``.
    ``order="componentwise"``: ``x >= y`` coordinatewise, conclusion
    ``F(x) >= F(y)``; only meaningful for negation-free formulas.
    """
    if order == "ambiguity":
        if not more_ambiguous(x, y):
            raise FormulaError("precondition failed: x is not between y and 1/2 in every coordinate")
        fx, fy = evaluate(f, x), evaluate(f, y)
        return more_ambiguous([fx], [fy])
    if order == "componentwise":
        if not np.all(np.asarray(x, dtype=float) >= np.asarray(y, dtype=float)):
            raise FormulaError("precondition failed: x >= y does not hold componentwise")
        if has_negation(f.root):
            raise FormulaError("componentwise monotonicity only holds for negation-free formulas")
        return evaluate(f, x) >= evaluate(f, y)
    raise ValueError(f"unknown order {order!r}; expected 'ambiguity' or 'componentwise'")
