"""Class membership of fuzzy logic functions.

The unit interval is split into classes ``c_j = [a_{j-1}, a_j)`` (the top
class is closed).  Analysis turns a sum-of-products function into the
inequalities its variables must satisfy for the value to land in ``c_j``;
synthesis goes the other way.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
import sympy

from .formula import And, FFormula, FormulaError, Node, Not, Or, Scaled, Var
from .terms import normalize

OPS = (">=", "<=", ">", "<")


def class_symbols(j: Union[int, str] = "j") -> tuple[sympy.Symbol, sympy.Symbol]:
    """Symbols for the lower and upper boundary of class ``j``."""
    if isinstance(j, int):
        return sympy.Symbol(f"a_{j - 1}"), sympy.Symbol(f"a_{j}")
    return sympy.Symbol(f"a_{{{j}-1}}"), sympy.Symbol(f"a_{j}")


@dataclass(frozen=True)
class ClassPartition:
    boundaries: tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(x) for x in self.boundaries)
        if len(b) < 2 or b[0] != 0.0 or b[-1] != 1.0:
            raise ValueError("boundaries must start at 0 and end at 1")
        if any(y <= x for x, y in zip(b, b[1:])):
            raise ValueError("boundaries must be strictly increasing")
        object.__setattr__(self, "boundaries", b)

    @classmethod
    def uniform(cls, n: int) -> "ClassPartition":
        return cls(tuple(np.linspace(0.0, 1.0, n + 1)))

    @property
    def n(self) -> int:
        return len(self.boundaries) - 1

    def class_of(self, value: float) -> int:
        for j in range(1, self.n):
            if value < self.boundaries[j]:
                return j
        return self.n

    def contains(self, value: float, j: int) -> bool:
        lo, hi = self.boundaries[j - 1], self.boundaries[j]
        return lo <= value < hi if j < self.n else lo <= value <= 1.0

    def substitutions(self, j: int, label: Union[int, str] = "j") -> dict:
        lo, hi = class_symbols(label)
        return {lo: self.boundaries[j - 1], hi: self.boundaries[j]}


@dataclass(frozen=True)
class Atom:
    """``variable op bound``, optionally with a synthesis weight."""

    var: str
    op: str
    bound: sympy.Expr
    weight: sympy.Expr | None = None

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown comparison {self.op!r}")
        object.__setattr__(self, "bound", sympy.sympify(self.bound))

    def __str__(self) -> str:
        return f"{self.var} {self.op} {self.bound}"

    def holds(self, values: Mapping[str, float], subs: Mapping) -> bool:
        x = values[self.var]
        t = float(self.bound.subs(subs))
        return {">=": x >= t, "<=": x <= t, ">": x > t, "<": x < t}[self.op]


@dataclass(frozen=True)
class AnyOf:
    atoms: tuple[Atom, ...]

    def __str__(self) -> str:
        return "(" + " or ".join(str(a) for a in self.atoms) + ")"

    def holds(self, values, subs) -> bool:
        return any(a.holds(values, subs) for a in self.atoms)


Item = Union[Atom, AnyOf]
System = tuple[Item, ...]


@dataclass(frozen=True)
class ClassConstraints:
    """Conditions for ``F`` to lie in class ``c_j``.

    ``lower`` is a disjunction of systems, each a conjunction; satisfying one
    makes ``F >= a_{j-1}``.  ``upper`` is a conjunction of groups, each
    satisfied by any one of its atoms; together they make ``F < a_j``.  The
    top class has no upper side.
    """

    lower: tuple[System, ...]
    upper: tuple[tuple[Atom, ...], ...] | None

    def holds(self, values: Mapping[str, float], subs: Mapping) -> bool:
        ok = any(all(i.holds(values, subs) for i in sys_) for sys_ in self.lower)
        if self.upper is not None:
            ok = ok and all(any(a.holds(values, subs) for a in g) for g in self.upper)
        return ok

    def text(self) -> str:
        lines = ["lower: " + " or ".join("{" + ", ".join(str(i) for i in s) + "}" for s in self.lower)]
        if self.upper is not None:
            lines.append("upper: " + " and ".join("{" + ", ".join(str(a) for a in g) + "}" for g in self.upper))
        return "\n".join(lines)


def analyze(f: FFormula, j: Union[int, str] = "j", top: bool = False) -> ClassConstraints:
    """Constraints putting a sum-of-products ``f`` into class ``c_j``.

    A positive literal needs ``x >= a_{j-1}`` and a negative one
    ``x <= 1 - a_{j-1}`` on the lower side; on the upper side each term needs
    one of ``x < a_j`` (positive) or ``x > 1 - a_j`` (negative).
    """
    lo, hi = class_symbols(j)
    nf = normalize(f)
    if not nf.terms:
        raise FormulaError("the constant 0 belongs to the bottom class only")
    lower, upper = [], []
    for term in _terms_in_order(f, nf):
        lits = sorted(term.literals, key=lambda l: (l[0], not l[1]))
        lower.append(tuple(Atom(f.names[i], ">=", lo) if p else Atom(f.names[i], "<=", 1 - lo)
                           for i, p in lits))
        upper.append(tuple(Atom(f.names[i], "<", hi) if p else Atom(f.names[i], ">", 1 - hi)
                           for i, p in lits))
    return ClassConstraints(tuple(lower), None if top else tuple(upper))


def _terms_in_order(f: FFormula, nf) -> list:
    """Terms of ``nf`` in the order they first appear in ``f``."""
    from .terms import Term, _sop, _nnf

    root = f.root
    kids = root.children if isinstance(root, Or) else (root,)
    seen, out = set(), []
    for k in kids:
        for t in sorted(_sop(_nnf(k)), key=Term.sort_key):
            if t in nf.terms and t not in seen:
                seen.add(t)
                out.append(t)
    out.extend(t for t in nf.sorted_terms() if t not in seen)
    return out


# -- synthesis ----------------------------------------------------------------

def atom_weight(atom: Atom, lo: sympy.Expr, hi: sympy.Expr) -> tuple[bool, sympy.Expr | None]:
    """Polarity and weight of the literal an atom synthesizes to.

    Bounds in boundary form give unweighted literals; any other bound ``t``
    gives a weight that moves ``t`` onto the class boundary.
    """
    b = sympy.simplify(atom.bound)
    op = atom.op
    if op in (">=", "<="):
        natural = lo if op == ">=" else 1 - lo
        ref = lo
    else:
        natural = hi if op == "<" else 1 - hi
        ref = hi
    positive = op in (">=", "<")
    if sympy.simplify(b - natural) == 0:
        return positive, None
    if any(sympy.simplify(b - s) == 0 for s in (lo, 1 - lo, hi, 1 - hi)):
        raise FormulaError(f"atom '{atom}' pairs {op} with a boundary of the wrong side")
    denom = b if positive else 1 - b
    if denom.is_number and float(denom) == 0.0:
        raise FormulaError(f"atom '{atom}' needs a weight {ref}/{denom}, which divides by zero")
    return positive, sympy.simplify(ref / denom)


def synthesize(systems: Sequence[Sequence[Item]], names: Sequence[str],
               j: Union[int, str] = "j") -> FFormula:
    """Build the sum-of-products function whose class conditions are ``systems``.

    Each system becomes one product term; an :class:`AnyOf` item becomes a
    parenthesised sum inside the product.  Systems may use lower-side
    (``>=``, ``<=``) or upper-side (``<``, ``>``) atoms.
    """
    lo, hi = class_symbols(j)
    index = {n: i for i, n in enumerate(names)}

    def literal(a: Atom) -> Node:
        if a.var not in index:
            raise FormulaError(f"atom '{a}' uses unknown variable {a.var!r}")
        positive, w = atom_weight(a, lo, hi)
        node = Var(index[a.var]) if positive else Not(Var(index[a.var]))
        return node if w is None else Scaled(w, node)

    terms = []
    for sys_ in systems:
        factors = []
        for item in sys_:
            if isinstance(item, AnyOf):
                lits = tuple(literal(a) for a in item.atoms)
                factors.append(lits[0] if len(lits) == 1 else Or(lits))
            else:
                factors.append(literal(item))
        if not factors:
            raise FormulaError("empty constraint system")
        terms.append(factors[0] if len(factors) == 1 else And(tuple(factors)))
    if not terms:
        raise FormulaError("no constraint systems to synthesize from")
    return FFormula(terms[0] if len(terms) == 1 else Or(tuple(terms)), tuple(names))


def weights(systems: Sequence[Sequence[Item]], j: Union[int, str] = "j") -> list[sympy.Expr | None]:
    """The weight of every atom, in reading order."""
    lo, hi = class_symbols(j)
    out = []
    for sys_ in systems:
        for item in sys_:
            for a in (item.atoms if isinstance(item, AnyOf) else (item,)):
                out.append(atom_weight(a, lo, hi)[1])
    return out


# -- JSON ---------------------------------------------------------------------

def _expr_text(e: sympy.Expr) -> str:
    return str(e)


def _expr_parse(text: str, j: Union[int, str]) -> sympy.Expr:
    lo, hi = class_symbols(j)
    src = text.replace(str(lo), "_alo_").replace(str(hi), "_ahi_")
    try:
        e = sympy.sympify(src, locals={"_alo_": sympy.Symbol("_alo_"), "_ahi_": sympy.Symbol("_ahi_")})
    except (sympy.SympifyError, SyntaxError) as exc:
        raise FormulaError(f"cannot read bound {text!r}") from exc
    return e.subs({sympy.Symbol("_alo_"): lo, sympy.Symbol("_ahi_"): hi})


def _atom_json(a: Atom) -> dict:
    d = {"var": a.var, "op": a.op, "bound": _expr_text(a.bound)}
    if a.weight is not None:
        d["weight"] = _expr_text(a.weight)
    return d


def _item_json(i: Item) -> dict:
    return {"any": [_atom_json(a) for a in i.atoms]} if isinstance(i, AnyOf) else _atom_json(i)


def constraints_to_json(c: ClassConstraints) -> dict:
    return {"lower": [[_item_json(i) for i in s] for s in c.lower],
            "upper": None if c.upper is None else [[_atom_json(a) for a in g] for g in c.upper]}


def _atom_from(d: Mapping, j) -> Atom:
    w = d.get("weight")
    return Atom(str(d["var"]), str(d["op"]), _expr_parse(str(d["bound"]), j),
                None if w is None else _expr_parse(str(w), j))


def item_from_json(d: Mapping, j: Union[int, str] = "j") -> Item:
    if "any" in d:
        return AnyOf(tuple(_atom_from(a, j) for a in d["any"]))
    return _atom_from(d, j)


def systems_from_json(data: Sequence[Sequence[Mapping]], j: Union[int, str] = "j") -> list[System]:
    return [tuple(item_from_json(i, j) for i in s) for s in data]


def constraints_from_json(data: Mapping, j: Union[int, str] = "j") -> ClassConstraints:
    lower = tuple(systems_from_json(data["lower"], j))
    up = data.get("upper")
    upper = None if up is None else tuple(tuple(_atom_from(a, j) for a in g) for g in up)
    return ClassConstraints(lower, upper)


def dumps(c: ClassConstraints) -> str:
    return json.dumps(constraints_to_json(c), indent=2)
