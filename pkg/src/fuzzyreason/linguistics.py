"""Language variables: basic nouns, hedged and combined noun phrases, and
membership functions read off word-formation trees."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
import sympy

from .core import FuzzySet, Hedge, HedgeKind, Universe, complement, hedge_grades, intersection, union


class NounError(ValueError):
    pass


DEFAULT_MODIFIERS: dict[str, Hedge] = {
    "very": Hedge(HedgeKind.VERY),
    # bound to squaring, matching the exponents of the worked tree
    "quite": Hedge(HedgeKind.VERY),
    "plus": Hedge(HedgeKind.PLUS),
    "minus": Hedge(HedgeKind.MINUS),
    "highly": Hedge(HedgeKind.HIGHLY),
    "more or less": Hedge(HedgeKind.MORE_OR_LESS),
    "sort of": Hedge(HedgeKind.SORT_OF),
    "rather": Hedge(HedgeKind.RATHER),
}


@dataclass(frozen=True)
class LanguageVariable:
    name: str
    universe: Universe
    basic_nouns: Mapping[str, FuzzySet]
    modifiers: Mapping[str, Hedge] = field(default_factory=lambda: dict(DEFAULT_MODIFIERS))

    def __post_init__(self):
        for noun, s in self.basic_nouns.items():
            if not s.universe.same_as(self.universe):
                raise ValueError(f"basic noun {noun!r} is not defined on {self.universe.label!r}")

    def parse(self, noun: str) -> FuzzySet:
        return parse_noun(self, noun)


def young_grade(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.where(u <= 25, 1.0, 1.0 / (1.0 + ((u - 25.0) / 5.0) ** 2))


def old_grade(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    d = np.where(u > 50, u - 50.0, 1.0)
    return np.where(u > 50, 1.0 / (1.0 + (d / 5.0) ** -2), 0.0)


def age_variable(lo: int = 0, hi: int = 100) -> LanguageVariable:
    """The ``age`` variable over integer ages with basic nouns young and old."""
    u = Universe.from_coords(range(lo, hi + 1), "age")
    return LanguageVariable("age", u, {"young": FuzzySet(u, young_grade(u.coords)),
                                       "old": FuzzySet(u, old_grade(u.coords))})


# -- noun phrases ----------------------------------------------------------------

def _tokenize(v: LanguageVariable, text: str) -> list[str]:
    words = re.findall(r"\(|\)|[^\s()]+", text.lower())
    phrases = sorted((m.split() for m in v.modifiers if " " in m), key=len, reverse=True)
    out, i = [], 0
    while i < len(words):
        for p in phrases:
            if words[i:i + len(p)] == p:
                out.append(" ".join(p))
                i += len(p)
                break
        else:
            out.append(words[i])
            i += 1
    return out


class _NounParser:
    def __init__(self, v: LanguageVariable, text: str):
        self.v = v
        self.toks = _tokenize(v, text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, word=None):
        t = self.peek()
        if t is None:
            raise NounError("noun phrase ends too early")
        if word is not None and t != word:
            raise NounError(f"expected {word!r}, found {t!r}")
        self.i += 1
        return t

    def run(self):
        if not self.toks:
            raise NounError("empty noun phrase")
        node = self.disj()
        if self.peek() is not None:
            raise NounError(f"unexpected word {self.peek()!r}")
        return node

    def disj(self):
        node = self.conj()
        while self.peek() == "or":
            self.take()
            node = ("or", node, self.conj())
        return node

    def conj(self):
        node = self.unary()
        while self.peek() == "and":
            self.take()
            node = ("and", node, self.unary())
        return node

    def unary(self):
        t = self.peek()
        if t == "not":
            self.take()
            return ("not", self.unary())
        if t == "neither":
            self.take()
            left = self.unary()
            self.take("nor")
            return ("and", ("not", left), ("not", self.unary()))
        if t in self.v.modifiers:
            self.take()
            return ("hedge", t, self.unary())
        if t == "(":
            self.take()
            node = self.disj()
            self.take(")")
            return node
        if t in self.v.basic_nouns:
            self.take()
            return ("noun", t)
        known = sorted(set(self.v.basic_nouns) | set(self.v.modifiers) | {"not", "and", "or", "neither", "nor"})
        raise NounError(f"unknown word {t!r}; known words: {', '.join(known)}")


def parse_noun(v: LanguageVariable, noun: str) -> FuzzySet:
    """Meaning of a noun phrase: hedges apply innermost first, and/or/not map
    to intersection, union and complement."""

    def ev(node) -> FuzzySet:
        tag = node[0]
        if tag == "noun":
            return v.basic_nouns[node[1]]
        if tag == "hedge":
            return v.modifiers[node[1]](ev(node[2]))
        if tag == "not":
            return complement(ev(node[1]))
        if tag == "and":
            return intersection(ev(node[1]), ev(node[2]))
        if tag == "or":
            return union(ev(node[1]), ev(node[2]))
        raise AssertionError(tag)

    return ev(_NounParser(v, noun).run())


def generate_nouns(base: str = "old", modifier: str = "very", depth: int = 3) -> list[str]:
    """Iterate ``T(i+1) = base + modifier T(i)`` from the empty set."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    nouns: list[str] = []
    for _ in range(depth):
        nouns = [base] + [f"{modifier} {n}" for n in nouns]
    return nouns


# -- word-formation trees ----------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    symbol: str
    children: tuple["TreeNode", ...] = ()

    def leaves(self) -> list[str]:
        if not self.children:
            return [self.symbol]
        return [w for c in self.children for w in c.leaves()]

    def text(self) -> str:
        return " ".join(self.leaves())


def leaf(word: str) -> TreeNode:
    return TreeNode(word)


def node(symbol: str, *children: TreeNode | str) -> TreeNode:
    return TreeNode(symbol, tuple(leaf(c) if isinstance(c, str) else c for c in children))


@dataclass(frozen=True)
class WordRule:
    lhs: str
    rhs: tuple[str, ...]
    # combines the values of the nonterminal children, left to right
    symbolic: Callable
    numeric: Callable


def _square_num(x):
    return hedge_grades(Hedge(HedgeKind.VERY), x)


def _ident(x):
    return x


def default_word_rules() -> dict[tuple[str, tuple[str, ...]], WordRule]:
    rules = [
        WordRule("S", ("A",), _ident, _ident),
        WordRule("S", ("S", "or", "A"), sympy.Max, np.maximum),
        WordRule("A", ("B",), _ident, _ident),
        WordRule("A", ("A", "and", "B"), sympy.Min, np.minimum),
        WordRule("B", ("C",), _ident, _ident),
        WordRule("B", ("not", "C"), lambda x: 1 - x, lambda x: 1.0 - x),
        WordRule("C", ("Y",), _ident, _ident),
        WordRule("C", ("O",), _ident, _ident),
    ]
    for nt in ("Y", "O"):
        for word in ("quite", "very"):
            rules.append(WordRule(nt, (word, nt), lambda x: x ** 2, _square_num))
    return {(r.lhs, r.rhs): r for r in rules}


BASIC_SYMBOLS = {"young": ("Y", sympy.Symbol("mu_young")), "old": ("O", sympy.Symbol("mu_old"))}


@dataclass(frozen=True)
class TreeMembership:
    expression: sympy.Expr
    evaluate: Callable[[LanguageVariable], FuzzySet]
    text: str


def tree_membership(tree: TreeNode, rules: Mapping | None = None) -> TreeMembership:
    """Fold a word-formation tree bottom-up into a membership function.

    Returns the closed form in ``mu_young`` and ``mu_old`` and an evaluator
    that computes the same function on a language variable, pointwise.
    """
    rules = default_word_rules() if rules is None else rules

    def fold(t: TreeNode):
        key = (t.symbol, tuple(c.symbol for c in t.children))
        if len(t.children) == 1 and not t.children[0].children and t.children[0].symbol in BASIC_SYMBOLS:
            word = t.children[0].symbol
            nt, sym = BASIC_SYMBOLS[word]
            if t.symbol != nt:
                raise NounError(f"rule {t.symbol} -> {word} is not in the declared rule set")
            return sym, (lambda v, w=word: v.basic_nouns[w].grades)
        if key not in rules:
            raise NounError(f"rule {t.symbol} -> {' '.join(key[1])} is not in the declared rule set")
        rule = rules[key]
        parts = [fold(c) for c in t.children if c.children]
        syms = [p[0] for p in parts]
        nums = [p[1] for p in parts]
        return rule.symbolic(*syms), (lambda v, r=rule, ns=nums: r.numeric(*(n(v) for n in ns)))

    if not tree.children:
        if tree.symbol not in BASIC_SYMBOLS:
            raise NounError(f"bare word {tree.symbol!r} is not a basic noun")
        sym = BASIC_SYMBOLS[tree.symbol][1]
        return TreeMembership(sym, lambda v, w=tree.symbol: v.basic_nouns[w], tree.text())
    expr, num = fold(tree)
    return TreeMembership(expr, lambda v: FuzzySet(v.universe, np.clip(num(v), 0.0, 1.0)), tree.text())


def neither_quite_young_nor_quite_old() -> TreeNode:
    """The worked grammar tree: young squared once, old squared twice, both negated and joined."""
    y = node("Y", "quite", node("Y", "young"))
    o = node("O", "quite", node("O", "quite", node("O", "old")))
    left = node("A", node("B", "not", node("C", y)))
    right = node("B", "not", node("C", o))
    return node("S", node("A", left, "and", right))
