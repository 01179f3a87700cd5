"""Product terms, sum-of-products forms and prime implicant minimization.

A term is a set of literals ``(variable index, polarity)``; a term holding
both polarities of one variable is a complement term.  Term ``a`` contains
term ``b`` (``a >= b`` pointwise) exactly when the literals of ``a`` are a
subset of those of ``b``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import And, Const, FFormula, FormulaError, Implies, Node, Not, Or, Scaled, Var

Literal = tuple[int, bool]


@dataclass(frozen=True, order=False)
class Term:
    literals: frozenset[Literal]

    @classmethod
    def of(cls, *lits: Literal) -> "Term":
        return cls(frozenset(lits))

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "Term":
        nf = to_normal_form(_parse(text, names))
        if len(nf.terms) != 1:
            raise FormulaError(f"{text!r} is not a single product term")
        return next(iter(nf.terms))

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.literals)

    @property
    def complement_vars(self) -> frozenset[int]:
        return frozenset(i for i, p in self.literals if p and (i, False) in self.literals)

    @property
    def is_complement(self) -> bool:
        return bool(self.complement_vars)

    def is_complement_minimum(self, arity: int) -> bool:
        return self.is_complement and len(self.variables) == arity

    def contains(self, other: "Term") -> bool:
        """True when this term is pointwise >= ``other``."""
        return self.literals <= other.literals

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.literals | other.literals)

    def sort_key(self):
        return (len(self.literals), sorted((i, not p) for i, p in self.literals))

    def text(self, names: Sequence[str]) -> str:
        if not self.literals:
            return "1"
        lits = sorted(self.literals, key=lambda l: (l[0], not l[1]))
        return "*".join(names[i] if p else "~" + names[i] for i, p in lits)

    def to_node(self) -> Node:
        lits = sorted(self.literals, key=lambda l: (l[0], not l[1]))
        if not lits:
            return Const(1.0)
        nodes = tuple(Var(i) if p else Not(Var(i)) for i, p in lits)
        return nodes[0] if len(nodes) == 1 else And(nodes)


def _parse(text, names):
    from .formula import parse
    return parse(text, names=names)


@dataclass(frozen=True)
class NormalForm:
    terms: frozenset[Term]
    names: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.names)

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms, key=Term.sort_key)

    def literal_count(self) -> int:
        return sum(len(t) for t in self.terms)

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.text(self.names) for t in self.sorted_terms())

    __str__ = text

    def to_formula(self) -> FFormula:
        ts = self.sorted_terms()
        if not ts:
            return FFormula(Const(0.0), self.names)
        nodes = tuple(t.to_node() for t in ts)
        return FFormula(nodes[0] if len(nodes) == 1 else Or(nodes), self.names)


# -- normal form ----------------------------------------------------------------

def _nnf(node: Node, negate: bool = False) -> Node:
    if isinstance(node, Var):
        return Not(node) if negate else node
    if isinstance(node, Const):
        if node.value not in (0.0, 1.0):
            raise FormulaError(f"constant {node.value} has no sum-of-products form")
        return Const(1.0 - node.value) if negate else node
    if isinstance(node, Not):
        return _nnf(node.child, not negate)
    if isinstance(node, And):
        kids = tuple(_nnf(c, negate) for c in node.children)
        return Or(kids) if negate else And(kids)
    if isinstance(node, Or):
        kids = tuple(_nnf(c, negate) for c in node.children)
        return And(kids) if negate else Or(kids)
    if isinstance(node, (Implies, Scaled)):
        raise FormulaError(f"{type(node).__name__} is not supported in sum-of-products forms")
    raise AssertionError(node)


def _sop(node: Node) -> set[Term]:
    if isinstance(node, Var):
        return {Term.of((node.index, True))}
    if isinstance(node, Not):
        return {Term.of((node.child.index, False))}
    if isinstance(node, Const):
        return {Term(frozenset())} if node.value == 1.0 else set()
    if isinstance(node, Or):
        out: set[Term] = set()
        for c in node.children:
            out |= _sop(c)
        return out
    if isinstance(node, And):
        acc = {Term(frozenset())}
        for c in node.children:
            acc = {a * b for a in acc for b in _sop(c)}
        return acc
    raise AssertionError(node)


def to_normal_form(f: FFormula) -> NormalForm:
    """Sum of products with negations on variables only (no absorption)."""
    return NormalForm(frozenset(_sop(_nnf(f.root))), f.names)


def absorb(terms: Iterable[Term]) -> frozenset[Term]:
    """Drop every term that another (different) term contains."""
    ts = set(terms)
    return frozenset(t for t in ts if not any(o != t and o.contains(t) for o in ts))


def normalize(f: FFormula) -> NormalForm:
    nf = to_normal_form(f)
    return NormalForm(absorb(nf.terms), nf.names)


def expand_main(nf: NormalForm) -> NormalForm:
    """Expand each complement term over its missing variables, then absorb."""
    out: set[Term] = set()
    n = nf.arity
    for t in nf.terms:
        if not t.is_complement:
            out.add(t)
            continue
        missing = [i for i in range(n) if i not in t.variables]
        for pols in itertools.product((True, False), repeat=len(missing)):
            out.add(t * Term(frozenset(zip(missing, pols))))
    return NormalForm(absorb(out), nf.names)


# -- fuzzy consistency and prime implicants --------------------------------------

def fuzzy_consistency(alpha: Term, beta: Term, arity: int) -> frozenset[Term]:
    """Consensus terms of ``alpha`` and ``beta``; only complement terms are kept.

    For each variable that occurs with one polarity in ``alpha`` and only the
    opposite one in ``beta``, the remaining literals are merged.  A merged
    complement term is kept as is; a merged single term is multiplied by
    ``x_j * ~x_j`` for every other variable ``j``.
    """
    out = set()
    for i in range(arity):
        for pa in (True, False):
            if (i, pa) in alpha.literals and (i, not pa) not in alpha.literals \
                    and (i, not pa) in beta.literals and (i, pa) not in beta.literals:
                rest = Term((alpha.literals - {(i, pa)}) | (beta.literals - {(i, not pa)}))
                if rest.is_complement:
                    out.add(rest)
                else:
                    for j in range(arity):
                        if j != i:
                            out.add(rest * Term.of((j, True), (j, False)))
    return frozenset(out)


def fpi_terms(terms: Iterable[Term], arity: int) -> frozenset[Term]:
    """Close a term set under consistency and absorption."""
    current = absorb(terms)
    while True:
        new = set()
        for a, b in itertools.combinations(sorted(current, key=Term.sort_key), 2):
            for g in fuzzy_consistency(a, b, arity):
                if not any(t.contains(g) for t in current) and not any(t.contains(g) for t in new):
                    new.add(g)
        if not new:
            return current
        current = absorb(current | new)


def fpi(f: FFormula) -> NormalForm:
    """All fuzzy prime implicants of ``f``."""
    nf = to_normal_form(f)
    return NormalForm(fpi_terms(nf.terms, nf.arity), nf.names)


def simplest_forms(f: FFormula, max_candidates: int = 24) -> list[NormalForm]:
    """Every minimum-literal form built from the single items of the main form
    plus a cover of its complement minimum terms by complement prime implicants."""
    main = expand_main(normalize(f))
    singles = [t for t in main.terms if not t.is_complement]
    gammas = [t for t in main.terms if t.is_complement]
    if not gammas:
        return [NormalForm(frozenset(singles), main.names)]
    primes = fpi_terms(to_normal_form(f).terms, main.arity)
    cands = sorted((p for p in primes if p.is_complement and any(p.contains(g) for g in gammas)),
                   key=Term.sort_key)
    if len(cands) > max_candidates:
        raise FormulaError(f"{len(cands)} candidate implicants exceed the exhaustive cover limit {max_candidates}")
    best: list[tuple[Term, ...]] = []
    best_cost = None
    for k in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            if not all(any(c.contains(g) for c in combo) for g in gammas):
                continue
            cost = sum(len(c) for c in combo)
            if best_cost is None or cost < best_cost:
                best, best_cost = [combo], cost
            elif cost == best_cost:
                best.append(combo)
        if best_cost is not None and k * min(len(c) for c in cands) > best_cost:
            break
    # drop covers that strictly contain another minimum cover
    minimal = [c for c in best if not any(set(o) < set(c) for o in best)]
    return [NormalForm(frozenset(singles) | frozenset(c), main.names)
            for c in sorted(minimal, key=lambda c: [t.sort_key() for t in c])]
