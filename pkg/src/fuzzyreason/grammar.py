"""Fuzzy grammars: productions carry grades, and a sentence's grade is the
best over its derivations of the weakest production used."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import check_grades

import numpy as np


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[str, ...]
    grade: float

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs) or 'ε'} @ {self.grade:g}"


@dataclass(frozen=True)
class Derivation:
    steps: tuple[tuple[int, int], ...]  # (production index, position rewritten)
    sentence: tuple[str, ...]
    grade: float

    def forms(self, g: "FuzzyGrammar") -> list[tuple[str, ...]]:
        """Sentential forms visited, starting from the start symbol."""
        form = (g.start,)
        out = [form]
        for idx, pos in self.steps:
            p = g.productions[idx]
            form = form[:pos] + p.rhs + form[pos + 1:]
            out.append(form)
        return out


def split_symbols(text: str) -> tuple[str, ...]:
    """Whitespace-separated symbols, or one symbol per character if there is no space."""
    text = text.strip()
    if text in ("", "ε", "eps"):
        return ()
    return tuple(text.split()) if any(c.isspace() for c in text) else tuple(text)


@dataclass(frozen=True)
class FuzzyGrammar:
    nonterminals: frozenset[str]
    terminals: frozenset[str]
    start: str
    productions: tuple[Production, ...]

    def __post_init__(self):
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        if self.nonterminals & self.terminals:
            raise GrammarError(f"symbols used as both terminal and nonterminal: {sorted(self.nonterminals & self.terminals)}")
        check_grades(np.array([p.grade for p in self.productions]), "production grade")
        for p in self.productions:
            if p.lhs not in self.nonterminals:
                raise GrammarError(f"production {p} rewrites a non-nonterminal")
            bad = [s for s in p.rhs if s not in self.nonterminals and s not in self.terminals]
            if bad:
                raise GrammarError(f"production {p} uses unknown symbols {bad}")

    @classmethod
    def from_productions(cls, prods: Iterable[tuple[str, Sequence[str] | str, float]],
                         start: str | None = None) -> "FuzzyGrammar":
        ps = tuple(Production(l, split_symbols(r) if isinstance(r, str) else tuple(r), float(g))
                   for l, r, g in prods)
        if not ps:
            raise GrammarError("grammar has no productions")
        nts = frozenset(p.lhs for p in ps)
        ts = frozenset(s for p in ps for s in p.rhs if s not in nts)
        return cls(nts, ts, start or ps[0].lhs, ps)

    @classmethod
    def parse(cls, text: str) -> "FuzzyGrammar":
        """Read ``LHS -> RHS @ grade`` lines; ``start X`` sets the start symbol."""
        prods, start = [], None
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("start "):
                start = line.split(None, 1)[1].strip()
                continue
            if "->" not in line or "@" not in line:
                raise GrammarError(f"line {n}: expected 'LHS -> RHS @ grade'")
            lhs, rest = line.split("->", 1)
            rhs, grade = rest.rsplit("@", 1)
            try:
                g = float(grade)
            except ValueError as exc:
                raise GrammarError(f"line {n}: bad grade {grade.strip()!r}") from exc
            if not lhs.strip() or len(lhs.split()) != 1:
                raise GrammarError(f"line {n}: left side must be one nonterminal")
            prods.append((lhs.strip(), rhs, g))
        return cls.from_productions(prods, start)

    def to_text(self) -> str:
        return "".join(f"{p}\n" for p in self.productions)


def derive(g: FuzzyGrammar, sentence: str | Sequence[str], max_steps: int | None = None) -> Derivation | None:
    """Best leftmost derivation of ``sentence``, or None if none exists within ``max_steps``.

    Breadth-first by step count.  A sentential form already reached with at
    least the same grade is not expanded again; forms whose terminal prefix
    disagrees with the sentence, or that hold too many terminals, are dropped.
    """
    target = split_symbols(sentence) if isinstance(sentence, str) else tuple(sentence)
    bad = [s for s in target if s not in g.terminals]
    if bad:
        return None
    if max_steps is None:
        max_steps = 4 * max(len(target), 1)
    erasing = any(not p.rhs for p in g.productions)
    by_lhs: dict[str, list[int]] = {}
    for i, p in enumerate(g.productions):
        by_lhs.setdefault(p.lhs, []).append(i)

    start = (g.start,)
    best_grade = {start: 1.0}
    frontier = {start: (1.0, ())}
    found: Derivation | None = None
    for _ in range(max_steps):
        nxt: dict[tuple[str, ...], tuple[float, tuple]] = {}
        for form, (grade, steps) in frontier.items():
            pos = next(i for i, s in enumerate(form) if s in g.nonterminals)
            for idx in by_lhs.get(form[pos], ()):
                p = g.productions[idx]
                gr = min(grade, p.grade)
                if found is not None and gr <= found.grade:
                    continue
                new = form[:pos] + p.rhs + form[pos + 1:]
                if not _viable(g, new, target, erasing):
                    continue
                st = steps + ((idx, pos),)
                if all(s in g.terminals for s in new):
                    if new == target and (found is None or gr > found.grade):
                        found = Derivation(st, target, gr)
                    continue
                if best_grade.get(new, -1.0) >= gr:
                    continue
                best_grade[new] = gr
                if gr > nxt.get(new, (-1.0,))[0]:
                    nxt[new] = (gr, st)
        if not nxt:
            break
        frontier = nxt
    return found


def _viable(g: FuzzyGrammar, form: tuple[str, ...], target: tuple[str, ...], erasing: bool) -> bool:
    k = 0
    while k < len(form) and form[k] in g.terminals:
        k += 1
    if form[:k] != target[:k] or k > len(target):
        return False
    if erasing:
        return sum(s in g.terminals for s in form) <= len(target)
    return len(form) <= len(target)


def grade(g: FuzzyGrammar, sentence: str | Sequence[str], max_steps: int | None = None) -> float | None:
    d = derive(g, sentence, max_steps)
    return None if d is None else d.grade


def isosceles_grammar() -> FuzzyGrammar:
    """The worked example grammar generating a^n b^m with |n - m| <= 2."""
    return FuzzyGrammar.from_productions([
        ("S", "AB", 1.0),
        ("A", "a", 1.0),
        ("B", "b", 1.0),
        ("A", "aAB", 0.9),
        ("A", "aB", 0.5),
        ("A", "aC", 0.5),
        ("C", "a", 0.5),
        ("C", "aa", 0.2),
        ("A", "B", 0.2),
    ])
