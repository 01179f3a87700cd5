"""Closed-form inference results, checked cell by cell against the profiler.

Each cell stores two formulas: ``printed`` is the expression as published
(read literally, modulo obvious typesetting), ``exact`` is the supremum
worked out by hand.  Where they disagree the cell is flagged as a misprint;
the profiler decides which one is right.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .inference import Modifier, profile_gmp, profile_gmt, profile_ite, syllogism_check
from .relations import CompositionRule, ElseKind, Implication

S5 = np.sqrt(5.0)
GOLD = (S5 - 1.0) / 2.0       # 0.618...
GOLD_LO = (3.0 - S5) / 2.0    # 0.382...

Formula = Callable[[np.ndarray], np.ndarray]

I = Implication
M = Modifier


@dataclass(frozen=True)
class Cell:
    kind: Implication
    modifier: Modifier
    text: str
    printed: Formula
    exact: Formula | None = None
    # excluded cells are reported but never bound to acceptance
    excluded: bool = False
    rstar: str = "printed"

    @property
    def misprint(self) -> bool:
        return self.exact is not None

    def reference(self) -> Formula:
        return self.exact if self.exact is not None else self.printed


def _c(v: float) -> Formula:
    return lambda x: np.full_like(np.asarray(x, dtype=float), v)


def _safe(f: Formula, at_zero: float) -> Formula:
    def g(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            y = f(np.where(x > 0, x, 1.0))
        return np.where(x > 0, y, at_zero)
    return g


mx, mn, sq = np.maximum, np.minimum, np.sqrt

PONENS_MODS = (M.IDENTITY, M.VERY, M.MORE_OR_LESS, M.NOT)
TOLLENS_MODS = (M.NOT, M.NOT_VERY, M.NOT_MORE_OR_LESS, M.IDENTITY)


def _row(kind, mods, entries, **kw):
    cells = []
    for mod, entry in zip(mods, entries):
        text, printed, *rest = entry
        cells.append(Cell(kind, mod, text, printed, rest[0] if rest else None, **kw))
    return cells


# Modus ponens: value of the consequent grade as a function of b.
PONENS: tuple[Cell, ...] = tuple(
    _row(I.RM, PONENS_MODS, [
        ("0.5 ∨ b", lambda b: mx(0.5, b)),
        ("(√5−1)/2 ∨ b", lambda b: mx(GOLD, b), lambda b: mx(GOLD_LO, b)),
        ("(3−√5)/2 ∨ b", lambda b: mx(GOLD_LO, b), lambda b: mx(GOLD, b)),
        ("1", _c(1.0)),
    ])
    + _row(I.RA, PONENS_MODS, [
        ("(1+b)/2", lambda b: (1 + b) / 2),
        ("(3+2b−√(5−4b))/2", lambda b: (3 + 2 * b - sq(5 - 4 * b)) / 2,
         lambda b: (3 + 2 * b - sq(5 + 4 * b)) / 2),
        ("(√(5+4b)−1)/2", lambda b: (sq(5 + 4 * b) - 1) / 2),
        ("1", _c(1.0)),
    ])
    + _row(I.RC, PONENS_MODS, [
        ("b", lambda b: b), ("b", lambda b: b), ("b", lambda b: b),
        ("0.5 ∧ b", lambda b: mn(0.5, b)),
    ])
    + _row(I.RS, PONENS_MODS, [
        ("b", lambda b: b), ("b²", lambda b: b ** 2), ("√b", sq), ("1", _c(1.0)),
    ])
    + _row(I.RG, PONENS_MODS, [
        ("b", lambda b: b), ("b", lambda b: b), ("√b", sq), ("1", _c(1.0)),
    ])
    + _row(I.RSG, PONENS_MODS, [
        ("b", lambda b: b), ("b²", lambda b: b ** 2), ("√b", sq), ("1−b", lambda b: 1 - b),
    ])
    + _row(I.RGG, PONENS_MODS, [
        ("b", lambda b: b), ("b", lambda b: b), ("√b", sq), ("1−b", lambda b: 1 - b),
    ])
    + _row(I.RGS, PONENS_MODS, [
        ("b", lambda b: b), ("b", lambda b: b), ("√b", sq), ("1−b", lambda b: 1 - b),
    ])
    + _row(I.RSS, PONENS_MODS, [
        ("b", lambda b: b), ("b²", lambda b: b ** 2), ("√b", sq), ("1−b", lambda b: 1 - b),
    ])
    + _row(I.RSHARP, PONENS_MODS, [
        ("0.5 ∨ b", lambda b: mx(0.5, b)),
        ("(3−√5)/2 ∨ b", lambda b: mx(GOLD_LO, b)),
        ("(√5−1)/2 ∨ b", lambda b: mx(GOLD, b)),
        ("1", _c(1.0)),
    ])
    + _row(I.RDELTA, PONENS_MODS, [
        ("b^0.5", sq),
        ("b²", lambda b: b ** 2, lambda b: np.cbrt(b) ** 2),
        ("∛b", np.cbrt),
        ("1", _c(1.0)),
    ])
    + _row(I.RSQUARE, PONENS_MODS, [("1", _c(1.0))] * 4)
    + _row(I.RSTAR, PONENS_MODS, [
        ("b/2", lambda b: b / 2),
        ("(2b+1−√(4b+1))/2", lambda b: (2 * b + 1 - sq(4 * b + 1)) / 2),
        ("(√(1+4b)−1)/2", lambda b: (sq(1 + 4 * b) - 1) / 2),
        ("b", lambda b: b),
    ], excluded=True, rstar="difference")
)

# Modus tollens: value of the antecedent grade as a function of a.
TOLLENS: tuple[Cell, ...] = tuple(
    _row(I.RM, TOLLENS_MODS, [
        ("0.5 ∨ (1−a)", lambda a: mx(0.5, 1 - a)),
        ("((1−a) ∨ (√5−1)/2) ∨ a", lambda a: mx(mx(1 - a, GOLD), a),
         lambda a: mx(1 - a, mn(a, GOLD))),
        ("(3−√5)/2 ∨ (1−a)", lambda a: mx(GOLD_LO, 1 - a)),
        ("a ∨ (1−a)", lambda a: mx(a, 1 - a)),
    ])
    + _row(I.RA, TOLLENS_MODS, [
        ("1 − a/2", lambda a: 1 - a / 2),
        ("(1−2a+√(1+4a))/2", lambda a: (1 - 2 * a + sq(1 + 4 * a)) / 2),
        ("(3−√(1+4a))/2", lambda a: (3 - sq(1 + 4 * a)) / 2),
        ("1", _c(1.0)),
    ])
    + _row(I.RC, TOLLENS_MODS, [
        ("0.5 ∧ a", lambda a: mn(0.5, a)),
        ("(√5−1)/2 ∧ a", lambda a: mn(GOLD, a)),
        ("(3−√5)/2 ∧ a", lambda a: mn(GOLD_LO, a)),
        ("a", lambda a: a),
    ])
    + _row(I.RS, TOLLENS_MODS, [
        ("1−a", lambda a: 1 - a), ("1−a²", lambda a: 1 - a ** 2),
        ("1−a^0.5", lambda a: 1 - sq(a)), ("1", _c(1.0)),
    ])
    + _row(I.RG, TOLLENS_MODS, [
        ("0.5 ∨ (1−a)", lambda a: mx(0.5, 1 - a)),
        ("(√5−1)/2 ∨ (1−a²)", lambda a: mx(GOLD, 1 - a ** 2)),
        ("(3−√5)/2 ∨ (1−a^0.5)", lambda a: mx(GOLD_LO, 1 - sq(a))),
        ("1", _c(1.0)),
    ])
    + _row(I.RSG, TOLLENS_MODS, [
        ("1−a", lambda a: 1 - a), ("1−a²", lambda a: 1 - a ** 2),
        ("1−a^0.5", lambda a: 1 - sq(a)), ("0.5 ∨ a", lambda a: mx(0.5, a)),
    ])
    + _row(I.RGG, TOLLENS_MODS, [
        ("0.5 ∨ (1−a)", lambda a: mx(0.5, 1 - a)),
        ("(√5−1)/2 ∨ (1−a²)", lambda a: mx(GOLD, 1 - a ** 2)),
        ("(3−√5)/2 ∨ (1−a^0.5)", lambda a: mx(GOLD_LO, 1 - sq(a))),
        ("0.5 ∨ a", lambda a: mx(0.5, a)),
    ])
    + _row(I.RGS, TOLLENS_MODS, [
        ("0.5 ∨ (1−a)", lambda a: mx(0.5, 1 - a)),
        ("(√5−1)/2 ∨ (1−a²)", lambda a: mx(GOLD, 1 - a ** 2)),
        ("(√5−1)/2 ∨ (1−a²)", lambda a: mx(GOLD, 1 - a ** 2),
         lambda a: mx(GOLD_LO, 1 - sq(a))),
        ("a", lambda a: a),
    ])
    + _row(I.RSS, TOLLENS_MODS, [
        ("1−a", lambda a: 1 - a), ("1−a²", lambda a: 1 - a ** 2),
        ("1−a^0.5", lambda a: 1 - sq(a)), ("a", lambda a: a),
    ])
    + _row(I.RSHARP, TOLLENS_MODS, [
        ("0.5 ∨ (1−a)", lambda a: mx(0.5, 1 - a)),
        ("(√5−1)/2 ∨ (1−a²)", lambda a: mx(GOLD, 1 - a ** 2), lambda a: mx(GOLD, 1 - a)),
        ("(3−√5)/2 ∨ (1−a^0.5)", lambda a: mx(GOLD_LO, 1 - sq(a)), lambda a: mx(GOLD_LO, 1 - a)),
        ("1", _c(1.0)),
    ])
    + _row(I.RDELTA, TOLLENS_MODS, [
        ("1/(1+a)", lambda a: 1 / (1 + a)),
        ("(√(1+a²)−1)/(2a²)", _safe(lambda a: (sq(1 + a ** 2) - 1) / (2 * a ** 2), 0.0),
         _safe(lambda a: (sq(1 + 4 * a ** 2) - 1) / (2 * a ** 2), 1.0)),
        ("(1+a−√(a²+4a))/2", lambda a: (1 + a - sq(a ** 2 + 4 * a)) / 2,
         lambda a: (2 + a - sq(a ** 2 + 4 * a)) / 2),
        ("1", _c(1.0)),
    ], excluded=True)
    + _row(I.RSQUARE, TOLLENS_MODS, [
        ("1 if a < 1, 0 if a = 1", lambda a: np.where(np.asarray(a) < 1, 1.0, 0.0)),
    ] * 3 + [("1", _c(1.0))])
    + _row(I.RSTAR, TOLLENS_MODS, [
        ("(1−a)/2", lambda a: (1 - a) / 2),
        ("√(5+4a−(2+a))/2", lambda a: sq(5 + 4 * a - (2 + a)) / 2,
         lambda a: (sq(5 + 4 * a) - 1 - 2 * a) / 2),
        ("(3−√(5+4a))/2", lambda a: (3 - sq(5 + 4 * a)) / 2),
        ("1−a", lambda a: 1 - a),
    ], excluded=True, rstar="difference")
)


@dataclass(frozen=True)
class ElseCell:
    kind: ElseKind
    modifier: Modifier
    text: str
    printed: Callable[[np.ndarray, np.ndarray], np.ndarray]


ELSE_CELLS: tuple[ElseCell, ...] = (
    ElseCell(ElseKind.RM, M.IDENTITY, "b ∨ (0.5 ∧ c)", lambda b, c: mx(b, mn(0.5, c))),
    ElseCell(ElseKind.RM, M.VERY, "b ∨ ((3−√5)/2 ∧ c)", lambda b, c: mx(b, mn(GOLD_LO, c))),
    ElseCell(ElseKind.RB, M.IDENTITY, "b ∨ 0.5", lambda b, c: mx(b, 0.5)),
    ElseCell(ElseKind.RB, M.VERY, "b ∨ (3−√5)/2", lambda b, c: mx(b, GOLD_LO)),
    ElseCell(ElseKind.RA, M.IDENTITY, "(1+b)/2", lambda b, c: (1 + b) / 2),
    ElseCell(ElseKind.RA, M.VERY, "(3+2b−√(5+4b))/2", lambda b, c: (3 + 2 * b - sq(5 + 4 * b)) / 2),
)

# Expected mark for each relation: True where the chain closes.
SYLLOGISM_MARKS: dict[Implication, bool] = {
    I.RM: False, I.RA: False, I.RC: False,
    I.RS: True, I.RG: True, I.RSG: True, I.RGG: True, I.RGS: True, I.RSS: True,
    I.RSHARP: False, I.RDELTA: False, I.RSQUARE: False, I.RSTAR: False,
}

PARAMS = np.round(np.arange(11) / 10, 10)


@dataclass(frozen=True)
class CellResult:
    table: str
    kind: Implication
    modifier: Modifier
    param: float
    profile: float
    printed: float
    exact: float
    text: str

    @property
    def printed_error(self) -> float:
        return abs(self.profile - self.printed)

    @property
    def exact_error(self) -> float:
        return abs(self.profile - self.exact)


def evaluate(cell: Cell, table: str, grid_n: int = 1000,
             params: Iterable[float] = PARAMS) -> list[CellResult]:
    params = np.asarray(list(params), dtype=float)
    prof = profile_gmp if table == "ponens" else profile_gmt
    got = prof(cell.kind, cell.modifier, params, grid_n, rstar=cell.rstar)
    printed = cell.printed(params)
    exact = cell.reference()(params)
    return [CellResult(table, cell.kind, cell.modifier, float(p), float(g), float(pr), float(e), cell.text)
            for p, g, pr, e in zip(params, got, printed, exact)]


def cell_status(cell: Cell, results: list[CellResult], tol: float) -> str:
    if cell.excluded:
        return "excluded"
    if max(r.printed_error for r in results) <= tol:
        return "match"
    if max(r.exact_error for r in results) <= tol:
        return "misprint"
    return "mismatch"


def table_rows(grid_n: int = 1000) -> list[dict]:
    """One row per (table, relation, modifier, parameter) in long format."""
    tol = 2.0 / grid_n
    rows = []
    for table, cells in (("ponens", PONENS), ("tollens", TOLLENS)):
        for cell in cells:
            res = evaluate(cell, table, grid_n)
            status = cell_status(cell, res, tol)
            for r in res:
                rows.append({
                    "table": table, "kind": cell.kind.value, "modifier": cell.modifier.value,
                    "param": f"{r.param:.1f}", "profile": f"{r.profile:.6f}",
                    "closed_form": cell.text, "printed_value": f"{r.printed:.6f}",
                    "abs_error": f"{r.printed_error:.6f}", "status": status,
                })
    return rows


def syllogism_rows(grid_n: int = 101) -> list[dict]:
    rows = []
    for kind, mark in SYLLOGISM_MARKS.items():
        res = syllogism_check(kind, CompositionRule.MAX_MIN, grid_n)
        rows.append({
            "kind": kind.value, "expected": "holds" if mark else "fails",
            "computed": "holds" if res.holds else "fails",
            "worst_gap": f"{res.worst_gap:.6f}",
            "witness": "" if res.holds else f"a={res.witness[0]:.2f} c={res.witness[1]:.2f}",
            "agrees": "yes" if res.holds == mark else "no",
        })
    return rows


def ite_rows(grid_n: int = 1000) -> list[dict]:
    rows = []
    for cell in ELSE_CELLS:
        for b in PARAMS:
            for c in PARAMS:
                got = profile_ite(cell.kind, cell.modifier, float(b), float(c), grid_n)
                want = float(cell.printed(b, c))
                rows.append({"kind": cell.kind.value, "modifier": cell.modifier.value,
                             "b": f"{b:.1f}", "c": f"{c:.1f}", "profile": f"{got:.6f}",
                             "closed_form": cell.text, "abs_error": f"{abs(got - want):.6f}"})
    return rows


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def to_markdown(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for r in rows:
        lines.append("| " + " | ".join(str(r[k]) for k in keys) + " |")
    return "\n".join(lines) + "\n"
