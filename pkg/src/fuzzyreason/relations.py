"""Binary fuzzy relations, implication and if-then-else constructors, and
sup-t composition."""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core import FuzzySet, Universe, UniverseMismatch, check_grades

# Tolerance for the order and equality comparisons inside the arrows.  Grades
# such as 1 - 0.7 and 0.3 differ in the last bit; without slack the hybrid
# arrows would flip branches on values that are mathematically equal.
EPS = 1e-12


class Implication(enum.Enum):
    RC = "Rc"
    RM = "Rm"
    RA = "Ra"
    RS = "Rs"
    RG = "Rg"
    RSG = "Rsg"
    RGG = "Rgg"
    RGS = "Rgs"
    RSS = "Rss"
    RSHARP = "Rsharp"
    RDELTA = "Rdelta"
    RSQUARE = "Rsquare"
    RSTAR = "Rstar"

    @classmethod
    def parse(cls, text: str) -> "Implication":
        key = text.strip().lower().replace("_", "").replace("'", "")
        for k in cls:
            if k.value.lower() == key or k.name.lower() == key:
                return k
        aliases = {"r#": cls.RSHARP, "#": cls.RSHARP, "rb": cls.RSHARP, "r*": cls.RSTAR}
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown implication {text!r}; expected one of {[k.value for k in cls]}")


class ElseKind(enum.Enum):
    RM = "RmPrime"
    RA = "RaPrime"
    RB = "RbPrime"
    RGG = "RggPrime"
    RGS = "RgsPrime"
    RSG = "RsgPrime"
    RSS = "RssPrime"

    @classmethod
    def parse(cls, text: str) -> "ElseKind":
        key = text.strip().lower().replace("'", "prime").replace("_", "")
        for k in cls:
            if k.value.lower() == key or k.name.lower() == key or k.value.lower() == key + "prime":
                return k
        raise ValueError(f"unknown if-then-else relation {text!r}; expected one of {[k.value for k in cls]}")


class CompositionRule(enum.Enum):
    MAX_MIN = "maxmin"
    MAX_BOUNDED_PRODUCT = "maxbprod"
    MAX_DRASTIC = "maxdrastic"

    @classmethod
    def parse(cls, text: str) -> "CompositionRule":
        key = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {"min": cls.MAX_MIN, "maxmin": cls.MAX_MIN,
                   "bprod": cls.MAX_BOUNDED_PRODUCT, "maxbprod": cls.MAX_BOUNDED_PRODUCT,
                   "maxboundedproduct": cls.MAX_BOUNDED_PRODUCT, "boundedproduct": cls.MAX_BOUNDED_PRODUCT,
                   "drastic": cls.MAX_DRASTIC, "maxdrastic": cls.MAX_DRASTIC}
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown composition rule {text!r}; expected maxmin, maxbprod or maxdrastic")


# -- pointwise arrows -------------------------------------------------------

def _sharp(a, b):
    return np.where(a <= b + EPS, 1.0, 0.0)


def _gradual(a, b):
    return np.where(a <= b + EPS, 1.0, b)


def _delta(a, b):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratio = np.where(a > 0, b / np.where(a > 0, a, 1.0), 1.0)
    return np.where(a <= b + EPS, 1.0, ratio)


def _square(a, b):
    return np.where((np.abs(a - 1.0) > EPS) | (np.abs(b - 1.0) <= EPS), 1.0, 0.0)


_HALVES = {"s": _sharp, "g": _gradual}


def arrow(kind: Implication, a, b, rstar: str = "printed") -> np.ndarray:
    """Grade of ``a -> b`` under ``kind``, broadcasting over arrays.

    ``rstar`` picks the reading of the star relation: ``"printed"`` gives
    ``a ∧ b``, ``"difference"`` gives ``0 ∨ (b - a)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    k = kind
    if k is Implication.RC:
        out = np.minimum(a, b)
    elif k is Implication.RM:
        out = np.maximum(np.minimum(a, b), 1.0 - a)
    elif k is Implication.RA:
        out = np.minimum(1.0, 1.0 - a + b)
    elif k is Implication.RS:
        out = _sharp(a, b)
    elif k is Implication.RG:
        out = _gradual(a, b)
    elif k in (Implication.RSG, Implication.RGG, Implication.RGS, Implication.RSS):
        first, second = _HALVES[k.value[1]], _HALVES[k.value[2]]
        out = np.minimum(first(a, b), second(1.0 - a, 1.0 - b))
    elif k is Implication.RSHARP:
        out = np.maximum(1.0 - a, b)
    elif k is Implication.RDELTA:
        out = _delta(a, b)
    elif k is Implication.RSQUARE:
        out = _square(a, b)
    elif k is Implication.RSTAR:
        if rstar == "printed":
            out = np.minimum(a, b)
        elif rstar == "difference":
            out = np.maximum(0.0, b - a)
        else:
            raise ValueError(f"unknown star reading {rstar!r}; expected 'printed' or 'difference'")
    else:
        raise AssertionError(k)
    return np.clip(np.asarray(out, dtype=float), 0.0, 1.0)


def else_arrow(kind: ElseKind, a, b, c) -> np.ndarray:
    """Grade of ``if a then b else c``, broadcasting over arrays."""
    a, b, c = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a, b, c)))
    na = 1.0 - a
    if kind is ElseKind.RM:
        out = np.maximum(np.minimum(a, b), np.minimum(na, c))
    elif kind is ElseKind.RA:
        out = np.minimum(np.minimum(1.0, 1.0 - a + b), a + c)
    elif kind is ElseKind.RB:
        out = np.minimum(np.maximum(na, b), np.maximum(a, c))
    else:
        tag = kind.name[1:].lower()
        first, second = _HALVES[tag[0]], _HALVES[tag[1]]
        out = np.minimum(first(a, b), second(na, c))
    return np.clip(out, 0.0, 1.0)


# -- t-norms used by composition ---------------------------------------------

def tnorm(rule: CompositionRule, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if rule is CompositionRule.MAX_MIN:
        return np.minimum(x, y)
    if rule is CompositionRule.MAX_BOUNDED_PRODUCT:
        return np.maximum(0.0, x + y - 1.0)
    if rule is CompositionRule.MAX_DRASTIC:
        x, y = np.broadcast_arrays(x, y)
        return np.where(np.abs(y - 1.0) <= EPS, x, np.where(np.abs(x - 1.0) <= EPS, y, 0.0))
    raise AssertionError(rule)


# -- relations ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FuzzyRelation:
    rows: Universe
    cols: Universe
    grades: np.ndarray

    def __post_init__(self):
        g = np.array(self.grades, dtype=float)
        if g.shape != (len(self.rows), len(self.cols)):
            raise ValueError(
                f"relation matrix has shape {g.shape}, expected {(len(self.rows), len(self.cols))}"
            )
        check_grades(g.ravel(), "relation grade")
        g.setflags(write=False)
        object.__setattr__(self, "grades", g)

    @classmethod
    def from_pairs(cls, rows: Universe, cols: Universe, pairs: Mapping[tuple[str, str], float]) -> "FuzzyRelation":
        m = np.zeros((len(rows), len(cols)))
        for (u, v), g in pairs.items():
            m[rows.index(u), cols.index(v)] = g
        return cls(rows, cols, m)

    @classmethod
    def identity(cls, u: Universe) -> "FuzzyRelation":
        return cls(u, u, np.eye(len(u)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzyRelation):
            return NotImplemented
        return (self.rows.same_as(other.rows) and self.cols.same_as(other.cols)
                and np.array_equal(self.grades, other.grades))

    def __hash__(self):
        return hash((self.rows.points, self.cols.points, self.grades.tobytes()))

    def __getitem__(self, key: tuple[str, str]) -> float:
        u, v = key
        return float(self.grades[self.rows.index(u), self.cols.index(v)])

    def to_json(self) -> dict:
        return {"rows": self.rows.to_json(), "cols": self.cols.to_json(),
                "grades": [[float(g) for g in row] for row in self.grades]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FuzzyRelation":
        return cls(Universe.from_json(data["rows"]), Universe.from_json(data["cols"]), data["grades"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.cols.labels))
        for label, row in zip(self.rows.labels, self.grades):
            w.writerow([label] + [f"{g:.6f}" for g in row])
        return buf.getvalue()


def _check(left: Universe, right: Universe, what: str) -> None:
    if not left.same_as(right):
        raise UniverseMismatch(left, right, what)


def cartesian_product(a: FuzzySet, b: FuzzySet) -> FuzzyRelation:
    return FuzzyRelation(a.universe, b.universe, np.minimum.outer(a.grades, b.grades))


def implication_relation(kind: Implication, a: FuzzySet, b: FuzzySet, rstar: str = "printed") -> FuzzyRelation:
    g = arrow(kind, a.grades[:, None], b.grades[None, :], rstar=rstar)
    return FuzzyRelation(a.universe, b.universe, g)


def else_relation(kind: ElseKind, a: FuzzySet, b: FuzzySet, c: FuzzySet) -> FuzzyRelation:
    _check(b.universe, c.universe, "consequent and alternative")
    g = else_arrow(kind, a.grades[:, None], b.grades[None, :], c.grades[None, :])
    return FuzzyRelation(a.universe, b.universe, g)


def compose(a: FuzzySet, r: FuzzyRelation, rule: CompositionRule = CompositionRule.MAX_MIN) -> FuzzySet:
    """``out(v) = max_u t(a(u), r(u, v))``."""
    _check(a.universe, r.rows, "input set and relation rows")
    if len(r.rows) == 0:
        return FuzzySet(r.cols, np.zeros(len(r.cols)))
    return FuzzySet(r.cols, tnorm(rule, a.grades[:, None], r.grades).max(axis=0))


def compose_rel_set(r: FuzzyRelation, b: FuzzySet, rule: CompositionRule = CompositionRule.MAX_MIN) -> FuzzySet:
    """``out(u) = max_v t(r(u, v), b(v))``."""
    _check(r.cols, b.universe, "relation columns and input set")
    if len(r.cols) == 0:
        return FuzzySet(r.rows, np.zeros(len(r.rows)))
    return FuzzySet(r.rows, tnorm(rule, r.grades, b.grades[None, :]).max(axis=1))


def compose_rel_rel(r1: FuzzyRelation, r2: FuzzyRelation,
                    rule: CompositionRule = CompositionRule.MAX_MIN) -> FuzzyRelation:
    _check(r1.cols, r2.rows, "left relation columns and right relation rows")
    if len(r1.cols) == 0:
        return FuzzyRelation(r1.rows, r2.cols, np.zeros((len(r1.rows), len(r2.cols))))
    g = tnorm(rule, r1.grades[:, :, None], r2.grades[None, :, :]).max(axis=1)
    return FuzzyRelation(r1.rows, r2.cols, g)


def converse(r: FuzzyRelation) -> FuzzyRelation:
    return FuzzyRelation(r.cols, r.rows, r.grades.T)


def image(r: FuzzyRelation, a: FuzzySet) -> FuzzySet:
    return compose(a, r, CompositionRule.MAX_MIN)


def domain(r: FuzzyRelation) -> FuzzySet:
    g = r.grades.max(axis=1) if len(r.cols) else np.zeros(len(r.rows))
    return FuzzySet(r.rows, g)


def relation_union(r1: FuzzyRelation, r2: FuzzyRelation) -> FuzzyRelation:
    _check(r1.rows, r2.rows, "relation rows")
    _check(r1.cols, r2.cols, "relation columns")
    return FuzzyRelation(r1.rows, r1.cols, np.maximum(r1.grades, r2.grades))


def relation_intersection(r1: FuzzyRelation, r2: FuzzyRelation) -> FuzzyRelation:
    _check(r1.rows, r2.rows, "relation rows")
    _check(r1.cols, r2.cols, "relation columns")
    return FuzzyRelation(r1.rows, r1.cols, np.minimum(r1.grades, r2.grades))
