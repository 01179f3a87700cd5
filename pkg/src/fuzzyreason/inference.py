"""Compositional inference: modus ponens and tollens, if-then-else rules,
multi-rule bases, grade profiles and the syllogism check."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core import FuzzySet, Universe, UniverseMismatch
from .relations import (
    CompositionRule,
    ElseKind,
    Implication,
    arrow,
    compose,
    compose_rel_set,
    else_arrow,
    else_relation,
    implication_relation,
    tnorm,
)


class Modifier(enum.Enum):
    IDENTITY = "identity"
    VERY = "very"
    MORE_OR_LESS = "more or less"
    NOT = "not"
    NOT_VERY = "not very"
    NOT_MORE_OR_LESS = "not more or less"

    @classmethod
    def parse(cls, text: str) -> "Modifier":
        key = " ".join(text.strip().lower().replace("_", " ").replace("-", " ").split())
        aliases = {"": cls.IDENTITY, "a": cls.IDENTITY, "b": cls.IDENTITY, "id": cls.IDENTITY,
                   "mol": cls.MORE_OR_LESS, "not mol": cls.NOT_MORE_OR_LESS}
        if key in aliases:
            return aliases[key]
        for m in cls:
            if m.value == key or m.name.lower().replace("_", " ") == key:
                return m
        raise ValueError(f"unknown modifier {text!r}; expected one of {[m.value for m in cls]}")

    def apply(self, g):
        g = np.asarray(g, dtype=float)
        if self is Modifier.IDENTITY:
            return g
        if self is Modifier.VERY:
            return np.square(g)
        if self is Modifier.MORE_OR_LESS:
            return np.sqrt(g)
        if self is Modifier.NOT:
            return 1.0 - g
        if self is Modifier.NOT_VERY:
            return 1.0 - np.square(g)
        return 1.0 - np.sqrt(g)

    def __call__(self, a: FuzzySet) -> FuzzySet:
        return FuzzySet(a.universe, np.clip(self.apply(a.grades), 0.0, 1.0))


def gmp(kind: Implication, a: FuzzySet, b: FuzzySet, a_prime: FuzzySet,
        rule: CompositionRule = CompositionRule.MAX_MIN, rstar: str = "printed") -> FuzzySet:
    """Generalized modus ponens: ``B' = A' ∘ (A -> B)``."""
    if not a_prime.universe.same_as(a.universe):
        raise UniverseMismatch(a_prime.universe, a.universe, "observed input and rule antecedent")
    return compose(a_prime, implication_relation(kind, a, b, rstar), rule)


def gmt(kind: Implication, a: FuzzySet, b: FuzzySet, b_prime: FuzzySet,
        rule: CompositionRule = CompositionRule.MAX_MIN, rstar: str = "printed") -> FuzzySet:
    """Generalized modus tollens: ``A' = (A -> B) ∘ B'``."""
    if not b_prime.universe.same_as(b.universe):
        raise UniverseMismatch(b_prime.universe, b.universe, "observed output and rule consequent")
    return compose_rel_set(implication_relation(kind, a, b, rstar), b_prime, rule)


def ite_infer(kind: ElseKind, a: FuzzySet, b: FuzzySet, c: FuzzySet, a_prime: FuzzySet) -> FuzzySet:
    """Inference through ``if A then B else C`` under max-min composition."""
    if not a_prime.universe.same_as(a.universe):
        raise UniverseMismatch(a_prime.universe, a.universe, "observed input and rule antecedent")
    return compose(a_prime, else_relation(kind, a, b, c), CompositionRule.MAX_MIN)


# -- profiles ---------------------------------------------------------------

def unit_grid(grid_n: int) -> np.ndarray:
    """The points ``{0, 1/n, ..., 1}``."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    return np.arange(grid_n + 1) / grid_n


def profile_gmp(kind: Implication, mod: Modifier, b, grid_n: int = 1000,
                rule: CompositionRule = CompositionRule.MAX_MIN, rstar: str = "printed"):
    """Consequent grade when the antecedent sweeps every value in [0, 1].

    Returns ``sup_x t(mod(x), x -> b)``; ``b`` may be a scalar or an array.
    """
    x = unit_grid(grid_n)
    b_arr = np.atleast_1d(np.asarray(b, dtype=float))
    vals = tnorm(rule, mod.apply(x)[None, :], arrow(kind, x[None, :], b_arr[:, None], rstar)).max(axis=1)
    return float(vals[0]) if np.ndim(b) == 0 else vals


def profile_gmt(kind: Implication, mod: Modifier, a, grid_n: int = 1000,
                rule: CompositionRule = CompositionRule.MAX_MIN, rstar: str = "printed"):
    """Antecedent grade when the consequent sweeps every value in [0, 1].

    Returns ``sup_x t(a -> x, mod(x))``.
    """
    x = unit_grid(grid_n)
    a_arr = np.atleast_1d(np.asarray(a, dtype=float))
    vals = tnorm(rule, arrow(kind, a_arr[:, None], x[None, :], rstar), mod.apply(x)[None, :]).max(axis=1)
    return float(vals[0]) if np.ndim(a) == 0 else vals


def profile_ite(kind: ElseKind, mod: Modifier, b: float, c: float, grid_n: int = 1000) -> float:
    """``sup_x min(mod(x), if x then b else c)`` over the unit grid."""
    x = unit_grid(grid_n)
    return float(np.minimum(mod.apply(x), else_arrow(kind, x, b, c)).max())


# -- syllogism --------------------------------------------------------------

@dataclass(frozen=True)
class SyllogismResult:
    holds: bool
    worst_gap: float
    witness: tuple[float, float] | None

    def __bool__(self) -> bool:
        return self.holds


def syllogism_check(kind: Implication, rule: CompositionRule = CompositionRule.MAX_MIN,
                    grid_n: int = 101, rstar: str = "printed") -> SyllogismResult:
    """Compare ``sup_x t(a -> x, x -> c)`` with ``a -> c`` on a grid of grades.

    The chain closes when the largest gap is within ``2 / grid_n``.  The
    witness is the ``(a, c)`` pair with the largest gap.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    g = np.linspace(0.0, 1.0, grid_n)
    left = arrow(kind, g[:, None], g[None, :], rstar)   # [a, x]
    chained = tnorm(rule, left[:, :, None], left[None, :, :]).max(axis=1)  # [a, c]
    gap = np.abs(chained - left)
    i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
    worst = float(gap[i, j])
    holds = worst <= 2.0 / grid_n
    return SyllogismResult(holds, worst, (float(g[i]), float(g[j])))


# -- multi-rule inference ---------------------------------------------------

@dataclass(frozen=True)
class FuzzyRule:
    antecedents: tuple[tuple[str, FuzzySet], ...]
    consequent: FuzzySet

    def __post_init__(self):
        if not self.antecedents:
            raise ValueError("a rule needs at least one antecedent")
        object.__setattr__(self, "antecedents", tuple(self.antecedents))


@dataclass(frozen=True)
class RuleFiring:
    strength: float
    clipped: FuzzySet
    area: float
    representative: float | None


def _spacing(u: Universe) -> float:
    if u.is_numeric and len(u) > 1:
        return float(np.mean(np.diff(u.coords)))
    return 1.0


def _singleton_grade(a: FuzzySet, point) -> float:
    u = a.universe
    if isinstance(point, str):
        return a[point]
    x = float(point)
    if not u.is_numeric:
        raise ValueError(f"universe {u.label!r} has no coordinates; give a point label instead of {x}")
    lo, hi = u.coords[0], u.coords[-1]
    if not lo <= x <= hi:
        raise ValueError(f"singleton input {x} lies outside universe {u.label!r} range [{lo}, {hi}]")
    return float(np.interp(x, u.coords, a.grades))


def centre_of(c: FuzzySet) -> float | None:
    total = c.grades.sum()
    if not c.universe.is_numeric or total <= 0:
        return None
    return float((c.universe.coords * c.grades).sum() / total)


def multi_infer(rules: Sequence[FuzzyRule], inputs: Mapping[str, FuzzySet | float | str]
                ) -> tuple[FuzzySet, list[RuleFiring]]:
    """Fire every rule with min over antecedents, then union the clipped consequents.

    An input is either a fuzzy set over the slot's universe or a singleton
    point given as a coordinate or a label.
    """
    if not rules:
        raise ValueError("rule base is empty")
    out_u = rules[0].consequent.universe
    slots: dict[str, Universe] = {}
    for r in rules:
        if not r.consequent.universe.same_as(out_u):
            raise UniverseMismatch(r.consequent.universe, out_u, "rule consequents")
        for slot, s in r.antecedents:
            if slot in slots and not slots[slot].same_as(s.universe):
                raise UniverseMismatch(s.universe, slots[slot], f"antecedents for slot {slot!r}")
            slots.setdefault(slot, s.universe)
    missing = sorted(set(slots) - set(inputs))
    if missing:
        raise ValueError(f"missing input for slot(s): {', '.join(missing)}")

    aggregate = np.zeros(len(out_u))
    firings = []
    for r in rules:
        h = 1.0
        for slot, s in r.antecedents:
            x = inputs[slot]
            if isinstance(x, FuzzySet):
                if not x.universe.same_as(s.universe):
                    raise UniverseMismatch(x.universe, s.universe, f"input for slot {slot!r}")
                grade = float(np.minimum(x.grades, s.grades).max()) if len(s.universe) else 0.0
            else:
                grade = _singleton_grade(s, x)
            h = min(h, grade)
        clipped = FuzzySet(out_u, np.minimum(h, r.consequent.grades))
        aggregate = np.maximum(aggregate, clipped.grades)
        firings.append(RuleFiring(h, clipped, float(clipped.grades.sum() * _spacing(out_u)),
                                  centre_of(r.consequent)))
    return FuzzySet(out_u, aggregate), firings
