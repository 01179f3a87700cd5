"""Defuzzification of an aggregate set or of per-rule firings."""
from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .core import FuzzySet
from .inference import RuleFiring

# grades within this distance of the maximum count as maximal
MAX_TIE = 1e-9


class DefuzzMethod(enum.Enum):
    CENTRE = "centre"
    MAX_AVERAGE = "max-average"
    MAX_MIDDLE = "max-middle"
    BISECTOR = "bisector"
    HEIGHT = "height"
    MAX_HEIGHT = "max-height"
    AREA = "area"
    GREATEST_AREA = "greatest-area"

    @classmethod
    def parse(cls, text: str) -> "DefuzzMethod":
        key = text.strip().lower().replace("_", "-").replace(" ", "-")
        aliases = {"center": cls.CENTRE, "centroid": cls.BISECTOR, "mom": cls.MAX_AVERAGE}
        if key in aliases:
            return aliases[key]
        for m in cls:
            if m.value == key or m.value.replace("-", "") == key.replace("-", ""):
                return m
        raise ValueError(f"unknown defuzzification method {text!r}; expected one of {[m.value for m in cls]}")

    @property
    def on_firings(self) -> bool:
        return self in (DefuzzMethod.HEIGHT, DefuzzMethod.MAX_HEIGHT,
                        DefuzzMethod.AREA, DefuzzMethod.GREATEST_AREA)


def _checked(c: FuzzySet) -> tuple[np.ndarray, np.ndarray]:
    if not c.universe.is_numeric:
        raise ValueError(f"universe {c.universe.label!r} has no numeric coordinates")
    g = c.grades
    if not g.size or g.max() <= 0.0:
        raise ValueError("cannot defuzzify an all-zero fuzzy set")
    return c.universe.coords, g


def _maxima(w: np.ndarray, g: np.ndarray) -> np.ndarray:
    return w[g >= g.max() - MAX_TIE]


def bisector(w: np.ndarray, g: np.ndarray) -> float:
    """Point splitting the grade mass in half.

    Each grade is spread evenly over a cell bounded by the midpoints to its
    neighbours; the end cells are symmetric about their point.
    """
    if len(w) == 1:
        return float(w[0])
    mids = (w[1:] + w[:-1]) / 2
    edges = np.concatenate([[w[0] - (mids[0] - w[0])], mids, [w[-1] + (w[-1] - mids[-1])]])
    cum = np.concatenate([[0.0], np.cumsum(g)])
    half = cum[-1] / 2
    k = int(np.searchsorted(cum, half, side="left"))
    if k == 0:
        return float(edges[0])
    # half lies inside cell k-1
    lo, hi = cum[k - 1], cum[k]
    frac = (half - lo) / (hi - lo)
    return float(edges[k - 1] + frac * (edges[k] - edges[k - 1]))


def defuzzify(method: DefuzzMethod | str, c: FuzzySet) -> float:
    method = method if isinstance(method, DefuzzMethod) else DefuzzMethod.parse(method)
    if method.on_firings:
        raise ValueError(f"{method.value} works on rule firings, not on a single set")
    w, g = _checked(c)
    if method is DefuzzMethod.CENTRE:
        return float((w * g).sum() / g.sum())
    if method is DefuzzMethod.MAX_AVERAGE:
        return float(_maxima(w, g).mean())
    if method is DefuzzMethod.MAX_MIDDLE:
        top = _maxima(w, g)
        return float((top.min() + top.max()) / 2)
    return bisector(w, g)


def defuzzify_firings(method: DefuzzMethod | str, firings: Sequence[RuleFiring]) -> float:
    """Combine rule representatives weighted by firing height or area.

    Ties in the argmax methods go to the lowest rule index.
    """
    method = method if isinstance(method, DefuzzMethod) else DefuzzMethod.parse(method)
    if not method.on_firings:
        raise ValueError(f"{method.value} works on a fuzzy set, not on rule firings")
    if not firings:
        raise ValueError("no rule firings to defuzzify")
    if any(f.representative is None for f in firings):
        raise ValueError("every firing needs a representative coordinate")
    w = np.array([f.representative for f in firings], dtype=float)
    use_height = method in (DefuzzMethod.HEIGHT, DefuzzMethod.MAX_HEIGHT)
    weight = np.array([f.strength if use_height else f.area for f in firings], dtype=float)
    if method in (DefuzzMethod.MAX_HEIGHT, DefuzzMethod.GREATEST_AREA):
        if weight.max() <= 0:
            raise ValueError("all firing weights are zero")
        return float(w[int(np.argmax(weight))])
    total = weight.sum()
    if total <= 0:
        raise ValueError("total firing weight is zero")
    return float((w * weight).sum() / total)
