"""Finite fuzzy sets over discrete universes.

Grades are held in read-only numpy arrays so that every value is immutable
once built; all operations return new objects.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np


class UniverseMismatch(ValueError):
    """Raised when an operation combines objects over different universes."""

    def __init__(self, left: "Universe", right: "Universe", what: str = "operands"):
        super().__init__(
            f"universe mismatch between {what}: {left.label!r} {left.labels} "
            f"vs {right.label!r} {right.labels}"
        )
        self.left = left
        self.right = right


@dataclass(frozen=True)
class Point:
    label: str
    coord: float | None = None


@dataclass(frozen=True)
class Universe:
    """An ordered, finite set of labelled points, optionally with coordinates."""

    label: str
    points: tuple[Point, ...]

    def __post_init__(self):
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate point labels in universe {self.label!r}")
        coords = [p.coord for p in self.points]
        has = [c is not None for c in coords]
        if any(has) and not all(has):
            raise ValueError(f"universe {self.label!r}: either every point has a coordinate or none does")
        if all(has) and len(coords) > 1:
            if any(b <= a for a, b in zip(coords, coords[1:])):
                raise ValueError(f"universe {self.label!r}: coordinates must be strictly increasing")

    @classmethod
    def from_labels(cls, labels: Iterable[str], label: str = "U") -> "Universe":
        return cls(label, tuple(Point(str(x)) for x in labels))

    @classmethod
    def from_coords(cls, coords: Iterable[float], label: str = "U") -> "Universe":
        return cls(label, tuple(Point(_coord_label(c), float(c)) for c in coords))

    @classmethod
    def grid(cls, lo: float, hi: float, n: int = 101, label: str = "U") -> "Universe":
        """Discretize the interval [lo, hi] into ``n`` evenly spaced points."""
        if n < 2:
            raise ValueError("a grid needs at least two points")
        return cls.from_coords(np.linspace(lo, hi, n), label)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.points)

    @property
    def is_numeric(self) -> bool:
        return bool(self.points) and self.points[0].coord is not None

    @property
    def coords(self) -> np.ndarray:
        if not self.is_numeric:
            raise ValueError(f"universe {self.label!r} has no numeric coordinates")
        return np.array([p.coord for p in self.points], dtype=float)

    def index(self, label: str) -> int:
        for i, p in enumerate(self.points):
            if p.label == label:
                return i
        raise KeyError(f"{label!r} is not a point of universe {self.label!r}")

    def same_as(self, other: "Universe") -> bool:
        return self.points == other.points

    def to_json(self) -> dict:
        pts = []
        for p in self.points:
            d = {"label": p.label}
            if p.coord is not None:
                d["coord"] = p.coord
            pts.append(d)
        return {"label": self.label, "points": pts}

    @classmethod
    def from_json(cls, data: Mapping) -> "Universe":
        pts = tuple(Point(str(p["label"]), None if p.get("coord") is None else float(p["coord"]))
                    for p in data["points"])
        return cls(str(data.get("label", "U")), pts)


def _coord_label(c: float) -> str:
    c = float(c)
    if c.is_integer():
        return str(int(c))
    return f"{c:.6g}"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def check_grades(values: np.ndarray, what: str = "grade") -> None:
    if values.size and (np.any(~np.isfinite(values)) or values.min() < 0.0 or values.max() > 1.0):
        bad = values[(~np.isfinite(values)) | (values < 0) | (values > 1)][0]
        raise ValueError(f"{what} {bad!r} is outside [0, 1]")


@dataclass(frozen=True, eq=False)
class FuzzySet:
    universe: Universe
    grades: np.ndarray

    def __post_init__(self):
        g = _frozen(self.grades)
        if g.shape != (len(self.universe),):
            raise ValueError(
                f"expected {len(self.universe)} grades for universe {self.universe.label!r}, got {g.shape}"
            )
        check_grades(g)
        object.__setattr__(self, "grades", g)

    @classmethod
    def from_mapping(cls, universe: Universe, grades: Mapping[str, float]) -> "FuzzySet":
        """Build from ``{label: grade}``; unlisted points get grade 0."""
        values = np.zeros(len(universe))
        for label, g in grades.items():
            values[universe.index(str(label))] = g
        return cls(universe, values)

    @classmethod
    def constant(cls, universe: Universe, value: float) -> "FuzzySet":
        return cls(universe, np.full(len(universe), float(value)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzySet):
            return NotImplemented
        return self.universe.same_as(other.universe) and np.array_equal(self.grades, other.grades)

    def __hash__(self):
        return hash((self.universe.points, self.grades.tobytes()))

    def __getitem__(self, label: str) -> float:
        return float(self.grades[self.universe.index(label)])

    def __le__(self, other: "FuzzySet") -> bool:
        _same_universe(self, other)
        return bool(np.all(self.grades <= other.grades))

    def __ge__(self, other: "FuzzySet") -> bool:
        return other <= self

    def with_grades(self, grades) -> "FuzzySet":
        return FuzzySet(self.universe, grades)

    def support(self) -> tuple[str, ...]:
        return tuple(p.label for p, g in zip(self.universe.points, self.grades) if g > 0)

    def items(self):
        return zip(self.universe.labels, (float(g) for g in self.grades))

    def __repr__(self) -> str:
        body = " + ".join(f"{_fmt(g)}/{lab}" for lab, g in self.items() if g > 0)
        return f"FuzzySet({body or '0'})"

    def to_json(self) -> dict:
        return {"universe": self.universe.to_json(), "grades": [float(g) for g in self.grades]}

    @classmethod
    def from_json(cls, data: Mapping, universe: Universe | None = None) -> "FuzzySet":
        u = universe if universe is not None else Universe.from_json(data["universe"])
        return cls(u, data["grades"])


def _fmt(g: float) -> str:
    s = f"{g:.6f}".rstrip("0").rstrip(".")
    return s or "0"


def _same_universe(a: FuzzySet, b: FuzzySet) -> None:
    if not a.universe.same_as(b.universe):
        raise UniverseMismatch(a.universe, b.universe)


class SetOp(enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    ALGEBRAIC_PRODUCT = "prod"
    ALGEBRAIC_SUM = "asum"
    BOUNDED_SUM = "bsum"
    BOUNDED_DIFFERENCE = "bdif"
    BOUNDED_PRODUCT = "bprod"


_BINARY = {
    SetOp.UNION: np.maximum,
    SetOp.INTERSECTION: np.minimum,
    SetOp.ALGEBRAIC_PRODUCT: np.multiply,
    SetOp.ALGEBRAIC_SUM: lambda x, y: x + y - x * y,
    SetOp.BOUNDED_SUM: lambda x, y: np.minimum(1.0, x + y),
    SetOp.BOUNDED_DIFFERENCE: lambda x, y: np.maximum(0.0, x - y),
    SetOp.BOUNDED_PRODUCT: lambda x, y: np.maximum(0.0, x + y - 1.0),
}


def combine(op: SetOp | str, a: FuzzySet, b: FuzzySet) -> FuzzySet:
    op = SetOp(op) if not isinstance(op, SetOp) else op
    _same_universe(a, b)
    out = np.clip(_BINARY[op](a.grades, b.grades), 0.0, 1.0)
    return FuzzySet(a.universe, out)


def union(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    return combine(SetOp.UNION, a, b)


def intersection(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    return combine(SetOp.INTERSECTION, a, b)


def complement(a: FuzzySet) -> FuzzySet:
    return FuzzySet(a.universe, 1.0 - a.grades)


def height(a: FuzzySet) -> float:
    return float(a.grades.max()) if len(a.universe) else 0.0


def is_normal(a: FuzzySet) -> bool:
    return height(a) == 1.0


def lambda_cut(a: FuzzySet, level: float) -> tuple[str, ...]:
    """Labels whose grade is at least ``level``."""
    if not 0.0 <= level <= 1.0:
        raise ValueError(f"cut level {level!r} is outside [0, 1]")
    return tuple(lab for lab, g in a.items() if g >= level)


# -- hedges -----------------------------------------------------------------

class HedgeKind(enum.Enum):
    VERY = "very"
    PLUS = "plus"
    MINUS = "minus"
    HIGHLY = "highly"
    MORE_OR_LESS = "more or less"
    SORT_OF = "sort of"
    RATHER = "rather"
    CON = "con"
    DIL = "dil"
    INT = "int"
    NORM = "norm"
    POWER = "power"
    SCALAR = "scalar"


@dataclass(frozen=True)
class Hedge:
    """A hedge operator.

    ``param`` is the exponent for POWER and the factor for SCALAR.  ``variant``
    selects between the two printed definitions of SORT_OF and RATHER
    (1 is the default reading, 2 the alternative).
    """

    kind: HedgeKind
    param: float | None = None
    variant: int = 1

    def __post_init__(self):
        if self.kind in (HedgeKind.POWER, HedgeKind.SCALAR):
            if self.param is None or not self.param > 0:
                raise ValueError(f"{self.kind.value} hedge needs a positive parameter")
        if self.variant not in (1, 2):
            raise ValueError("hedge variant must be 1 or 2")

    @classmethod
    def power(cls, exponent: float) -> "Hedge":
        return cls(HedgeKind.POWER, float(exponent))

    @classmethod
    def scalar(cls, factor: float) -> "Hedge":
        return cls(HedgeKind.SCALAR, float(factor))

    def __call__(self, a: FuzzySet) -> FuzzySet:
        return apply_hedge(self, a)


def _int(g: np.ndarray) -> np.ndarray:
    return np.where(g <= 0.5, 2.0 * g * g, 1.0 - 2.0 * (1.0 - g) ** 2)


def _norm(g: np.ndarray) -> np.ndarray:
    top = g.max() if g.size else 0.0
    if top == 0.0:
        raise ValueError("NORM is undefined for an all-zero fuzzy set")
    return g / top


def _pow(g: np.ndarray, e: float) -> np.ndarray:
    if e == 2.0:
        return np.square(g)
    if e == 0.5:
        return np.sqrt(g)
    return np.power(g, e)


def hedge_grades(h: Hedge, g: np.ndarray) -> np.ndarray:
    """Apply a hedge to a raw grade array."""
    k = h.kind
    if k in (HedgeKind.VERY, HedgeKind.CON):
        return np.square(g)
    if k in (HedgeKind.DIL, HedgeKind.MORE_OR_LESS):
        return np.sqrt(g)
    if k is HedgeKind.PLUS:
        return np.power(g, 1.25)
    if k is HedgeKind.MINUS:
        return np.power(g, 0.75)
    if k is HedgeKind.HIGHLY:
        # minus very very
        return np.power(np.square(np.square(g)), 0.75)
    if k is HedgeKind.INT:
        return _int(g)
    if k is HedgeKind.NORM:
        return _norm(g)
    if k is HedgeKind.POWER:
        return _pow(g, h.param)
    if k is HedgeKind.SCALAR:
        out = h.param * g
        if out.size and out.max() > 1.0:
            raise ValueError(f"scalar factor {h.param} pushes a grade above 1 (max {out.max():.6g})")
        return out
    if k is HedgeKind.SORT_OF:
        if h.variant == 1:
            return _norm(np.minimum(_int(np.sqrt(g)), _int(np.sqrt(1.0 - g))))
        # the printed COW is taken to be CON
        return _norm(np.minimum(1.0 - np.square(np.square(g)), np.sqrt(g)))
    if k is HedgeKind.RATHER:
        if h.variant == 1:
            return _norm(_int(g))
        return _norm(np.minimum(_int(np.square(g)), 1.0 - np.square(g)))
    raise AssertionError(k)


def apply_hedge(h: Hedge | HedgeKind | str, a: FuzzySet) -> FuzzySet:
    if not isinstance(h, Hedge):
        h = Hedge(HedgeKind(h) if not isinstance(h, HedgeKind) else h)
    return FuzzySet(a.universe, np.clip(hedge_grades(h, a.grades), 0.0, 1.0))


def power(a: FuzzySet, exponent: float) -> FuzzySet:
    return apply_hedge(Hedge.power(exponent), a)


# -- fuzzification ----------------------------------------------------------

@dataclass(frozen=True)
class Kernel:
    """Maps each universe point to a fuzzy set over the same universe."""

    universe: Universe
    images: Mapping[str, FuzzySet] = field(default_factory=dict)

    def __post_init__(self):
        for label, s in self.images.items():
            self.universe.index(label)
            if not s.universe.same_as(self.universe):
                raise UniverseMismatch(self.universe, s.universe, f"kernel image of {label!r}")

    @classmethod
    def identity(cls, universe: Universe) -> "Kernel":
        eye = np.eye(len(universe))
        return cls(universe, {lab: FuzzySet(universe, eye[i]) for i, lab in enumerate(universe.labels)})

    def image(self, label: str) -> FuzzySet:
        try:
            return self.images[label]
        except KeyError:
            # no kernel entry means the point maps to itself
            return FuzzySet.from_mapping(self.universe, {label: 1.0})

    def to_json(self) -> dict:
        return {"universe": self.universe.to_json(),
                "images": {k: [float(g) for g in v.grades] for k, v in self.images.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "Kernel":
        u = Universe.from_json(data["universe"])
        return cls(u, {k: FuzzySet(u, v) for k, v in data["images"].items()})


def fuzzify(a: FuzzySet, k: Kernel) -> FuzzySet:
    """Union over the support of the scalar products grade(y) * K(y)."""
    if not a.universe.same_as(k.universe):
        raise UniverseMismatch(a.universe, k.universe)
    out = np.zeros(len(a.universe))
    for label, g in a.items():
        if g > 0:
            out = np.maximum(out, g * k.image(label).grades)
    return FuzzySet(a.universe, out)


def format_set(a: FuzzySet) -> str:
    """Zadeh-style text, e.g. ``0.8/1 + 0.6/2``; zero grades are omitted."""
    body = " + ".join(f"{_fmt(g)}/{lab}" for lab, g in a.items() if g > 0)
    return body or "0"


def isclose_sets(a: FuzzySet, b: FuzzySet, tol: float) -> bool:
    _same_universe(a, b)
    return bool(np.all(np.abs(a.grades - b.grades) <= tol))


__all__ = [
    "Point", "Universe", "FuzzySet", "Kernel", "UniverseMismatch", "SetOp", "HedgeKind", "Hedge",
    "combine", "union", "intersection", "complement", "height", "is_normal", "lambda_cut",
    "apply_hedge", "hedge_grades", "power", "fuzzify", "format_set", "isclose_sets", "check_grades",
]
