"""Reading universes, sets and rule bases from JSON documents.

The accepted shapes are listed in ``docs/schema.md``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .core import FuzzySet, Universe
from .inference import FuzzyRule


class SchemaError(ValueError):
    pass


def universe_from(data: Any, named: Mapping[str, Universe] | None = None) -> Universe:
    """A universe from ``{"labels": [...]}``, ``{"coords": [...]}``, the
    ``points`` form written by :meth:`Universe.to_json`, or a name from ``named``."""
    if isinstance(data, str):
        if named is None or data not in named:
            raise SchemaError(f"unknown universe name {data!r}")
        return named[data]
    if not isinstance(data, Mapping):
        raise SchemaError("a universe must be an object or a universe name")
    label = str(data.get("label", "U"))
    if "labels" in data:
        return Universe.from_labels([str(x) for x in data["labels"]], label)
    if "coords" in data:
        return Universe.from_coords([float(x) for x in data["coords"]], label)
    if "points" in data:
        return Universe.from_json(data)
    raise SchemaError("a universe needs 'labels', 'coords' or 'points'")


def set_from(data: Any, named: Mapping[str, Universe] | None = None,
             universe: Universe | None = None) -> FuzzySet:
    """A fuzzy set from ``{"universe": ..., "grades": [...] | {label: grade}}``.

    A bare list of grades is accepted when ``universe`` is given.
    """
    if isinstance(data, list):
        if universe is None:
            raise SchemaError("a bare grade list needs a known universe")
        return FuzzySet(universe, data)
    if not isinstance(data, Mapping) or "grades" not in data:
        raise SchemaError("a fuzzy set needs a 'grades' field")
    u = universe_from(data["universe"], named) if "universe" in data else universe
    if u is None:
        raise SchemaError("a fuzzy set needs a 'universe' field")
    grades = data["grades"]
    if isinstance(grades, Mapping):
        unknown = [k for k in grades if k not in u.labels]
        if unknown:
            raise SchemaError(f"grades name points not in the universe: {unknown}")
        return FuzzySet.from_mapping(u, {str(k): float(v) for k, v in grades.items()})
    return FuzzySet(u, grades)


def named_universes(doc: Mapping) -> dict[str, Universe]:
    return {name: universe_from(u) for name, u in doc.get("universes", {}).items()}


def rules_from(doc: Mapping, named: Mapping[str, Universe]) -> list[FuzzyRule]:
    rules = []
    for k, r in enumerate(doc.get("rules", [])):
        if "if" not in r or "then" not in r:
            raise SchemaError(f"rule {k} needs 'if' and 'then'")
        ants = tuple((slot, set_from(s, named)) for slot, s in r["if"].items())
        rules.append(FuzzyRule(ants, set_from(r["then"], named)))
    if not rules:
        raise SchemaError("no rules given")
    return rules


def inputs_from(doc: Mapping, named: Mapping[str, Universe]) -> dict[str, Any]:
    out = {}
    for slot, v in doc.get("inputs", {}).items():
        out[slot] = v if isinstance(v, (int, float, str)) and not isinstance(v, bool) else set_from(v, named)
    return out


def load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
