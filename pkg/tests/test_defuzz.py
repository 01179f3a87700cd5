import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from fuzzyreason.core import FuzzySet, Universe
from fuzzyreason.defuzz import DefuzzMethod, bisector, defuzzify, defuzzify_firings
from fuzzyreason.inference import RuleFiring

W = Universe.from_coords([-2, -1, 0, 1, 2, 3])
EXAMPLE = FuzzySet(W, [0.4, 0.8, 0.6, 0.8, 0.8, 0.2])
grades6 = st.lists(st.floats(0, 1, allow_nan=False), min_size=6, max_size=6)


def test_worked_example():
    assert defuzzify(DefuzzMethod.CENTRE, EXAMPLE) == pytest.approx(1.4 / 3.6)
    assert defuzzify("max-average", EXAMPLE) == pytest.approx(2 / 3)
    # the maxima are -1, 1 and 2: their midpoint is 0.5
    assert defuzzify("max-middle", EXAMPLE) == 0.5
    assert defuzzify("bisector", EXAMPLE) == 0.5


@given(grades6, st.floats(0.01, 1))
def test_centre_and_bisector_scale_invariant(g, k):
    g = np.array(g)
    assume(g.sum() > 1e-3)
    a, b = FuzzySet(W, g), FuzzySet(W, g * k)
    assert defuzzify("centre", b) == pytest.approx(defuzzify("centre", a), abs=1e-9)
    assert defuzzify("bisector", b) == pytest.approx(defuzzify("bisector", a), abs=1e-9)


@given(grades6)
def test_results_lie_in_coordinate_range(g):
    assume(sum(g) > 1e-3)
    s = FuzzySet(W, g)
    for m in ("centre", "max-average", "max-middle"):
        assert -2 <= defuzzify(m, s) <= 3
    assert -2.5 <= defuzzify("bisector", s) <= 3.5


@given(grades6)
def test_bisector_splits_mass(g):
    g = np.array(g)
    assume(g.sum() > 1e-3)
    w = W.coords
    x = bisector(w, g)
    # mass of the piecewise-uniform density left of x is half the total
    edges = np.concatenate([[-2.5], (w[1:] + w[:-1]) / 2, [3.5]])
    left = sum(gi * np.clip((x - lo) / (hi - lo), 0, 1) for gi, lo, hi in zip(g, edges[:-1], edges[1:]))
    assert left == pytest.approx(g.sum() / 2, abs=1e-9)


def test_max_average_equals_max_middle_for_symmetric_maxima():
    s = FuzzySet(W, [0.1, 1, 0.3, 1, 0.2, 0.1])
    assert defuzzify("max-average", s) == defuzzify("max-middle", s) == 0.0


@settings(max_examples=50)
@given(st.floats(0.01, 1), st.floats(0.01, 1), st.floats(-5, 5), st.floats(-5, 5))
def test_height_method_is_centre_of_two_points(h1, h2, w1, w2):
    assume(abs(w1 - w2) > 1e-3)
    f = [RuleFiring(h1, None, 0.0, w1), RuleFiring(h2, None, 0.0, w2)]
    u = Universe.from_coords(sorted([w1, w2]))
    g = [h1, h2] if w1 < w2 else [h2, h1]
    assert defuzzify_firings("height", f) == pytest.approx(defuzzify("centre", FuzzySet(u, g)))


def test_firing_methods():
    f = [RuleFiring(0.5, None, 2.0, 1.0), RuleFiring(0.5, None, 1.0, 4.0), RuleFiring(0.2, None, 3.0, 7.0)]
    assert defuzzify_firings("max-height", f) == 1.0  # tie goes to the first rule
    assert defuzzify_firings("greatest-area", f) == 7.0
    assert defuzzify_firings("area", f) == pytest.approx((2 + 4 + 21) / 6)


def test_errors():
    with pytest.raises(ValueError):
        defuzzify("centre", FuzzySet.constant(W, 0.0))
    with pytest.raises(ValueError):
        defuzzify("centre", FuzzySet.constant(Universe.from_labels(["a"]), 1.0))
    with pytest.raises(ValueError):
        defuzzify("height", EXAMPLE)
    with pytest.raises(ValueError):
        defuzzify_firings("centre", [])
    with pytest.raises(ValueError):
        defuzzify_firings("height", [])
    with pytest.raises(ValueError):
        DefuzzMethod.parse("median")


def test_method_parse_aliases():
    assert DefuzzMethod.parse("Center") is DefuzzMethod.CENTRE
    assert DefuzzMethod.parse("max_average") is DefuzzMethod.MAX_AVERAGE
    assert DefuzzMethod.parse("GreatestArea") is DefuzzMethod.GREATEST_AREA
