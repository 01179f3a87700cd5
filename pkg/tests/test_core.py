import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuzzyreason.core import (
    FuzzySet, Hedge, HedgeKind, Kernel, SetOp, Universe, UniverseMismatch, apply_hedge, combine,
    complement, format_set, fuzzify, height, hedge_grades, intersection, is_normal, lambda_cut, power, union,
)

U = Universe.from_labels(["a", "b", "c", "d"])
grades = st.lists(st.floats(0, 1, allow_nan=False), min_size=4, max_size=4)
fsets = grades.map(lambda g: FuzzySet(U, g))


def test_universe_rejects_duplicates_and_unknown_labels():
    with pytest.raises(ValueError):
        Universe.from_labels(["a", "a"])
    with pytest.raises(KeyError):
        U.index("z")


def test_grade_out_of_range_rejected():
    with pytest.raises(ValueError, match="outside"):
        FuzzySet(U, [0, 0.5, 1.2, 0])
    with pytest.raises(ValueError):
        FuzzySet(U, [0, 0.5, 1])


def test_grades_are_read_only():
    s = FuzzySet(U, [0.1, 0.2, 0.3, 0.4])
    with pytest.raises(ValueError):
        s.grades[0] = 1.0


def test_operations_on_different_universes_raise():
    other = Universe.from_labels(["a", "b", "c", "e"])
    with pytest.raises(UniverseMismatch):
        union(FuzzySet.constant(U, 0.5), FuzzySet.constant(other, 0.5))


def test_set_operations_pointwise():
    a = FuzzySet(U, [0.2, 0.5, 0.9, 1.0])
    b = FuzzySet(U, [0.6, 0.5, 0.3, 0.0])
    assert combine(SetOp.ALGEBRAIC_PRODUCT, a, b).grades.tolist() == pytest.approx([0.12, 0.25, 0.27, 0])
    assert combine(SetOp.ALGEBRAIC_SUM, a, b).grades.tolist() == pytest.approx([0.68, 0.75, 0.93, 1])
    assert combine(SetOp.BOUNDED_SUM, a, b).grades.tolist() == pytest.approx([0.8, 1, 1, 1])
    assert combine(SetOp.BOUNDED_DIFFERENCE, a, b).grades.tolist() == pytest.approx([0, 0, 0.6, 1])
    assert combine(SetOp.BOUNDED_PRODUCT, a, b).grades.tolist() == pytest.approx([0, 0, 0.2, 0])


@given(fsets, fsets)
def test_de_morgan(a, b):
    assert complement(union(a, b)) == intersection(complement(a), complement(b))
    assert complement(intersection(a, b)) == union(complement(a), complement(b))


@given(fsets, fsets, fsets)
def test_distributivity(a, b, c):
    assert intersection(a, union(b, c)) == union(intersection(a, b), intersection(a, c))
    assert union(a, intersection(b, c)) == intersection(union(a, b), union(a, c))


@given(fsets, fsets)
def test_absorption_and_order(a, b):
    assert union(a, intersection(a, b)) == a
    assert intersection(a, union(a, b)) == a
    assert intersection(a, b) <= a <= union(a, b)


@given(fsets)
def test_complement_bounds(a):
    assert np.all(union(a, complement(a)).grades >= 0.5)
    assert np.all(intersection(a, complement(a)).grades <= 0.5)


@given(fsets, st.floats(0, 1))
def test_cut_is_monotone_in_level(a, level):
    assert set(lambda_cut(a, min(1.0, level + 0.1))) <= set(lambda_cut(a, level))


def test_cut_of_unnormalised_set_at_one_is_empty():
    a = FuzzySet(Universe.from_labels(["y1", "y2", "y3", "y4"]), [0.8, 0.4, 0.6, 0.2])
    assert lambda_cut(a, 1.0) == ()
    assert height(a) == 0.8 and not is_normal(a)


def test_cut_level_checked():
    with pytest.raises(ValueError):
        lambda_cut(FuzzySet.constant(U, 0.5), 1.5)


@given(fsets)
def test_very_is_square_and_more_or_less_is_root(a):
    assert np.array_equal(apply_hedge(HedgeKind.VERY, a).grades, a.grades ** 2)
    assert np.array_equal(apply_hedge(HedgeKind.MORE_OR_LESS, a).grades, np.sqrt(a.grades))


@given(fsets)
def test_hedges_stay_in_unit_interval(a):
    for kind in (HedgeKind.VERY, HedgeKind.PLUS, HedgeKind.MINUS, HedgeKind.HIGHLY,
                 HedgeKind.INT, HedgeKind.CON, HedgeKind.DIL):
        g = apply_hedge(kind, a).grades
        assert np.all((g >= 0) & (g <= 1))


@given(grades)
def test_intensification_fixes_half(g):
    g = np.array(g)
    out = hedge_grades(Hedge(HedgeKind.INT), g)
    assert np.all(out[g < 0.5] <= g[g < 0.5] + 1e-15)
    assert np.all(out[g > 0.5] >= g[g > 0.5] - 1e-15)
    assert hedge_grades(Hedge(HedgeKind.INT), np.array([0.5]))[0] == 0.5


def test_plus_plus_close_to_minus_very():
    # exponents 1.5625 and 1.5: close, not equal
    x = np.linspace(0, 1, 1001)
    plus, minus, very = (Hedge(k) for k in (HedgeKind.PLUS, HedgeKind.MINUS, HedgeKind.VERY))
    pp = hedge_grades(plus, hedge_grades(plus, x))
    mv = hedge_grades(minus, hedge_grades(very, x))
    assert 0 < np.max(np.abs(pp - mv)) < 0.02


def test_highly_is_minus_very_very():
    x = np.linspace(0, 1, 11)
    assert np.allclose(hedge_grades(Hedge(HedgeKind.HIGHLY), x), x ** 3)


def test_sort_of_and_rather_normalised():
    x = np.linspace(0, 1, 21)
    for kind in (HedgeKind.SORT_OF, HedgeKind.RATHER):
        for variant in (1, 2):
            assert hedge_grades(Hedge(kind, variant=variant), x).max() == pytest.approx(1.0)


def test_norm_of_zero_set_raises():
    with pytest.raises(ValueError):
        apply_hedge(HedgeKind.NORM, FuzzySet.constant(U, 0.0))


def test_scalar_hedge_overflow_raises():
    with pytest.raises(ValueError):
        apply_hedge(Hedge.scalar(2.0), FuzzySet.constant(U, 0.8))
    with pytest.raises(ValueError):
        Hedge.power(0)


def test_power_matches_hedge():
    a = FuzzySet(U, [0.64, 0.25, 0.81, 0])
    assert power(a, 2) == apply_hedge(HedgeKind.CON, a)


def test_fuzzify_uses_pointwise_max():
    u = Universe.from_labels(["1", "2", "3", "4"])
    k = Kernel(u, {"1": FuzzySet.from_mapping(u, {"1": 1, "2": 0.4}),
                   "2": FuzzySet.from_mapping(u, {"1": 0.4, "2": 1, "3": 0.4})})
    out = fuzzify(FuzzySet.from_mapping(u, {"1": 0.8, "2": 0.6}), k)
    assert out.grades.tolist() == pytest.approx([0.8, 0.6, 0.24, 0])


@given(fsets)
def test_identity_kernel_fixes_sets(a):
    assert fuzzify(a, Kernel.identity(U)) == a


def test_format_and_json_round_trip():
    a = FuzzySet(Universe.from_coords([1, 2, 3]), [0.8, 0, 0.6])
    assert format_set(a) == "0.8/1 + 0.6/3"
    assert FuzzySet.from_json(a.to_json()) == a
    assert Kernel.from_json(Kernel.identity(U).to_json()).image("b")["b"] == 1.0


@given(fsets, fsets)
def test_con_and_int_distribute(a, b):
    con = lambda s: apply_hedge(HedgeKind.CON, s)
    int_ = lambda s: apply_hedge(HedgeKind.INT, s)
    for f in (con, int_):
        assert f(union(a, b)) == union(f(a), f(b))
        assert f(intersection(a, b)) == intersection(f(a), f(b))
    prod = combine(SetOp.ALGEBRAIC_PRODUCT, a, b)
    assert np.allclose(con(prod).grades, combine(SetOp.ALGEBRAIC_PRODUCT, con(a), con(b)).grades, atol=1e-15)


def test_int_does_not_distribute_over_products():
    a = FuzzySet(U, [0.6, 0.6, 0.6, 0.6])
    prod = combine(SetOp.ALGEBRAIC_PRODUCT, a, a)
    lhs = apply_hedge(HedgeKind.INT, prod).grades[0]
    rhs = apply_hedge(HedgeKind.INT, a).grades[0] ** 2
    assert lhs == pytest.approx(0.2592) and rhs == pytest.approx(0.4624)
