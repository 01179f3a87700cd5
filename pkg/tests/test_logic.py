import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from fuzzyreason.logic.classes import (
    Atom, ClassPartition, analyze, atom_weight, class_symbols, constraints_from_json, constraints_to_json,
    synthesize, systems_from_json,
)
from fuzzyreason.logic.formula import (
    Classification, FormulaError, classify, eval_grid, evaluate, full_grid, monotone_check, more_ambiguous, parse,
    to_text,
)
from fuzzyreason.logic.terms import Term, expand_main, fpi, normalize, to_normal_form

F = "(x1 + ~x2*x3)*x2 + x1*~x2*~x3"


def test_evaluation_of_worked_points():
    f = parse(F)
    assert evaluate(f, [0.1, 0.8, 0.4]) == pytest.approx(0.2)
    x, y = [0.2, 0.8, 0.6], [0.1, 0.9, 0.7]
    assert evaluate(f, x) == pytest.approx(0.2) and evaluate(f, y) == pytest.approx(0.1)
    assert more_ambiguous(x, y) and monotone_check(f, x, y)


def test_parse_print_round_trip():
    for text in (F, "x1 -> x2", "~(x1 + x2)*x3", "x1'*x2", "a*b + ~c"):
        f = parse(text)
        g = parse(to_text(f), names=f.names)
        assert g == f


def test_parse_errors():
    for bad in ("", "x1 +", "(x1", "x0*x1", "x1 ** x2"):
        with pytest.raises(FormulaError):
            parse(bad)
    with pytest.raises(FormulaError):
        parse("x*y", names=["x"])


def test_arity_from_indexed_names():
    assert parse("x3").arity == 3
    assert parse("x1", arity=4).names == ("x1", "x2", "x3", "x4")


def test_implication_is_bounded():
    f = parse("x1 -> x2")
    assert evaluate(f, [0.7, 0.2]) == pytest.approx(0.5)
    assert evaluate(f, [0.2, 0.7]) == 1.0


def test_classify():
    assert classify(parse("x1 + ~x1")) is Classification.ALWAYS_TRUE
    assert classify(parse("x1*~x1")) is Classification.CONTRADICTION
    assert classify(parse("x1*x2")) is Classification.NEITHER
    with pytest.raises(FormulaError):
        classify(parse("x1 -> x1"))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.tuples(st.integers(0, 2), st.booleans()), min_size=1, max_size=4),
                min_size=1, max_size=4), st.integers(0, 2 ** 32 - 1))
def test_classify_matches_half_threshold(terms, seed):
    f = parse(" + ".join("*".join(("" if p else "~") + f"x{i + 1}" for i, p in t) for t in terms), arity=3)
    samples = np.random.default_rng(seed).random((3, 2000))
    vals = eval_grid(f, samples)
    corners = eval_grid(f, full_grid(3, (0.0, 1.0)))
    c = classify(f)
    if c is Classification.ALWAYS_TRUE:
        assert vals.min() >= 0.5
    elif c is Classification.CONTRADICTION:
        assert vals.max() < 0.5
    else:
        assert corners.min() == 0.0 and corners.max() == 1.0


def test_contradiction_reaches_half_only_at_half():
    # x * ~x touches 1/2 at x = 1/2 and stays below it elsewhere
    f = parse("x1*~x1")
    assert evaluate(f, [0.5]) == 0.5
    assert eval_grid(f, full_grid(1, np.linspace(0, 1, 1001))).max() == 0.5
    assert evaluate(f, [0.4999]) < 0.5


term_lists = st.lists(st.lists(st.tuples(st.integers(0, 2), st.booleans()), min_size=1, max_size=4),
                      min_size=1, max_size=5)


def _sop_text(terms):
    return " + ".join("*".join(("" if p else "~") + f"x{i + 1}" for i, p in t) for t in terms)


@settings(max_examples=60, deadline=None)
@given(term_lists)
def test_normal_forms_preserve_the_function(terms):
    f = parse(_sop_text(terms), arity=3)
    g = full_grid(3)
    want = [oracles.sop_value([frozenset(t) for t in terms], x) for x in g.T]
    for nf in (to_normal_form(f), normalize(f), expand_main(normalize(f)), fpi(f)):
        assert np.allclose(eval_grid(nf.to_formula(), g), want)


@settings(max_examples=40, deadline=None)
@given(term_lists)
def test_prime_implicants_are_implicants_and_pairwise_unabsorbed(terms):
    f = parse(_sop_text(terms), arity=3)
    primes = fpi(f).terms
    for t in primes:
        assert oracles.dominated(t.literals, terms, 3)
        assert not any(o != t and o.contains(t) for o in primes)


def test_main_form_expands_complement_terms():
    f = parse("~x1*x2 + x1*~x1*x2*x3 + x1*~x1", arity=3)
    nf = expand_main(normalize(f))
    assert all(not t.is_complement or t.is_complement_minimum(3) for t in nf.terms)


def test_term_parse_rejects_sums():
    with pytest.raises(FormulaError):
        Term.parse("x1 + x2", ("x1", "x2"))


# -- classes

PART = ClassPartition.uniform(4)
dyadic = st.integers(0, 16).map(lambda k: k / 16)


@settings(max_examples=150, deadline=None)
@given(term_lists, st.tuples(dyadic, dyadic, dyadic), st.integers(1, 4))
def test_analysis_is_exact_membership(terms, values, j):
    f = parse(_sop_text(terms), arity=3)
    c = analyze(f, j, top=(j == PART.n))
    subs = PART.substitutions(j, j)
    v = dict(zip(f.names, values))
    assert c.holds(v, subs) == PART.contains(evaluate(f, values), j)


@settings(max_examples=40, deadline=None)
@given(term_lists)
def test_synthesis_inverts_analysis(terms):
    f = parse(_sop_text(terms), arity=3)
    c = analyze(f, "j")
    g = synthesize(c.lower, f.names, "j")
    grid = full_grid(3)
    assert np.allclose(eval_grid(g, grid), eval_grid(normalize(f).to_formula(), grid))


def test_constraints_json_round_trip():
    c = analyze(parse("~x*~y + x*y*~z"), "j")
    assert constraints_from_json(constraints_to_json(c), "j") == c
    top = analyze(parse("x*y"), 3, top=True)
    assert top.upper is None
    assert constraints_from_json(constraints_to_json(top), 3) == top
    sys_ = systems_from_json([[{"var": "x", "op": ">=", "bound": "a_{j-1}"}]])
    assert sys_[0][0] == Atom("x", ">=", class_symbols("j")[0])


def test_atom_weights():
    lo, hi = class_symbols("j")
    t = sympy.Symbol("t")
    assert atom_weight(Atom("x", ">=", lo), lo, hi) == (True, None)
    assert atom_weight(Atom("x", ">", 1 - hi), lo, hi) == (False, None)
    pos, w = atom_weight(Atom("x", "<=", t), lo, hi)
    assert not pos and sympy.simplify(w - lo / (1 - t)) == 0
    with pytest.raises(FormulaError):
        atom_weight(Atom("x", ">=", 1 - lo), lo, hi)
    with pytest.raises(FormulaError):
        atom_weight(Atom("x", ">=", 0), lo, hi)
    with pytest.raises(ValueError):
        Atom("x", "==", lo)


def test_partition_validation():
    assert PART.class_of(0.25) == 2 and PART.class_of(1.0) == 4
    with pytest.raises(ValueError):
        ClassPartition((0.0, 0.6, 0.5, 1.0))
    with pytest.raises(ValueError):
        ClassPartition((0.1, 1.0))


def test_synthesis_errors():
    lo, _ = class_symbols("j")
    with pytest.raises(FormulaError):
        synthesize([(Atom("w", ">=", lo),)], ["x"])
    with pytest.raises(FormulaError):
        synthesize([], ["x"])


def test_componentwise_monotone_needs_negation_free():
    f = parse("x1*x2 + x3")
    assert monotone_check(f, [0.5, 0.6, 0.2], [0.4, 0.6, 0.1], order="componentwise")
    with pytest.raises(FormulaError):
        monotone_check(parse("~x1"), [0.5], [0.4], order="componentwise")
    with pytest.raises(FormulaError):
        monotone_check(f, [0.9, 0.5, 0.5], [0.1, 0.5, 0.5])
