"""Brute-force reference computations, written independently of the package.

Everything here uses plain Python loops and floats so that it shares no
code path with the vectorised implementations under test.
"""
from __future__ import annotations

import itertools
import math


def arrow(kind: str, a: float, b: float) -> float:
    """Scalar implication grades, one branch per relation."""
    eps = 1e-12
    if kind == "Rc":
        return min(a, b)
    if kind == "Rm":
        return max(min(a, b), 1 - a)
    if kind == "Ra":
        return min(1.0, 1 - a + b)
    if kind == "Rs":
        return 1.0 if a <= b + eps else 0.0
    if kind == "Rg":
        return 1.0 if a <= b + eps else b
    if kind == "Rsharp":
        return max(1 - a, b)
    if kind == "Rdelta":
        return 1.0 if a <= b + eps else b / a
    if kind == "Rsquare":
        return 1.0 if (a < 1 - eps or b > 1 - eps) else 0.0
    if kind == "Rstar":
        return min(a, b)
    if len(kind) == 3:
        first, second = "R" + kind[1], "R" + kind[2]
        return min(arrow(first, a, b), arrow(second, 1 - a, 1 - b))
    raise ValueError(kind)


def maxmin_vec(vec, mat):
    """``vec ∘ mat`` under max-min."""
    cols = len(mat[0])
    return [max(min(vec[i], mat[i][j]) for i in range(len(vec))) for j in range(cols)]


def maxmin_mat(m1, m2):
    rows, inner, cols = len(m1), len(m2), len(m2[0])
    return [[max(min(m1[i][k], m2[k][j]) for k in range(inner)) for j in range(cols)] for i in range(rows)]


def enumerate_grades(productions, start, sentence, max_len=None):
    """Best max-min grade of ``sentence`` over every leftmost derivation.

    Exhaustive depth-first search; a form is abandoned only when it holds
    more terminals than the sentence or its terminal prefix disagrees.
    Productions are ``(lhs, rhs_tuple, grade)`` with single-character symbols.
    """
    target = tuple(sentence)
    nts = {p[0] for p in productions}
    max_len = max_len if max_len is not None else len(target)
    best = [None]

    def dfs(form, grade, depth):
        if depth > 4 * max(len(target), 1) + 4:
            return
        k = 0
        while k < len(form) and form[k] not in nts:
            k += 1
        if form[:k] != target[:k]:
            return
        if sum(1 for s in form if s not in nts) > len(target) or len(form) > max_len + 2:
            return
        if k == len(form):
            if form == target and (best[0] is None or grade > best[0]):
                best[0] = grade
            return
        for lhs, rhs, g in productions:
            if lhs == form[k]:
                dfs(form[:k] + rhs + form[k + 1:], min(grade, g), depth + 1)

    dfs((start,), 1.0, 0)
    return best[0]


def term_value(literals, x):
    """Min over literals ``(index, positive)`` at point ``x``."""
    if not literals:
        return 1.0
    return min(x[i] if p else 1 - x[i] for i, p in literals)


def sop_value(terms, x):
    return max((term_value(t, x) for t in terms), default=0.0)


def grid(arity, levels=(0.0, 0.25, 0.5, 0.75, 1.0)):
    return list(itertools.product(levels, repeat=arity))


def dominated(term, terms, arity) -> bool:
    """``term <= sum(terms)`` at every grid point."""
    return all(term_value(term, x) <= sop_value(terms, x) + 1e-12 for x in grid(arity))


def isclose(a, b, tol=1e-12):
    return math.isclose(a, b, abs_tol=tol)
