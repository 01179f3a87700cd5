import pytest

from fuzzyreason import fstds
from fuzzyreason.core import FuzzySet, SetOp, Universe, combine, lambda_cut, power
from fuzzyreason.fstds import ScriptError, run_script
from fuzzyreason.relations import FuzzyRelation, compose, compose_rel_rel, compose_rel_set, converse, domain

U = Universe.from_labels(["a", "b"])
A = FuzzySet(U, [0.5, 0.8])
B = FuzzySet(U, [0.6, 0.2])
HEAD = "A := Fset(0.5/a, 0.8/b)\nB := Fset(0.6/a, 0.2/b)\n"


def fmt(s: FuzzySet) -> str:
    return fstds.format_value(s)


def test_demo_transcript():
    assert run_script(fstds.DEMO) == ["Fset(1/a, 0.9/b, 0.9/c)", "Fset(1/a, 0.9/b, 0.2/c)",
                                      "Fset(1/a, 0.9/b, 0.2/c)"]


def test_minimal_script():
    assert run_script("A := Fset(0.5/a)\nPrint(A)\nEND") == ["Fset(0.5/a)"]
    assert run_script("") == []
    assert run_script("// only a comment\n") == []


def test_graph_snapshot():
    out = run_script(fstds.GRAPH_DEMO)
    assert out[0] == "V = Set(x, y, z, w)"
    assert out[2].startswith("G = Fset(<Set(x, y, z, w), Fset(0.1/[x,y]")


@pytest.mark.parametrize("name,op", [("Union", SetOp.UNION), ("Intersection", SetOp.INTERSECTION),
                                     ("Prod", SetOp.ALGEBRAIC_PRODUCT), ("Asum", SetOp.ALGEBRAIC_SUM),
                                     ("Bsum", SetOp.BOUNDED_SUM), ("Bdif", SetOp.BOUNDED_DIFFERENCE)])
def test_set_operations_match_library(name, op):
    assert run_script(HEAD + f"Print({name}(A, B))") == [fmt(combine(op, A, B))]


def test_relation_operations_match_library():
    r = FuzzyRelation(U, U, [[0, 0.3], [0.9, 0]])
    a = FuzzySet(U, [1, 0])
    src = "R := Fset(0.3/[a,b], 0.9/[b,a])\nA := Fset(1/a)\n"
    assert run_script(src + "Print(Converse(R))") == [fmt(converse(r))]
    assert run_script(src + "Print(Compose(R, R))") == [fmt(compose_rel_rel(r, r))]
    assert run_script(src + "Print(Domain(R))") == [fmt(domain(r))]
    assert run_script(src + "Print(Compose(A, R))") == [fmt(compose(a, r))]
    assert run_script(src + "Print(Image(R, A))") == [fmt(compose(a, r))]
    assert run_script(src + "Print(Compose(R, A))") == [fmt(compose_rel_set(r, a))]


def test_other_operations():
    out = run_script(HEAD + "Print(Cut(A, 0.6))\nPrint(EXP(A, 2))\nPrint(#A)\nPrint(#(B))\nPrint(Dlt(A, a))")
    assert out[0] == "Set(" + ", ".join(lambda_cut(A, 0.6)) + ")"
    assert out[1] == fmt(power(A, 2))
    assert out[2:] == ["2", "2", "Fset(0.8/b)"]


def test_relational_tests():
    out = run_script(HEAD + "Printb(Subset(Intersection(A, B), A))\nPrintb(EQ(A, B))\nPrintb(Element(a, A))\n"
                            "Printb(Subset(A, B))")
    assert out == ["TRUE", "FALSE", "TRUE", "FALSE"]


def test_print_variants():
    out = run_script(HEAD + "Prints(A)\nPrintn(A)\nPrintn(Union(A, B))\nPrintc(hello world)")
    assert out == ["Set(a, b)", "A", "***", "hello world"]
    with pytest.raises(ScriptError):
        run_script(HEAD + "Printb(A)")


def test_assign_as_expression_and_rebinding():
    out = run_script(HEAD + "Print(Assign(C, Union(A, B)))\nC := Fset(0.1/a)\nPrint(C)")
    assert out == ["Fset(0.6/a, 0.8/b)", "Fset(0.1/a)"]


def test_dump_removes_binding():
    with pytest.raises(ScriptError, match="unbound"):
        run_script(HEAD + "Dump(A)\nPrint(A)")
    with pytest.raises(ScriptError):
        run_script("Dump(Z)")


def test_end_stops_execution():
    assert run_script(HEAD + "Print(A)\nEND\nPrint(B)") == [fmt(A)]


def test_para_lists_operators_and_universe():
    out = run_script(HEAD + "Para")
    assert out[:len(fstds.MANIFEST)] == list(fstds.MANIFEST)
    assert out[-1] == "universe: a, b"


def test_declared_universe():
    assert run_script("Universe(a, b, c)\nA := Fset(0.2/c)\nPara")[-1] == "universe: a, b, c"
    with pytest.raises(ScriptError):
        run_script("Universe(a)\nA := Fset(0.2/c)")


def test_errors_carry_positions():
    with pytest.raises(ScriptError, match="line 2, column 11: grade 1.5"):
        run_script("B := Fset(0.1/a)\nA := Fset(1.5/a)")
    with pytest.raises(ScriptError, match="line 1, column 7: unbound name 'Z'"):
        run_script("Print(Z)")
    with pytest.raises(ScriptError, match="unknown operation"):
        run_script("Print(Frobnicate(A))")
    with pytest.raises(ScriptError):
        run_script("A := Fset(0.5/a) $")


def test_deterministic():
    assert run_script(fstds.DEMO) == run_script(fstds.DEMO)
