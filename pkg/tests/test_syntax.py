import pytest
from hypothesis import given, strategies as st

from minlog.syntax import (BOT, And, Atom, Const, Exists, Forall, Implies, Or, ParseError, Var,
                           alpha_equal, free_vars, neg, parse_formula, rename_bound, size,
                           substitute, to_text)

from conftest import VARS, formulas

A, B, C = Atom("A"), Atom("B"), Atom("C")


def P(t):
    return Atom("P", Var(t) if isinstance(t, str) else Const(t))


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@given(formulas())
def test_unicode_printing_is_total(f):
    text = to_text(f, unicode=True)
    assert text and "->" not in text


@pytest.mark.parametrize("text, expected", [
    ("A -> B -> C", Implies(A, Implies(B, C))),
    ("A | B & C", Or(A, And(B, C))),
    ("A & B | C", Or(And(A, B), C)),
    ("~A & B", And(neg(A), B)),
    ("~~A", neg(neg(A))),
    ("A & B -> C", Implies(And(A, B), C)),
    ("forall x. P(x) -> A", Forall("x", Implies(P("x"), A))),
    ("(forall x. P(x)) -> A", Implies(Forall("x", P("x")), A)),
    ("A & forall x. P(x) | B", And(A, Forall("x", Or(P("x"), B)))),
    ("false -> P(0)", Implies(BOT, P(0))),
    ("exists y. ~P(y)", Exists("y", neg(P("y")))),
])
def test_precedence(text, expected):
    assert parse_formula(text) == expected


def test_negation_is_sugar():
    assert parse_formula("~A") == Implies(A, BOT)
    assert to_text(Implies(A, BOT)) == "~A"


@pytest.mark.parametrize("text", [
    "", "A ->", "P(", "P(x", "forall . A", "forall false. A", "A B", "(A", "A)", "P(false)",
    "P(x) & P", "A & A(x)",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_formula("A & & B")
    assert "4" in str(info.value) or "5" in str(info.value)


def test_shared_arity_registry():
    reg = {}
    parse_formula("P(x)", reg)
    with pytest.raises(ParseError):
        parse_formula("P -> A", reg)


def test_substitution_avoids_capture():
    f = parse_formula("forall y. P(x) & Q(y)")
    g = substitute(f, "x", Var("y"))
    assert "y" in free_vars(g)
    assert alpha_equal(g, parse_formula("forall z. P(y) & Q(z)"))


def test_substitution_respects_binding():
    f = parse_formula("P(x) & forall x. Q(x)")
    assert substitute(f, "x", Const(0)) == parse_formula("P(0) & forall x. Q(x)")


@given(formulas(), st.sampled_from(VARS), st.sampled_from(VARS + ("w",)))
def test_substitution_free_variables(f, v, u):
    g = substitute(f, v, Var(u))
    expected = free_vars(f) - {v}
    if v in free_vars(f):
        expected |= {u}
    assert free_vars(g) == expected


@given(formulas(), st.sampled_from(VARS))
def test_substitution_by_self_is_identity(f, v):
    assert alpha_equal(substitute(f, v, Var(v)), f)


@given(formulas())
def test_renaming_bound_variables_keeps_alpha_class(f):
    g = rename_bound(f, set(VARS))
    assert alpha_equal(f, g)
    assert free_vars(f) == free_vars(g)
    assert size(f) == size(g)


def test_alpha_equality():
    assert alpha_equal(parse_formula("forall x. P(x)"), parse_formula("forall y. P(y)"))
    assert not alpha_equal(parse_formula("forall x. P(x)"), parse_formula("forall y. P(x)"))
    assert not alpha_equal(parse_formula("exists x. P(x)"), parse_formula("forall x. P(x)"))
