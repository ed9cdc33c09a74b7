import pytest
from hypothesis import given, strategies as st

from minlog.schemes import (SCHEMES, TT_RULES, SchemeError, get_scheme, instantiate,
                            is_instance, match_scheme)
from minlog.syntax import Atom, alpha_equal, free_vars, parse_formula, to_text

from conftest import formulas

ARITY0 = [s for s in SCHEMES.values() if all(a == 0 for _, a in s.placeholders)]


@pytest.mark.parametrize("sid", sorted(SCHEMES))
def test_generic_instance_is_closed_and_matches(sid):
    s = get_scheme(sid)
    g = s.generic_instance()
    assert not free_vars(g)
    args = match_scheme(s, g)
    assert args is not None
    assert alpha_equal(instantiate(s, args), g)


def test_lem_instance_from_text():
    f = instantiate(get_scheme("LEM"), {"A": parse_formula("P(x)")})
    assert to_text(f) == "P(x) | ~P(x)"


def test_instantiation_renames_template_binders():
    # the argument mentions y free; DP binds y, so the binder must move
    dp = get_scheme("DP")
    f = instantiate(dp, {"P": ("x", parse_formula("P(x) & Q(y)"))})
    assert "y" in free_vars(f)
    assert is_instance("DP", f)


def test_unknown_scheme():
    with pytest.raises(SchemeError):
        get_scheme("NOPE")


def test_missing_argument():
    with pytest.raises(SchemeError):
        instantiate(get_scheme("DGP"), {"A": Atom("A")})


def test_non_instances():
    assert not is_instance("LEM", parse_formula("A | ~B"))
    assert not is_instance("DNE", parse_formula("~A -> A"))
    assert not is_instance("HE", parse_formula("exists y. (exists x. P(x)) -> P(x)"))


@given(st.sampled_from(ARITY0), st.lists(formulas(6), min_size=2, max_size=2))
def test_propositional_instantiate_match_round_trip(s, fs):
    args = {name: f for (name, _), f in zip(s.placeholders, fs)}
    inst = instantiate(s, args)
    found = match_scheme(s, inst)
    assert found is not None
    assert alpha_equal(instantiate(s, found), inst)


@given(st.sampled_from(["DP", "HE", "GMP", "WGMP", "GLPO", "GLPOA", "DNSU", "DNSE"]),
       formulas(6))
def test_predicate_instantiate_match_round_trip(sid, body):
    s = get_scheme(sid)
    inst = instantiate(s, {"P": ("x", body)})
    found = match_scheme(s, inst)
    assert found is not None
    assert alpha_equal(instantiate(s, found), inst)


def test_tt_rules():
    assert to_text(TT_RULES["D0"]) == "D(0)"
    assert to_text(TT_RULES["notD1"]) == "~D(1)"
    assert TT_RULES["Dx"] == parse_formula("forall x. D(x) | ~D(x)")
