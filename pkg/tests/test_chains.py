import random

import pytest
from hypothesis import given, settings, strategies as st

from minlog.chains import (NONFULL_IDENTITIES, ClosureCapExceeded, FamilyError,
                           ForceError, certify_paper_facts, check_identities, family_ids,
                           force_set, forced_everywhere, forces_at, from_finite, get_family,
                           load_family, parse_constraint, predicate_closure,
                           random_expressible_valuations, scheme_instance)
from minlog.kripke import forcing_mask, load_model
from minlog.syntax import Const, free_vars, parse_formula, substitute
from minlog.zones import CHAIN, LIMIT, Zone, ZoneSet

from oracles import agree, corpus_formulas_of, decorated_model

FAMILIES = ["ascending", "ascending-all-bot", "descending", "descending-all-bot",
            "nonfull", "nonfull-tt"]

# the four printed identities the semantics does not bear out, with the class
# the left side really falls in (frozen from the closure computation and
# re-derived below on a truncated finite model)
KNOWN_BAD = [
    ("P(x) -> Q(x)", "Q(x)", "Q(0)"),
    ("Q(0) -> Q(x)", "Q(x)", "P(x)"),
    ("Q(0) -> P(x)", "Q(x)", "P(x)"),
    ("Q(0) -> Q(x)", "Q(x)", "P(x)"),
]


@pytest.fixture(scope="module")
def fams():
    return {f: get_family(f) for f in FAMILIES}


def test_shipped_families():
    assert family_ids() == sorted(FAMILIES)


@pytest.mark.parametrize("fid", FAMILIES)
def test_certification(fid):
    report = certify_paper_facts(fid)
    assert report.ok, report.text()
    assert report.text().rstrip().endswith("claims certified")


def test_certification_failure_is_an_error(fams):
    bad = fams["ascending"].with_rule("P", ZoneSet([Zone.make(CHAIN)]))
    with pytest.raises(AssertionError):
        certify_paper_facts("ascending", bad)


# ------------------------------------------------------------ force_set

def test_double_negated_atom_everywhere(fams):
    assert forced_everywhere(fams["ascending"], "~~P(x)")
    assert force_set(fams["ascending"], "~P(x)").is_empty()


def test_drinker_instance_empty_on_ascending(fams):
    dp = scheme_instance("DP", P="P(x)")
    assert force_set(fams["ascending"], dp).is_empty()
    for i in range(5):
        assert not forces_at(fams["ascending"], f"A_{i}", dp)


def test_epsilon_instance_fails_only_at_limit(fams):
    he = scheme_instance("HE", P="P(x)")
    fam = fams["descending"]
    assert not forces_at(fam, "A_-inf", he)
    assert all(forces_at(fam, f"A_-{i}", he) for i in range(6))


def test_descending_drinker_witness(fams):
    fam = fams["descending"]
    for t in range(4):
        # depth t + 1 misses P(t), so only the limit and deeper worlds miss the term
        assert forced_everywhere(fam, f"P({t}) -> forall x. P(x)") == (t == 0)
    assert forced_everywhere(fam, scheme_instance("DP", P="P(x)"))


def test_universal_atom_nowhere_on_ascending(fams):
    assert force_set(fams["ascending"], "forall x. P(x)").is_empty()
    assert forces_at(fams["ascending"], "A_0", "~(forall x. P(x))")


def test_open_formula_point_lookup(fams):
    fam = fams["ascending"]
    assert forces_at(fam, "A_3", "P(x)", t=3)
    assert not forces_at(fam, "A_3", "P(x)", t=4)


def test_two_free_variables_rejected(fams):
    with pytest.raises(ForceError):
        force_set(fams["ascending"], "P(x) -> P(y)")


def test_two_term_variables_need_a_finite_family(fams):
    f = "exists y. forall x. (P(y) -> P(x))"
    with pytest.raises(ForceError):
        force_set(fams["ascending"], f)
    m = load_model("[worlds] A B\n[order] A<B\n[domain] A: 0 ; B: 0 1\n[atoms] B: P(0)\n")
    assert not forces_at(from_finite(m), "A", f)
    assert forces_at(from_finite(m), "B", f)


def test_unknown_predicate_and_world(fams):
    with pytest.raises(ForceError):
        force_set(fams["ascending"], "R(x)")
    with pytest.raises(ForceError):
        forces_at(fams["ascending"], "A_-1", "P(0)")
    with pytest.raises(ForceError):
        forces_at(fams["ascending"], "A_-inf", "P(0)")


def test_predicate_used_as_proposition(fams):
    with pytest.raises(ForceError):
        force_set(fams["ascending"], "P")


@pytest.mark.parametrize("fid", FAMILIES)
@pytest.mark.parametrize("text", ["P(x) -> forall x. P(x)", "exists y. (P(y) -> forall x. P(x))",
                                  "~~(exists x. P(x)) -> exists x. ~~P(x)", "P(x) | ~P(x)",
                                  "(forall x. ~~P(x)) -> ~~(forall x. P(x))"])
def test_forcing_sets_are_upward_closed(fams, fid, text):
    fam = fams[fid]
    assert fam.upward_closed(force_set(fam, text, check=False))


# ------------------------------------------------------------ parsing

@pytest.mark.parametrize("text, i, t, expected", [
    ("t <= i", 3, 3, True), ("t <= i", 3, 4, False), ("t - i >= 2", 1, 3, True),
    ("i = 2 | t > 5", 2, 0, True), ("i = 2 | t > 5", 1, 6, True), ("i = 2 | t > 5", 1, 5, False),
    ("(t <= i + 1) & t >= 1", 0, 1, True), ("all", 7, 9, True), ("none", 0, 0, False),
    ("t >= 2", 0, 2, True),
])
def test_constraint_parser(text, i, t, expected):
    assert parse_constraint(text).contains(CHAIN, i, t) == expected


@pytest.mark.parametrize("text", ["t * i <= 3", "t <=", "t <= i & (", "x <= 3", "2t <= i"])
def test_constraint_parser_errors(text):
    with pytest.raises(FamilyError):
        parse_constraint(text)


def test_limit_rules_only_mention_t():
    with pytest.raises(FamilyError):
        parse_constraint("i <= 3", LIMIT, ("t",))


def test_non_monotone_rule_rejected():
    with pytest.raises(FamilyError) as info:
        load_family("[family] shape: ascending\n[chain]\nP: t >= i\n")
    assert "not monotone" in str(info.value)


def test_unknown_shape_rejected():
    with pytest.raises(FamilyError):
        load_family("[family] shape: spiral\n[chain]\nP: all\n")


def test_limit_needs_descending_shape():
    with pytest.raises(FamilyError):
        load_family("[family] shape: ascending\n[chain]\nP: all\n[limit]\nP: all\n")


# ---------------------------------------------------------- closure

@pytest.mark.parametrize("fid", ["nonfull", "nonfull-tt"])
def test_nonfull_closure(fams, fid):
    classes = predicate_closure(fams[fid])
    assert sorted(c.text() for c in classes) == sorted(["P(x)", "Q(x)", "P(0)", "Q(0)", "false"])
    assert [c.predicate for c in classes] == [True, True, False, False, False]
    fam = fams[fid]
    for left, right in [("forall x. P(x)", "false"), ("exists x. P(x)", "P(0)"),
                        ("exists x. Q(x)", "Q(0)")]:
        assert force_set(fam, left) == force_set(fam, right)


@pytest.mark.parametrize("fid", ["ascending", "ascending-all-bot", "nonfull", "nonfull-tt"])
def test_closure_is_a_fixpoint_with_distinct_classes(fams, fid):
    classes = predicate_closure(fams[fid])
    again = predicate_closure(fams[fid], start=classes)
    assert sorted(c.text() for c in again) == sorted(c.text() for c in classes)
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            assert not classes[a].zones == classes[b].zones


def test_descending_closure_hits_the_cap(fams):
    with pytest.raises(ClosureCapExceeded) as info:
        predicate_closure(fams["descending"], cap=16)
    assert info.value.frontier


def test_ascending_closure_supports_epsilon(fams):
    fam = fams["ascending"]
    for c in predicate_closure(fam):
        g = c.formula
        if free_vars(g) and "x" not in free_vars(g):
            g = substitute(g, next(iter(free_vars(g))), parse_formula("P(x)").arg)
        assert forced_everywhere(fam, scheme_instance("HE", P=g))


@pytest.mark.parametrize("fid", ["nonfull", "nonfull-tt"])
def test_identity_table(fams, fid):
    results = check_identities(fams[fid])
    assert len(results) == len(NONFULL_IDENTITIES) == 32
    assert sum(r.holds for r in results) == 28
    assert [(r.left, r.right, r.actual) for r in results if not r.holds] == KNOWN_BAD


def _truncation(fid, depth=8):
    """Root A below chain worlds 0..depth, finite domains; exact for small terms."""
    shift = 1 if fid == "nonfull-tt" else 0
    root = [0, 1] if shift else [0]
    n = depth + 3
    ws = ["A"] + [f"C{i}" for i in range(depth + 1)]
    order = " ".join(["A<C0"] + [f"C{i}<C{i + 1}" for i in range(depth)])
    dom = [f"A: {' '.join(map(str, root))}"] + [f"C{i}: {' '.join(map(str, range(n)))}"
                                               for i in range(depth + 1)]
    atoms = ["A: " + " ".join(f"P({c})" for c in root)]
    for i in range(depth + 1):
        atoms.append(f"C{i}: " + " ".join(f"{p}({t})" for p in "PQ" for t in range(i + shift + 1)))
    return load_model(f"[worlds] {' '.join(ws)}\n[order] {order}\n[domain] {' ; '.join(dom)}\n"
                      f"[atoms] {' ; '.join(atoms)}\n")


@pytest.mark.parametrize("fid", ["nonfull", "nonfull-tt"])
def test_quantifier_free_identities_on_a_truncation(fid):
    m = _truncation(fid)

    def mask(text, t):
        # A and the first chain worlds, where term t exists
        low = m.dom_mask[t] & 31
        return forcing_mask(m, substitute(parse_formula(text), "x", Const(t))) & low

    for left, right, actual in KNOWN_BAD:
        assert all(mask(left, t) == mask(actual, t) for t in (0, 1, 2))
        # the printed right side differs from the left somewhere
        assert any(mask(left, t) != mask(right, t) for t in (0, 1, 2)), (left, right)
    for left, right in NONFULL_IDENTITIES:
        if any(q in left for q in ("forall", "exists")):
            continue
        holds = all(mask(left, t) == mask(right, t) for t in (0, 1, 2))
        assert holds == ((left, right) not in [(a, b) for a, b, _ in KNOWN_BAD]), (left, right)


@pytest.mark.parametrize("fid", ["nonfull", "nonfull-tt"])
def test_constant_domain_fails_at_root(fams, fid):
    cd = scheme_instance("CD", P="P(x)", Q="exists x. Q(x)")
    assert not forces_at(fams[fid], "A", cd)


def test_two_termed_rules_on_the_variant(fams):
    fam = fams["nonfull-tt"]
    for text in ("D(0)", "~D(1)", "forall x. (D(x) | ~D(x))"):
        assert forced_everywhere(fam, text)


# ------------------------------------------------- sampled predicates

@pytest.mark.parametrize("fid", ["ascending", "descending"])
def test_random_expressible_valuations(fams, fid):
    out = random_expressible_valuations(fams[fid], seed=3, n=60)
    assert len(out) == 60 and all(s.holds for s in out)


def test_random_constant_domain_samples(fams):
    out = random_expressible_valuations(fams["ascending"], seed=5, n=40, scheme="CD")
    assert all(s.holds for s in out)


def test_threshold_predicate_supports_epsilon(fams):
    # Q(t) forced from world max(0, t - 3) on
    fam = fams["ascending"].with_rule("Q", parse_constraint("t - i <= 3"))
    assert forced_everywhere(fam, scheme_instance("HE", P="Q(x)"))


def test_empty_predicate_supports_epsilon_vacuously(fams):
    fam = fams["ascending"].with_rule("Q", ZoneSet())
    assert forced_everywhere(fam, "(exists x. Q(x)) -> Q(0)")
    assert forced_everywhere(fam, scheme_instance("HE", P="Q(x)"))


def test_full_predicate_supports_drinker(fams):
    fam = fams["descending"].with_rule("Q", ZoneSet([Zone.make(CHAIN)]),
                                       ZoneSet([Zone.make(LIMIT)]))
    assert forced_everywhere(fam, scheme_instance("DP", P="Q(x)"))


# ------------------------------------------- degenerate families vs finite

@pytest.fixture(scope="module")
def corpus_formulas(data_dir):
    return corpus_formulas_of(data_dir)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 9))
def test_degenerate_family_matches_finite_evaluator(corpus_formulas, seed):
    rng = random.Random(seed)
    m = decorated_model(rng, rng.randint(1, 4), rng.randint(1, 3))
    assert agree(m, corpus_formulas) == []


def test_degenerate_family_on_shipped_models(data_dir, corpus_formulas):
    from minlog.kripke import read_model
    m = read_model(data_dir / "models" / "two_worlds.km")
    fam = from_finite(m)
    assert not fam.has_chain
    assert forces_at(fam, "A", "exists x. P(x)")
    with pytest.raises(FamilyError):
        random_expressible_valuations(fam)
