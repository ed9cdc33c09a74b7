import random

import pytest
from hypothesis import given, strategies as st

from minlog.characterization import (branch_base, characterization_property_tests,
                                     random_model, report_text)
from minlog.kripke import (CapExceeded, FiniteKripkeModel, ModelError, derived_checks,
                           dump_model, forces, forcing_mask, load_model, load_valuation,
                           read_model, recheck_witness, run_catalog, catalog_text,
                           scheme_holds_full, tt_holds)
from minlog.syntax import (And, Atom, Bottom, Const, Forall, Implies, Or, free_vars,
                           neg)

from conftest import formulas


@pytest.fixture(scope="module")
def models(data_dir):
    return {p.stem: read_model(p) for p in (data_dir / "models").glob("*.km")}


# ------------------------------------------------------------ file format

def test_two_worlds_parses(models):
    m = models["two_worlds"]
    assert m.worlds == ("A", "B")
    assert m.leq("A", "B") and not m.leq("B", "A")
    assert len(m.domain["A"]) == 1 and len(m.domain["B"]) == 2


def test_two_worlds_drinker_instance_not_forced(models):
    m = models["two_worlds"]
    assert not forces(m, "A", "P(s) -> forall x. P(x)")
    assert forces(m, "B", "exists x. Q(x)")
    assert not forces(m, "A", "exists y. (P(y) -> forall x. P(x))")


def test_dump_round_trip(models):
    for m in models.values():
        again = load_model(dump_model(m), m.name)
        assert again.worlds == m.worlds and again.atoms == m.atoms and again.bot == m.bot
        assert [again.up[k] for k in range(len(m.worlds))] == m.up


def test_non_monotone_atom_names_the_pair():
    with pytest.raises(ModelError) as info:
        load_model("[worlds] A B\n[order] A<B\n[domain] A: s ; B: s\n[atoms] A: P(s)\n")
    assert "forced at A but not at B" in str(info.value)


def test_shrinking_domain_is_rejected():
    with pytest.raises(ModelError) as info:
        load_model("[worlds] A B\n[order] A<B\n[domain] A: s t ; B: s\n")
    assert "domain not monotone from A to B" in str(info.value)


def test_bot_must_be_monotone():
    with pytest.raises(ModelError) as info:
        load_model("[worlds] A B\n[order] A<B\n[domain] A: s ; B: s\n[bot] A\n")
    assert "false forced at A" in str(info.value)


@pytest.mark.parametrize("text", [
    "[order] A<B\n",
    "[worlds] A A\n[domain] A: s\n",
    "[worlds] A\n[domain] A: s\n[atoms] A: P(\n",
    "[worlds] A\n[order] A<\n[domain] A: s\n",
    "[worlds] A\n[domain] A: s\n[atoms] Z: P(s)\n",
    "[worlds] A\n",
])
def test_malformed_models(text):
    with pytest.raises(ModelError):
        load_model(text)


def test_constant_outside_domain_is_an_error(models):
    with pytest.raises(ValueError):
        forces(models["two_worlds"], "A", "Q(t)")


# ------------------------------------------------------- scheme verdicts

def test_diamond(models):
    m = models["diamond"]
    assert scheme_holds_full(m, "WLEM").holds
    v = scheme_holds_full(m, "DGP")
    assert not v.holds and v.witness is not None
    assert recheck_witness(m, "DGP", v.witness)


def test_diamond_witness_file_as_valuation(models):
    m = models["diamond"]
    w = scheme_holds_full(m, "DGP").witness
    overlay = load_valuation(w.as_valuation_file(m), m)
    assert not forces(overlay, w.world, "(A -> B) | (B -> A)")
    assert forces(overlay, "A", "~A | ~~A")
    assert forces(overlay, "A", "~B | ~~B")


def test_witness_is_deterministic(models):
    m = models["diamond"]
    assert scheme_holds_full(m, "DGP").witness == scheme_holds_full(m, "DGP").witness


def test_every_failure_witness_rechecks(models):
    for m in models.values():
        for sid in ("DP", "HE", "DGP", "WLEM", "LEM", "GMP", "CD", "DNSE", "DNSU", "EFQ"):
            v = scheme_holds_full(m, sid)
            if not v.holds:
                assert recheck_witness(m, sid, v.witness), (m.name, sid)


def test_catalog_reproduces_every_model(data_dir):
    results = run_catalog(data_dir / "catalog.txt")
    assert len(results) == 9
    text = catalog_text(results)
    assert all(r.ok for r in results), text
    assert text.rstrip().endswith("9/9 catalog models reproduced")


def test_catalog_mismatch_is_reported(data_dir, tmp_path):
    (tmp_path / "models").mkdir()
    (tmp_path / "models" / "single.km").write_text((data_dir / "models" / "single.km").read_text())
    (tmp_path / "catalog.txt").write_text("single @ models/single.km holds: TT fails: LEM\n")
    [r] = run_catalog(tmp_path / "catalog.txt")
    assert not r.ok
    assert any("TT listed as holding" in x for x in r.mismatches)
    assert any("LEM listed as failing" in x for x in r.mismatches)


def test_tt_needs_two_distinguishable_terms(models):
    assert not tt_holds(models["single"]).holds
    assert tt_holds(models["diamond"]).holds


def test_valuation_cap(models, monkeypatch):
    with pytest.raises(CapExceeded):
        scheme_holds_full(models["diamond"], "DP", cap=3)


def test_derived_checks_are_consistent(models):
    for m in models.values():
        assert derived_checks(m).consistent, m.name


# -------------------------------------------------------- random models

def _decorate(rng, m):
    atoms = {w: set() for w in m.worlds}
    for pred in ("P", "Q"):
        for d in m.elements:
            if rng.random() < 0.6:
                seed = rng.choice([w for w in m.worlds if d in m.domain[w]])
                for w in m.worlds:
                    if m.leq(seed, w):
                        atoms[w].add((pred, d))
    for pred in ("A", "B"):
        if rng.random() < 0.6:
            seed = rng.choice(m.worlds)
            for w in m.worlds:
                if m.leq(seed, w):
                    atoms[w].add((pred, None))
    return FiniteKripkeModel(m.worlds, m.order, m.domain,
                             {w: frozenset(a) for w, a in atoms.items()}, m.bot)


@st.composite
def kripke_models(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 9)))
    n = draw(st.integers(1, 4))
    terms = draw(st.integers(1, 3))
    return _decorate(rng, random_model(rng, n, "random", terms))


def _close(f):
    for v in sorted(free_vars(f)):
        f = Forall(v, f)
    return f


def naive_forces(m, w, f, env):
    """Textbook forcing clauses, one world at a time."""
    above = [v for v in m.worlds if m.leq(w, v)]
    if isinstance(f, Bottom):
        return w in m.bot
    if isinstance(f, Atom):
        if f.arg is None:
            return (f.pred, None) in m.atoms[w]
        d = f.arg.index if isinstance(f.arg, Const) else env[f.arg.name]
        return d in m.domain[w] and (f.pred, d) in m.atoms[w]
    if isinstance(f, Implies):
        return all(not naive_forces(m, v, f.left, env) or naive_forces(m, v, f.right, env)
                   for v in above)
    if isinstance(f, And):
        return naive_forces(m, w, f.left, env) and naive_forces(m, w, f.right, env)
    if isinstance(f, Or):
        return naive_forces(m, w, f.left, env) or naive_forces(m, w, f.right, env)
    if isinstance(f, Forall):
        return all(naive_forces(m, v, f.body, {**env, f.var: d})
                   for v in above for d in m.domain[v])
    return any(naive_forces(m, w, f.body, {**env, f.var: d}) for d in m.domain[w])


@given(kripke_models(), formulas(8))
def test_bitmask_evaluator_matches_textbook_clauses(m, f):
    f = _close(f)
    mask = forcing_mask(m, f)
    for k, w in enumerate(m.worlds):
        assert bool(mask >> k & 1) == naive_forces(m, w, f, {})


@given(kripke_models(), formulas(8))
def test_forcing_is_monotone(m, f):
    mask = forcing_mask(m, _close(f))
    for k in range(len(m.worlds)):
        if mask >> k & 1:
            assert m.up[k] & ~mask == 0


@given(kripke_models(), formulas(6))
def test_double_negation_clause(m, f):
    f = _close(f)
    if m.bot:
        return  # the clause below is for models forcing false nowhere
    plain = forcing_mask(m, f)
    dneg = forcing_mask(m, neg(neg(f)))
    for k in range(len(m.worlds)):
        # every world above has a further world forcing f
        expected = all(m.up[j] & plain for j in range(len(m.worlds)) if m.up[k] >> j & 1)
        assert bool(dneg >> k & 1) == expected


@given(kripke_models())
def test_false_implies_anything_iff_false_forced_nowhere(m):
    assert scheme_holds_full(m, "EFQ").holds == (not m.bot)


# ----------------------------------------------------- characterization

def test_characterization_small_run():
    rows = characterization_property_tests(seed=7, per_row=15)
    assert all(r.ok for r in rows), report_text(rows)


def test_branch_base_detects_branching(models):
    assert branch_base(models["branch"]) == "A"
    assert branch_base(models["two_worlds"]) is None
