"""Regenerate src/minlog/data/proofs/*.prf from the transcriptions below.

The .prf files are the checked artifact; this script only saves typing.
Run from the repository root:  python3 tools/build_corpus.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from minlog.kernel import ProofTree, ReductionClaim, dump_script, verify_claim  # noqa: E402
from minlog.syntax import Const, Var, parse_formula  # noqa: E402

OUT = ROOT / "src" / "minlog" / "data" / "proofs"


def _f(text):
    return parse_formula(text)


def _t(term):
    if term is None:
        return None
    return Const(term) if isinstance(term, int) else Var(term)


def hyp(label, f):
    return ProofTree("assume", _f(f), label=label)


def leaf(rule, f):
    return ProofTree(rule, _f(f))


def imp_i(f, p, d=None):
    return ProofTree("impI", _f(f), (p,), discharge=(d,) if d else ())


def imp_e(f, major, minor):
    return ProofTree("impE", _f(f), (major, minor))


def and_i(f, a, b):
    return ProofTree("andI", _f(f), (a, b))


def and_e(f, p):
    return ProofTree("andE", _f(f), (p,))


def or_i(f, p):
    return ProofTree("orI", _f(f), (p,))


def or_e(f, major, left, right, d):
    return ProofTree("orE", _f(f), (major, left, right), discharge=tuple(d))


def all_i(f, p, var=None):
    return ProofTree("allI", _f(f), (p,), var=var)


def all_e(f, p, term=None):
    return ProofTree("allE", _f(f), (p,), term=_t(term))


def ex_i(f, p, term=None):
    return ProofTree("exI", _f(f), (p,), term=_t(term))


def ex_e(f, major, minor, d, var=None):
    return ProofTree("exE", _f(f), (major, minor), discharge=(d,), var=var)


CLAIMS = []


def claim(cid, premises, target, proof, tt=False):
    CLAIMS.append(ReductionClaim(cid, frozenset(premises), tt, target, proof))


LEMF = "A | ~A"
WLEMF = "~A | ~~A"
DGPF = "(A -> B) | (B -> A)"
DPF = "exists y. (P(y) -> forall x. P(x))"
HEF = "exists y. ((exists x. P(x)) -> P(y))"
GMPF = "~(forall x. P(x)) -> exists x. ~P(x)"
WGMPF = "~(forall x. P(x)) -> ~~(exists x. ~P(x))"
GLPOF = "(forall x. ~P(x)) | (exists x. P(x))"
GLPOAF = "(forall x. P(x)) | (exists x. ~P(x))"
DNSUF = "(forall x. ~~P(x)) -> ~~(forall x. P(x))"
DNSEF = "~~(exists x. P(x)) -> exists x. ~~P(x)"
CDF = "(forall x. (P(x) | exists x. A)) -> (forall x. P(x)) | (exists x. A)"
IPF = "((exists x. A) -> exists x. P(x)) -> exists x. ((exists x. A) -> P(x))"
DPALTF = "exists y. forall x. (P(y) -> P(x))"
HEALTF = "exists y. forall x. (P(x) -> P(y))"

# ------------------------------------------------------------ propositional

claim("dne_lem", ["DNE"], "LEM",
      imp_e(LEMF,
            leaf("DNE", "~~(A | ~A) -> A | ~A"),
            imp_i("~~(A | ~A)",
                  imp_e("false",
                        hyp("u", "~(A | ~A)"),
                        or_i(LEMF,
                             imp_i("~A",
                                   imp_e("false",
                                         hyp("u", "~(A | ~A)"),
                                         or_i(LEMF, hyp("v", "A"))),
                                   "v"))),
                  "u")))

claim("dne_efq", ["DNE"], "EFQ",
      imp_i("false -> A",
            imp_e("A", leaf("DNE", "~~A -> A"), imp_i("~~A", hyp("u", "false"))),
            "u"))

claim("lem_efq_dne", ["LEM", "EFQ"], "DNE",
      imp_i("~~A -> A",
            or_e("A", leaf("LEM", LEMF),
                 hyp("u", "A"),
                 imp_e("A", leaf("EFQ", "false -> A"),
                       imp_e("false", hyp("w", "~~A"), hyp("v", "~A"))),
                 ("u", "v")),
            "w"))

claim("lem_wlem", ["LEM"], "WLEM", leaf("LEM", WLEMF))

claim("dgp_wlem", ["DGP"], "WLEM",
      or_e(WLEMF, leaf("DGP", "(A -> ~A) | (~A -> A)"),
           or_i(WLEMF,
                imp_i("~A",
                      imp_e("false",
                            imp_e("~A", hyp("u", "A -> ~A"), hyp("a", "A")),
                            hyp("a", "A")),
                      "a")),
           or_i(WLEMF,
                imp_i("~~A",
                      imp_e("false",
                            hyp("n", "~A"),
                            imp_e("A", hyp("v", "~A -> A"), hyp("n", "~A"))),
                      "n")),
           ("u", "v")))

# ------------------------------------------------------- HE and IP

claim("he_ip", ["HE"], "IP",
      imp_i(IPF,
            ex_e("exists x. ((exists x. A) -> P(x))",
                 leaf("HE", HEF),
                 ex_i("exists x. ((exists x. A) -> P(x))",
                      imp_i("(exists x. A) -> P(y)",
                            imp_e("P(y)",
                                  hyp("u", "(exists x. P(x)) -> P(y)"),
                                  imp_e("exists x. P(x)",
                                        hyp("w", "(exists x. A) -> exists x. P(x)"),
                                        hyp("v", "exists x. A"))),
                            "v")),
                 "u", var="y"),
            "w"))

# the quantified premise is instantiated with the closed formula ex x. P(x)
claim("ip_he", ["IP"], "HE",
      ex_e(HEF,
           imp_e("exists x. ((exists x. exists x. P(x)) -> P(x))",
                 leaf("IP", "((exists x. exists x. P(x)) -> exists x. P(x)) -> "
                            "exists x. ((exists x. exists x. P(x)) -> P(x))"),
                 imp_i("(exists x. exists x. P(x)) -> exists x. P(x)",
                       ex_e("exists x. P(x)",
                            hyp("v", "exists x. exists x. P(x)"),
                            hyp("w", "exists x. P(x)"),
                            "w", var="z"),
                       "v")),
           ex_i(HEF,
                imp_i("(exists x. P(x)) -> P(x)",
                      imp_e("P(x)",
                            hyp("u", "(exists x. exists x. P(x)) -> P(x)"),
                            ex_i("exists x. exists x. P(x)", hyp("a", "exists x. P(x)"))),
                      "a"),
                term="x"),
           "u", var="x"))

# --------------------------------------------------- LEM, GLPO, GLPOA

claim("lem_glpo", ["LEM"], "GLPO",
      or_e(GLPOF, leaf("LEM", "(exists x. P(x)) | ~(exists x. P(x))"),
           or_i(GLPOF, hyp("u", "exists x. P(x)")),
           or_i(GLPOF,
                all_i("forall x. ~P(x)",
                      imp_i("~P(x)",
                            imp_e("false",
                                  hyp("v", "~(exists x. P(x))"),
                                  ex_i("exists x. P(x)", hyp("w", "P(x)"))),
                            "w"))),
           ("u", "v")))

claim("glpo_lem", ["GLPO"], "LEM",
      or_e(LEMF, leaf("GLPO", "(forall x. ~A) | (exists x. A)"),
           or_i(LEMF, all_e("~A", hyp("u", "forall x. ~A"))),
           or_i(LEMF, ex_e("A", hyp("v", "exists x. A"), hyp("w", "A"), "w", var="x")),
           ("u", "v")))

claim("glpoa_lem", ["GLPOA"], "LEM",
      or_e(LEMF, leaf("GLPOA", "(forall x. A) | (exists x. ~A)"),
           or_i(LEMF, all_e("A", hyp("u", "forall x. A"))),
           or_i(LEMF, ex_e("~A", hyp("v", "exists x. ~A"), hyp("w", "~A"), "w", var="x")),
           ("u", "v")))

claim("glpoa_gmp", ["GLPOA"], "GMP",
      imp_i(GMPF,
            or_e("exists x. ~P(x)", leaf("GLPOA", GLPOAF),
                 ex_i("exists x. ~P(x)",
                      imp_i("~P(x)",
                            imp_e("false", hyp("u", "~(forall x. P(x))"),
                                  hyp("v", "forall x. P(x)")))),
                 hyp("w", "exists x. ~P(x)"),
                 ("v", "w")),
            "u"))

claim("glpoa_wgmp", ["GLPOA"], "WGMP",
      or_e(WGMPF, leaf("GLPOA", GLPOAF),
           imp_i(WGMPF,
                 imp_i("~~(exists x. ~P(x))",
                       imp_e("false", hyp("w", "~(forall x. P(x))"),
                             hyp("u", "forall x. P(x)"))),
                 "w"),
           imp_i(WGMPF,
                 imp_i("~~(exists x. ~P(x))",
                       imp_e("false", hyp("z", "~(exists x. ~P(x))"),
                             hyp("v", "exists x. ~P(x)")),
                       "z")),
           ("u", "v")))

claim("dp_lem_glpoa", ["DP", "LEM"], "GLPOA",
      ex_e(GLPOAF, leaf("DP", DPF),
           or_e(GLPOAF, leaf("LEM", "P(y) | ~P(y)"),
                or_i(GLPOAF,
                     imp_e("forall x. P(x)", hyp("u", "P(y) -> forall x. P(x)"),
                           hyp("v", "P(y)"))),
                or_i(GLPOAF, ex_i("exists x. ~P(x)", hyp("w", "~P(y)"))),
                ("v", "w")),
           "u", var="y"))

# ----------------------------------------------------- DNSU, WGMP, GMP

claim("dnsu_wgmp", ["DNSU"], "WGMP",
      imp_i(WGMPF,
            imp_i("~~(exists x. ~P(x))",
                  imp_e("false",
                        imp_e("~~(forall x. P(x))",
                              leaf("DNSU", DNSUF),
                              all_i("forall x. ~~P(x)",
                                    imp_i("~~P(x)",
                                          imp_e("false",
                                                hyp("v", "~(exists x. ~P(x))"),
                                                ex_i("exists x. ~P(x)", hyp("w", "~P(x)"))),
                                          "w"))),
                        hyp("u", "~(forall x. P(x))")),
                  "v"),
            "u"))

claim("wgmp_dnsu", ["WGMP"], "DNSU",
      imp_i(DNSUF,
            imp_i("~~(forall x. P(x))",
                  imp_e("false",
                        imp_e("~~(exists x. ~P(x))", leaf("WGMP", WGMPF),
                              hyp("v", "~(forall x. P(x))")),
                        imp_i("~(exists x. ~P(x))",
                              ex_e("false",
                                   hyp("w", "exists x. ~P(x)"),
                                   imp_e("false",
                                         all_e("~~P(x)", hyp("u", "forall x. ~~P(x)")),
                                         hyp("a", "~P(x)")),
                                   "a", var="x"),
                              "w")),
                  "v"),
            "u"))

claim("gmp_wgmp", ["GMP"], "WGMP",
      imp_i(WGMPF,
            imp_i("~~(exists x. ~P(x))",
                  imp_e("false",
                        hyp("v", "~(exists x. ~P(x))"),
                        imp_e("exists x. ~P(x)", leaf("GMP", GMPF),
                              hyp("u", "~(forall x. P(x))"))),
                  "v"),
            "u"))

# ------------------------------------------------ alternative forms

claim("dp_dpalt", ["DP"], "DPALT",
      ex_e(DPALTF, leaf("DP", DPF),
           ex_i(DPALTF,
                all_i("forall x. (P(y) -> P(x))",
                      imp_i("P(y) -> P(x)",
                            all_e("P(x)",
                                  imp_e("forall x. P(x)",
                                        hyp("u", "P(y) -> forall x. P(x)"),
                                        hyp("v", "P(y)"))),
                            "v")),
                term="y"),
           "u", var="y"))

claim("dpalt_dp", ["DPALT"], "DP",
      ex_e(DPF, leaf("DPALT", DPALTF),
           ex_i(DPF,
                imp_i("P(y) -> forall x. P(x)",
                      all_i("forall x. P(x)",
                            imp_e("P(x)",
                                  all_e("P(y) -> P(x)", hyp("u", "forall x. (P(y) -> P(x))")),
                                  hyp("v", "P(y)"))),
                      "v"),
                term="y"),
           "u", var="y"))

claim("he_healt", ["HE"], "HEALT",
      ex_e(HEALTF, leaf("HE", HEF),
           ex_i(HEALTF,
                all_i("forall x. (P(x) -> P(y))",
                      imp_i("P(x) -> P(y)",
                            imp_e("P(y)",
                                  hyp("u", "(exists x. P(x)) -> P(y)"),
                                  ex_i("exists x. P(x)", hyp("v", "P(x)"))),
                            "v")),
                term="y"),
           "u", var="y"))

claim("healt_he", ["HEALT"], "HE",
      ex_e(HEF, leaf("HEALT", HEALTF),
           ex_i(HEF,
                imp_i("(exists x. P(x)) -> P(y)",
                      ex_e("P(y)",
                           hyp("v", "exists x. P(x)"),
                           imp_e("P(y)",
                                 all_e("P(x) -> P(y)", hyp("u", "forall x. (P(x) -> P(y))")),
                                 hyp("w", "P(x)")),
                           "w", var="x"),
                      "v"),
                term="y"),
           "u", var="y"))

# ------------------------------------------------------- DP and HE

_not_all_to_ex = imp_e(
    "exists x. ~P(x)",
    leaf("DNE", "~~(exists x. ~P(x)) -> exists x. ~P(x)"),
    imp_i("~~(exists x. ~P(x))",
          imp_e("false",
                hyp("r", "~(forall x. P(x))"),
                all_i("forall x. P(x)",
                      imp_e("P(x)",
                            leaf("DNE", "~~P(x) -> P(x)"),
                            imp_i("~~P(x)",
                                  imp_e("false",
                                        hyp("s", "~(exists x. ~P(x))"),
                                        ex_i("exists x. ~P(x)", hyp("t", "~P(x)"))),
                                  "t")))),
          "s"))

claim("dne_lem_efq_dp", ["DNE", "LEM", "EFQ"], "DP",
      or_e(DPF, leaf("LEM", "(forall x. P(x)) | ~(forall x. P(x))"),
           ex_i(DPF, imp_i("P(y) -> forall x. P(x)", hyp("q", "forall x. P(x)")), term="y"),
           ex_e(DPF, _not_all_to_ex,
                ex_i(DPF,
                     imp_i("P(x) -> forall x. P(x)",
                           imp_e("forall x. P(x)",
                                 leaf("EFQ", "false -> forall x. P(x)"),
                                 imp_e("false", hyp("a", "~P(x)"), hyp("b", "P(x)"))),
                           "b"),
                     term="x"),
                "a", var="x"),
           ("q", "r")))

claim("dp_cd", ["DP"], "CD",
      imp_i(CDF,
            ex_e("(forall x. P(x)) | (exists x. A)", leaf("DP", DPF),
                 or_e("(forall x. P(x)) | (exists x. A)",
                      all_e("P(y) | (exists x. A)", hyp("u", "forall x. (P(x) | exists x. A)")),
                      or_i("(forall x. P(x)) | (exists x. A)",
                           imp_e("forall x. P(x)", hyp("v", "P(y) -> forall x. P(x)"),
                                 hyp("w", "P(y)"))),
                      or_i("(forall x. P(x)) | (exists x. A)", hyp("z", "exists x. A")),
                      ("w", "z")),
                 "v", var="y"),
            "u"))

claim("dp_gmp", ["DP"], "GMP",
      imp_i(GMPF,
            ex_e("exists x. ~P(x)", leaf("DP", DPF),
                 ex_i("exists x. ~P(x)",
                      imp_i("~P(y)",
                            imp_e("false",
                                  hyp("u", "~(forall x. P(x))"),
                                  imp_e("forall x. P(x)", hyp("v", "P(y) -> forall x. P(x)"),
                                        hyp("w", "P(y)"))),
                            "w")),
                 "v", var="y"),
            "u"))

claim("he_dnse", ["HE"], "DNSE",
      imp_i(DNSEF,
            ex_e("exists x. ~~P(x)", leaf("HE", HEF),
                 ex_i("exists x. ~~P(x)",
                      imp_i("~~P(y)",
                            imp_e("false",
                                  hyp("u", "~~(exists x. P(x))"),
                                  imp_i("~(exists x. P(x))",
                                        imp_e("false",
                                              hyp("w", "~P(y)"),
                                              imp_e("P(y)",
                                                    hyp("v", "(exists x. P(x)) -> P(y)"),
                                                    hyp("z", "exists x. P(x)"))),
                                        "z")),
                            "w")),
                 "v", var="y"),
            "u"))

_not_ex = imp_i("~(exists x. P(x))",
                ex_e("false", hyp("z", "exists x. P(x)"),
                     imp_e("false", all_e("~P(x)", hyp("v", "forall x. ~P(x)")),
                           hyp("a", "P(x)")),
                     "a", var="x"),
                "z")

claim("glpo_dnse", ["GLPO"], "DNSE",
      imp_i(DNSEF,
            or_e("exists x. ~~P(x)", leaf("GLPO", GLPOF),
                 ex_i("exists x. ~~P(x)",
                      imp_i("~~P(x)",
                            imp_e("false", hyp("u", "~~(exists x. P(x))"), _not_ex))),
                 ex_e("exists x. ~~P(x)", hyp("w", "exists x. P(x)"),
                      ex_i("exists x. ~~P(x)",
                           imp_i("~~P(x)",
                                 imp_e("false", hyp("c", "~P(x)"), hyp("b", "P(x)")),
                                 "c")),
                      "b", var="x"),
                 ("v", "w")),
            "u"))

claim("gmp_dnse", ["GMP"], "DNSE",
      imp_i(DNSEF,
            imp_e("exists x. ~~P(x)",
                  leaf("GMP", "~(forall x. ~P(x)) -> exists x. ~~P(x)"),
                  imp_i("~(forall x. ~P(x))",
                        imp_e("false", hyp("u", "~~(exists x. P(x))"), _not_ex),
                        "v")),
            "u"))

# ------------------------------------------------- two-termed logic

F_AB = "((D({t}) -> A) & (~D({t}) -> B))"
F_NN = "((D({t}) -> ~~A) & (~D({t}) -> ~A))"


def fab(t):
    return F_AB.format(t=t)


def fnn(t):
    return F_NN.format(t=t)


PHI_DP_AB = f"{fab('y')} -> forall x. {fab('x')}"


def _dp_ab_lemma1():
    return or_i(DGPF,
                imp_i("A -> B",
                      imp_e("B",
                            and_e("~D(1) -> B",
                                  all_e(fab(1),
                                        imp_e(f"forall x. {fab('x')}",
                                              hyp("phi", PHI_DP_AB),
                                              and_i(fab("y"),
                                                    imp_i("D(y) -> A", hyp("a", "A")),
                                                    imp_i("~D(y) -> B",
                                                          imp_e("B", leaf("EFQ", "false -> B"),
                                                                imp_e("false", hyp("e", "~D(y)"),
                                                                      hyp("d", "D(y)"))),
                                                          "e"))))),
                            leaf("notD1", "~D(1)")),
                      "a"))


def _dp_ab_lemma2():
    return or_i(DGPF,
                imp_i("B -> A",
                      imp_e("A",
                            and_e("D(0) -> A",
                                  all_e(fab(0),
                                        imp_e(f"forall x. {fab('x')}",
                                              hyp("phi", PHI_DP_AB),
                                              and_i(fab("y"),
                                                    imp_i("D(y) -> A",
                                                          imp_e("A", leaf("EFQ", "false -> A"),
                                                                imp_e("false", hyp("nd", "~D(y)"),
                                                                      hyp("dd", "D(y)"))),
                                                          "dd"),
                                                    imp_i("~D(y) -> B", hyp("b", "B")))))),
                            leaf("D0", "D(0)")),
                      "b"))


def _tt_split(target, lemma1, lemma2, var):
    return or_e(target,
                all_e(f"D({var}) | ~D({var})", leaf("Dx", "forall x. (D(x) | ~D(x))")),
                lemma1, lemma2, ("d", "nd"))


claim("dp_efq_tt_dgp", ["DP", "EFQ"], "DGP",
      ex_e(DGPF, leaf("DP", f"exists y. ({PHI_DP_AB})"),
           _tt_split(DGPF, _dp_ab_lemma1(), _dp_ab_lemma2(), "y"),
           "phi", var="y"),
      tt=True)

PHI_DP_NN = f"{fnn('y')} -> forall x. {fnn('x')}"


def _dp_nn_premise(left, right):
    return imp_e(f"forall x. {fnn('x')}", hyp("phi", PHI_DP_NN), and_i(fnn("y"), left, right))


def _dp_nn_lemma1():
    conj = _dp_nn_premise(
        imp_i("D(y) -> ~~A",
              imp_i("~~A", imp_e("false", hyp("na", "~A"), hyp("a", "A")), "na")),
        imp_i("~D(y) -> ~A",
              imp_i("~A", imp_e("false", hyp("e", "~D(y)"), hyp("d", "D(y)"))),
              "e"))
    return or_i(WLEMF,
                imp_i("~A",
                      imp_e("false",
                            imp_e("~A", and_e("~D(1) -> ~A", all_e(fnn(1), conj)),
                                  leaf("notD1", "~D(1)")),
                            hyp("a", "A")),
                      "a"))


def _dp_nn_lemma2():
    conj = _dp_nn_premise(
        imp_i("D(y) -> ~~A",
              imp_i("~~A", imp_e("false", hyp("nd", "~D(y)"), hyp("dd", "D(y)"))),
              "dd"),
        imp_i("~D(y) -> ~A", hyp("na", "~A")))
    return or_i(WLEMF,
                imp_i("~~A",
                      imp_e("false",
                            imp_e("~~A", and_e("D(0) -> ~~A", all_e(fnn(0), conj)),
                                  leaf("D0", "D(0)")),
                            hyp("na", "~A")),
                      "na"))


claim("dp_tt_wlem", ["DP"], "WLEM",
      ex_e(WLEMF, leaf("DP", f"exists y. ({PHI_DP_NN})"),
           _tt_split(WLEMF, _dp_nn_lemma1(), _dp_nn_lemma2(), "y"),
           "phi", var="y"),
      tt=True)

PHI_HE_AB = f"(exists x. {fab('x')}) -> {fab('y')}"


def _he_ab_lemma1():
    witness = ex_i(f"exists x. {fab('x')}",
                   and_i(fab(1),
                         imp_i("D(1) -> A",
                               imp_e("A", leaf("EFQ", "false -> A"),
                                     imp_e("false", leaf("notD1", "~D(1)"), hyp("d1", "D(1)"))),
                               "d1"),
                         imp_i("~D(1) -> B", hyp("b", "B"))),
                   term=1)
    return or_i(DGPF,
                imp_i("B -> A",
                      imp_e("A",
                            and_e("D(y) -> A", imp_e(fab("y"), hyp("phi", PHI_HE_AB), witness)),
                            hyp("d", "D(y)")),
                      "b"))


def _he_ab_lemma2():
    witness = ex_i(f"exists x. {fab('x')}",
                   and_i(fab(0),
                         imp_i("D(0) -> A", hyp("a", "A")),
                         imp_i("~D(0) -> B",
                               imp_e("B", leaf("EFQ", "false -> B"),
                                     imp_e("false", hyp("n0", "~D(0)"), leaf("D0", "D(0)"))),
                               "n0")),
                   term=0)
    return or_i(DGPF,
                imp_i("A -> B",
                      imp_e("B",
                            and_e("~D(y) -> B", imp_e(fab("y"), hyp("phi", PHI_HE_AB), witness)),
                            hyp("nd", "~D(y)")),
                      "a"))


claim("he_efq_tt_dgp", ["HE", "EFQ"], "DGP",
      ex_e(DGPF, leaf("HE", f"exists y. ({PHI_HE_AB})"),
           _tt_split(DGPF, _he_ab_lemma1(), _he_ab_lemma2(), "y"),
           "phi", var="y"),
      tt=True)

PHI_HE_NN = f"(exists x. {fnn('x')}) -> {fnn('y')}"


def _he_nn_lemma1():
    witness = ex_i(f"exists x. {fnn('x')}",
                   and_i(fnn(1),
                         imp_i("D(1) -> ~~A",
                               imp_i("~~A",
                                     imp_e("false", leaf("notD1", "~D(1)"), hyp("d1", "D(1)"))),
                               "d1"),
                         imp_i("~D(1) -> ~A", hyp("na", "~A"))),
                   term=1)
    return or_i(WLEMF,
                imp_i("~~A",
                      imp_e("false",
                            imp_e("~~A",
                                  and_e("D(y) -> ~~A",
                                        imp_e(fnn("y"), hyp("phi", PHI_HE_NN), witness)),
                                  hyp("d", "D(y)")),
                            hyp("na", "~A")),
                      "na"))


def _he_nn_lemma2():
    witness = ex_i(f"exists x. {fnn('x')}",
                   and_i(fnn(0),
                         imp_i("D(0) -> ~~A",
                               imp_i("~~A", imp_e("false", hyp("na", "~A"), hyp("a", "A")), "na")),
                         imp_i("~D(0) -> ~A",
                               imp_i("~A",
                                     imp_e("false", hyp("n0", "~D(0)"), leaf("D0", "D(0)"))),
                               "n0")),
                   term=0)
    return or_i(WLEMF,
                imp_i("~A",
                      imp_e("false",
                            imp_e("~A",
                                  and_e("~D(y) -> ~A",
                                        imp_e(fnn("y"), hyp("phi", PHI_HE_NN), witness)),
                                  hyp("nd", "~D(y)")),
                            hyp("a", "A")),
                      "a"))


claim("he_tt_wlem", ["HE"], "WLEM",
      ex_e(WLEMF, leaf("HE", f"exists y. ({PHI_HE_NN})"),
           _tt_split(WLEMF, _he_nn_lemma1(), _he_nn_lemma2(), "y"),
           "phi", var="y"),
      tt=True)


def _gmp_lemma1():
    g = f"forall x. {fnn('x')}"
    return imp_i(f"~({g})",
                 imp_e("false",
                       imp_e("~~A", and_e("D(0) -> ~~A", all_e(fnn(0), hyp("g", g))),
                             leaf("D0", "D(0)")),
                       imp_e("~A", and_e("~D(1) -> ~A", all_e(fnn(1), hyp("g", g))),
                             leaf("notD1", "~D(1)"))),
                 "g")


def _gmp_lemma2():
    return or_i(WLEMF,
                imp_i("~A",
                      imp_e("false",
                            hyp("nf", f"~{fnn('x')}"),
                            and_i(fnn("x"),
                                  imp_i("D(x) -> ~~A",
                                        imp_i("~~A", imp_e("false", hyp("na", "~A"), hyp("a", "A")),
                                              "na")),
                                  imp_i("~D(x) -> ~A",
                                        imp_i("~A", imp_e("false", hyp("e", "~D(x)"),
                                                          hyp("d", "D(x)"))),
                                        "e"))),
                      "a"))


def _gmp_lemma3():
    return or_i(WLEMF,
                imp_i("~~A",
                      imp_e("false",
                            hyp("nf", f"~{fnn('x')}"),
                            and_i(fnn("x"),
                                  imp_i("D(x) -> ~~A",
                                        imp_i("~~A", imp_e("false", hyp("nd", "~D(x)"),
                                                           hyp("dd", "D(x)"))),
                                        "dd"),
                                  imp_i("~D(x) -> ~A", hyp("na", "~A")))),
                      "na"))


claim("gmp_tt_wlem", ["GMP"], "WLEM",
      ex_e(WLEMF,
           imp_e(f"exists x. ~{fnn('x')}",
                 leaf("GMP", f"~(forall x. {fnn('x')}) -> exists x. ~{fnn('x')}"),
                 _gmp_lemma1()),
           _tt_split(WLEMF, _gmp_lemma2(), _gmp_lemma3(), "x"),
           "nf", var="x"),
      tt=True)


def _dnse_lemma1():
    return imp_i("~~~A",
                 imp_e("false",
                       imp_i(f"~{fnn(0)}",
                             imp_e("false", hyp("n", f"~(exists x. {fnn('x')})"),
                                   ex_i(f"exists x. {fnn('x')}", hyp("f0", fnn(0)), term=0)),
                             "f0"),
                       and_i(fnn(0),
                             imp_i("D(0) -> ~~A", hyp("nna", "~~A")),
                             imp_i("~D(0) -> ~A",
                                   imp_i("~A", imp_e("false", hyp("n0", "~D(0)"),
                                                     leaf("D0", "D(0)"))),
                                   "n0"))),
                 "nna")


def _dnse_lemma2():
    return imp_i("~~A",
                 imp_e("false",
                       imp_i(f"~{fnn(1)}",
                             imp_e("false", hyp("n", f"~(exists x. {fnn('x')})"),
                                   ex_i(f"exists x. {fnn('x')}", hyp("f1", fnn(1)), term=1)),
                             "f1"),
                       and_i(fnn(1),
                             imp_i("D(1) -> ~~A",
                                   imp_i("~~A", imp_e("false", leaf("notD1", "~D(1)"),
                                                      hyp("d1", "D(1)"))),
                                   "d1"),
                             imp_i("~D(1) -> ~A", hyp("na", "~A")))),
                 "na")


def _dnse_lemma3():
    return or_i(WLEMF,
                imp_i("~~A",
                      imp_e("false",
                            hyp("nnf", f"~~{fnn('x')}"),
                            imp_i(f"~{fnn('x')}",
                                  imp_e("false",
                                        imp_e("~~A", and_e("D(x) -> ~~A", hyp("f", fnn("x"))),
                                              hyp("d", "D(x)")),
                                        hyp("na", "~A")),
                                  "f")),
                      "na"))


def _dnse_lemma4():
    return or_i(WLEMF,
                imp_i("~A",
                      imp_e("false",
                            hyp("nnf", f"~~{fnn('x')}"),
                            imp_i(f"~{fnn('x')}",
                                  imp_e("false",
                                        imp_i("~~A", imp_e("false", hyp("na", "~A"), hyp("a", "A")),
                                              "na"),
                                        imp_e("~A", and_e("~D(x) -> ~A", hyp("f", fnn("x"))),
                                              hyp("nd", "~D(x)"))),
                                  "f")),
                      "a"))


claim("dnse_tt_wlem", ["DNSE"], "WLEM",
      ex_e(WLEMF,
           imp_e(f"exists x. ~~{fnn('x')}",
                 leaf("DNSE", f"~~(exists x. {fnn('x')}) -> exists x. ~~{fnn('x')}"),
                 imp_i(f"~~(exists x. {fnn('x')})",
                       imp_e("false", _dnse_lemma1(), _dnse_lemma2()),
                       "n")),
           _tt_split(WLEMF, _dnse_lemma3(), _dnse_lemma4(), "x"),
           "nnf", var="x"),
      tt=True)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    bad = 0
    for c in CLAIMS:
        v = verify_claim(c)
        if not v.ok:
            bad += 1
            print(f"{c.id}: FAIL")
            for x in v.violations:
                print("   ", x)
        (OUT / f"{c.id}.prf").write_text(dump_script(c), encoding="ascii")
    print(f"{len(CLAIMS) - bad}/{len(CLAIMS)} written and checked")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
