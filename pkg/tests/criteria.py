"""The eight acceptance checks; each returns (ok, one-line detail)."""

import subprocess
import sys
from dataclasses import replace

from minlog.chains import (certify_paper_facts, check_identities, forced_everywhere,
                           forces_at, get_family, predicate_closure, scheme_instance)
from minlog.characterization import characterization_property_tests
from minlog.hierarchy import export_dot, verify_hierarchy
from minlog.kernel import corpus_verify, read_claim, verify_claim
from minlog.kripke import load_catalog, read_model, run_catalog, scheme_holds_full
from minlog.syntax import Var, substitute

from oracles import degenerate_run, grid_run

CLOSURE = ["P(x)", "Q(x)", "P(0)", "Q(0)", "false"]


def _rename(tree, old, new):
    return replace(tree, conclusion=substitute(tree.conclusion, old, Var(new)),
                   premises=tuple(_rename(p, old, new) for p in tree.premises))


def mutations(proofs):
    """The three designated mutations; returns the violations each one draws."""
    out = {}
    claim = read_claim(proofs / "dp_gmp.prf")
    exe = claim.proof.premises[0]
    cut = replace(exe, premises=exe.premises[1:])
    out["deleted premise"] = verify_claim(replace(claim, proof=replace(claim.proof, premises=(cut,))))
    swapped = replace(exe, premises=(replace(exe.premises[0], rule="HE"),) + exe.premises[1:])
    out["swapped scheme leaf"] = verify_claim(
        replace(claim, proof=replace(claim.proof, premises=(swapped,))))
    claim = read_claim(proofs / "dp_dpalt.prf")
    exi = claim.proof.premises[1]
    alli = exi.premises[0]
    bad = replace(alli, var="y", premises=(_rename(alli.premises[0], "x", "y"),))
    out["eigenvariable into open assumption"] = verify_claim(
        replace(claim, proof=replace(claim.proof, premises=(claim.proof.premises[0],
                                                            replace(exi, premises=(bad,))))))
    return out


def proof_corpus(data):
    rep = corpus_verify(data / "proofs")
    muts = mutations(data / "proofs")
    # rejected, and blamed on a node below the root
    localized = all(not v.ok and any(x.path != "root" for x in v.violations) for v in muts.values())
    ok = rep.ok and rep.passed == len(rep.results) and localized
    return ok, f"{rep.passed}/{len(rep.results)} scripts check; " \
               f"{sum(not v.ok for v in muts.values())}/3 mutations rejected with a node path"


def catalog(data):
    results = run_catalog(data / "catalog.txt")
    bad = [f"{r.entry.model}: {m}" for r in results for m in r.mismatches]
    bad += [r.entry.model + ": derived facts" for r in results if r.derived and not r.derived.consistent]
    ok = len(results) == 9 and not bad
    return ok, f"{sum(r.ok for r in results)}/{len(results)} models reproduced" + \
        (f"; {'; '.join(bad)}" if bad else "")


def separations(data):
    reports = {f: certify_paper_facts(f, strict=False)
               for f in ("ascending", "descending", "ascending-all-bot", "descending-all-bot")}
    asc, desc = get_family("ascending"), get_family("descending")
    facts = [
        not forces_at(asc, "A_0", scheme_instance("DP", P="P(x)")),
        not forces_at(asc, "A_0", scheme_instance("DNSU", P="P(x)")),
        not forces_at(desc, "A_-inf", scheme_instance("HE", P="P(x)")),
        forced_everywhere(desc, scheme_instance("DP", P="P(x)")),
    ]
    ok = all(r.ok for r in reports.values()) and all(facts)
    n = sum(len(r.claims) for r in reports.values())
    return ok, f"{sum(sum(c.ok for c in r.claims) for r in reports.values())}/{n} family facts; " \
               f"{sum(facts)}/4 headline separations"


def nonfull():
    parts, detail = [], []
    for fid in ("nonfull", "nonfull-tt"):
        fam = get_family(fid)
        classes = predicate_closure(fam)
        parts.append(sorted(c.text() for c in classes) == sorted(CLOSURE))
        ids = check_identities(fam)
        held = sum(r.holds for r in ids)
        parts.append(held == len(ids) == 32)
        cd = scheme_instance("CD", P="P(x)", Q="exists x. Q(x)")
        parts.append(not forces_at(fam, "A", cd))
        parts.append(all(forced_everywhere(fam, scheme_instance("HE", P=c.formula)) for c in classes))
        root = sorted(fam.prefix.domain["A"])
        detail.append(f"{fid}: {len(classes)} classes, {held}/{len(ids)} identities, root domain {root}")
    return all(parts), "; ".join(detail)


def characterization():
    rows = characterization_property_tests(seed=0, per_row=200, max_worlds=5, max_terms=3)
    return all(r.ok for r in rows), ", ".join(f"{r.models} models/{len(r.counterexamples)} cx"
                                              for r in rows)


def coherence(data):
    """Every checked reduction is sound on every catalog model satisfying its premises."""
    claims = [read_claim(p) for p in sorted((data / "proofs").glob("*.prf"))]
    claims = [c for c in claims if verify_claim(c).ok]
    entries = load_catalog((data / "catalog.txt").read_text())
    models = [read_model(data / e.path) for e in entries]
    memo = {}

    def holds(m, sid):
        if (m.name, sid) not in memo:
            memo[m.name, sid] = scheme_holds_full(m, sid).holds
        return memo[m.name, sid]

    violations, applied = [], 0
    for c in claims:
        needs = sorted(c.premises) + (["TT"] if c.tt else [])
        for m in models:
            if all(holds(m, s) for s in needs):
                applied += 1
                if not holds(m, c.target):
                    violations.append(f"{c.id} in {m.name}")
    return not violations, f"{len(claims)} reductions x {len(models)} models, {applied} applicable, " \
                           f"{len(violations)} violations" + (f": {', '.join(violations)}" if violations else "")


def zone_oracle(data):
    grid = grid_run(seed=1, n=1000)
    nform, degenerate = degenerate_run(data, seed=0, n=30)
    return not grid and not degenerate, \
        f"1000 grid inputs, {len(grid)} mismatches; {nform} corpus formulas on 30 finite models, " \
        f"{len(degenerate)} mismatches"


def hierarchy():
    rep = verify_hierarchy()
    opens = [l.text for l in rep.lines if l.status == "OPEN"]
    code = "import sys; from minlog.hierarchy import export_dot; sys.stdout.write(export_dot())"
    runs = {subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                           check=True).stdout for _ in range(2)} | {export_dot()}
    ok = rep.ok and sorted(opens) == sorted(["GMP + EFQ -> CD", "GMP + EFQ + TT -> CD"]) and len(runs) == 1
    return ok, rep.text().rstrip().splitlines()[-1] + f"; DOT {'stable' if len(runs) == 1 else 'UNSTABLE'}"
