"""Natural-deduction proof checking for minimal logic plus scheme rules.

A proof is an explicit tree: every node states its conclusion, and the
checker only verifies, it never searches.  Axiom schemes and the
two-termed-logic rules enter as zero-premise leaves, never as built-in
inferences.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from . import sexpr
from .schemes import SCHEMES, TT_RULES, get_scheme, match_scheme
from .syntax import (
    And, Const, Exists, Forall, Formula, Implies, Or, ParseError, Term, Var,
    alpha_equal, free_vars, parse_formula, substitute, terms_of, to_text,
)

INTRO_ELIM = {"assume", "impI", "impE", "andI", "andE", "orI", "orE",
              "allI", "allE", "exI", "exE"}
PREMISE_COUNT = {"assume": 0, "impI": 1, "impE": 2, "andI": 2, "andE": 1, "orI": 1,
                 "orE": 3, "allI": 1, "allE": 1, "exI": 1, "exE": 2}


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class ProofTree:
    rule: str
    conclusion: Formula
    premises: Tuple["ProofTree", ...] = ()
    discharge: Tuple[str, ...] = ()
    var: Optional[str] = None
    term: Optional[Term] = None
    label: Optional[str] = None
    side: Optional[str] = None


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str

    def __str__(self):
        return f"at {self.path} ({self.rule}): {self.message}"


@dataclass
class Verdict:
    violations: List[Violation] = field(default_factory=list)
    open_assumptions: List[Tuple[str, Formula]] = field(default_factory=list)
    schemes_used: set = field(default_factory=set)
    tt_used: set = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ReductionClaim:
    id: str
    premises: frozenset
    tt: bool
    target: str
    proof: Optional[ProofTree]
    source: Optional[str] = None

    def describe(self) -> str:
        lhs = " + ".join(sorted(self.premises)) or "(none)"
        if self.tt:
            lhs += " + TT"
        return f"{lhs} => {self.target}"


# ------------------------------------------------------------- checking

def _find_term(body: Formula, var: str, target: Formula) -> Optional[Term]:
    if var not in free_vars(body):
        return Var(var) if alpha_equal(body, target) else None
    seen = []
    for t in [Var(var), *terms_of(target)]:
        if t in seen:
            continue
        seen.append(t)
        if alpha_equal(substitute(body, var, t), target):
            return t
    return None


class _Checker:
    def __init__(self, allowed, tt):
        self.allowed = set(allowed)
        self.tt = tt
        self.verdict = Verdict()

    def fail(self, path, node, msg):
        self.verdict.violations.append(Violation(path, node.rule, msg))

    def discharge(self, path, node, opens, label, formula):
        kept = []
        for lab, f in opens:
            if label is not None and lab == label:
                if not alpha_equal(f, formula):
                    self.fail(path, node, f"assumption [{lab}] {to_text(f)} does not match "
                                          f"discharged formula {to_text(formula)}")
            else:
                kept.append((lab, f))
        return kept

    def eigen_free_in(self, var, opens):
        return [(lab, f) for lab, f in opens if var in free_vars(f)]

    def check(self, node, path="root", active=frozenset()):
        rule = node.rule
        concl = node.conclusion
        for lab in node.discharge:
            if lab in active:
                self.fail(path, node, f"label [{lab}] rebound inside its own scope")
        inner = active | set(node.discharge)
        child_opens = [self.check(p, f"{path}.{k}", inner) for k, p in enumerate(node.premises)]
        prem = [p.conclusion for p in node.premises]

        if rule in SCHEMES:
            if node.premises:
                self.fail(path, node, "scheme rules take no premises")
            if rule not in self.allowed:
                self.fail(path, node, f"scheme rule {rule} is not among the allowed rules")
            if match_scheme(get_scheme(rule), concl) is None:
                self.fail(path, node, f"{to_text(concl)} is not an instance of {rule}")
            self.verdict.schemes_used.add(rule)
            return []
        if rule in TT_RULES:
            if node.premises:
                self.fail(path, node, "two-termed rules take no premises")
            if not self.tt:
                self.fail(path, node, f"two-termed rule {rule} is not allowed")
            if not alpha_equal(concl, TT_RULES[rule]):
                self.fail(path, node, f"{rule} concludes {to_text(TT_RULES[rule])}, "
                                      f"not {to_text(concl)}")
            self.verdict.tt_used.add(rule)
            return []
        if rule not in INTRO_ELIM:
            self.fail(path, node, f"unknown rule {rule!r}")
            return [o for c in child_opens for o in c]
        if len(prem) != PREMISE_COUNT[rule]:
            self.fail(path, node, f"expected {PREMISE_COUNT[rule]} premises, found {len(prem)}")
            return [o for c in child_opens for o in c]
        return getattr(self, "_" + rule)(node, path, prem, child_opens)

    def _assume(self, node, path, prem, opens):
        if not node.label:
            self.fail(path, node, "assumption without a label")
        return [(node.label, node.conclusion)]

    def _impI(self, node, path, prem, opens):
        c = node.conclusion
        if not isinstance(c, Implies):
            self.fail(path, node, "conclusion is not an implication")
            return opens[0]
        if not alpha_equal(prem[0], c.right):
            self.fail(path, node, f"premise {to_text(prem[0])} is not the consequent {to_text(c.right)}")
        if len(node.discharge) > 1:
            self.fail(path, node, "implication introduction discharges at most one label")
        label = node.discharge[0] if node.discharge else None
        return self.discharge(path, node, opens[0], label, c.left)

    def _impE(self, node, path, prem, opens):
        c = node.conclusion
        for major, minor in ((prem[0], prem[1]), (prem[1], prem[0])):
            if (isinstance(major, Implies) and alpha_equal(major.left, minor)
                    and alpha_equal(major.right, c)):
                break
        else:
            self.fail(path, node, f"{to_text(c)} does not follow by modus ponens from "
                                  f"{to_text(prem[0])} and {to_text(prem[1])}")
        return opens[0] + opens[1]

    def _andI(self, node, path, prem, opens):
        c = node.conclusion
        if not (isinstance(c, And) and alpha_equal(c.left, prem[0]) and alpha_equal(c.right, prem[1])):
            self.fail(path, node, "conclusion is not the conjunction of the premises")
        return opens[0] + opens[1]

    def _andE(self, node, path, prem, opens):
        p, c = prem[0], node.conclusion
        if not isinstance(p, And):
            self.fail(path, node, "premise is not a conjunction")
        else:
            sides = {"left": p.left, "right": p.right}
            want = [sides[node.side]] if node.side in sides else list(sides.values())
            if not any(alpha_equal(c, w) for w in want):
                self.fail(path, node, f"{to_text(c)} is not a conjunct of {to_text(p)}")
        return opens[0]

    def _orI(self, node, path, prem, opens):
        c = node.conclusion
        if not isinstance(c, Or):
            self.fail(path, node, "conclusion is not a disjunction")
        else:
            sides = {"left": c.left, "right": c.right}
            want = [sides[node.side]] if node.side in sides else list(sides.values())
            if not any(alpha_equal(prem[0], w) for w in want):
                self.fail(path, node, f"premise {to_text(prem[0])} is not a disjunct")
        return opens[0]

    def _orE(self, node, path, prem, opens):
        major, c = prem[0], node.conclusion
        labels = list(node.discharge) + [None] * (2 - len(node.discharge))
        if len(node.discharge) > 2:
            self.fail(path, node, "disjunction elimination discharges two labels")
        if not isinstance(major, Or):
            self.fail(path, node, "major premise is not a disjunction")
            return opens[0] + opens[1] + opens[2]
        for k in (1, 2):
            if not alpha_equal(prem[k], c):
                self.fail(path, node, f"case {k} concludes {to_text(prem[k])}, not {to_text(c)}")
        left = self.discharge(path, node, opens[1], labels[0], major.left)
        right = self.discharge(path, node, opens[2], labels[1], major.right)
        return opens[0] + left + right

    def _allI(self, node, path, prem, opens):
        c = node.conclusion
        if not isinstance(c, Forall):
            self.fail(path, node, "conclusion is not universal")
            return opens[0]
        eigen = node.var or c.var
        if not alpha_equal(prem[0], substitute(c.body, c.var, Var(eigen))):
            self.fail(path, node, f"premise {to_text(prem[0])} is not the body of "
                                  f"{to_text(c)} at {eigen}")
        if eigen in free_vars(c):
            self.fail(path, node, f"eigenvariable {eigen} is free in the conclusion")
        for lab, f in self.eigen_free_in(eigen, opens[0]):
            self.fail(path, node, f"eigenvariable {eigen} is free in open assumption "
                                  f"[{lab}] {to_text(f)}")
        return opens[0]

    def _allE(self, node, path, prem, opens):
        p, c = prem[0], node.conclusion
        if not isinstance(p, Forall):
            self.fail(path, node, "premise is not universal")
        elif node.term is not None:
            if not alpha_equal(substitute(p.body, p.var, node.term), c):
                self.fail(path, node, f"{to_text(c)} is not {to_text(p)} at {node.term}")
        elif _find_term(p.body, p.var, c) is None:
            self.fail(path, node, f"{to_text(c)} is not an instance of {to_text(p)}")
        return opens[0]

    def _exI(self, node, path, prem, opens):
        p, c = prem[0], node.conclusion
        if not isinstance(c, Exists):
            self.fail(path, node, "conclusion is not existential")
        elif node.term is not None:
            if not alpha_equal(substitute(c.body, c.var, node.term), p):
                self.fail(path, node, f"premise {to_text(p)} is not {to_text(c)} at {node.term}")
        elif _find_term(c.body, c.var, p) is None:
            self.fail(path, node, f"premise {to_text(p)} has no witness for {to_text(c)}")
        return opens[0]

    def _exE(self, node, path, prem, opens):
        major, minor, c = prem[0], prem[1], node.conclusion
        if not isinstance(major, Exists):
            self.fail(path, node, "major premise is not existential")
            return opens[0] + opens[1]
        if not alpha_equal(minor, c):
            self.fail(path, node, f"minor premise {to_text(minor)} differs from conclusion")
        if len(node.discharge) > 1:
            self.fail(path, node, "existential elimination discharges at most one label")
        eigen = node.var or major.var
        hyp = substitute(major.body, major.var, Var(eigen))
        label = node.discharge[0] if node.discharge else None
        rest = self.discharge(path, node, opens[1], label, hyp)
        if eigen in free_vars(c):
            self.fail(path, node, f"eigenvariable {eigen} is free in the conclusion")
        if eigen in free_vars(major):
            self.fail(path, node, f"eigenvariable {eigen} is free in {to_text(major)}")
        for lab, f in self.eigen_free_in(eigen, rest):
            self.fail(path, node, f"eigenvariable {eigen} is free in open assumption "
                                  f"[{lab}] {to_text(f)}")
        return opens[0] + rest


def check_proof(p: ProofTree, allowed=(), tt: bool = False) -> Verdict:
    """Check every node of ``p``; all violations are collected, not just the first."""
    checker = _Checker(allowed, tt)
    checker.verdict.open_assumptions = checker.check(p)
    return checker.verdict


def verify_claim(claim: ReductionClaim) -> Verdict:
    if claim.proof is None:
        v = Verdict()
        v.violations.append(Violation("root", "-", "missing proof"))
        return v
    verdict = check_proof(claim.proof, claim.premises, claim.tt)
    root = claim.proof
    for lab, f in verdict.open_assumptions:
        verdict.violations.append(Violation("root", root.rule, f"open assumption [{lab}] {to_text(f)}"))
    try:
        target = get_scheme(claim.target).generic_instance()
    except ValueError as exc:
        verdict.violations.append(Violation("root", root.rule, str(exc)))
    else:
        if not alpha_equal(root.conclusion, target):
            verdict.violations.append(Violation(
                "root", root.rule,
                f"concludes {to_text(root.conclusion)}, target {claim.target} is {to_text(target)}"))
    for s in sorted(claim.premises - verdict.schemes_used):
        verdict.violations.append(Violation("root", root.rule, f"claimed premise {s} is never used"))
    if claim.tt and not verdict.tt_used:
        verdict.violations.append(Violation("root", root.rule, "claimed TT rules are never used"))
    return verdict


def check_reduction(claim: ReductionClaim) -> bool:
    return verify_claim(claim).ok


# --------------------------------------------------------- script format

def _kwargs(items, where):
    kw, rest = {}, []
    k = 0
    while k < len(items):
        x = items[k]
        if isinstance(x, sexpr.Symbol) and x.startswith(":"):
            if k + 1 >= len(items):
                raise ScriptError(f"{where}: keyword {x} without a value")
            kw[x[1:]] = items[k + 1]
            k += 2
        else:
            rest.append(x)
            k += 1
    return kw, rest


def _term(x):
    s = str(x)
    return Const(int(s)) if s.isdigit() else Var(s)


def node_from_sexpr(x, arities=None) -> ProofTree:
    if not isinstance(x, list) or not x or not isinstance(x[0], sexpr.Symbol):
        raise ScriptError(f"malformed proof node: {sexpr.dump(x)[:60]}")
    rule = str(x[0])
    kw, children = _kwargs(x[1:], rule)
    if "concl" not in kw:
        raise ScriptError(f"{rule} node without :concl")
    try:
        concl = parse_formula(str(kw["concl"]), arities)
    except ParseError as exc:
        raise ScriptError(f"{rule} node: {exc}") from None
    d = kw.get("discharge")
    if d is None:
        discharge = ()
    elif isinstance(d, list):
        discharge = tuple(str(e) for e in d)
    else:
        discharge = (str(d),)
    return ProofTree(
        rule=rule,
        conclusion=concl,
        premises=tuple(node_from_sexpr(c, arities) for c in children),
        discharge=discharge,
        var=str(kw["var"]) if "var" in kw else None,
        term=_term(kw["term"]) if "term" in kw else None,
        label=str(kw["label"]) if "label" in kw else None,
        side=str(kw["side"]) if "side" in kw else None,
    )


def load_script(text: str, source: Optional[str] = None) -> ReductionClaim:
    try:
        x = sexpr.read(text)
    except sexpr.SexprError as exc:
        raise ScriptError(str(exc)) from None
    if not isinstance(x, list) or not x or x[0] != "claim":
        raise ScriptError("script must be a single (claim ...) form")
    kw, rest = _kwargs(x[1:], "claim")
    proof = None
    for item in rest:
        if isinstance(item, list) and item and item[0] == "proof":
            if len(item) != 2:
                raise ScriptError("(proof ...) holds exactly one root node")
            proof = node_from_sexpr(item[1], {})
    premises = kw.get("premises", [])
    if not isinstance(premises, list):
        premises = [premises]
    tt = str(kw.get("tt", "false")).lower() == "true"
    if "target" not in kw:
        raise ScriptError("claim without :target")
    default_id = Path(source).stem if source else "claim"
    return ReductionClaim(
        id=str(kw.get("id", default_id)),
        premises=frozenset(str(p) for p in premises),
        tt=tt,
        target=str(kw["target"]),
        proof=proof,
        source=source,
    )


def _dump_node(node: ProofTree, indent: int) -> str:
    head = [node.rule]
    if node.label is not None:
        head += [":label", sexpr.dump_atom(node.label)]
    if len(node.discharge) == 1:
        head += [":discharge", sexpr.dump_atom(node.discharge[0])]
    elif node.discharge:
        head += [":discharge", "(" + " ".join(sexpr.dump_atom(d) for d in node.discharge) + ")"]
    if node.var is not None:
        head += [":var", sexpr.dump_atom(node.var)]
    if node.term is not None:
        head += [":term", str(node.term)]
    if node.side is not None:
        head += [":side", node.side]
    head += [":concl", sexpr.dump_atom(to_text(node.conclusion))]
    pad = " " * indent
    if not node.premises:
        return pad + "(" + " ".join(head) + ")"
    kids = "\n".join(_dump_node(p, indent + 2) for p in node.premises)
    return pad + "(" + " ".join(head) + "\n" + kids + ")"


def dump_script(claim: ReductionClaim) -> str:
    prem = " ".join(sorted(claim.premises))
    head = (f"(claim :id {claim.id} :premises ({prem}) :tt {'true' if claim.tt else 'false'} "
            f":target {claim.target}\n  (proof\n")
    return head + _dump_node(claim.proof, 4) + "))\n"


def read_claim(path) -> ReductionClaim:
    path = Path(path)
    return load_script(path.read_text(encoding="ascii"), str(path))


# ---------------------------------------------------------------- corpus

@dataclass
class ClaimResult:
    id: str
    file: str
    description: str
    violations: List[str]

    @property
    def ok(self):
        return not self.violations


@dataclass
class CorpusReport:
    results: List[ClaimResult]
    errors: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors and all(r.ok for r in self.results)

    @property
    def passed(self):
        return sum(r.ok for r in self.results)

    def text(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.id}: {r.description} [{r.file}]")
            lines.extend(f"    {v}" for v in r.violations)
        lines.extend(f"ERROR {e}" for e in self.errors)
        lines.append(f"{self.passed}/{len(self.results)} claims verified")
        return "\n".join(lines) + "\n"

    def records(self):
        return [{"id": r.id, "verdict": "pass" if r.ok else "fail", "file": r.file,
                 "claim": r.description, "violations": r.violations} for r in self.results]


def script_files(paths) -> List[Path]:
    files = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(p.glob("*.prf")))
        else:
            files.append(p)
    return files


def corpus_verify(paths) -> CorpusReport:
    """Check every script under ``paths`` (directories or files), in name order."""
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    results, errors, seen = [], [], {}
    for f in script_files(paths):
        name = f.name
        try:
            claim = read_claim(f)
        except (OSError, UnicodeDecodeError, ScriptError) as exc:
            results.append(ClaimResult(f.stem, name, "(unreadable)", [f"unreadable script: {exc}"]))
            continue
        if claim.id in seen:
            errors.append(f"duplicate claim id {claim.id} in {name} and {seen[claim.id]}")
            continue
        seen[claim.id] = name
        verdict = verify_claim(claim)
        results.append(ClaimResult(claim.id, name, claim.describe(), [str(v) for v in verdict.violations]))
    return CorpusReport(results, errors)
