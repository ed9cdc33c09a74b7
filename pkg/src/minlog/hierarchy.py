"""The reduction hierarchy: arrows backed by proof scripts, separations backed by models."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import chains
from .kernel import ReductionClaim, ScriptError, read_claim, verify_claim
from .kripke import ModelError, read_model, recheck_witness, scheme_holds_full
from .schemes import SCHEMES

DATA = Path(__file__).parent / "data"
SIDE = ("EFQ", "TT")
KNOWN = set(SCHEMES) | {"TT"}


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class HierarchyEdge:
    premises: FrozenSet[str]  # includes EFQ / TT side conditions
    target: str
    evidence: Tuple[str, ...]
    drawn: bool = True

    @property
    def main(self):
        return sorted(p for p in self.premises if p not in SIDE)

    @property
    def side(self):
        return [s for s in SIDE if s in self.premises]

    def text(self):
        return f"{_lhs(self.premises)} -> {self.target}"


@dataclass(frozen=True)
class NonEdge:
    premises: FrozenSet[str]
    target: str
    evidence: str  # family:ID or model:STEM

    def text(self):
        return f"{_lhs(self.premises)} -/-> {self.target}"


@dataclass(frozen=True)
class OpenQuestion:
    premises: FrozenSet[str]
    target: str

    def text(self):
        return f"{_lhs(self.premises)} -> {self.target}"


@dataclass
class Manifest:
    nodes: List[Tuple[str, ...]] = field(default_factory=list)
    edges: List[HierarchyEdge] = field(default_factory=list)
    nonedges: List[NonEdge] = field(default_factory=list)
    open: List[OpenQuestion] = field(default_factory=list)
    base: Path = DATA


def _lhs(premises) -> str:
    main = sorted(p for p in premises if p not in SIDE)
    return " + ".join(main + [s for s in SIDE if s in premises])


def _scheme_list(text, sep, where):
    names = [p.strip() for p in text.split(sep) if p.strip()]
    for n in names:
        if n not in KNOWN:
            raise ManifestError(f"{where}: unknown scheme {n!r}")
    if not names:
        raise ManifestError(f"{where}: empty scheme list")
    return names


def load_manifest(text: str, base: Optional[Path] = None) -> Manifest:
    m = Manifest(base=base or DATA)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        kind, sep, rest = line.partition(":")
        kind = kind.strip()
        if not sep:
            raise ManifestError(f"{where}: expected 'kind: ...'")
        if kind == "node":
            m.nodes.append(tuple(_scheme_list(rest, ",", where)))
        elif kind in ("edge", "extra"):
            claim, _, ev = rest.partition("@")
            lhs, arrow, rhs = claim.partition("->")
            if not arrow:
                raise ManifestError(f"{where}: edge lacks '->'")
            evidence = tuple(e.strip() for e in ev.split(",") if e.strip())
            m.edges.append(HierarchyEdge(frozenset(_scheme_list(lhs, "+", where)),
                                         _scheme_list(rhs, "+", where)[0], evidence, kind == "edge"))
        elif kind == "nonedge":
            claim, _, ev = rest.partition("@")
            lhs, arrow, rhs = claim.partition("-/->")
            if not arrow or not ev.strip():
                raise ManifestError(f"{where}: non-edge needs '-/->' and '@ evidence'")
            m.nonedges.append(NonEdge(frozenset(_scheme_list(lhs, "+", where)),
                                      _scheme_list(rhs, "+", where)[0], ev.strip()))
        elif kind == "open":
            lhs, arrow, rhs = rest.partition("->")
            if not arrow:
                raise ManifestError(f"{where}: open question lacks '->'")
            m.open.append(OpenQuestion(frozenset(_scheme_list(lhs, "+", where)),
                                       _scheme_list(rhs, "+", where)[0]))
        else:
            raise ManifestError(f"{where}: unknown entry kind {kind!r}")
    return m


def read_manifest(path=None) -> Manifest:
    p = Path(path) if path else DATA / "hierarchy.txt"
    return load_manifest(p.read_text(encoding="ascii"), p.parent)


# ------------------------------------------------------------- evidence

def claim_premises(c: ReductionClaim) -> FrozenSet[str]:
    return frozenset(c.premises) | ({"TT"} if c.tt else set())


def compose(first: Tuple[FrozenSet[str], str], second: Tuple[FrozenSet[str], str]):
    """S -> T then T + R -> U gives S + R -> U; side conditions accumulate."""
    (p1, t1), (p2, t2) = first, second
    return frozenset(p1 | (p2 - {t1})), t2


@dataclass
class Line:
    status: str  # PASS / FAIL / OPEN / DERIVED / UNKNOWN
    text: str

    def show(self):
        return f"{self.status}: {self.text}"


@dataclass
class HierarchyReport:
    lines: List[Line] = field(default_factory=list)

    @property
    def failures(self):
        return [l for l in self.lines if l.status == "FAIL"]

    @property
    def ok(self):
        return not self.failures

    def count(self, status):
        return sum(l.status == status for l in self.lines)

    def text(self) -> str:
        out = [l.show() for l in self.lines]
        out.append(f"{self.count('PASS')} verified, {self.count('FAIL')} failed, "
                   f"{self.count('OPEN')} open, {self.count('UNKNOWN')} unknown")
        return "\n".join(out) + "\n"

    def records(self):
        return [{"id": l.text, "verdict": l.status.lower()} for l in self.lines]


def _check_edge(e: HierarchyEdge, base: Path, cache: Dict[str, object]) -> Tuple[bool, str]:
    if not e.evidence:
        return False, "no evidence"
    acc = None
    for ev in e.evidence:
        if ev not in cache:
            try:
                c = read_claim(base / ev)
                v = verify_claim(c)
                cache[ev] = (c, v)
            except (OSError, ScriptError, ValueError) as exc:
                cache[ev] = exc
        got = cache[ev]
        if isinstance(got, Exception):
            return False, f"{ev}: {got}"
        c, v = got
        if not v.ok:
            return False, f"{ev} does not check: {v.violations[0]}"
        step = (claim_premises(c), c.target)
        acc = step if acc is None else compose(acc, step)
    if acc != (e.premises, e.target):
        return False, f"evidence proves {_lhs(acc[0])} -> {acc[1]}, not {e.text()}"
    return True, ", ".join(e.evidence)


FAMILY_SCHEMES = {
    # schemes certified to hold / to fail in each shipped family
    "ascending": ({"HE", "CD", "EFQ"}, {"DP", "DNSU", "GMP"}),
    "descending": ({"DP", "EFQ"}, {"HE"}),
    "ascending-all-bot": ({"HE", "LEM"}, {"DP"}),
    "descending-all-bot": ({"DP", "LEM"}, {"HE"}),
    "nonfull": ({"HE", "EFQ"}, {"CD"}),
    "nonfull-tt": ({"HE", "EFQ", "TT"}, {"CD"}),
}


def _check_family(ne: NonEdge, fam_id: str) -> Tuple[bool, str]:
    if fam_id not in FAMILY_SCHEMES:
        return False, f"no recorded scheme facts for family {fam_id}"
    holds, fails = FAMILY_SCHEMES[fam_id]
    missing = sorted(ne.premises - holds)
    if missing:
        return False, f"family {fam_id} is not certified for {', '.join(missing)}"
    if ne.target not in fails:
        return False, f"family {fam_id} does not refute {ne.target}"
    fam = chains.get_family(fam_id)
    report = chains.certify_paper_facts(fam_id, fam, strict=False)
    if not report.ok:
        return False, f"certification of {fam_id} failed"
    if "EFQ" in ne.premises and not fam.bot.is_empty():
        return False, f"false is forced somewhere in {fam_id}"
    if fam.shape in ("ascending", "descending") and fam.prefix is None:
        for sid in sorted(ne.premises & {"HE", "DP", "CD"}):
            bad = [s for s in chains.random_expressible_valuations(fam, 0, 40, sid) if not s.holds]
            if bad:
                return False, f"sampled predicate refutes {sid} in {fam_id}: {bad[0].rule}"
    return True, f"family {fam_id} ({len(report.claims)} facts certified)"


def _check_model(ne: NonEdge, stem: str, base: Path, cache) -> Tuple[bool, str]:
    path = base / "models" / f"{stem}.km"
    try:
        m = read_model(path)
    except (OSError, ModelError) as exc:
        return False, f"model {stem}: {exc}"
    for s in sorted(ne.premises):
        key = (stem, s)
        if key not in cache:
            cache[key] = scheme_holds_full(m, s)
        if not cache[key].holds:
            return False, f"{s} does not hold in {stem}"
    key = (stem, ne.target)
    if key not in cache:
        cache[key] = scheme_holds_full(m, ne.target)
    v = cache[key]
    if v.holds:
        return False, f"{ne.target} holds in {stem}"
    if v.witness is not None and not recheck_witness(m, ne.target, v.witness):
        return False, f"witness for {ne.target} in {stem} does not re-check"
    where = f" at {v.witness.world}" if v.witness is not None else ""
    return True, f"model {stem}: {ne.target} fails{where}"


def _derivable(premises: FrozenSet[str], edges: List[HierarchyEdge]) -> FrozenSet[str]:
    known = set(premises)
    changed = True
    while changed:
        changed = False
        for e in edges:
            if e.target not in known and e.premises <= known:
                known.add(e.target)
                changed = True
    return frozenset(known)


def verify_hierarchy(manifest: Optional[Manifest] = None) -> HierarchyReport:
    manifest = manifest or read_manifest()
    rep = HierarchyReport()
    cache: Dict = {}
    verified = []
    for e in manifest.edges:
        ok, why = _check_edge(e, manifest.base, cache)
        rep.lines.append(Line("PASS" if ok else "FAIL", f"edge {e.text()} [{why}]"))
        if ok:
            verified.append(e)
    model_cache: Dict = {}
    for ne in manifest.nonedges:
        kind, _, ident = ne.evidence.partition(":")
        if kind == "family":
            ok, why = _check_family(ne, ident)
        elif kind == "model":
            ok, why = _check_model(ne, ident, manifest.base, model_cache)
        else:
            ok, why = False, f"unknown evidence {ne.evidence!r}"
        if ok and ne.target in _derivable(ne.premises, verified):
            ok, why = False, "contradicts the verified edges"
        rep.lines.append(Line("PASS" if ok else "FAIL", f"non-edge {ne.text()} [{why}]"))
    for q in manifest.open:
        if q.target in _derivable(q.premises, verified):
            rep.lines.append(Line("FAIL", f"open {q.text()} is settled by the verified edges"))
        elif any(ne.premises >= q.premises and ne.target == q.target for ne in manifest.nonedges):
            rep.lines.append(Line("FAIL", f"open {q.text()} is settled by a listed separation"))
        else:
            rep.lines.append(Line("OPEN", q.text()))
    rep.lines.extend(_coherence(manifest, verified))
    return rep


def _coherence(manifest: Manifest, verified: List[HierarchyEdge]) -> List[Line]:
    """Composed arrows between drawn nodes, and pairs no evidence decides."""
    out = []
    drawn = [e for e in verified if e.drawn]
    explicit = {(e.premises, e.target) for e in verified}
    seen = set()
    for a in drawn:
        for b in drawn:
            if a.target in b.premises and b.target not in a.premises:
                p, t = compose((a.premises, a.target), (b.premises, b.target))
                if (p, t) in explicit or (p, t) in seen or t in p:
                    continue
                seen.add((p, t))
                out.append(Line("DERIVED", f"{_lhs(p)} -> {t} (via {a.target})"))
    out.sort(key=lambda l: l.text)
    heads = [n[0] for n in manifest.nodes]
    unknown = []
    for s in heads:
        reach = _derivable(frozenset({s}), verified)
        for t in heads:
            if s == t or t in reach:
                continue
            refuted = any(ne.target == t and s in ne.premises for ne in manifest.nonedges)
            if not refuted:
                unknown.append(Line("UNKNOWN", f"{s} -> {t}"))
    return out + unknown


# --------------------------------------------------------------------- dot

def _node_id(group) -> str:
    return "_".join(re.sub(r"\W", "", g) for g in group)


def export_dot(manifest: Optional[Manifest] = None) -> str:
    """Deterministic DOT text: one node per group, side conditions as labels."""
    manifest = manifest if manifest is not None else read_manifest()
    owner = {}
    for g in manifest.nodes:
        for s in g:
            owner[s] = g
    lines = ["digraph hierarchy {"]
    if manifest.nodes:
        lines.append("  node [shape=plaintext];")
    for g in manifest.nodes:
        lines.append(f'  {_node_id(g)} [label="{", ".join(g)}"];')
    for e in manifest.edges:
        if not e.drawn or e.target not in owner:
            continue
        for src in e.main:
            if src not in owner or owner[src] == owner[e.target]:
                continue
            attr = f' [label="{", ".join(e.side)}"]' if e.side else ""
            lines.append(f"  {_node_id(owner[src])} -> {_node_id(owner[e.target])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
