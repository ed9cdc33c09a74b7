"""Symbolic forcing over infinite chain models.

A family is an omega chain of worlds (ascending, or descending with a limit
world at the bottom) whose domains are all of N, optionally sitting above a
finite prefix given in the ``.km`` format.  Forcing sets are ZoneSets over
(world, term) pairs; chain world i is ``A_i`` on an ascending chain and
``A_-i`` on a descending one (i is the depth there).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .kripke import FiniteKripkeModel, load_model
from .schemes import get_scheme, instantiate
from .syntax import (And, Atom, Bottom, Const, Exists, Forall, Formula, Implies, Or, Var,
                     free_vars, parse_formula, size, substitute, to_text)
from .zones import CHAIN, INF, LIMIT, Zone, ZoneSet, down_ascending, down_descending, project_i

SHAPES = ("ascending", "descending", "finite")
DATA = Path(__file__).parent / "data" / "families"


class FamilyError(ValueError):
    pass


class ForceError(ValueError):
    pass


def prefix_kind(w: str) -> str:
    return "prefix:" + w


# ------------------------------------------------------------ constraint text

_TOK = re.compile(r"\s*(<=|>=|<|>|=|\d+|[A-Za-z_]+|[-+&|()])")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise FamilyError(f"cannot read constraint at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ConstraintParser:
    """``disj := conj ('|' conj)*``, ``conj := cmp ('&' cmp)*`` over i, t and integers."""

    def __init__(self, text, kind, allowed):
        self.toks = _tokens(text)
        self.k = 0
        self.kind = kind
        self.allowed = allowed
        self.text = text

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def parse(self) -> ZoneSet:
        zs = self.disj()
        if self.peek() is not None:
            raise FamilyError(f"trailing {self.peek()!r} in {self.text!r}")
        return zs

    def disj(self):
        zs = self.conj()
        while self.peek() == "|":
            self.take()
            zs = zs | self.conj()
        return zs

    def conj(self):
        zs = self.cmp()
        while self.peek() == "&":
            self.take()
            zs = zs & self.cmp()
        return zs

    def full(self):
        return ZoneSet([Zone.make(self.kind)])

    def cmp(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            zs = self.disj()
            if self.take() != ")":
                raise FamilyError(f"missing ')' in {self.text!r}")
            return zs
        if tok == "all":
            self.take()
            return self.full()
        if tok == "none":
            self.take()
            return ZoneSet()
        left = self.lin()
        op = self.take()
        if op not in ("<=", ">=", "<", ">", "="):
            raise FamilyError(f"expected a comparison in {self.text!r}")
        right = self.lin()
        ci, ct, k = (a - b for a, b in zip(left, right))
        return self.full() & ZoneSet(_comparison(self.kind, ci, ct, k, op, self.text))

    def lin(self):
        ci = ct = k = 0
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        while True:
            tok = self.take()
            if tok is None:
                raise FamilyError(f"unexpected end of {self.text!r}")
            if tok.isdigit():
                k += sign * int(tok)
            elif tok in ("i", "t"):
                if tok not in self.allowed:
                    raise FamilyError(f"{tok!r} is not allowed here: {self.text!r}")
                if tok == "i":
                    ci += sign
                else:
                    ct += sign
            else:
                raise FamilyError(f"unexpected {tok!r} in {self.text!r}")
            if self.peek() in ("+", "-"):
                sign = 1 if self.take() == "+" else -1
            else:
                return ci, ct, k


def _comparison(kind, ci, ct, k, op, text) -> List[Optional[Zone]]:
    """Zones for ``ci*i + ct*t + k op 0``."""
    if ci == 0 and ct == 0:
        ok = {"<=": k <= 0, ">=": k >= 0, "<": k < 0, ">": k > 0, "=": k == 0}[op]
        return [Zone.make(kind)] if ok else []
    if ct == 0 and abs(ci) == 1:
        var, c = "i", ci
    elif ci == 0 and abs(ct) == 1:
        var, c = "t", ct
    elif ci == -ct and abs(ct) == 1:
        var, c = "d", ct
    else:
        raise FamilyError(f"inexpressible constraint (only i, t and t - i bounds): {text!r}")
    if c < 0:  # -x + k op 0  is  x flipped-op k
        op = {"<=": ">=", ">=": "<=", "<": ">", ">": "<", "=": "="}[op]
        bound = k
    else:
        bound = -k
    lo, hi = {"<=": (-INF, bound), ">=": (bound, INF), "<": (-INF, bound - 1),
              ">": (bound + 1, INF), "=": (bound, bound)}[op]
    return [Zone.make(kind).constrain(var, lo, hi)]


def parse_constraint(text: str, kind: str = CHAIN, allowed=("i", "t")) -> ZoneSet:
    return _ConstraintParser(text, kind, allowed).parse()


# ------------------------------------------------------------------ families

@dataclass
class ChainFamily:
    name: str
    shape: str
    prefix: Optional[FiniteKripkeModel] = None
    chain_rules: Dict[str, ZoneSet] = field(default_factory=dict)
    limit_rules: Dict[str, ZoneSet] = field(default_factory=dict)
    seeds: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise FamilyError(f"unknown shape {self.shape!r}")
        if self.shape == "finite" and self.prefix is None:
            raise FamilyError("a finite family needs prefix worlds")
        if self.shape != "descending" and self.limit_rules:
            raise FamilyError("only descending families have a limit world")
        zones = []
        if self.shape != "finite":
            zones.append(Zone.make(CHAIN))
        if self.shape == "descending":
            zones.append(Zone.make(LIMIT))
        for w in self.prefix_worlds:
            for c in self.prefix.domain[w]:
                zones.append(Zone.make(prefix_kind(w), tlo=c, thi=c))
        self.dom = ZoneSet(zones)
        self.rules: Dict[str, ZoneSet] = {}
        names = set(self.chain_rules) | set(self.limit_rules)
        if self.prefix is not None:
            names |= set(self.prefix.predicate_arities()) | {"bot"}
        for pred in sorted(names):
            self.rules[pred] = self._assemble(pred)
        self.bot = self.cyl(self.rules.pop("bot", ZoneSet()))
        problems = self.validate()
        if problems:
            raise FamilyError(problems)

    @property
    def prefix_worlds(self) -> Tuple[str, ...]:
        return self.prefix.worlds if self.prefix is not None else ()

    @property
    def has_chain(self) -> bool:
        return self.shape != "finite"

    def _assemble(self, pred) -> ZoneSet:
        zones = list(self.chain_rules.get(pred, ()))
        zones += list(self.limit_rules.get(pred, ()))
        for w in self.prefix_worlds:
            k = prefix_kind(w)
            if pred == "bot":
                if w in self.prefix.bot:
                    zones.append(Zone.make(k))
                continue
            for p, arg in self.prefix.atoms[w]:
                if p != pred:
                    continue
                zones.append(Zone.make(k) if arg is None else Zone.make(k, tlo=arg, thi=arg))
        return ZoneSet(zones) & self.dom

    def validate(self) -> List[str]:
        out = []
        for pred, r in list(self.rules.items()) + [("bot", self.bot)]:
            broken = self.down(self.dom - r) & r
            if not broken.is_empty():
                out.append(f"rule for {pred} is not monotone along the order: {broken}")
        return out

    # ----------------------------------------------------------- geometry
    def cyl(self, s: ZoneSet) -> ZoneSet:
        """All points of the worlds that ``s`` touches."""
        return ZoneSet(project_i(z) if z.kind == CHAIN else Zone.make(z.kind) for z in s) & self.dom

    def down(self, s: ZoneSet) -> ZoneSet:
        """Points (w, t) with some v >= w such that (v, t) is in ``s``."""
        out = []
        for z in s:
            span = dict(tlo=z.tlo, thi=z.thi)
            below = ()
            if z.kind == CHAIN:
                out.append(down_ascending(z) if self.shape == "ascending" else down_descending(z))
                if self.shape == "descending":
                    out.append(Zone.make(LIMIT, **span))
                below = self.prefix_worlds
            elif z.kind == LIMIT:
                out.append(z)
                below = self.prefix_worlds
            else:
                w = z.kind.split(":", 1)[1]
                below = [v for v in self.prefix_worlds if self.prefix.leq(v, w)]
            out.extend(Zone.make(prefix_kind(v), **span) for v in below)
        return ZoneSet(out) & self.dom

    def upward_closed(self, s: ZoneSet) -> bool:
        return (self.down(self.dom - s) & s).is_empty()

    # ------------------------------------------------------------- worlds
    def world_points(self) -> List[Tuple[str, int]]:
        """(kind, i) for the prefix, the limit, and chain world 0."""
        pts = [(prefix_kind(w), 0) for w in self.prefix_worlds]
        if self.shape == "descending":
            pts.append((LIMIT, 0))
        if self.has_chain:
            pts.append((CHAIN, 0))
        return pts

    def world_name(self, kind: str, i: int = 0) -> str:
        if kind == CHAIN:
            return f"A_{i}" if self.shape == "ascending" else (f"A_-{i}" if i else "A_0")
        if kind == LIMIT:
            return "A_-inf"
        return kind.split(":", 1)[1]

    def parse_world(self, name: str) -> Tuple[str, int]:
        if name in self.prefix_worlds:
            return prefix_kind(name), 0
        if name in ("A_-inf", "limit") and self.shape == "descending":
            return LIMIT, 0
        m = re.fullmatch(r"A_(-?)(\d+)", name)
        if m and self.has_chain:
            neg_sign, n = m.group(1) == "-", int(m.group(2))
            if n == 0 or neg_sign == (self.shape == "descending"):
                return CHAIN, n
        raise ForceError(f"unknown world {name!r} in family {self.name}")

    def min_term(self, kind: str) -> int:
        if kind.startswith("prefix:"):
            return min(self.prefix.domain[kind.split(":", 1)[1]])
        return 0

    def holds_at(self, s: ZoneSet, kind: str, i: int = 0, t: Optional[int] = None) -> bool:
        return s.contains(kind, i, self.min_term(kind) if t is None else t)

    def root_constants(self) -> List[int]:
        """Constants usable in formulas: the domain of the bottom worlds."""
        if self.prefix is not None:
            roots = [w for w in self.prefix.worlds
                     if not any(v != w and self.prefix.leq(v, w) for v in self.prefix.worlds)]
            common = set.intersection(*(set(self.prefix.domain[w]) for w in roots))
            return sorted(common)
        return []

    def with_rule(self, pred: str, chain: ZoneSet, limit: Optional[ZoneSet] = None) -> "ChainFamily":
        rules = dict(self.chain_rules)
        rules[pred] = chain
        lim = dict(self.limit_rules)
        if limit is not None:
            lim[pred] = limit
        return ChainFamily(self.name, self.shape, self.prefix, rules, lim, self.seeds)


def _split_sections(text: str):
    model_lines, sections, current = [], {}, None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"^\s*\[(\w+)\]\s*(.*)$", line)
        if m:
            current = m.group(1).lower()
            if current in ("family", "chain", "limit"):
                sections.setdefault(current, [])
                line = m.group(2)
                if not line.strip():
                    continue
            else:
                model_lines.append(line)
                continue
        if current in ("family", "chain", "limit"):
            sections[current].extend(p.strip() for p in line.split(";") if p.strip())
        elif current is None:
            raise FamilyError(f"content before any section header: {line.strip()!r}")
        else:
            model_lines.append(line)
    return "\n".join(model_lines), sections


def load_family(text: str, name: str = "") -> ChainFamily:
    model_text, sec = _split_sections(text)
    meta = {}
    for item in sec.get("family", []):
        key, _, val = item.partition(":")
        meta[key.strip()] = val.strip()
    shape = meta.get("shape", "")
    prefix = load_model(model_text, name) if model_text.strip() else None
    chain, limit = {}, {}
    for target, items, kind, allowed in ((chain, sec.get("chain", []), CHAIN, ("i", "t")),
                                         (limit, sec.get("limit", []), LIMIT, ("t",))):
        for item in items:
            pred, sep, expr = item.partition(":")
            pred = pred.strip()
            if not sep or not re.fullmatch(r"[A-Za-z_]\w*", pred):
                raise FamilyError(f"bad rule {item!r}; expected 'NAME: constraint'")
            zs = parse_constraint(expr, kind, allowed if pred != "bot" else ("i",))
            target[pred] = target.get(pred, ZoneSet()) | zs
    seeds = tuple(meta.get("seeds", "").split())
    return ChainFamily(meta.get("name", name), shape, prefix, chain, limit, seeds)


def read_family(path) -> ChainFamily:
    p = Path(path)
    return load_family(p.read_text(encoding="ascii"), p.stem)


def family_ids() -> List[str]:
    return sorted(p.stem for p in DATA.glob("*.fam"))


def get_family(fam_id: str) -> ChainFamily:
    p = DATA / f"{fam_id}.fam"
    if not p.exists():
        raise FamilyError(f"unknown family {fam_id!r}; known: {', '.join(family_ids())}")
    return read_family(p)


def from_finite(m: FiniteKripkeModel) -> ChainFamily:
    """The degenerate family whose only worlds are the model's own."""
    return ChainFamily(m.name or "finite", "finite", m)


# ------------------------------------------------------------------- forcing

def _one_free(f: Formula) -> Optional[str]:
    fv = free_vars(f)
    if len(fv) > 1:
        raise ForceError(f"{to_text(f)} has free variables {sorted(fv)}; at most one is allowed")
    return next(iter(fv), None)


def force_set(fam: ChainFamily, f, check: bool = True) -> ZoneSet:
    """Exact set of (world, t) at which ``f`` is forced, t standing for its free variable."""
    if isinstance(f, str):
        f = parse_formula(f)
    _one_free(f)
    out = _force(fam, f)
    if check and not fam.upward_closed(out):
        raise AssertionError(f"forcing set of {to_text(f)} is not upward closed")
    return out


def _wide(g: Formula) -> bool:
    """Some subformula has two or more free variables."""
    if len(free_vars(g)) > 1:
        return True
    if isinstance(g, (Implies, And, Or)):
        return _wide(g.left) or _wide(g.right)
    if isinstance(g, (Forall, Exists)):
        return _wide(g.body)
    return False


def _ground(fam: ChainFamily, g: Formula) -> ZoneSet:
    # a finite domain lets the outer variable be fixed term by term
    if fam.has_chain:
        raise ForceError(f"{to_text(g)} needs two term variables at once; only finite "
                         f"families support that")
    v = next(iter(free_vars(g)))
    out = ZoneSet()
    for c in sorted(fam.prefix.elements):
        piece = _force(fam, substitute(g, v, Const(c)))
        out = out | ZoneSet(z.constrain("t", c, c) for z in piece)
    return out


def _force(fam: ChainFamily, g: Formula) -> ZoneSet:
    if len(free_vars(g)) == 1 and _wide(g):
        return _ground(fam, g)
    if isinstance(g, Bottom):
        return fam.bot
    if isinstance(g, Atom):
        if g.pred not in fam.rules:
            raise ForceError(f"unknown predicate {g.pred} in family {fam.name}")
        r = fam.rules[g.pred]
        if g.arg is None:
            if not fam.cyl(r) == r:
                raise ForceError(f"{g.pred} is a predicate in family {fam.name}, used without argument")
            return r
        if isinstance(g.arg, Const):
            c = g.arg.index
            return fam.cyl(ZoneSet(z.constrain("t", c, c) for z in r))
        return r
    if isinstance(g, (Implies, And, Or)):
        if len(free_vars(g)) > 1:
            _one_free(g)
        a, b = _force(fam, g.left), _force(fam, g.right)
        if isinstance(g, And):
            return a & b
        if isinstance(g, Or):
            return a | b
        return fam.dom - fam.down(a - b)
    if g.var not in free_vars(g.body):
        # vacuous over nonempty monotone domains
        return _force(fam, g.body)
    _one_free(g.body)
    body = _force(fam, g.body)
    if isinstance(g, Forall):
        # cylinder before pushing down: a lower world may lack the bad term
        return fam.dom - fam.down(fam.cyl(fam.dom - body))
    return fam.cyl(body)


def forces_at(fam: ChainFamily, world: str, f, t: Optional[int] = None) -> bool:
    kind, i = fam.parse_world(world)
    return fam.holds_at(force_set(fam, f), kind, i, t)


def forced_everywhere(fam: ChainFamily, f) -> bool:
    return fam.dom.subset_of(force_set(fam, f))


def scheme_instance(scheme_id: str, **args) -> Formula:
    """Instance from text arguments, e.g. ``P="P(x)"`` (hole x) or ``A="Q(0)"``."""
    s = get_scheme(scheme_id)
    ar = s.arity
    out = {}
    for name, text in args.items():
        f = parse_formula(text) if isinstance(text, str) else text
        out[name] = ("x", f) if ar[name] == 1 else f
    return instantiate(s, out)


# ------------------------------------------------------------ certification

@dataclass
class Claim:
    id: str
    statement: str
    expected: bool
    actual: bool

    @property
    def ok(self):
        return self.expected == self.actual


@dataclass
class CertReport:
    family: str
    claims: List[Claim]
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.claims)

    def text(self) -> str:
        lines = [f"family {self.family}"]
        for c in self.claims:
            tag = "CERTIFIED" if c.ok else "FAILED"
            lines.append(f"  {tag}: {c.statement} (expected {c.expected}, got {c.actual})")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"{sum(c.ok for c in self.claims)}/{len(self.claims)} claims certified")
        return "\n".join(lines) + "\n"

    def records(self):
        return [{"id": f"{self.family}:{c.id}", "verdict": "pass" if c.ok else "fail",
                 "statement": c.statement, "expected": c.expected, "actual": c.actual}
                for c in self.claims]


class CertificationError(AssertionError):
    def __init__(self, report: CertReport):
        self.report = report
        super().__init__(report.text())


GAP_NOTE = ("HE/DP over all monotone predicates is not decided here; certified for the "
            "definable closure and for sampled zone-expressible predicates only")


def _at(fam, sid, world, expected, **args):
    f = scheme_instance(sid, **args)
    shown = ", ".join(f"{k}:={v}" for k, v in args.items())
    return Claim(f"{sid}@{world}", f"{sid}[{shown}] forced at {world}", expected,
                 forces_at(fam, world, f))


def _everywhere(fam, cid, f, text=None):
    return Claim(cid, f"{text or to_text(f)} forced everywhere", True, forced_everywhere(fam, f))


def _minimal_failure(fam: ChainFamily, pred: str) -> Optional[int]:
    """Smallest t not forced at the top-most chain world that misses some term."""
    r = fam.rules[pred].only(CHAIN)
    miss = ZoneSet([Zone.make(CHAIN)]) - r
    if miss.is_empty():
        return None
    i = min(z.ilo for z in miss)  # depth: smallest is top-most
    return min(z.constrain("i", i, i).tlo for z in miss if z.constrain("i", i, i) is not None)


LEM_ARGS = ("P(x)", "~P(x)", "P(0)", "false", "forall x. P(x)", "exists x. P(x)",
            "P(x) -> forall x. P(x)", "(exists x. P(x)) -> P(x)", "~~P(x) -> P(x)")


def _lem_claims(fam):
    # the closure of a descending chain need not be finite, so use a fixed list
    return [_everywhere(fam, f"LEM[{a}]", scheme_instance("LEM", A=a)) for a in LEM_ARGS]


def certify_paper_facts(fam_id: str, fam: Optional[ChainFamily] = None, strict: bool = True) -> CertReport:
    """Check the recorded facts for one of the shipped families."""
    fam = fam or get_family(fam_id)
    claims: List[Claim] = []
    notes = []
    base = fam_id.replace("-all-bot", "")
    if base == "ascending":
        claims.append(_at(fam, "DP", "A_0", False, P="P(x)"))
        claims.append(_everywhere(fam, "HE", scheme_instance("HE", P="P(x)")))
        if fam_id == "ascending":
            claims.append(_at(fam, "DNSU", "A_0", False, P="P(x)"))
            claims.append(_at(fam, "GMP", "A_0", False, P="P(x)"))
            classes = predicate_closure(fam)
            for a in classes:
                for b in classes:
                    if a.predicate and not b.predicate:
                        f = scheme_instance("CD", P=_as_predicate(a.formula), Q=b.formula)
                        claims.append(_everywhere(fam, f"CD[{a.text()}; {b.text()}]", f))
            claims.append(Claim("forall-nnP@A_0", "forall x. ~~P(x) forced at A_0", True,
                                forces_at(fam, "A_0", "forall x. ~~P(x)")))
            claims.append(Claim("n-forallP@A_0", "~(forall x. P(x)) forced at A_0", True,
                                forces_at(fam, "A_0", "~(forall x. P(x))")))
            claims.append(Claim("nP-nowhere", "~P(x) forced nowhere", True,
                                force_set(fam, "~P(x)").is_empty()))
        notes.append(GAP_NOTE)
    elif base == "descending":
        claims.append(_at(fam, "HE", "A_-inf", False, P="P(x)"))
        claims.append(_everywhere(fam, "DP", scheme_instance("DP", P="P(x)")))
        t = _minimal_failure(fam, "P")
        if t is not None:
            f = parse_formula(f"P({t}) -> forall x. P(x)")
            claims.append(_everywhere(fam, f"witness-{t}", f))
            g = parse_formula(f"(exists x. P(x)) -> P({t})")
            claims.append(Claim(f"HE-witness-{t}", f"{to_text(g)} forced at A_-{t + 1}", False,
                                forces_at(fam, f"A_-{t + 1}", g)))
        notes.append(GAP_NOTE)
    elif base in ("nonfull", "nonfull-tt"):
        cd = scheme_instance("CD", P="P(x)", Q="exists x. Q(x)")
        claims.append(Claim("CD@A", f"{to_text(cd)} forced at A", False, forces_at(fam, "A", cd)))
        for c in predicate_closure(fam, fam.seeds or ("P", "Q")):
            f = scheme_instance("HE", P=_as_predicate(c.formula))
            claims.append(_everywhere(fam, f"HE[{to_text(c.formula)}]", f))
        if base == "nonfull-tt":
            for rid, text in (("D0", "D(0)"), ("notD1", "~D(1)"), ("Dx", "forall x. (D(x) | ~D(x))")):
                claims.append(_everywhere(fam, rid, parse_formula(text)))
    else:
        raise FamilyError(f"no recorded facts for family {fam_id!r}")
    if fam_id.endswith("-all-bot"):
        claims.append(Claim("bot", "false forced everywhere", True, fam.dom.subset_of(fam.bot)))
        claims.extend(_lem_claims(fam))
    report = CertReport(fam_id, claims, notes)
    if strict and not report.ok:
        raise CertificationError(report)
    return report


def _as_predicate(f: Formula) -> Formula:
    """Rename the free variable to x, the hole used by scheme_instance."""
    fv = free_vars(f)
    if fv and "x" not in fv:
        return substitute(f, next(iter(fv)), Var("x"))
    return f


# ------------------------------------------------------- predicate closure

@dataclass
class PredicateClass:
    formula: Formula
    zones: ZoneSet
    predicate: bool  # depends on the term, not just the world

    def text(self):
        return to_text(self.formula)


class ClosureCapExceeded(RuntimeError):
    def __init__(self, cap, frontier):
        self.frontier = frontier
        shown = ", ".join(to_text(f) for f in frontier[:8])
        super().__init__(f"more than {cap} classes; frontier includes {shown}")


def _key(f: Formula):
    return size(f), to_text(f)


def predicate_closure(fam: ChainFamily, seeds=None, cap: int = 64,
                      start: Optional[List[PredicateClass]] = None) -> List[PredicateClass]:
    """Forcing-distinct formulas generated from the seed predicates and false."""
    seeds = tuple(seeds or fam.seeds)
    classes: List[PredicateClass] = []

    def add(f: Formula) -> bool:
        zs = _force(fam, f)
        for c in classes:
            if c.zones == zs:
                if _key(f) < _key(c.formula):
                    c.formula = f
                return False
        if len(classes) >= cap:
            raise ClosureCapExceeded(cap, [f] + [c.formula for c in classes])
        classes.append(PredicateClass(f, zs, not fam.cyl(zs) == zs))
        return True

    for c in start or ():
        add(c.formula)
    for p in seeds:
        if p not in fam.rules:
            raise ForceError(f"seed {p} is not a predicate of family {fam.name}")
        add(Atom(p, Var("x")))
    add(Bottom())
    consts = fam.root_constants()
    changed = True
    while changed:
        changed = False
        snapshot = list(classes)
        for c in snapshot:
            f = _as_predicate(c.formula)
            if free_vars(f):
                for q in (Forall, Exists):
                    changed |= add(q("x", f))
                for k in consts:
                    changed |= add(substitute(f, "x", Const(k)))
        for a in snapshot:
            for b in snapshot:
                fa, fb = _as_predicate(a.formula), _as_predicate(b.formula)
                for op in (Implies, And, Or):
                    changed |= add(op(fa, fb))
    classes.sort(key=lambda c: (not c.predicate, _key(c.formula)))
    return classes


def closure_text(classes: List[PredicateClass]) -> str:
    preds = [c for c in classes if c.predicate]
    props = [c for c in classes if not c.predicate]
    lines = [f"{len(preds)} predicate classes:"]
    lines += [f"  {c.text()}    {c.zones}" for c in preds]
    lines.append(f"{len(props)} proposition classes:")
    lines += [f"  {c.text()}    {c.zones}" for c in props]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------ equivalence tables

NONFULL_IDENTITIES: List[Tuple[str, str]] = [
    ("forall x. P(x)", "false"), ("forall x. Q(x)", "false"),
    ("exists x. P(x)", "P(0)"), ("exists x. Q(x)", "Q(0)"),
    ("P(x) -> Q(x)", "Q(x)"), ("Q(x) -> P(x)", "P(0)"),
    ("P(x) | Q(x)", "P(x)"), ("P(x) & Q(x)", "Q(x)"),
    ("P(x) -> P(0)", "P(0)"), ("P(0) -> P(x)", "P(x)"),
    ("P(x) | P(0)", "P(0)"), ("P(x) & P(0)", "P(x)"),
    ("Q(x) -> Q(0)", "P(0)"), ("Q(0) -> Q(x)", "Q(x)"),
    ("Q(x) | Q(0)", "Q(0)"), ("Q(x) & Q(0)", "Q(x)"),
    ("P(x) -> Q(0)", "Q(0)"), ("Q(0) -> P(x)", "Q(x)"),
    ("P(x) | Q(0)", "P(0)"), ("P(x) & Q(0)", "Q(x)"),
    ("Q(x) -> Q(0)", "P(0)"), ("Q(0) -> Q(x)", "Q(x)"),
    ("Q(x) | Q(0)", "Q(0)"), ("Q(x) & Q(0)", "Q(x)"),
    ("P(x) -> false", "false"), ("false -> P(x)", "P(0)"),
    ("P(x) | false", "P(x)"), ("P(x) & false", "false"),
    ("Q(x) -> false", "false"), ("false -> Q(x)", "P(0)"),
    ("Q(x) | false", "Q(x)"), ("Q(x) & false", "false"),
]


@dataclass
class IdentityResult:
    left: str
    right: str
    holds: bool
    actual: str  # the closure class the left side actually falls in

    def line(self):
        status = "holds" if self.holds else f"FAILS (left side is {self.actual})"
        return f"{self.left}  ==  {self.right}: {status}"


def check_identities(fam: ChainFamily, pairs=None) -> List[IdentityResult]:
    pairs = NONFULL_IDENTITIES if pairs is None else pairs
    classes = predicate_closure(fam)
    out = []
    for left, right in pairs:
        a, b = force_set(fam, left), force_set(fam, right)
        actual = next((c.text() for c in classes if c.zones == a), str(a))
        out.append(IdentityResult(left, right, a == b, actual))
    return out


# ------------------------------------------------ sampled expressible predicates

def _up(fam: ChainFamily, s: ZoneSet) -> ZoneSet:
    """Upward closure of a chain-only set."""
    flip = down_descending if fam.shape == "ascending" else down_ascending
    return ZoneSet(flip(z) for z in s) & fam.dom


def _random_zone(rng: random.Random) -> Optional[Zone]:
    kw = {}
    for var, lo, hi in (("i", 0, 8), ("t", 0, 8), ("d", -6, 6)):
        if rng.random() < 0.4:
            kw[var + "lo"] = rng.randint(lo, hi)
        if rng.random() < 0.4:
            kw[var + "hi"] = rng.randint(lo, hi)
    return Zone.make(CHAIN, **kw)


@dataclass
class SampleResult:
    rule: str
    limit: str
    instance: str
    holds: bool


def random_expressible_valuations(fam: ChainFamily, seed: int = 0, n: int = 50,
                                  scheme: Optional[str] = None) -> List[SampleResult]:
    """Random monotone zone-expressible Q; ascending checks HE, descending checks DP.

    With ``scheme="CD"`` a random upward closed proposition R is drawn as well.
    """
    if fam.shape == "finite":
        raise FamilyError("sampling needs a chain")
    rng = random.Random(seed)
    sid = scheme or ("HE" if fam.shape == "ascending" else "DP")
    args = {"P": "Q(x)"} if sid != "CD" else {"P": "Q(x)", "Q": "R"}
    inst = scheme_instance(sid, **args)
    out = []
    for k in range(n):
        if k == 0:
            chain = ZoneSet()
        elif k == 1:
            chain = ZoneSet([Zone.make(CHAIN)])
        else:
            chain = _up(fam, ZoneSet(_random_zone(rng) for _ in range(rng.randint(1, 3))))
        limit = None
        if fam.shape == "descending":
            # the limit may force Qt only where every chain world does
            gaps = ZoneSet([Zone.make(CHAIN)]) - chain
            top = ZoneSet([Zone.make(LIMIT)]) - ZoneSet(
                Zone.make(LIMIT, tlo=z.tlo, thi=z.thi) for z in gaps)
            limit = top if rng.random() < 0.5 else ZoneSet()
        if fam.prefix is not None:
            raise FamilyError("sampling over families with a prefix is not supported")
        sample = fam.with_rule("Q", chain, limit)
        if sid == "CD":
            lo = rng.choice([None, 0, rng.randint(1, 8)])
            prop = ZoneSet() if lo is None else ZoneSet([Zone.make(CHAIN, ilo=lo)])
            if fam.shape == "descending":
                prop = ZoneSet() if lo is None else ZoneSet([Zone.make(CHAIN, ihi=lo)])
            sample = sample.with_rule("R", prop, ZoneSet() if fam.shape == "descending" else None)
        out.append(SampleResult(str(chain), str(limit) if limit is not None else "-",
                                to_text(inst), forced_everywhere(sample, inst)))
    return out
