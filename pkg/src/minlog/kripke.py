"""Finite Kripke models for minimal logic.

Worlds are indexed in file order and sets of worlds are int bitmasks, so
forcing a formula means computing one mask.  ``false`` is an ordinary atom
here: a world may force it, and monotonicity applies as for any atom.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .schemes import TT_RULES, get_scheme
from .syntax import (
    And, Atom, Bottom, Const, Forall, Formula, Implies, Or,
    constants, free_vars, parse_formula, to_text,
)

DEFAULT_CAP = 10 ** 7
SECTIONS = ("worlds", "order", "domain", "atoms", "bot")


class ModelError(ValueError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class CapExceeded(RuntimeError):
    pass


def valuation_cap() -> int:
    raw = os.environ.get("MINLOG_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ModelError(f"MINLOG_CAP must be an integer, got {raw!r}") from None


@dataclass
class FiniteKripkeModel:
    worlds: Tuple[str, ...]
    order: Tuple[Tuple[str, str], ...]
    domain: Dict[str, frozenset]
    atoms: Dict[str, frozenset]  # world -> {(pred, arg or None)}
    bot: frozenset = frozenset()
    aliases: Dict[str, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.index = {w: k for k, w in enumerate(self.worlds)}
        n = len(self.worlds)
        reach = [[i == j for j in range(n)] for i in range(n)]
        for a, b in self.order:
            if a in self.index and b in self.index:
                reach[self.index[a]][self.index[b]] = True
        for k in range(n):
            for i in range(n):
                if reach[i][k]:
                    for j in range(n):
                        if reach[k][j]:
                            reach[i][j] = True
        self.up = [sum(1 << j for j in range(n) if reach[i][j]) for i in range(n)]
        self.all_mask = (1 << n) - 1
        self.elements = sorted(set().union(*self.domain.values())) if self.domain else []
        self.dom_mask = {d: self.mask(w for w in self.worlds if d in self.domain.get(w, ()))
                         for d in self.elements}
        self.bot_mask = self.mask(self.bot)
        table = {}
        for w, facts in self.atoms.items():
            for key in facts:
                table[key] = table.get(key, 0) | (1 << self.index[w])
        self.table = table

    # -- helpers
    def mask(self, ws) -> int:
        return sum(1 << self.index[w] for w in set(ws))

    def names(self, mask: int) -> List[str]:
        return [w for k, w in enumerate(self.worlds) if mask >> k & 1]

    def leq(self, a: str, b: str) -> bool:
        return bool(self.up[self.index[a]] >> self.index[b] & 1)

    def upsets(self, within: Optional[int] = None) -> List[int]:
        """Upward-closed world sets (inside ``within``), ascending as integers."""
        within = self.all_mask if within is None else within
        out = []
        for m in range(self.all_mask + 1):
            if m & ~within:
                continue
            if all(self.up[k] & ~m == 0 for k in range(len(self.worlds)) if m >> k & 1):
                out.append(m)
        return out

    def is_linear(self) -> bool:
        return all(self.leq(a, b) or self.leq(b, a) for a in self.worlds for b in self.worlds)

    def is_v_free(self) -> bool:
        """No world sees two incomparable worlds."""
        for w in self.worlds:
            above = self.names(self.up[self.index[w]])
            for a in above:
                for b in above:
                    if not (self.leq(a, b) or self.leq(b, a)):
                        return False
        return True

    def constant_domain(self) -> bool:
        return len({self.domain[w] for w in self.worlds}) <= 1

    def predicate_arities(self) -> Dict[str, int]:
        ar = {}
        for facts in self.atoms.values():
            for pred, arg in facts:
                ar[pred] = 0 if arg is None else 1
        return ar


# ------------------------------------------------------------- file format

_ATOM = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?:\(([A-Za-z0-9_']+)\))?$")


def _sections(text: str) -> Dict[str, List[str]]:
    out: Dict[str, List[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^\[(\w+)\]\s*(.*)$", line)
        if m:
            current = m.group(1).lower()
            if current not in SECTIONS:
                raise ModelError(f"line {lineno}: unknown section [{current}]")
            out.setdefault(current, [])
            line = m.group(2).strip()
            if not line:
                continue
        if current is None:
            raise ModelError(f"line {lineno}: content before any section header")
        out[current].extend(p.strip() for p in line.split(";") if p.strip())
    return out


def _entries(items, what):
    """Parse ``W: a b c`` entries into (world, [tokens]) pairs."""
    out = []
    for item in items:
        if ":" not in item:
            raise ModelError(f"[{what}] entry {item!r} lacks 'WORLD:'")
        w, rest = item.split(":", 1)
        out.append((w.strip(), rest.split()))
    return out


def _term_index(tok: str, aliases: Dict[str, int], used: set) -> int:
    if tok.isdigit():
        return int(tok)
    if tok not in aliases:
        k = 0
        while k in used or k in aliases.values():
            k += 1
        aliases[tok] = k
    return aliases[tok]


def load_model(text: str, name: str = "") -> FiniteKripkeModel:
    """Parse and validate; raises ModelError listing every violation."""
    sec = _sections(text)
    worlds = []
    for item in sec.get("worlds", []):
        for w in item.split():
            if w in worlds:
                raise ModelError(f"world {w} declared twice")
            worlds.append(w)
    if not worlds:
        raise ModelError("model has no [worlds]")
    order = []
    for item in sec.get("order", []):
        for chain in item.split():
            parts = chain.split("<")
            if len(parts) < 2 or not all(parts):
                raise ModelError(f"bad order chain {chain!r}")
            order.extend(zip(parts, parts[1:]))
    raw_dom = _entries(sec.get("domain", []), "domain")
    numeric = {int(t) for _, toks in raw_dom for t in toks if t.isdigit()}
    aliases: Dict[str, int] = {}
    domain = {w: frozenset() for w in worlds}
    violations = []
    for w, toks in raw_dom:
        if w not in domain:
            violations.append(f"[domain] names undeclared world {w}")
            continue
        domain[w] = domain[w] | {_term_index(t, aliases, numeric) for t in toks}
    atoms = {w: frozenset() for w in worlds}
    for w, toks in _entries(sec.get("atoms", []), "atoms"):
        if w not in atoms:
            violations.append(f"[atoms] names undeclared world {w}")
            continue
        facts = set()
        for tok in toks:
            m = _ATOM.match(tok)
            if not m:
                raise ModelError(f"bad atom {tok!r} at {w}")
            pred, arg = m.groups()
            facts.add((pred, None if arg is None else _term_index(arg, aliases, numeric)))
        atoms[w] = atoms[w] | facts
    bot = set()
    for item in sec.get("bot", []):
        for w in item.split():
            if w not in atoms:
                violations.append(f"[bot] names undeclared world {w}")
            bot.add(w)
    for a, b in order:
        for w in (a, b):
            if w not in domain:
                violations.append(f"[order] names undeclared world {w}")
    if violations:
        raise ModelError(violations)
    m = FiniteKripkeModel(tuple(worlds), tuple(order), domain, atoms, frozenset(bot), aliases, name)
    problems = validate_model(m)
    if problems:
        raise ModelError(problems)
    return m


def read_model(path) -> FiniteKripkeModel:
    from pathlib import Path
    p = Path(path)
    return load_model(p.read_text(encoding="ascii"), p.stem)


def validate_model(m: FiniteKripkeModel) -> List[str]:
    out = []
    for w in m.worlds:
        if not m.domain.get(w):
            out.append(f"world {w} has an empty domain")
        for pred, arg in sorted(m.atoms.get(w, ()), key=str):
            if arg is not None and arg not in m.domain.get(w, ()):
                out.append(f"atom {pred}({arg}) at {w} has its argument outside the domain")
    arity: Dict[str, int] = {}
    for w in m.worlds:
        for pred, arg in m.atoms.get(w, ()):
            a = 0 if arg is None else 1
            if arity.setdefault(pred, a) != a:
                out.append(f"predicate {pred} used with arity 0 and 1")
    for v in m.worlds:
        for w in m.worlds:
            if v == w or not m.leq(v, w):
                continue
            if not m.domain[v] <= m.domain[w]:
                out.append(f"domain not monotone from {v} to {w}")
            missing = m.atoms[v] - m.atoms[w]
            for pred, arg in sorted(missing, key=str):
                shown = pred if arg is None else f"{pred}({arg})"
                out.append(f"atom {shown} forced at {v} but not at {w} ({v} <= {w})")
            if v in m.bot and w not in m.bot:
                out.append(f"false forced at {v} but not at {w} ({v} <= {w})")
    return sorted(set(out), key=out.index)


def load_valuation(text: str, m: FiniteKripkeModel) -> FiniteKripkeModel:
    """Overlay an ``[atoms]`` file: predicates it mentions replace the model's."""
    sec = _sections(text)
    new = {w: set() for w in m.worlds}
    aliases = dict(m.aliases)
    used = set(m.elements)
    for w, toks in _entries(sec.get("atoms", []), "atoms"):
        if w not in new:
            raise ModelError(f"valuation names unknown world {w}")
        for tok in toks:
            mt = _ATOM.match(tok)
            if not mt:
                raise ModelError(f"bad atom {tok!r} at {w}")
            pred, arg = mt.groups()
            new[w].add((pred, None if arg is None else _term_index(arg, aliases, used)))
    preds = {p for facts in new.values() for p, _ in facts}
    atoms = {w: frozenset({a for a in m.atoms[w] if a[0] not in preds} | new[w]) for w in m.worlds}
    out = FiniteKripkeModel(m.worlds, m.order, dict(m.domain), atoms, m.bot, aliases, m.name)
    problems = validate_model(out)
    if problems:
        raise ModelError(problems)
    return out


def dump_model(m: FiniteKripkeModel) -> str:
    back = {v: k for k, v in m.aliases.items()}

    def term(d):
        return back.get(d, str(d))

    lines = ["[worlds] " + " ".join(m.worlds)]
    if m.order:
        lines.append("[order] " + " ".join(f"{a}<{b}" for a, b in m.order))
    lines.append("[domain] " + " ; ".join(
        f"{w}: " + " ".join(term(d) for d in sorted(m.domain[w])) for w in m.worlds))
    facts = [(w, sorted(m.atoms[w], key=lambda a: (a[0], -1 if a[1] is None else a[1])))
             for w in m.worlds if m.atoms[w]]
    if facts:
        lines.append("[atoms] " + " ; ".join(
            f"{w}: " + " ".join(p if a is None else f"{p}({term(a)})" for p, a in fs)
            for w, fs in facts))
    if m.bot:
        lines.append("[bot] " + " ".join(w for w in m.worlds if w in m.bot))
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- evaluation

class EvalError(ValueError):
    pass


def compile_formula(m: FiniteKripkeModel, f: Formula, env=None):
    """Turn ``f`` into a function from an atom table to the mask of forcing worlds."""
    env = dict(env or {})
    up = m.up
    n = len(m.worlds)

    def safe(bad):
        r = 0
        for k in range(n):
            if not up[k] & bad:
                r |= 1 << k
        return r

    def comp(g, env):
        if isinstance(g, Bottom):
            bm = m.bot_mask
            return lambda tab: bm
        if isinstance(g, Atom):
            if g.arg is None:
                key = (g.pred, None)
                return lambda tab: tab.get(key, 0)
            d = term_in(g.arg, env)
            key = (g.pred, d)
            dm = m.dom_mask.get(d, 0)
            return lambda tab: tab.get(key, 0) & dm
        if isinstance(g, Implies):
            a, b = comp(g.left, env), comp(g.right, env)
            return lambda tab: safe(a(tab) & ~b(tab))
        if isinstance(g, And):
            a, b = comp(g.left, env), comp(g.right, env)
            return lambda tab: a(tab) & b(tab)
        if isinstance(g, Or):
            a, b = comp(g.left, env), comp(g.right, env)
            return lambda tab: a(tab) | b(tab)
        parts = []
        for d in m.elements:
            inner = dict(env)
            inner[g.var] = d
            parts.append((m.dom_mask[d], comp(g.body, inner)))
        if isinstance(g, Forall):
            def run_all(tab):
                bad = 0
                for dm, c in parts:
                    bad |= dm & ~c(tab)
                return safe(bad)
            return run_all

        def run_ex(tab):
            r = 0
            for dm, c in parts:
                r |= dm & c(tab)
            return r
        return run_ex

    def term_in(t, scope):
        if isinstance(t, Const):
            return t.index
        if t.name in scope:
            return scope[t.name]
        if t.name in m.aliases:
            return m.aliases[t.name]
        raise EvalError(f"free variable {t.name} has no value")

    return comp(f, env)


def forcing_mask(m: FiniteKripkeModel, f: Formula, table=None) -> int:
    return compile_formula(m, f)(m.table if table is None else table)


def _defined_mask(m: FiniteKripkeModel, f: Formula) -> int:
    mask = m.all_mask
    for c in constants(f):
        mask &= m.dom_mask.get(c, 0)
    return mask


def forces(m: FiniteKripkeModel, w: str, f, table=None) -> bool:
    if isinstance(f, str):
        f = parse_formula(f)
    if w not in m.index:
        raise EvalError(f"unknown world {w}")
    for c in constants(f):
        if c not in m.domain[w]:
            raise EvalError(f"constant {c} is not in the domain of {w}")
    for v in free_vars(f):
        if v not in m.aliases:
            raise EvalError(f"free variable {v} has no value")
        if m.aliases[v] not in m.domain[w]:
            raise EvalError(f"term {v} is not in the domain of {w}")
    return bool(forcing_mask(m, f, table) >> m.index[w] & 1)


# -------------------------------------------------------------- valuations

@dataclass(frozen=True)
class Witness:
    world: str
    valuation: Tuple  # ((atom-name, arity, ((element or None, (worlds...)), ...)), ...)

    def atoms_by_world(self, m: FiniteKripkeModel) -> Dict[str, List[str]]:
        back = {v: k for k, v in m.aliases.items()}
        out = {w: [] for w in m.worlds}
        for name, arity, cells in self.valuation:
            for d, ws in cells:
                label = name if d is None else f"{name}({back.get(d, d)})"
                for w in ws:
                    out[w].append(label)
        return out

    def as_text(self, m: FiniteKripkeModel) -> str:
        parts = [f"{w}: " + " ".join(a) for w, a in self.atoms_by_world(m).items() if a]
        return f"world {self.world}; " + ("[atoms] " + " ; ".join(parts) if parts else "all atoms empty")

    def as_valuation_file(self, m: FiniteKripkeModel) -> str:
        parts = [f"{w}: " + " ".join(a) for w, a in self.atoms_by_world(m).items() if a]
        return "[atoms]\n" + "\n".join(parts) + "\n"

    def as_dict(self, m: FiniteKripkeModel) -> dict:
        return {"world": self.world, "atoms": self.atoms_by_world(m)}


@dataclass
class SchemeVerdict:
    scheme: str
    holds: bool
    witness: Optional[Witness] = None
    checked: int = 0
    note: str = ""


def placeholder_atoms(scheme_id: str) -> List[Tuple[str, int]]:
    s = get_scheme(scheme_id)
    names = dict(s.generic_names)
    return [(names.get(n, n), a) for n, a in s.placeholders]


def _options(m: FiniteKripkeModel, arity: int):
    """Every monotone interpretation of one placeholder, as a list of cell tuples."""
    if arity == 0:
        return [((None, u),) for u in m.upsets()]
    per = [[(d, u) for u in m.upsets(m.dom_mask[d])] for d in m.elements]
    return [tuple(c) for c in itertools.product(*per)]


def count_valuations(m: FiniteKripkeModel, holes) -> int:
    total = 1
    for _, arity in holes:
        if arity == 0:
            total *= len(m.upsets())
        else:
            for d in m.elements:
                total *= len(m.upsets(m.dom_mask[d]))
    return total


def iter_valuations(m: FiniteKripkeModel, holes, cap=None):
    cap = valuation_cap() if cap is None else cap
    total = count_valuations(m, holes)
    if total > cap:
        raise CapExceeded(f"{total} valuations exceed the cap of {cap} (set MINLOG_CAP to raise it)")
    choices = [_options(m, a) for _, a in holes]
    for combo in itertools.product(*choices):
        yield combo


def _table_for(m: FiniteKripkeModel, holes, combo, base=None):
    names = {n for n, _ in holes}
    tab = {k: v for k, v in (m.table if base is None else base).items() if k[0] not in names}
    for (name, _), cells in zip(holes, combo):
        for d, mask in cells:
            if mask:
                tab[(name, d)] = mask
    return tab


def _witness(m, holes, combo, world):
    val = tuple((name, arity, tuple((d, tuple(m.names(mask))) for d, mask in cells))
                for (name, arity), cells in zip(holes, combo))
    return Witness(world, val)


def formula_holds_full(m: FiniteKripkeModel, f: Formula, holes, cap=None) -> SchemeVerdict:
    """Does ``f`` hold at every world under every monotone reading of ``holes``?"""
    run = compile_formula(m, f)
    defined = _defined_mask(m, f)
    checked = 0
    for combo in iter_valuations(m, holes, cap):
        checked += 1
        got = run(_table_for(m, holes, combo))
        missing = defined & ~got
        if missing:
            k = (missing & -missing).bit_length() - 1
            return SchemeVerdict(to_text(f), False, _witness(m, holes, combo, m.worlds[k]), checked)
    return SchemeVerdict(to_text(f), True, None, checked)


def tt_labellings(m: FiniteKripkeModel, cap=None):
    """Monotone D labellings under which D0, ~D1 and Dx are forced everywhere."""
    one = 1 if 1 in m.elements else 0  # with a single term both constants name it
    rules = [TT_RULES["D0"], Implies(Atom("D", Const(one)), Bottom()), TT_RULES["Dx"]]
    runs = [(compile_formula(m, r), _defined_mask(m, r)) for r in rules]
    if "D" in m.predicate_arities():
        combos = [None]
    else:
        combos = iter_valuations(m, [("D", 1)], cap)
    for combo in combos:
        tab = m.table if combo is None else _table_for(m, [("D", 1)], combo)
        if all(defined & ~run(tab) == 0 for run, defined in runs):
            yield tab


def tt_holds(m: FiniteKripkeModel, cap=None) -> SchemeVerdict:
    for _ in tt_labellings(m, cap):
        return SchemeVerdict("TT", True)
    return SchemeVerdict("TT", False, note="no monotone D labelling forces D0, ~D1 and Dx everywhere")


def scheme_holds_full(m: FiniteKripkeModel, scheme_id: str, cap=None) -> SchemeVerdict:
    """Exhaustive check of every instance of ``scheme_id`` over the model's monotone predicates."""
    if scheme_id == "TT":
        return tt_holds(m, cap)
    s = get_scheme(scheme_id)
    v = formula_holds_full(m, s.generic_instance(), placeholder_atoms(scheme_id), cap)
    v.scheme = scheme_id
    return v


def recheck_witness(m: FiniteKripkeModel, scheme_id: str, w: Witness) -> bool:
    """True iff the witness really refutes the scheme (the instance is not forced)."""
    holes = placeholder_atoms(scheme_id)
    tab = dict(m.table)
    names = {n for n, _ in holes}
    tab = {k: v for k, v in tab.items() if k[0] not in names}
    for name, _, cells in w.valuation:
        for d, ws in cells:
            if ws:
                tab[(name, d)] = m.mask(ws)
    f = get_scheme(scheme_id).generic_instance()
    return not forces(m, w.world, f, tab)


# ----------------------------------------------------------- derived facts

@dataclass
class DerivedReport:
    model: str
    facts: List[Tuple[str, bool, bool]]  # (statement, premise true?, consistent with exhaustive check)

    @property
    def consistent(self) -> bool:
        return all(ok for _, _, ok in self.facts)

    def text(self) -> str:
        return "\n".join(f"{'ok ' if ok else 'BAD'} {s} [{'applies' if p else 'n/a'}]"
                         for s, p, ok in self.facts) + "\n"


def derived_checks(m: FiniteKripkeModel, cap=None) -> DerivedReport:
    efq = scheme_holds_full(m, "EFQ", cap).holds
    no_bot = not m.bot
    facts = [(f"EFQ holds iff false is forced nowhere (false forced at {len(m.bot)} worlds, "
              f"EFQ {'holds' if efq else 'fails'})", True, efq == no_bot)]
    few = len(m.worlds) - len(m.bot) <= 1
    lem_ok = True
    if few:
        lem_ok = scheme_holds_full(m, "LEM", cap).holds
    facts.append(("at most one world does not force false, so LEM holds", few, lem_ok))
    vfree = m.is_v_free()
    vf_ok = True
    if vfree:
        vf_ok = scheme_holds_full(m, "DGP", cap).holds and scheme_holds_full(m, "WLEM", cap).holds
    facts.append(("model is v-free, so DGP and WLEM hold", vfree, vf_ok))
    return DerivedReport(m.name, facts)


# ------------------------------------------------------------------ catalog

@dataclass
class CatalogEntry:
    model: str
    path: str
    holds: List[str]
    fails: List[str]


@dataclass
class CatalogResult:
    entry: CatalogEntry
    verdicts: Dict[str, SchemeVerdict]
    mismatches: List[str]
    derived: Optional[DerivedReport] = None

    @property
    def ok(self):
        return not self.mismatches and (self.derived is None or self.derived.consistent)


def load_catalog(text: str) -> List[CatalogEntry]:
    """Lines: ``name @ file  holds: A B  fails: C D``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^(\S+)\s*@\s*(\S+)\s+holds:(.*?)\s+fails:(.*)$", line)
        if not m:
            raise ModelError(f"catalog line {lineno}: cannot parse {line!r}")
        name, path, holds, fails = m.groups()
        out.append(CatalogEntry(name, path, holds.split(), fails.split()))
    return out


def check_catalog_entry(m: FiniteKripkeModel, entry: CatalogEntry, cap=None) -> CatalogResult:
    verdicts, mismatches = {}, []
    for sid in entry.holds + entry.fails:
        verdicts[sid] = v = scheme_holds_full(m, sid, cap)
        if v.witness is not None and not recheck_witness(m, sid, v.witness):
            mismatches.append(f"{sid}: witness does not re-check")
    for sid in entry.holds:
        if not verdicts[sid].holds:
            mismatches.append(f"{sid} listed as holding but fails ({verdicts[sid].witness.as_text(m) if verdicts[sid].witness else verdicts[sid].note})")
    for sid in entry.fails:
        if verdicts[sid].holds:
            mismatches.append(f"{sid} listed as failing but holds")
    return CatalogResult(entry, verdicts, mismatches, derived_checks(m, cap))


def run_catalog(path=None, cap=None) -> List[CatalogResult]:
    """Check every entry of a catalog file; model paths are relative to it."""
    from pathlib import Path
    p = Path(path) if path else Path(__file__).parent / "data" / "catalog.txt"
    out = []
    for entry in load_catalog(p.read_text(encoding="ascii")):
        m = read_model(p.parent / entry.path)
        out.append(check_catalog_entry(m, entry, cap))
    return out


def catalog_text(results: List[CatalogResult]) -> str:
    lines = []
    for r in results:
        e = r.entry
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {e.model}: holds {' '.join(e.holds)}; "
                     f"fails {' '.join(e.fails)}")
        lines.extend(f"    mismatch: {x}" for x in r.mismatches)
        if r.derived is not None and not r.derived.consistent:
            lines.append("    " + r.derived.text().rstrip().replace("\n", "\n    "))
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} catalog models reproduced")
    return "\n".join(lines) + "\n"
