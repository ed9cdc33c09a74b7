"""The principle catalog: named templates over placeholder atoms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

from .syntax import (
    Atom, Const, Formula, Var, Bottom, BINARY, Forall,
    alpha_equal, free_vars, all_vars, fresh_name, parse_formula, substitute,
)


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class Scheme:
    id: str
    placeholders: Tuple[Tuple[str, int], ...]
    template: Formula
    title: str = ""
    # arity-0 placeholders are renamed to these letters in the generic instance
    generic_names: Tuple[Tuple[str, str], ...] = ()

    @property
    def arity(self) -> dict:
        return dict(self.placeholders)

    def generic_args(self) -> dict:
        names = dict(self.generic_names)
        args = {}
        for name, arity in self.placeholders:
            if arity == 0:
                args[name] = Atom(names.get(name, name))
            else:
                args[name] = ("x", Atom(name, Var("x")))
        return args

    def generic_instance(self) -> Formula:
        return instantiate(self, self.generic_args())


def _scheme(id, placeholders, text, title, generic=()):
    return Scheme(id, tuple(placeholders), parse_formula(text), title, tuple(generic))


SCHEMES = {s.id: s for s in [
    _scheme("DNE", [("A", 0)], "~~A -> A", "Double Negation Elimination"),
    _scheme("EFQ", [("A", 0)], "false -> A", "Ex Falso Quodlibet"),
    _scheme("LEM", [("A", 0)], "A | ~A", "Law of Excluded Middle"),
    _scheme("WLEM", [("A", 0)], "~A | ~~A", "Weak Law of Excluded Middle"),
    _scheme("DGP", [("A", 0), ("B", 0)], "(A -> B) | (B -> A)", "Dirk Gently's Principle"),
    _scheme("DP", [("P", 1)], "exists y. (P(y) -> forall x. P(x))", "Drinker Paradox"),
    _scheme("HE", [("P", 1)], "exists y. ((exists x. P(x)) -> P(y))",
            "Schematic Hilbert Epsilon"),
    _scheme("GMP", [("P", 1)], "~(forall x. P(x)) -> exists x. ~P(x)",
            "General Markov's Principle"),
    _scheme("WGMP", [("P", 1)], "~(forall x. P(x)) -> ~~(exists x. ~P(x))",
            "Weak General Markov's Principle"),
    _scheme("GLPO", [("P", 1)], "(forall x. ~P(x)) | (exists x. P(x))",
            "General Limited Principle of Omniscience"),
    _scheme("GLPOA", [("P", 1)], "(forall x. P(x)) | (exists x. ~P(x))",
            "Alternate General Principle of Omniscience"),
    _scheme("DNSU", [("P", 1)], "(forall x. ~~P(x)) -> ~~(forall x. P(x))",
            "Universal Double Negation Shift"),
    _scheme("DNSE", [("P", 1)], "~~(exists x. P(x)) -> exists x. ~~P(x)",
            "Existential Double Negation Shift"),
    _scheme("CD", [("P", 1), ("Q", 0)],
            "(forall x. (P(x) | exists x. Q)) -> (forall x. P(x)) | (exists x. Q)",
            "Constant Domain", [("Q", "A")]),
    _scheme("IP", [("P", 1), ("Q", 0)],
            "((exists x. Q) -> exists x. P(x)) -> exists x. ((exists x. Q) -> P(x))",
            "Independence of Premise", [("Q", "A")]),
    _scheme("DPALT", [("P", 1)], "exists y. forall x. (P(y) -> P(x))",
            "Drinker Paradox, alternative form"),
    _scheme("HEALT", [("P", 1)], "exists y. forall x. (P(x) -> P(y))",
            "Hilbert Epsilon, alternative form"),
]}

# the three two-termed-logic rules
TT_RULES = {
    "D0": parse_formula("D(0)"),
    "notD1": parse_formula("~D(1)"),
    "Dx": parse_formula("forall x. (D(x) | ~D(x))"),
}


def get_scheme(scheme_id: str) -> Scheme:
    try:
        return SCHEMES[scheme_id]
    except KeyError:
        raise SchemeError(f"unknown scheme {scheme_id!r}") from None


def _normalize_args(scheme: Scheme, args: Mapping) -> dict:
    out = {}
    for name, arity in scheme.placeholders:
        if name not in args:
            raise SchemeError(f"{scheme.id}: missing argument for {name}")
        a = args[name]
        if arity == 0:
            if isinstance(a, tuple):
                raise SchemeError(f"{scheme.id}: {name} has arity 0, got a predicate")
            out[name] = (None, a)
        else:
            if not isinstance(a, tuple) or len(a) != 2:
                raise SchemeError(f"{scheme.id}: {name} has arity 1, needs (hole, formula)")
            out[name] = a
    extra = set(args) - set(out)
    if extra:
        raise SchemeError(f"{scheme.id}: unknown placeholders {sorted(extra)}")
    return out


def _inst(f, args, avoid):
    if isinstance(f, Bottom):
        return f
    if isinstance(f, Atom):
        if f.pred not in args:
            return f
        hole, body = args[f.pred]
        if hole is None:
            return body
        return substitute(body, hole, f.arg)
    if isinstance(f, BINARY):
        return type(f)(_inst(f.left, args, avoid), _inst(f.right, args, avoid))
    var, body = f.var, f.body
    if var in avoid:
        new = fresh_name(var, avoid | all_vars(body))
        body = substitute(body, var, Var(new))
        var = new
    return type(f)(var, _inst(body, args, avoid))


def instantiate(scheme: Scheme, args: Mapping) -> Formula:
    """Replace placeholders by arguments, renaming template binders as needed.

    ``args`` maps arity-0 placeholders to formulas and arity-1 placeholders to
    ``(hole_variable, formula)`` pairs.
    """
    norm = _normalize_args(scheme, args)
    avoid = set()
    for hole, body in norm.values():
        avoid |= free_vars(body) - ({hole} if hole else set())
    return _inst(scheme.template, norm, frozenset(avoid))


@dataclass(frozen=True)
class SchemeInstance:
    scheme_id: str
    args: Tuple = field(default=())

    def formula(self) -> Formula:
        return instantiate_scheme(self)


def instantiate_scheme(inst: SchemeInstance) -> Formula:
    return instantiate(get_scheme(inst.scheme_id), dict(inst.args))


# --------------------------------------------------------------- matching

def _collect(t, f, env, found, placeholders):
    if isinstance(t, Atom) and t.pred in placeholders:
        arity = placeholders[t.pred]
        bound_here = set(env.values())
        if arity == 0:
            if free_vars(f) & bound_here:
                return False
            cand = (None, f)
        else:
            if not isinstance(t.arg, Var) or t.arg.name not in env:
                return True  # left to the final instantiate-and-compare check
            hole = env[t.arg.name]
            if free_vars(f) & (bound_here - {hole}):
                return False
            cand = (hole, f)
        prev = found.get(t.pred)
        if prev is None:
            found[t.pred] = cand
            return True
        return _same_arg(prev, cand)
    if type(t) is not type(f):
        return False
    if isinstance(t, Bottom):
        return True
    if isinstance(t, Atom):
        if t.pred != f.pred or (t.arg is None) != (f.arg is None):
            return False
        if t.arg is None or isinstance(t.arg, Const):
            return t.arg == f.arg
        if not isinstance(f.arg, Var):
            return False
        return env.get(t.arg.name, t.arg.name) == f.arg.name
    if isinstance(t, BINARY):
        return (_collect(t.left, f.left, env, found, placeholders)
                and _collect(t.right, f.right, env, found, placeholders))
    inner = dict(env)
    inner[t.var] = f.var
    return _collect(t.body, f.body, inner, found, placeholders)


def _same_arg(a, b):
    (h1, f1), (h2, f2) = a, b
    if h1 is None:
        return alpha_equal(f1, f2)
    return alpha_equal(Forall(h1, f1), Forall(h2, f2))


def match_scheme(scheme: Scheme, f: Formula) -> Optional[dict]:
    """Arguments under which ``scheme`` instantiates to ``f``, or None."""
    placeholders = scheme.arity
    found = {}
    if not _collect(scheme.template, f, {}, found, placeholders):
        return None
    args = {}
    for name, arity in scheme.placeholders:
        if name not in found:
            # placeholder never reached: any argument works; pick a neutral one
            found[name] = (None, Bottom()) if arity == 0 else ("x", Bottom())
        hole, body = found[name]
        args[name] = body if arity == 0 else (hole, body)
    if not alpha_equal(instantiate(scheme, args), f):
        return None
    return args


def is_instance(scheme_id: str, f: Formula) -> bool:
    return match_scheme(get_scheme(scheme_id), f) is not None
