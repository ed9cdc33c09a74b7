"""Terms and formulas of first-order minimal logic.

Negation is sugar: ``~F`` is ``F -> false``.  Predicates take zero or one
term argument; terms are variables or natural-number constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    index: int

    def __str__(self):
        return str(self.index)


Term = Union[Var, Const]


# ------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Atom:
    pred: str
    arg: Optional[Term] = None

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self):
        return to_text(self)


Formula = Union[Bottom, Atom, Implies, And, Or, Forall, Exists]
BOT = Bottom()
BINARY = (Implies, And, Or)
QUANT = (Forall, Exists)


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def is_neg(f: Formula) -> bool:
    return isinstance(f, Implies) and isinstance(f.right, Bottom)


# ------------------------------------------------------ variable handling

def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, Atom):
        return frozenset([f.arg.name]) if isinstance(f.arg, Var) else frozenset()
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def all_vars(f: Formula) -> frozenset:
    """Every variable name occurring in ``f``, bound or free."""
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, Atom):
        return frozenset([f.arg.name]) if isinstance(f.arg, Var) else frozenset()
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    return all_vars(f.body) | {f.var}


def constants(f: Formula) -> frozenset:
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, Atom):
        return frozenset([f.arg.index]) if isinstance(f.arg, Const) else frozenset()
    if isinstance(f, BINARY):
        return constants(f.left) | constants(f.right)
    return constants(f.body)


def terms_of(f: Formula) -> Iterator[Term]:
    """Term arguments of atoms, in left-to-right order (with repeats)."""
    if isinstance(f, Atom):
        if f.arg is not None:
            yield f.arg
    elif isinstance(f, BINARY):
        yield from terms_of(f.left)
        yield from terms_of(f.right)
    elif isinstance(f, QUANT):
        yield from terms_of(f.body)


def predicates(f: Formula) -> dict:
    """Map of predicate name to arity for every atom in ``f``."""
    out = {}
    if isinstance(f, Atom):
        out[f.pred] = 0 if f.arg is None else 1
    elif isinstance(f, BINARY):
        out.update(predicates(f.left))
        out.update(predicates(f.right))
    elif isinstance(f, QUANT):
        out.update(predicates(f.body))
    return out


def fresh_name(base: str, avoid) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Capture-avoiding substitution of ``t`` for free occurrences of ``v``."""
    if isinstance(f, Bottom):
        return f
    if isinstance(f, Atom):
        if isinstance(f.arg, Var) and f.arg.name == v:
            return Atom(f.pred, t)
        return f
    if isinstance(f, BINARY):
        left = substitute(f.left, v, t)
        right = substitute(f.right, v, t)
        if left is f.left and right is f.right:
            return f
        return type(f)(left, right)
    if f.var == v or v not in free_vars(f.body):
        return f
    if isinstance(t, Var) and t.name == f.var:
        new = fresh_name(f.var, all_vars(f.body) | {v, t.name})
        body = substitute(f.body, f.var, Var(new))
        return type(f)(new, substitute(body, v, t))
    return type(f)(f.var, substitute(f.body, v, t))


def rename_bound(f: Formula, avoid) -> Formula:
    """Rename binders of ``f`` so none of them is in ``avoid``."""
    if isinstance(f, (Bottom, Atom)):
        return f
    if isinstance(f, BINARY):
        return type(f)(rename_bound(f.left, avoid), rename_bound(f.right, avoid))
    body = rename_bound(f.body, avoid)
    if f.var in avoid:
        new = fresh_name(f.var, set(avoid) | all_vars(body))
        return type(f)(new, substitute(body, f.var, Var(new)))
    return type(f)(f.var, body)


def _nameless(f: Formula, env: tuple):
    if isinstance(f, Bottom):
        return ("bot",)
    if isinstance(f, Atom):
        a = f.arg
        if a is None:
            return ("atom", f.pred)
        if isinstance(a, Const):
            return ("atom", f.pred, ("c", a.index))
        for depth, name in enumerate(reversed(env)):
            if name == a.name:
                return ("atom", f.pred, ("b", depth))
        return ("atom", f.pred, ("f", a.name))
    if isinstance(f, BINARY):
        return (type(f).__name__, _nameless(f.left, env), _nameless(f.right, env))
    return (type(f).__name__, _nameless(f.body, env + (f.var,)))


def nameless(f: Formula):
    """A hashable de Bruijn form; equal iff the formulas are alpha-equivalent."""
    return _nameless(f, ())


def alpha_equal(f: Formula, g: Formula) -> bool:
    return f == g or nameless(f) == nameless(g)


def size(f: Formula) -> int:
    if isinstance(f, (Bottom, Atom)):
        return 1
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    return 1 + size(f.body)


# --------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<arrow>->)|(?P<nat>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[~&|().])"
)
KEYWORDS = {"forall", "exists", "false"}


def _tokenize(text):
    pos, line, col = 0, 1, 1
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            out.append((kind, value, line, col))
        for ch in value:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text, arities):
        self.toks = _tokenize(text)
        self.i = 0
        self.arities = arities

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def formula(self):
        tok = self.peek()
        if tok[0] == "ident" and tok[1] in ("forall", "exists"):
            self.take()
            var = self.take()
            if var[0] != "ident" or var[1] in KEYWORDS:
                self.error("expected a variable after quantifier", var)
            self.expect(".")
            body = self.formula()
            cls = Forall if tok[1] == "forall" else Exists
            return cls(var[1], body)
        left = self.disj()
        if self.peek()[0] == "arrow":
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self):
        f = self.conj()
        while self.peek()[1] == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.neg()
        while self.peek()[1] == "&":
            self.take()
            f = And(f, self.neg())
        return f

    def neg(self):
        if self.peek()[1] == "~":
            self.take()
            return Implies(self.neg(), BOT)
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if tok[0] != "ident":
            self.error(f"unexpected {tok[1] or 'end of input'!r}")
        if tok[1] in ("forall", "exists"):
            # quantifier scope extends maximally right even in operand position
            return self.formula()
        self.take()
        if tok[1] == "false":
            return BOT
        if self.peek()[1] == "(":
            self.take()
            arg = self.term()
            self.expect(")")
            self._arity(tok, 1)
            return Atom(tok[1], arg)
        self._arity(tok, 0)
        return Atom(tok[1])

    def term(self):
        tok = self.take()
        if tok[0] == "nat":
            return Const(int(tok[1]))
        if tok[0] == "ident" and tok[1] not in KEYWORDS:
            return Var(tok[1])
        self.error(f"expected a term, found {tok[1] or 'end of input'!r}", tok)

    def _arity(self, tok, arity):
        known = self.arities.setdefault(tok[1], arity)
        if known != arity:
            self.error(f"predicate {tok[1]} used with arity {arity}, previously {known}", tok)


def parse_formula(text: str, arities: Optional[dict] = None) -> Formula:
    """Parse ASCII formula text.

    ``arities`` is an optional registry shared across calls; predicate names
    must keep one arity throughout it.
    """
    p = _Parser(text, {} if arities is None else arities)
    f = p.formula()
    if p.peek()[0] != "eof":
        p.error(f"trailing input {p.peek()[1]!r}")
    return f


# -------------------------------------------------------------- printing

_QUANT, _IMP, _OR, _AND, _NEG, _ATOM = range(6)

ASCII = {"forall": "forall ", "exists": "exists ", "dot": ". ", "imp": " -> ",
         "and": " & ", "or": " | ", "neg": "~", "bot": "false"}
UNICODE = {"forall": "∀", "exists": "∃", "dot": " ", "imp": " → ",
           "and": " ∧ ", "or": " ∨ ", "neg": "¬", "bot": "⊥"}


def _level(f):
    if isinstance(f, (Bottom, Atom)):
        return _ATOM
    if is_neg(f):
        return _NEG
    if isinstance(f, Implies):
        return _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _QUANT


def _show(f, need, sym):
    text = _render(f, sym)
    return f"({text})" if _level(f) < need else text


def _render(f, sym):
    if isinstance(f, Bottom):
        return sym["bot"]
    if isinstance(f, Atom):
        return f.pred if f.arg is None else f"{f.pred}({f.arg})"
    if is_neg(f):
        return sym["neg"] + _show(f.left, _NEG, sym)
    if isinstance(f, Implies):
        return _show(f.left, _OR, sym) + sym["imp"] + _show(f.right, _QUANT, sym)
    if isinstance(f, Or):
        return _show(f.left, _OR, sym) + sym["or"] + _show(f.right, _AND, sym)
    if isinstance(f, And):
        return _show(f.left, _AND, sym) + sym["and"] + _show(f.right, _NEG, sym)
    q = sym["forall"] if isinstance(f, Forall) else sym["exists"]
    body = _render(f.body, sym)
    if _level(f.body) in (_IMP, _OR, _AND):
        body = f"({body})"
    return f"{q}{f.var}{sym['dot']}{body}"


def to_text(f: Formula, unicode: bool = False) -> str:
    return _render(f, UNICODE if unicode else ASCII)
