"""A small s-expression reader/writer for proof scripts.

Atoms come back as ``Symbol`` (bare words and ``:keywords``) or ``str``
(double-quoted strings).  ``;`` starts a comment running to end of line.
"""

import re


class SexprError(ValueError):
    pass


class Symbol(str):
    def __repr__(self):
        return f"Symbol({str(self)!r})"


_TOKEN = re.compile(r'\s+|;[^\n]*|(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()";]+)')


def read_all(text):
    """Parse every top-level expression in ``text``."""
    stack = [[]]
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SexprError(f"bad token at line {line}: {text[pos:pos + 20]!r}")
        open_, close, string, word = m.groups()
        if open_:
            stack.append([])
        elif close:
            if len(stack) == 1:
                raise SexprError(f"unbalanced ')' at line {line}")
            done = stack.pop()
            stack[-1].append(done)
        elif string is not None:
            stack[-1].append(re.sub(r"\\(.)", r"\1", string))
        elif word:
            stack[-1].append(Symbol(word))
        line += m.group().count("\n")
        pos = m.end()
    if len(stack) != 1:
        raise SexprError("unbalanced '(' at end of input")
    return stack[0]


def read(text):
    exprs = read_all(text)
    if len(exprs) != 1:
        raise SexprError(f"expected one expression, found {len(exprs)}")
    return exprs[0]


def dump_atom(x):
    if isinstance(x, Symbol):
        return str(x)
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def dump(x):
    if isinstance(x, list):
        return "(" + " ".join(dump(e) for e in x) + ")"
    return dump_atom(x)
