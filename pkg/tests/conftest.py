from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from minlog.syntax import (BOT, And, Atom, Const, Exists, Forall, Implies, Or, Var)

DATA = Path(__file__).resolve().parent.parent / "src" / "minlog" / "data"

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

VARS = ("x", "y", "z")


def terms():
    return st.one_of(st.sampled_from([Var(v) for v in VARS]), st.integers(0, 2).map(Const))


def atoms():
    return st.one_of(
        st.just(BOT),
        st.sampled_from([Atom("A"), Atom("B")]),
        st.builds(Atom, st.sampled_from(["P", "Q"]), terms()),
    )


def formulas(max_leaves=12):
    return st.recursive(
        atoms(),
        lambda sub: st.one_of(
            st.builds(Implies, sub, sub),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Forall, st.sampled_from(VARS), sub),
            st.builds(Exists, st.sampled_from(VARS), sub),
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture(scope="session")
def data_dir():
    return DATA
