"""Randomized check of the DP/HE characterization table on finite models."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional

from .kripke import FiniteKripkeModel, dump_model, scheme_holds_full

WORLD_NAMES = "ABCDEFGH"


def random_model(rng: random.Random, n: int, order: str = "random", terms: int = 2,
                 constant: bool = False, bot: bool = True) -> FiniteKripkeModel:
    """A rooted model on ``n`` worlds; world A lies below every other world.

    ``order`` is ``random`` (edges i<j with probability 1/2) or ``linear``.
    """
    worlds = tuple(WORLD_NAMES[:n])
    pairs = []
    for j in range(1, n):
        pairs.append((worlds[0], worlds[j]))
        for i in range(1, j):
            if order == "linear" or rng.random() < 0.5:
                pairs.append((worlds[i], worlds[j]))
    probe = FiniteKripkeModel(worlds, tuple(pairs), {w: frozenset({0}) for w in worlds},
                              {w: frozenset() for w in worlds})
    # domains: grow along the order by adding elements at random worlds
    domain = {w: {0} for w in worlds}
    for d in range(1, terms):
        if constant:
            starts = [worlds[0]]
        else:
            starts = [w for w in worlds if rng.random() < 0.4] or [worlds[rng.randrange(n)]]
        for s in starts:
            for w in worlds:
                if probe.leq(s, w):
                    domain[w].add(d)
    bot_worlds = set()
    if bot and rng.random() < 0.3:
        seed = worlds[rng.randrange(n)]
        bot_worlds = {w for w in worlds if probe.leq(seed, w)}
    return FiniteKripkeModel(worlds, tuple(pairs), {w: frozenset(v) for w, v in domain.items()},
                             {w: frozenset() for w in worlds}, frozenset(bot_worlds))


def branch_base(m: FiniteKripkeModel) -> Optional[str]:
    """A world with two incomparable successors and at least two terms, if any."""
    for a in m.worlds:
        if len(m.domain[a]) < 2:
            continue
        above = m.names(m.up[m.index[a]])
        for b in above:
            for c in above:
                if not (m.leq(b, c) or m.leq(c, b)):
                    return a
    return None


@dataclass
class RowResult:
    row: str
    expectation: str
    models: int = 0
    counterexamples: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return self.models > 0 and not self.counterexamples


def _dp_he(m):
    return scheme_holds_full(m, "DP").holds, scheme_holds_full(m, "HE").holds


def characterization_property_tests(seed: int = 0, per_row: int = 200, max_worlds: int = 5,
                                    max_terms: int = 3) -> List[RowResult]:
    rng = random.Random(seed)
    rows = [
        RowResult("branched, >= 2 terms at the branch point", "DP and HE fail"),
        RowResult("linear, constant domain", "DP and HE hold"),
        RowResult("one term at every world", "DP and HE hold"),
    ]
    # branched rows need rejection sampling
    while rows[0].models < per_row:
        n = rng.randint(3, max_worlds)
        m = random_model(rng, n, "random", rng.randint(2, max_terms))
        if branch_base(m) is None:
            continue
        rows[0].models += 1
        dp, he = _dp_he(m)
        if dp or he:
            rows[0].counterexamples.append(dump_model(m))
    for _ in range(per_row):
        m = random_model(rng, rng.randint(1, max_worlds), "linear", rng.randint(1, max_terms),
                         constant=True)
        rows[1].models += 1
        if _dp_he(m) != (True, True):
            rows[1].counterexamples.append(dump_model(m))
    for _ in range(per_row):
        m = random_model(rng, rng.randint(1, max_worlds), "random", 1)
        rows[2].models += 1
        if _dp_he(m) != (True, True):
            rows[2].counterexamples.append(dump_model(m))
    return rows


def report_text(rows: List[RowResult]) -> str:
    lines = []
    for r in rows:
        status = "ok" if r.ok else "COUNTEREXAMPLE"
        lines.append(f"{status}: {r.row} => {r.expectation} "
                     f"({r.models} models, {len(r.counterexamples)} counterexamples)")
        for cx in r.counterexamples[:3]:
            lines.append("    " + cx.replace("\n", "\n    ").rstrip())
    return "\n".join(lines) + "\n"
