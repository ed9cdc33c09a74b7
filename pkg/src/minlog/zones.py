"""Integer zones over (i, t): bounds on i, t and d = t - i.

A zone is kept closed (every bound as tight as the others allow), which
for three difference variables takes one pass and makes emptiness,
inclusion and projection exact over the integers.  Zones carry a ``kind``:
``chain`` for the infinite chain, ``limit`` for the bottom world of a
descending chain, ``prefix:NAME`` for an explicit finite world.  Only
chain zones use ``i``; the others pin it to 0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Tuple

INF = 1 << 60
CHAIN = "chain"
LIMIT = "limit"


def _clamp(v):
    # anything past half of INF came from arithmetic on an open bound
    if v >= INF // 2:
        return INF
    if v <= -INF // 2:
        return -INF
    return v


@dataclass(frozen=True, order=True)
class Zone:
    kind: str = CHAIN
    ilo: int = 0
    ihi: int = INF
    tlo: int = 0
    thi: int = INF
    dlo: int = -INF
    dhi: int = INF

    # construction -----------------------------------------------------
    @staticmethod
    def make(kind=CHAIN, ilo=0, ihi=INF, tlo=0, thi=INF, dlo=-INF, dhi=INF) -> Optional["Zone"]:
        if kind != CHAIN:
            ilo, ihi = max(ilo, 0), min(ihi, 0)
        return Zone(kind, max(ilo, 0), ihi, max(tlo, 0), thi, dlo, dhi).closed()

    def closed(self) -> Optional["Zone"]:
        ilo, ihi, tlo, thi, dlo, dhi = self.ilo, self.ihi, self.tlo, self.thi, self.dlo, self.dhi
        ilo, ihi, tlo, thi, dlo, dhi = map(_clamp, (ilo, ihi, tlo, thi, dlo, dhi))
        tlo2 = max(tlo, _clamp(ilo + dlo))
        thi2 = min(thi, _clamp(ihi + dhi))
        ilo2 = max(ilo, _clamp(tlo - dhi))
        ihi2 = min(ihi, _clamp(thi - dlo))
        dlo2 = max(dlo, _clamp(tlo - ihi))
        dhi2 = min(dhi, _clamp(thi - ilo))
        if ilo2 > ihi2 or tlo2 > thi2 or dlo2 > dhi2:
            return None
        return Zone(self.kind, ilo2, ihi2, tlo2, thi2, dlo2, dhi2)

    def constrain(self, var: str, lo: int = -INF, hi: int = INF) -> Optional["Zone"]:
        b = {"i": ("ilo", "ihi"), "t": ("tlo", "thi"), "d": ("dlo", "dhi")}[var]
        z = replace(self, **{b[0]: max(getattr(self, b[0]), lo), b[1]: min(getattr(self, b[1]), hi)})
        return z.closed()

    # queries ------------------------------------------------------------
    def contains(self, i: int, t: int) -> bool:
        return (self.ilo <= i <= self.ihi and self.tlo <= t <= self.thi
                and self.dlo <= t - i <= self.dhi)

    def subset_of(self, other: "Zone") -> bool:
        return (self.kind == other.kind and self.ilo >= other.ilo and self.ihi <= other.ihi
                and self.tlo >= other.tlo and self.thi <= other.thi
                and self.dlo >= other.dlo and self.dhi <= other.dhi)

    def intersect(self, other: "Zone") -> Optional["Zone"]:
        if self.kind != other.kind:
            return None
        return Zone(self.kind, max(self.ilo, other.ilo), min(self.ihi, other.ihi),
                    max(self.tlo, other.tlo), min(self.thi, other.thi),
                    max(self.dlo, other.dlo), min(self.dhi, other.dhi)).closed()

    def hull(self, other: "Zone") -> "Zone":
        return Zone(self.kind, min(self.ilo, other.ilo), max(self.ihi, other.ihi),
                    min(self.tlo, other.tlo), max(self.thi, other.thi),
                    min(self.dlo, other.dlo), max(self.dhi, other.dhi)).closed()

    def half_planes(self) -> List[Tuple[str, int, int]]:
        """The finite bounds as (var, lo, hi) single-sided constraints."""
        out = []
        for var, lo, hi, floor in (("i", self.ilo, self.ihi, 0), ("t", self.tlo, self.thi, 0),
                                   ("d", self.dlo, self.dhi, -INF)):
            if lo > floor:
                out.append((var, lo, INF))
            if hi < INF:
                out.append((var, -INF, hi))
        return out

    def minus(self, other: "Zone") -> List["Zone"]:
        """Exact integer difference, as disjoint pieces."""
        if self.kind != other.kind or self.intersect(other) is None:
            return [self]
        pieces, rest = [], self
        for var, lo, hi in other.half_planes():
            if lo > -INF:  # constraint var >= lo; its negation is var <= lo - 1
                out, keep = rest.constrain(var, hi=lo - 1), rest.constrain(var, lo=lo)
            else:
                out, keep = rest.constrain(var, lo=hi + 1), rest.constrain(var, hi=hi)
            if out is not None:
                pieces.append(out)
            if keep is None:
                return pieces
            rest = keep
        return pieces

    def __str__(self):
        parts = []

        def rng(name, lo, hi, floor):
            if lo == hi:
                parts.append(f"{name} = {lo}")
                return
            if lo > floor:
                parts.append(f"{name} >= {lo}")
            if hi < INF:
                parts.append(f"{name} <= {hi}")

        if self.kind == CHAIN:
            rng("i", self.ilo, self.ihi, 0)
            rng("t", self.tlo, self.thi, 0)
            rng("t-i", self.dlo, self.dhi, -INF)
        else:
            rng("t", self.tlo, self.thi, 0)
        body = " & ".join(parts) if parts else "all"
        return body if self.kind == CHAIN else f"{self.kind}: {body}"


def _canon(zones: Iterable[Optional[Zone]]) -> Tuple[Zone, ...]:
    return tuple(sorted(set(z for z in zones if z is not None)))


class ZoneSet:
    """A finite union of zones, kept free of empty and subsumed members."""

    __slots__ = ("zones",)

    def __init__(self, zones: Iterable[Optional[Zone]] = ()):
        self.zones = _simplify(_canon(zones))

    @staticmethod
    def empty() -> "ZoneSet":
        return ZoneSet()

    def __iter__(self):
        return iter(self.zones)

    def __len__(self):
        return len(self.zones)

    def __repr__(self):
        return f"ZoneSet({' | '.join(map(str, self.zones)) or 'none'})"

    def __str__(self):
        return " | ".join(map(str, self.zones)) or "none"

    def is_empty(self) -> bool:
        return not self.zones

    def contains(self, kind: str, i: int, t: int) -> bool:
        return any(z.kind == kind and z.contains(i, t) for z in self.zones)

    def union(self, other: "ZoneSet") -> "ZoneSet":
        return ZoneSet(self.zones + other.zones)

    __or__ = union

    def intersect(self, other: "ZoneSet") -> "ZoneSet":
        return ZoneSet(a.intersect(b) for a in self.zones for b in other.zones)

    __and__ = intersect

    def minus(self, other: "ZoneSet") -> "ZoneSet":
        cur = list(self.zones)
        for b in other.zones:
            nxt = []
            for a in cur:
                nxt.extend(a.minus(b))
            cur = nxt
            if not cur:
                break
        return ZoneSet(cur)

    __sub__ = minus

    def complement(self, universe: "ZoneSet") -> "ZoneSet":
        return universe.minus(self)

    def subset_of(self, other: "ZoneSet") -> bool:
        return self.minus(other).is_empty()

    def equals(self, other: "ZoneSet") -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def __eq__(self, other):
        return isinstance(other, ZoneSet) and self.equals(other)

    def __hash__(self):
        raise TypeError("ZoneSet equality is semantic; use a canonical key instead")

    def kinds(self):
        return sorted({z.kind for z in self.zones})

    def only(self, kind: str) -> "ZoneSet":
        return ZoneSet(z for z in self.zones if z.kind == kind)


def _simplify(zones: Tuple[Zone, ...]) -> Tuple[Zone, ...]:
    zs = list(zones)
    # drop subsumed members
    keep = []
    for k, z in enumerate(zs):
        if any(j != k and z.subset_of(o) and (not o.subset_of(z) or j < k)
               for j, o in enumerate(zs)):
            continue
        keep.append(z)
    zs = keep
    # merge pairs whose hull adds no points
    changed = True
    while changed and len(zs) > 1:
        changed = False
        for a in range(len(zs)):
            for b in range(a + 1, len(zs)):
                x, y = zs[a], zs[b]
                if x.kind != y.kind:
                    continue
                h = x.hull(y)
                rest = [p for q in h.minus(x) for p in q.minus(y)]
                if not rest:
                    zs = [z for k, z in enumerate(zs) if k not in (a, b)] + [h]
                    zs = [z for z in zs if z is h or not z.subset_of(h)]
                    changed = True
                    break
            if changed:
                break
    return tuple(sorted(zs))


# ---------------------------------------------------------------- projections

def t_range(z: Zone) -> Tuple[int, int]:
    return z.tlo, z.thi


def project_i(z: Zone) -> Zone:
    """Exists t: keep the world coordinate only (t left free, d dropped)."""
    return Zone(z.kind, z.ilo, z.ihi, 0, INF, -INF, INF).closed()


def down_ascending(z: Zone) -> Optional[Zone]:
    """{(i', t) : some i >= i' has (i, t) in z} on an ascending chain."""
    return Zone.make(CHAIN, 0, z.ihi, z.tlo, z.thi, z.dlo, INF)


def down_descending(z: Zone) -> Optional[Zone]:
    """Same on a descending chain indexed by depth: worlds below have larger depth."""
    return Zone.make(CHAIN, z.ilo, INF, z.tlo, z.thi, -INF, z.dhi)


def up_ascending(z: Zone) -> Optional[Zone]:
    return down_descending(z)


def up_descending(z: Zone) -> Optional[Zone]:
    return down_ascending(z)


# ------------------------------------------------------- chain-only operations

CHAIN_ALL = Zone()


def chain_universe() -> ZoneSet:
    return ZoneSet([CHAIN_ALL])


def zone_boolean(a: ZoneSet, b: Optional[ZoneSet], op: str, universe: Optional[ZoneSet] = None) -> ZoneSet:
    """Pointwise ``and``, ``or``, ``not`` (b ignored) or ``minus``."""
    u = chain_universe() if universe is None else universe
    if op == "and":
        return a & b
    if op == "or":
        return (a | b) & u
    if op == "not":
        return u - a
    if op == "minus":
        return a - b
    raise ValueError(f"unknown boolean op {op!r}")


def _down(z: Zone, shape: str):
    if shape == "ascending":
        return down_ascending(z)
    if shape == "descending":
        return down_descending(z)
    raise ValueError(f"unknown shape {shape!r}")


def zone_project(a: ZoneSet, var: str, shape: str = "ascending") -> ZoneSet:
    """Projections over the bare chain (no limit or prefix worlds).

    ``exists-t`` / ``forall-t`` quantify the term coordinate and return a
    cylinder over i.  ``exists-future`` / ``forall-future`` quantify over the
    worlds j above i, keeping t.
    """
    u = chain_universe()
    if var in ("t", "exists-t"):
        return ZoneSet(project_i(z) for z in a) & u
    if var == "forall-t":
        return u - ZoneSet(project_i(z) for z in (u - a))
    if var == "exists-future":
        return ZoneSet(_down(z, shape) for z in a) & u
    if var == "forall-future":
        return u - ZoneSet(_down(z, shape) for z in (u - a))
    raise ValueError(f"unknown projection {var!r}")
