import random

from hypothesis import given, strategies as st

from minlog.chains import parse_constraint
from minlog.zones import (CHAIN, INF, LIMIT, Zone, ZoneSet, chain_universe, zone_boolean,
                          zone_project)

from oracles import GRID, check_pair, points, random_zoneset


def z(text):
    return parse_constraint(text)


@given(st.integers(0, 10 ** 9))
def test_operations_agree_with_grid(seed):
    rng = random.Random(seed)
    assert check_pair(random_zoneset(rng), random_zoneset(rng)) == []


def test_union_with_complement_is_everything():
    a = z("t <= i")
    assert zone_boolean(a, zone_boolean(a, None, "not"), "or") == chain_universe()


def test_meet_with_lower_bound():
    got = zone_boolean(z("t <= i"), z("t >= 3"), "and")
    assert points(got, 10) == {(i, t) for i in range(11) for t in range(11) if 3 <= t <= i}
    assert not got.contains(CHAIN, 2, 2)


def test_contradictory_bounds_are_empty():
    assert zone_boolean(z("i >= 2"), z("i <= 1"), "and").is_empty()


def test_existential_projection_covers_every_world():
    assert zone_project(z("t <= i"), "exists-t") == chain_universe()


def test_universal_projection_of_lower_triangle_is_empty():
    assert zone_project(z("t <= i"), "forall-t").is_empty()


def test_future_projection_of_lower_triangle():
    # t <= j for every j >= i is just t <= i on an ascending chain
    assert zone_project(z("t <= i"), "forall-future", "ascending") == z("t <= i")
    # on a descending chain (index = depth) the worlds above are the shallower ones
    assert zone_project(z("t <= i"), "forall-future", "descending") == z("t <= 0")


def test_equality_is_semantic():
    a = ZoneSet([Zone.make(CHAIN, ihi=3), Zone.make(CHAIN, ilo=4)])
    assert a == chain_universe()
    assert len(a) == 1  # adjacent pieces merge


def test_empty_zone_is_dropped():
    assert Zone.make(CHAIN, tlo=5, thi=4) is None
    assert ZoneSet([None]).is_empty()


def test_closure_tightens_bounds():
    zz = Zone.make(CHAIN, ihi=3, dlo=2)
    assert zz.tlo == 2 and zz.thi == INF and zz.ihi == 3
    assert Zone.make(CHAIN, ihi=3, thi=2, dlo=0).ilo == 0


def test_kinds_do_not_mix():
    a = ZoneSet([Zone.make(CHAIN), Zone.make(LIMIT)])
    assert a.kinds() == [CHAIN, LIMIT]
    assert (a & ZoneSet([Zone.make(LIMIT)])).kinds() == [LIMIT]
    assert a.contains(LIMIT, 0, 5) and not a.contains(LIMIT, 3, 0)


def test_grid_covers_both_shapes():
    assert len(GRID) == 13 * 13
