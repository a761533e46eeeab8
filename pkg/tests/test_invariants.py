import pytest

from umip import gf2, oracles, pcgroup
from umip.invariants import (
    InvariantRecord,
    center_exponent,
    center_involutions,
    center_order,
    center_squaring_map,
    compute_record,
)

from conftest import context, entry, small_ids


def squaring(order, gid):
    alg = context(order, gid).algebra
    return center_squaring_map(alg.center_basis(), alg.tables)


def test_center_order_examples():
    assert center_order(context(32, 43).algebra.center_basis()) == 10
    assert center_order(context(32, 17).algebra.center_basis()) == 19
    assert center_order(context(16, 2).algebra.center_basis()) == 15


def test_squaring_map_small():
    assert squaring(2, 1) == [0]
    s4 = squaring(4, 1)
    assert len(s4) == 3 and gf2.rank(s4) == 1
    assert center_involutions(s4) == 3


@pytest.mark.parametrize("gid,exp,inv", [(28, 2, None), (39, None, 4095), (38, 8, None)])
def test_center_examples(gid, exp, inv):
    s = squaring(32, gid)
    if exp is not None:
        assert center_exponent(s) == exp
    if inv is not None:
        assert center_involutions(s) == inv


@pytest.mark.parametrize("order,gid", small_ids(32)[::3])
def test_squaring_map_nilpotent(order, gid):
    s = squaring(order, gid)
    power = [1 << k for k in range(len(s))]
    for _ in range(len(s)):
        power = gf2.compose_cols(s, power)
    assert not any(power)


def test_compute_record_examples():
    r = compute_record(entry(16, 6), {1, 3})
    assert r.frattini_order_log2 == 9 and r.involutions == 1535
    assert r.center_exponent is None and r.tiers == frozenset({1, 3})
    r = compute_record(entry(32, 4), {1})
    assert (r.center_order_log2, r.frattini_order_log2) == (19, 18)
    assert r.involutions is None
    r = compute_record(entry(2, 1))
    assert r.v_order_log2 == 1
    assert (r.center_order_log2, r.frattini_order_log2) == (1, 0)
    assert (r.center_exponent, r.center_involutions, r.p_class, r.involutions) == (2, 1, 1, 1)
    assert r.square_roots_of_one == 2
    assert set(r.runtime_ms) >= {"center_order_log2", "involutions"}


def test_bad_tiers():
    with pytest.raises(ValueError):
        compute_record(entry(8, 3), {4})


def test_merge():
    a = compute_record(entry(8, 3), {1})
    b = compute_record(entry(8, 3), {3})
    a.merge(b)
    assert a.tiers == frozenset({1, 3})
    assert a.involutions == b.involutions and a.center_order_log2 is not None


@pytest.mark.parametrize("order,gid", small_ids(16))
def test_record_matches_brute_force(order, gid):
    ctx = context(order, gid)
    t = ctx.algebra.table
    rec = compute_record(entry(order, gid))
    gens = [ctx.units.generator(i) for i in range(ctx.units.m)]
    facts = oracles.center_facts(t, gens)
    assert 1 << rec.v_order_log2 == len(oracles.all_units(t)) == oracles.count_units(t)
    assert 1 << rec.center_order_log2 == facts.order
    assert rec.center_order_log2 == len(pcgroup.conjugacy_classes(t)) - 1
    assert rec.center_exponent == facts.exponent
    assert rec.center_involutions == facts.involutions
    assert 1 << rec.frattini_order_log2 == oracles.frattini_order(t)
    assert rec.involutions == oracles.involution_count(t)


def test_record_json_fields():
    rec = InvariantRecord(order=4, catalogue_id=1, v_order_log2=3)
    assert rec.square_roots_of_one is None
    assert set(rec.values()) == {
        "center_order_log2", "frattini_order_log2", "center_exponent",
        "center_involutions", "p_class", "involutions",
    }
