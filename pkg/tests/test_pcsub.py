import random

import pytest
from hypothesis import given, settings, strategies as st

from umip import gf2, oracles
from umip.pcgroup import Collector, GroupPresentation
from umip.pcsub import frattini_subgroup, induced_sequence, lower_p_central_series, p_class, sift
from umip.unitpc import build_unit_pc_presentation

from conftest import all_ids, context, small_ids
from test_unitpc import kc4_powers_basis


def kc4_units():
    basis, t, _ = kc4_powers_basis()
    return build_unit_pc_presentation(basis, t)


def test_kc4_sift_and_induced_sequence():
    col = kc4_units().collector
    u1, u2 = 0b001, 0b010
    seq = induced_sequence([u1], col)
    assert seq.order == 4 and seq.depths == [0, 1]
    assert sift(seq, u2) == 0
    assert sift(seq, 0) == 0
    assert sift(seq, u1) == 0
    assert sift(seq, 0b100) == 0b100


def test_trivial_and_full_sequences():
    col = context(16, 3).units.collector
    assert induced_sequence([], col).order == 1
    full = induced_sequence([1 << k for k in range(col.ngens)], col)
    assert full.size_log2 == 15


def test_frattini_of_kc2_trivial():
    assert frattini_subgroup(context(2, 1).units.collector).order == 1


def test_elementary_abelian_p_class():
    col = Collector(GroupPresentation(4, (0, 0, 0, 0)))
    assert p_class(col) == 1


@pytest.mark.parametrize("gid,expected", [(2, 2), (37, 3)])
def test_p_class_examples(gid, expected):
    assert p_class(context(32, gid).units.collector) == expected


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(16, 3), (16, 6), (32, 13), (32, 44)]), st.integers(min_value=0, max_value=(1 << 31) - 1))
def test_sift_idempotent(gid, g):
    p = context(*gid).units
    g &= (1 << p.m) - 1
    phi = frattini_subgroup(p.collector)
    r = phi.sift(g)
    assert phi.sift(r) == r
    # the residue lies in the same coset of the normal subgroup as g
    assert phi.contains(p.collector.mul(g, p.collector.inverse(r)))


@pytest.mark.parametrize("order,gid", all_ids())
def test_frattini_is_lambda2_and_tail_rank(order, gid):
    p = context(order, gid).units
    col = p.collector
    phi = frattini_subgroup(col)
    series = lower_p_central_series(col)
    lam2 = series[1] if len(series) > 1 else None
    if lam2 is not None:
        assert lam2.rows.keys() == phi.rows.keys()
        assert all(lam2.contains(x) for x in phi.generators())
        assert all(phi.contains(x) for x in lam2.generators())
    tails = list(p.presentation.power_tails) + list(p.presentation.commutator_tails.values())
    assert phi.size_log2 == gf2.rank(tails)
    assert phi.certificate_failures([1 << k for k in range(p.m)]) == []
    # orders of the series divide each other
    sizes = [s.size_log2 for s in series]
    assert sizes == sorted(sizes, reverse=True) and sizes[-1] == 0


@pytest.mark.parametrize("order,gid", small_ids(16))
def test_frattini_matches_brute_force(order, gid):
    p = context(order, gid).units
    assert frattini_subgroup(p.collector).order == oracles.frattini_order(context(order, gid).algebra.table)


def test_induced_sequence_matches_brute_closure():
    p = context(16, 13).units
    t = context(16, 13).algebra.table
    rng = random.Random(3)
    for _ in range(10):
        words = [rng.getrandbits(p.m) for _ in range(rng.randint(1, 3))]
        seq = induced_sequence(words, p.collector)
        units = [p.to_algebra(w) for w in words]
        assert seq.order == oracles.subgroup_order(units, t)
