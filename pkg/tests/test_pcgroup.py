import pytest
from hypothesis import given, settings, strategies as st

from umip import pcgroup
from umip.pcgroup import Collector, GroupPresentation, PresentationError, build_group_table

from conftest import all_ids, entry

C2 = GroupPresentation(1, (0,))
C4 = GroupPresentation(2, (0b10, 0))
# g1^2 = 1, g2^2 = g3, g3^2 = 1, [g2, g1] = g3  (0-based bits below)
D8 = GroupPresentation(3, (0, 0b100, 0), {(1, 0): 0b100})


def test_empty_word_is_identity():
    assert pcgroup.collect_normal_form(D8, []) == 0


def test_c4_power_relation():
    assert pcgroup.collect_normal_form(C4, [1, 1]) == 0b10


def test_d8_hand_collection():
    # g2 g1 = g1 g2 [g2, g1] = g1 g2 g3
    assert pcgroup.collect_normal_form(D8, [2, 1]) == 0b111
    t = build_group_table(D8)
    assert t.mul[0b010][0b001] == 0b111


def test_inverse_letters():
    col = Collector(D8)
    for x in range(8):
        assert col.mul(x, col.inverse(x)) == 0
    assert col.collect([2, -2]) == 0
    with pytest.raises(IndexError):
        col.collect([4])


def test_bad_presentations():
    with pytest.raises(PresentationError):
        GroupPresentation(2, (0b01, 0))  # tail must use later generators
    with pytest.raises(PresentationError):
        GroupPresentation(2, (0, 0), {(0, 1): 0})
    with pytest.raises(PresentationError):
        GroupPresentation(3, (0, 0, 0), {(2, 1): 0b010})


def test_small_tables():
    t2 = build_group_table(C2)
    assert t2.order == 2 and t2.mul[1][1] == 0
    t4 = build_group_table(C4)
    assert t4.order == 4 and t4.element_order(1) == 4


def test_g13_exponent_and_structure():
    # a^8 = 1, b^4 = 1, b^-1 a b = a^3, modelled on pairs (i, j) = a^i b^j
    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + k * pow(3, j, 8)) % 8, (j + l) % 4)

    elems = [(i, j) for i in range(8) for j in range(4)]

    def order(x):
        y, n = x, 1
        while y != (0, 0):
            y, n = mul(y, x), n + 1
        return n

    exp = max(order(x) for x in elems)
    classes = len({frozenset(mul(mul(g, x), ginv) for g in elems for ginv in elems if mul(g, ginv) == (0, 0)) for x in elems})
    t = entry(32, 13).table()
    assert pcgroup.exponent(t) == exp == 8
    assert len(pcgroup.conjugacy_classes(t)) == classes


def test_classes_d8_q8():
    d8 = entry(8, 3).table()
    sizes = sorted(len(c) for c in pcgroup.conjugacy_classes(d8))
    assert sizes == [1, 1, 2, 2, 2]
    assert len(pcgroup.conjugacy_classes(entry(8, 4).table())) == 5
    ab = entry(16, 2).table()
    assert len(pcgroup.conjugacy_classes(ab)) == 16


def test_closure_center_derived_agemo():
    d8 = build_group_table(D8)
    assert pcgroup.subgroup_closure(d8, []) == frozenset({0})
    c4 = build_group_table(C4)
    assert len(pcgroup.subgroup_closure(c4, [1])) == 4
    rot = 0b010
    assert pcgroup.subgroup_closure(d8, [d8.power(rot, 2)]) == pcgroup.center_of_group(d8)
    assert len(pcgroup.center_of_group(d8)) == 2
    assert len(pcgroup.derived_subgroup(d8)) == 2
    assert pcgroup.agemo(c4, range(4)) == frozenset({0, 0b10})
    ab = entry(16, 5).table()
    assert pcgroup.center_of_group(ab) == frozenset(range(16))


def test_jennings_small():
    c2 = build_group_table(C2)
    assert [len(d) for d in pcgroup.jennings_series(c2)] == [2, 1]
    c4 = build_group_table(C4)
    series = pcgroup.jennings_series(c4)
    assert [len(d) for d in series] == [4, 2, 1]
    assert series[1] == frozenset({0, 0b10})
    d8 = build_group_table(D8)
    js = pcgroup.jennings_series(d8)
    assert js[1] == pcgroup.center_of_group(d8)
    assert [len(d) for d in js] == [8, 2, 1]


@pytest.mark.parametrize("order,gid", all_ids())
def test_catalogue_group_properties(order, gid):
    t = entry(order, gid).table()
    assert t.order == order == entry(order, gid).presentation.order
    classes = pcgroup.conjugacy_classes(t)
    assert sorted(g for c in classes for g in c) == list(range(order))
    assert all(order % len(c) == 0 for c in classes)
    js = pcgroup.jennings_series(t)
    assert len(js[0]) == order and len(js[-1]) == 1
    for a, b in zip(js, js[1:]):
        assert b <= a
        # D_i / D_{i+1} elementary abelian: squares and commutators land in D_{i+1}
        for x in a:
            assert t.mul[x][x] in b
            for y in a:
                assert t.comm(x, y) in b


word = st.lists(st.integers(min_value=1, max_value=5).flatmap(lambda k: st.sampled_from([k, -k])), max_size=12)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(all_ids()), word, word)
def test_collection_is_table_multiplication(gid, w1, w2):
    pres = entry(*gid).presentation
    n = pres.ngens
    w1 = [s for s in w1 if abs(s) <= n]
    w2 = [s for s in w2 if abs(s) <= n]
    col = Collector(pres)
    t = entry(*gid).table()
    assert col.collect(w1 + w2) == t.mul[col.collect(w1)][col.collect(w2)]


def test_lower_central_and_abelian_invariants():
    d8 = build_group_table(D8)
    assert pcgroup.nilpotency_class(d8) == 2
    assert not pcgroup.is_abelian(d8)
    assert pcgroup.abelian_invariants(d8) == (2, 2)
    assert pcgroup.abelian_invariants(entry(16, 2).table()) == (4, 4)
