import random

import pytest
from hypothesis import given, settings, strategies as st

from umip import algebra, pcgroup
from umip.algebra import augmentation, center_basis, multiply

from conftest import all_ids, context, entry


def naive_mul(x, y, t):
    """Product by expanding every pair of group elements."""
    out = 0
    for g in range(t.order):
        if x >> g & 1:
            for h in range(t.order):
                if y >> h & 1:
                    out ^= 1 << t.mul[g][h]
    return out


def tables(order, gid):
    return context(order, gid).algebra.tables


def test_kc2_kc4_products():
    t2 = tables(2, 1)
    one, g = 1, 2
    assert multiply(one, 0b11, t2) == 0b11
    assert multiply(one ^ g, one ^ g, t2) == 0
    # C4 catalogue elements: a = bit 1, a^2 = bit 2, a^3 = bit 3 (mask 0b11)
    c4 = entry(4, 1).table()
    a = 0b01
    a2, a3 = c4.power(a, 2), c4.power(a, 3)
    t4 = tables(4, 1)
    x = 1 | 1 << a
    y = 1 | 1 << a3
    # 1 + a^3 + a + a^4 with a^4 = 1
    assert multiply(x, y, t4) == 1 << a | 1 << a3 == naive_mul(x, y, c4)
    assert multiply(x, x, t4) == 1 | 1 << a2


def test_augmentation():
    assert augmentation(0) == 0
    for g in range(8):
        assert augmentation(1 << g) == 1
    assert augmentation(0b111) == 1


def test_inverse_small():
    t2 = tables(2, 1)
    assert algebra.inverse_of_normalized_unit(1, t2) == 1
    assert algebra.inverse_of_normalized_unit(2, t2) == 2
    c4 = entry(4, 1).table()
    a = 0b01
    t4 = tables(4, 1)
    assert algebra.inverse_of_normalized_unit(1 << a, t4) == 1 << c4.inv[a]
    with pytest.raises(algebra.AlgebraError):
        algebra.inverse_of_normalized_unit(0b11, t4)


def test_filtration_dims_small():
    assert algebra.graded_dimensions(context(2, 1).algebra.filtration) == [1]
    assert algebra.graded_dimensions(context(4, 1).algebra.filtration) == [1, 1, 1]
    assert algebra.graded_dimensions(context(8, 3).algebra.filtration) == [2, 2, 2, 1]


def test_weighted_basis_small():
    b2 = context(2, 1).algebra.basis
    assert b2.vectors == (0b11,) and b2.weights == (1,)
    b4 = context(4, 1).algebra.basis
    assert b4.weights == (1, 2, 3)
    chain = context(4, 1).algebra.filtration
    # each vector of weight w lies in I^w
    from umip.gf2 import EchelonBasis

    for v, w in zip(b4.vectors, b4.weights):
        eb = EchelonBasis()
        for z in chain[w - 1]:
            eb.add(z)
        assert eb.contains(v)


def jennings_polynomial(t):
    series = pcgroup.jennings_series(t)
    poly = [1]
    for i, (a, b) in enumerate(zip(series, series[1:]), start=1):
        d = (len(a) // len(b)).bit_length() - 1
        for _ in range(d):
            new = poly + [0] * i
            for k, c in enumerate(poly):
                new[k + i] += c
            poly = new
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


@pytest.mark.parametrize("order,gid", all_ids())
def test_jennings_dimension_formula(order, gid):
    alg = context(order, gid).algebra
    dims = algebra.graded_dimensions(alg.filtration)
    poly = jennings_polynomial(entry(order, gid).table())
    assert poly[0] == 1
    assert dims == poly[1:]
    assert sum(dims) == order - 1 == alg.basis.m


@pytest.mark.parametrize("order,gid", [(8, 3), (16, 3), (16, 13), (32, 6), (32, 49)])
def test_products_match_naive_expansion(order, gid):
    t = tables(order, gid)
    table = entry(order, gid).table()
    rng = random.Random(order * 100 + gid)
    full = (1 << order) - 1
    for _ in range(300):
        x, y = rng.getrandbits(order) & full, rng.getrandbits(order) & full
        assert t.mul(x, y) == naive_mul(x, y, table)
        g = rng.randrange(order)
        assert t.translate(g, y) == naive_mul(1 << g, y, table)


@pytest.mark.parametrize("order,gid", [(8, 4), (16, 6), (32, 27)])
def test_associativity_distributivity(order, gid):
    t = tables(order, gid)
    rng = random.Random(gid)
    for _ in range(1000):
        x, y, z = (rng.getrandbits(order) for _ in range(3))
        assert t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z))
        assert t.mul(x, y ^ z) == t.mul(x, y) ^ t.mul(x, z)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(all_ids()), st.integers(min_value=0, max_value=(1 << 32) - 1))
def test_unit_inverse(gid, raw):
    order = gid[0]
    t = tables(*gid)
    y = algebra.from_natural(raw & ((1 << (order - 1)) - 1))
    assert augmentation(y) == 0
    assert algebra.to_natural(y) == raw & ((1 << (order - 1)) - 1)
    u = 1 ^ y
    assert t.mul(u, algebra.inverse_of_normalized_unit(u, t)) == 1
    assert t.mul(algebra.inverse_of_normalized_unit(u, t), u) == 1


def test_center_basis():
    ab = context(16, 2).algebra
    assert center_basis(ab.classes).k == 16
    assert center_basis(context(8, 3).algebra.classes).k == 5
    assert center_basis(context(8, 4).algebra.classes).k == 5


@pytest.mark.parametrize("order,gid", [(8, 3), (16, 13), (32, 44)])
def test_class_sums_are_central(order, gid):
    alg = context(order, gid).algebra
    t = alg.tables
    for z in alg.center_basis().ideal_part():
        assert augmentation(z) == 0
        for g in range(order):
            assert t.mul(1 << g, z) == t.mul(z, 1 << g)
