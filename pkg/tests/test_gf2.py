import random

from hypothesis import given, strategies as st

from umip import gf2

vec = st.integers(min_value=0, max_value=(1 << 12) - 1)


def brute_rank(vectors, n=12):
    # size of the span by enumeration of all combinations
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return len(span).bit_length() - 1


def test_bits_and_parity():
    assert list(gf2.bits(0b101001)) == [0, 3, 5]
    assert gf2.parity(0b111) == 1
    assert gf2.lowest_bit(0) == -1
    assert gf2.lowest_bit(0b1000) == 3


@given(st.lists(vec, max_size=10))
def test_rank_matches_span_size(vectors):
    assert gf2.rank(vectors) == brute_rank(vectors)


@given(st.lists(vec, max_size=10), vec)
def test_reduce_certificate(vectors, target):
    eb = gf2.EchelonBasis()
    for v in vectors:
        eb.add(v)
    residue, combo = eb.reduce(target)
    rebuilt = residue
    for k in gf2.bits(combo):
        rebuilt ^= vectors[k]
    assert rebuilt == target
    assert eb.contains(target) == (residue == 0)


@given(st.lists(vec, max_size=10))
def test_span_basis_is_independent_subset(vectors):
    basis = gf2.span_basis(vectors)
    assert all(b in vectors for b in basis)
    assert len(basis) == gf2.rank(basis) == gf2.rank(vectors)


@given(st.lists(vec, min_size=1, max_size=10))
def test_kernel(cols):
    null = gf2.kernel(cols)
    assert len(null) == len(cols) - gf2.rank(cols)
    for z in null:
        assert z and gf2.apply_cols(cols, z) == 0
    assert gf2.rank(null) == len(null)


def test_inverse_cols_random():
    rng = random.Random(5)
    n = 9
    found = 0
    while found < 20:
        cols = [rng.getrandbits(n) for _ in range(n)]
        if gf2.rank(cols) < n:
            continue
        found += 1
        inv = gf2.inverse_cols(cols, n)
        ident = [1 << k for k in range(n)]
        assert gf2.compose_cols(cols, inv) == ident
        assert gf2.compose_cols(inv, cols) == ident


def test_inverse_cols_singular():
    import pytest

    with pytest.raises(ValueError):
        gf2.inverse_cols([1, 2, 3], 3)


@given(st.lists(vec, max_size=8))
def test_transpose_involution(vectors):
    t = gf2.transpose(vectors, 12)
    assert gf2.transpose(t, len(vectors)) == vectors
