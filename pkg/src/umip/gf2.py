"""Bit-packed linear algebra over GF(2).

Vectors are Python ints (bit ``k`` is coordinate ``k``).  Matrices are lists of
column vectors unless stated otherwise, so ``M @ v`` is the XOR of the columns
selected by the set bits of ``v``.
"""

from __future__ import annotations

from bisect import insort
from typing import Iterable, Iterator, Sequence


def bits(v: int) -> Iterator[int]:
    """Yield the set bit positions of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def parity(v: int) -> int:
    return v.bit_count() & 1


def lowest_bit(v: int) -> int:
    """Index of the lowest set bit (``-1`` for zero)."""
    return (v & -v).bit_length() - 1


def apply_cols(cols: Sequence[int], v: int) -> int:
    out = 0
    for k in bits(v):
        out ^= cols[k]
    return out


def compose_cols(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Columns of the product ``A @ B``."""
    return [apply_cols(a, col) for col in b]


class EchelonBasis:
    """Incrementally built row-echelon basis of a subspace.

    Each stored vector is keyed by its pivot (lowest set bit) and remembers
    which inserted vectors it is a combination of, so membership tests can also
    return coordinates.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}
        self._pivots: list[int] = []
        self._count = 0

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(residue, combo)`` with ``v = residue + sum(combo inputs)``."""
        combo = 0
        rows = self._rows
        for p in self._pivots:
            if v >> p & 1:
                r, c = rows[p]
                v ^= r
                combo ^= c
        return v, combo

    def _store(self, residue: int, combo: int) -> None:
        p = lowest_bit(residue)
        self._rows[p] = (residue, combo)
        insort(self._pivots, p)

    def add(self, v: int) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        idx = self._count
        self._count += 1
        residue, combo = self.reduce(v)
        if not residue:
            return False
        self._store(residue, combo ^ (1 << idx))
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def vectors(self) -> list[int]:
        return [self._rows[p][0] for p in self._pivots]


def rank(vectors: Iterable[int]) -> int:
    eb = EchelonBasis()
    for v in vectors:
        eb.add(v)
    return len(eb)


def span_basis(vectors: Iterable[int]) -> list[int]:
    """A basis (subset of the input) of the span, in input order."""
    eb = EchelonBasis()
    return [v for v in vectors if eb.add(v)]


def inverse_cols(cols: Sequence[int], n: int) -> list[int]:
    """Inverse of the ``n x n`` matrix given by columns; raises if singular."""
    eb = EchelonBasis()
    for col in cols:
        if not eb.add(col):
            raise ValueError("matrix is singular over GF(2)")
    if len(eb) != n:
        raise ValueError("matrix is not square")
    # column c of the inverse lists the columns of A summing to e_c
    return [eb.reduce(1 << c)[1] for c in range(n)]


def transpose(vectors: Sequence[int], n: int) -> list[int]:
    """Transpose a list of ``len(vectors)`` bit vectors of width ``n``."""
    out = [0] * n
    for i, v in enumerate(vectors):
        for k in bits(v):
            out[k] |= 1 << i
    return out


def kernel(cols: Sequence[int]) -> list[int]:
    """Basis of the null space of the matrix with the given columns."""
    eb = EchelonBasis()
    null = []
    for k, col in enumerate(cols):
        residue, combo = eb.reduce(col)
        if residue:
            eb._store(residue, combo ^ (1 << k))
        else:
            null.append(combo ^ (1 << k))
    return null
