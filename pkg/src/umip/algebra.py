"""The modular group algebra KG over GF(2) for a 2-group of order <= 32.

An algebra element is an int whose bit ``g`` is the coefficient of the group
element with index ``g`` (the identity is bit 0, so ``1`` is the algebra unit).
The augmentation ideal ``I`` has the natural basis ``{1 + g : g != 1}``; the
natural coordinates of ``y`` in ``I`` are simply ``y >> 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gf2
from .pcgroup import GroupTable


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class MulTables:
    """Left translations of KG, plus byte-sliced lookup tables for fast products."""

    order: int
    left_translation: tuple[tuple[int, ...], ...]
    _chunks: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_table(cls, t: GroupTable) -> "MulTables":
        n = t.order
        nchunks = (n + 7) // 8
        chunks = []
        for g in range(n):
            row = t.mul[g]
            per_g = []
            for c in range(nchunks):
                tab = [0] * 256
                for b in range(1, 256):
                    low = (b & -b).bit_length() - 1
                    h = 8 * c + low
                    tab[b] = tab[b & (b - 1)] | (1 << row[h] if h < n else 0)
                per_g.append(tuple(tab))
            chunks.append(tuple(per_g))
        return cls(n, t.mul, tuple(chunks))

    @property
    def dim_ideal(self) -> int:
        return self.order - 1

    def translate(self, g: int, y: int) -> int:
        """``g * y``."""
        out = 0
        c = 0
        for tab in self._chunks[g]:
            b = (y >> c) & 0xFF
            if b:
                out |= tab[b]
            c += 8
        return out

    def mul(self, x: int, y: int) -> int:
        out = 0
        chunks = self._chunks
        while x:
            low = x & -x
            x ^= low
            yy = y
            for tab in chunks[low.bit_length() - 1]:
                b = yy & 0xFF
                if b:
                    out ^= tab[b]
                yy >>= 8
                if not yy:
                    break
        return out


def multiply(x: int, y: int, t: MulTables) -> int:
    return t.mul(x, y)


def augmentation(x: int) -> int:
    return x.bit_count() & 1


def inverse_of_normalized_unit(u: int, t: MulTables) -> int:
    """``u^-1 = 1 + y + y^2 + ...`` for ``u = 1 + y`` with ``y`` nilpotent."""
    if not augmentation(u):
        raise AlgebraError("element of augmentation 0 is not a unit")
    y = u ^ 1
    out, power = 1, 1
    while True:
        power = t.mul(power, y)
        if not power:
            return out
        out ^= power


def algebra_power(u: int, e: int, t: MulTables) -> int:
    out = 1
    while e:
        if e & 1:
            out = t.mul(out, u)
        u = t.mul(u, u)
        e >>= 1
    return out


def to_natural(y: int) -> int:
    """Natural I-coordinates (basis ``1 + g``, g != 1) of ``y`` in I."""
    return y >> 1


def from_natural(v: int) -> int:
    y = v << 1
    return y | (y.bit_count() & 1)


def ideal_power_filtration(t: MulTables) -> list[list[int]]:
    """Bases of ``I, I^2, ..., I^c`` (each a list of algebra elements), ``I^(c+1) = 0``."""
    ideal = [1 | (1 << g) for g in range(1, t.order)]
    chain = []
    current = ideal
    while current:
        chain.append(current)
        eb = gf2.EchelonBasis()
        for a in current:
            for b in ideal:
                eb.add(t.mul(a, b))
        nxt = eb.vectors()
        if len(nxt) >= len(current):
            raise AlgebraError("augmentation ideal is not nilpotent")
        current = nxt
    return chain


def graded_dimensions(chain: Sequence[Sequence[int]]) -> list[int]:
    dims = [len(b) for b in chain] + [0]
    return [dims[k] - dims[k + 1] for k in range(len(chain))]


@dataclass(frozen=True)
class WeightedBasis:
    """Basis ``b_0..b_{m-1}`` of I with non-decreasing filtration weights.

    ``from_weighted`` holds the natural coordinates of each ``b_i`` (columns);
    ``to_weighted`` is its inverse.
    """

    vectors: tuple[int, ...]
    weights: tuple[int, ...]
    to_weighted: tuple[int, ...]
    from_weighted: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.vectors)

    def coordinates(self, y: int) -> int:
        """Weighted coordinates of ``y`` in I."""
        return gf2.apply_cols(self.to_weighted, y >> 1)

    def element(self, coords: int) -> int:
        return from_natural(gf2.apply_cols(self.from_weighted, coords))


def weighted_basis(chain: Sequence[Sequence[int]]) -> WeightedBasis:
    """Extend a basis of the deepest power upwards through the chain."""
    eb = gf2.EchelonBasis()
    layers: list[list[int]] = []
    for level in reversed(chain):
        layer = [v for v in level if eb.add(v)]
        layers.append(layer)
    layers.reverse()
    vectors, weights = [], []
    for w, layer in enumerate(layers, start=1):
        vectors += layer
        weights += [w] * len(layer)
    m = len(vectors)
    from_w = [v >> 1 for v in vectors]
    to_w = gf2.inverse_cols(from_w, m) if m else []
    return WeightedBasis(tuple(vectors), tuple(weights), tuple(to_w), tuple(from_w))


def natural_basis(order: int) -> list[int]:
    return [1 | (1 << g) for g in range(1, order)]


@dataclass(frozen=True)
class CenterBasis:
    class_sums: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.class_sums)

    def ideal_part(self) -> list[int]:
        """Basis of ``Z(KG) ∩ I``: ``1 + z`` for central ``z != 1`` and larger class sums."""
        out = []
        for s in self.class_sums:
            if s == 1:
                continue
            out.append(s ^ 1 if augmentation(s) else s)
        return out


def center_basis(classes: Sequence[Sequence[int]]) -> CenterBasis:
    sums = []
    for cls in classes:
        s = 0
        for g in cls:
            s |= 1 << g
        sums.append(s)
    return CenterBasis(tuple(sums))


class GroupAlgebra:
    """Convenience bundle of a group table with its algebra data."""

    def __init__(self, table: GroupTable) -> None:
        from .pcgroup import conjugacy_classes

        self.table = table
        self.order = table.order
        self.tables = MulTables.from_table(table)
        self._classes = conjugacy_classes(table)
        self._filtration: list[list[int]] | None = None
        self._basis: WeightedBasis | None = None

    @property
    def classes(self) -> list[list[int]]:
        return self._classes

    def mul(self, x: int, y: int) -> int:
        return self.tables.mul(x, y)

    def inverse(self, u: int) -> int:
        return inverse_of_normalized_unit(u, self.tables)

    @property
    def filtration(self) -> list[list[int]]:
        if self._filtration is None:
            self._filtration = ideal_power_filtration(self.tables)
        return self._filtration

    @property
    def basis(self) -> WeightedBasis:
        if self._basis is None:
            self._basis = weighted_basis(self.filtration)
        return self._basis

    def center_basis(self) -> CenterBasis:
        return center_basis(self._classes)
