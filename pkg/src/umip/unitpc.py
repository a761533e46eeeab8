"""Power-commutator presentation of the normalized unit group V(KG).

Generators are ``u_i = 1 + b_i`` for a weighted basis ``b`` of the
augmentation ideal.  Units are brought to normal form by peeling: the lowest
nonzero weighted coordinate of ``u - 1`` names the next generator, which is
divided off on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import AlgebraError, MulTables, WeightedBasis, augmentation, inverse_of_normalized_unit
from .gf2 import bits
from .pcgroup import Collector, GroupPresentation


class PeelingError(AlgebraError):
    """Peeling failed to clear a coordinate: the basis is not weight-adapted."""


def _peel(u: int, basis: WeightedBasis, tables: MulTables, gen_inv: tuple[int, ...]) -> int:
    if not augmentation(u):
        raise AlgebraError("augmentation 0 element is not a normalized unit")
    word = 0
    last = -1
    to_w = basis.to_weighted
    while u != 1:
        coords = 0
        v = u >> 1
        while v:
            low = v & -v
            coords ^= to_w[low.bit_length() - 1]
            v ^= low
        i = (coords & -coords).bit_length() - 1
        if i <= last:
            raise PeelingError(f"coordinate {i} reappeared after peeling generator {last}")
        word |= 1 << i
        u = tables.mul(gen_inv[i], u)
        last = i
    return word


def unit_normal_form(u: int, basis: WeightedBasis, tables: MulTables) -> int:
    gen_inv = tuple(inverse_of_normalized_unit(1 ^ b, tables) for b in basis.vectors)
    return _peel(u, basis, tables, gen_inv)


@dataclass(frozen=True, eq=False)
class UnitPcPresentation:
    presentation: GroupPresentation
    weights: tuple[int, ...]
    basis: WeightedBasis
    tables: MulTables
    gen_inv: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.presentation.ngens

    @property
    def order_log2(self) -> int:
        return self.m

    @cached_property
    def collector(self) -> Collector:
        return Collector(self.presentation)

    def generator(self, i: int) -> int:
        return 1 ^ self.basis.vectors[i]

    def normal_form(self, u: int) -> int:
        return _peel(u, self.basis, self.tables, self.gen_inv)

    def to_algebra(self, word: int) -> int:
        out = 1
        for i in bits(word):
            out = self.tables.mul(out, 1 ^ self.basis.vectors[i])
        return out


def word_to_algebra(word: int, pres: UnitPcPresentation) -> int:
    return pres.to_algebra(word)


def build_unit_pc_presentation(basis: WeightedBasis, tables: MulTables) -> UnitPcPresentation:
    m = basis.m
    gens = [1 ^ b for b in basis.vectors]
    gen_inv = tuple(inverse_of_normalized_unit(u, tables) for u in gens)
    mul = tables.mul

    def peel(u: int) -> int:
        return _peel(u, basis, tables, gen_inv)

    powers = tuple(peel(mul(u, u)) for u in gens)
    comms = {}
    for i in range(m):
        for j in range(i + 1, m):
            c = mul(mul(gen_inv[j], gen_inv[i]), mul(gens[j], gens[i]))
            if c != 1:
                comms[(j, i)] = peel(c)
    w = basis.weights
    for i, t in enumerate(powers):
        if any(w[k] < 2 * w[i] for k in bits(t)):
            raise PeelingError(f"power tail of u{i} violates the weight grading")
    for (j, i), t in comms.items():
        if any(w[k] < w[i] + w[j] for k in bits(t)):
            raise PeelingError(f"commutator tail of (u{j}, u{i}) violates the weight grading")
    pres = GroupPresentation(m, powers, comms)
    return UnitPcPresentation(pres, tuple(w), basis, tables, gen_inv)
