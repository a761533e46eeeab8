"""Power-commutator presentations of 2-groups and brute-force group tables.

All relative orders are 2, so an element is an exponent bit vector stored as an
int: bit ``i`` set means generator ``g_i`` (0-based) occurs in the normal word
``g_0^e0 g_1^e1 ...``.  Commutators follow ``[x, y] = x^-1 y^-1 x y``.

The same :class:`Collector` drives both the small catalogue groups and the
unit groups ``V(KG)`` with up to 31 generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .gf2 import bits


class PresentationError(ValueError):
    """Raised for malformed or inconsistent presentations."""


def word_to_mask(word: Iterable[int]) -> int:
    mask = 0
    for k in word:
        mask |= 1 << k
    return mask


@dataclass(frozen=True)
class GroupPresentation:
    """A refined PC presentation with tails stored as exponent bit masks.

    ``power_tails[i]`` is the normal form of ``g_i^2``; ``commutator_tails``
    maps ``(j, i)`` with ``j > i`` to the normal form of ``[g_j, g_i]``.
    Missing commutator entries are trivial.
    """

    ngens: int
    power_tails: tuple[int, ...]
    commutator_tails: Mapping[tuple[int, int], int] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if len(self.power_tails) != self.ngens:
            raise PresentationError("one power tail per generator required")
        for i, t in enumerate(self.power_tails):
            if t >> (i + 1) << (i + 1) != t:
                raise PresentationError(f"power tail of g{i} must use later generators")
            if t >> self.ngens:
                raise PresentationError(f"power tail of g{i} out of range")
        for (j, i), t in self.commutator_tails.items():
            if not 0 <= i < j < self.ngens:
                raise PresentationError(f"bad commutator key {(j, i)}")
            if t & ((1 << (i + 1)) - 1) or t >> self.ngens:
                raise PresentationError(f"commutator tail of {(j, i)} out of range")

    @property
    def order(self) -> int:
        return 1 << self.ngens

    def power_word(self, i: int) -> tuple[int, ...]:
        return tuple(bits(self.power_tails[i]))

    def commutator_word(self, j: int, i: int) -> tuple[int, ...]:
        return tuple(bits(self.commutator_tails.get((j, i), 0)))


class Collector:
    """Normal-form arithmetic in the group defined by a PC presentation."""

    def __init__(self, pres: GroupPresentation) -> None:
        n = pres.ngens
        self.pres = pres
        self.ngens = n
        self._power = list(pres.power_tails)
        # _conj[i][j] for j > i: generator list of g_j^{g_i} = g_j [g_j, g_i], pushed in reverse
        self._conj: list[list[tuple[int, ...]]] = [[()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                tail = pres.commutator_tails.get((j, i), 0)
                self._conj[i][j] = tuple(reversed((j, *bits(tail))))
        self._gen_inv: list[int] = [0] * n
        for i in reversed(range(n)):
            # g_i^-1 = g_i (g_i^2)^-1, and g_i^2 only involves later generators
            self._gen_inv[i] = self.mul(1 << i, self.inverse(self._power[i]))

    def _collect(self, x: int, stack: list[int]) -> int:
        power = self._power
        conj = self._conj
        while stack:
            i = stack.pop()
            high = x >> (i + 1) << (i + 1)
            if high:
                x ^= high
            if x >> i & 1:
                x ^= (1 << i) | power[i]
            else:
                x |= 1 << i
            if high:
                ci = conj[i]
                for j in sorted(bits(high), reverse=True):
                    stack.extend(ci[j])
        return x

    def mul(self, x: int, y: int) -> int:
        """Product of two normal forms."""
        if not y:
            return x
        return self._collect(x, sorted(bits(y), reverse=True))

    def mul_gen(self, x: int, i: int) -> int:
        return self._collect(x, [i])

    def inverse(self, x: int) -> int:
        out = 0
        for i in sorted(bits(x), reverse=True):
            out = self.mul(out, self._gen_inv[i])
        return out

    def collect(self, word: Sequence[int]) -> int:
        """Normal form of a word of signed 1-based generator indices."""
        x = 0
        for s in word:
            k = abs(s) - 1
            if s == 0 or not 0 <= k < self.ngens:
                raise IndexError(f"generator index {s} out of range 1..{self.ngens}")
            if s > 0:
                x = self.mul_gen(x, k)
            else:
                x = self.mul(x, self._gen_inv[k])
        return x

    def comm(self, x: int, y: int) -> int:
        return self.mul(self.inverse(self.mul(y, x)), self.mul(x, y))

    def conj(self, x: int, y: int) -> int:
        """``y^-1 x y``."""
        return self.mul(self.inverse(y), self.mul(x, y))

    def square(self, x: int) -> int:
        return self.mul(x, x)


def collect_normal_form(pres: GroupPresentation, word: Sequence[int]) -> int:
    return Collector(pres).collect(word)


@dataclass(frozen=True)
class GroupTable:
    """Full multiplication table; element ``x`` is the exponent mask ``x``."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    id_index: int = 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def comm(self, x: int, y: int) -> int:
        m, inv = self.mul, self.inv
        return m[m[inv[x]][inv[y]]][m[x][y]]

    def power(self, x: int, e: int) -> int:
        out = self.id_index
        for _ in range(e):
            out = self.mul[out][x]
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.id_index:
            y = self.mul[y][x]
            k += 1
        return k


def build_group_table(pres: GroupPresentation, verify: bool = True) -> GroupTable:
    if pres.ngens > 5:
        raise PresentationError("group tables are limited to order <= 32")
    col = Collector(pres)
    n = pres.order
    mul = tuple(tuple(col.mul(x, y) for y in range(n)) for x in range(n))
    inv = tuple(col.inverse(x) for x in range(n))
    table = GroupTable(n, mul, inv)
    if verify:
        _verify_table(table)
    return table


def _verify_table(t: GroupTable) -> None:
    n = t.order
    full = set(range(n))
    for x in range(n):
        if set(t.mul[x]) != full or {t.mul[y][x] for y in range(n)} != full:
            raise PresentationError("multiplication table is not a Latin square")
        if t.mul[x][t.inv[x]] != 0 or t.mul[0][x] != x or t.mul[x][0] != x:
            raise PresentationError("identity/inverse check failed")
    m = t.mul
    for x in range(n):
        mx = m[x]
        for y in range(n):
            mxy = m[mx[y]]
            my = m[y]
            for z in range(n):
                if mxy[z] != mx[my[z]]:
                    raise PresentationError(f"associativity fails at {(x, y, z)}")


def conjugacy_classes(t: GroupTable) -> list[list[int]]:
    seen: set[int] = set()
    classes = []
    for x in t.elements:
        if x in seen:
            continue
        cls = sorted({t.mul[t.mul[t.inv[g]][x]][g] for g in t.elements})
        seen.update(cls)
        classes.append(cls)
    return classes


def subgroup_closure(t: GroupTable, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in set(gens) if g != t.id_index]
    elems = {t.id_index}
    frontier = [t.id_index]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t.mul[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def center_of_group(t: GroupTable) -> frozenset[int]:
    return frozenset(
        x for x in t.elements if all(t.mul[x][g] == t.mul[g][x] for g in t.elements)
    )


def commutator_subgroup(t: GroupTable, a: Iterable[int], b: Iterable[int]) -> frozenset[int]:
    b = list(b)
    return subgroup_closure(t, (t.comm(x, y) for x in a for y in b))


def derived_subgroup(t: GroupTable) -> frozenset[int]:
    return commutator_subgroup(t, t.elements, t.elements)


def agemo(t: GroupTable, subgroup: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by the squares of ``subgroup``."""
    return subgroup_closure(t, (t.mul[x][x] for x in subgroup))


def product_subgroup(t: GroupTable, a: Iterable[int], b: Iterable[int]) -> frozenset[int]:
    return subgroup_closure(t, [*a, *b])


def jennings_series(t: GroupTable) -> list[frozenset[int]]:
    """Dimension subgroups ``D_1 = G``, ``D_i = [D_{i-1}, G] (D_{ceil(i/2)})^2``.

    The returned list stops at (and includes) the first trivial term.  Terms
    may repeat (in C8, ``D_3 = D_4``).
    """
    series = [frozenset(t.elements)]
    while len(series[-1]) > 1:
        i = len(series) + 1
        comm = commutator_subgroup(t, series[-1], t.elements)
        sq = agemo(t, series[(i + 1) // 2 - 1])
        series.append(product_subgroup(t, comm, sq))
        if i > t.order + 1:
            raise PresentationError("Jennings series does not reach 1; not a 2-group")
    return series


def lower_central_series(t: GroupTable) -> list[frozenset[int]]:
    series = [frozenset(t.elements)]
    while len(series[-1]) > 1:
        nxt = commutator_subgroup(t, series[-1], t.elements)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def nilpotency_class(t: GroupTable) -> int:
    return len(lower_central_series(t)) - 1


def exponent(t: GroupTable) -> int:
    e = 1
    for x in t.elements:
        e = max(e, t.element_order(x))
    return e


def is_abelian(t: GroupTable) -> bool:
    return all(t.mul[x][y] == t.mul[y][x] for x in t.elements for y in t.elements)


def abelian_invariants(t: GroupTable) -> tuple[int, ...]:
    """Invariants of ``G/G'`` as an ascending tuple of cyclic factor orders."""
    dsub = derived_subgroup(t)
    coset_of: dict[int, frozenset[int]] = {}
    for x in t.elements:
        if x not in coset_of:
            c = frozenset(t.mul[x][d] for d in dsub)
            for y in c:
                coset_of[y] = c
    # a_k = |A^(2^k)|; factors of order >= 2^k number log2(a_{k-1} / a_k)
    sizes = []
    k = 0
    while True:
        img = {coset_of[t.power(x, 1 << k)] for x in t.elements}
        sizes.append(len(img))
        if len(img) == 1:
            break
        k += 1
    counts = [(sizes[k - 1] // sizes[k]).bit_length() - 1 for k in range(1, len(sizes))]
    inv = []
    for k, c in enumerate(counts, start=1):
        nxt = counts[k] if k < len(counts) else 0
        inv += [1 << k] * (c - nxt)
    return tuple(sorted(inv))
