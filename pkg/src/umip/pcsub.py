"""Subgroups of PC groups via induced (echelonized) generating sequences.

Rows are normal forms with distinct leading (lowest) generator indices.  Sifting
divides by rows on the left using the collector, so it stays correct in
nonabelian groups where exponent vectors do not add.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable

from .pcgroup import Collector


def _lead(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass
class InducedSequence:
    collector: Collector
    rows: dict[int, int] = field(default_factory=dict)
    _inv: dict[int, int] = field(default_factory=dict, repr=False)

    @property
    def depths(self) -> list[int]:
        return sorted(self.rows)

    @property
    def size_log2(self) -> int:
        return len(self.rows)

    @property
    def order(self) -> int:
        return 1 << len(self.rows)

    def generators(self) -> list[int]:
        return [self.rows[d] for d in self.depths]

    def sift(self, g: int) -> int:
        rows, inv, mul = self.rows, self._inv, self.collector.mul
        while g:
            d = (g & -g).bit_length() - 1
            if d not in rows:
                return g
            g = mul(inv[d], g)
        return 0

    def contains(self, g: int) -> bool:
        return self.sift(g) == 0

    def _insert(self, r: int) -> None:
        d = _lead(r)
        self.rows[d] = r
        self._inv[d] = self.collector.inverse(r)

    def certificate_failures(self, ambient: Iterable[int] = ()) -> list[tuple[str, int, int]]:
        """Products and squares of rows, and conjugates by ``ambient``, that fail to sift to 1."""
        col = self.collector
        gens = self.generators()
        bad = []
        for a, x in enumerate(gens):
            if self.sift(col.square(x)):
                bad.append(("square", x, x))
            for y in gens[a + 1:]:
                if self.sift(col.mul(x, y)) or self.sift(col.mul(y, x)):
                    bad.append(("product", x, y))
            for g in ambient:
                if self.sift(col.conj(x, g)):
                    bad.append(("conjugate", x, g))
        return bad


def sift(seq: InducedSequence, g: int) -> int:
    return seq.sift(g)


def induced_sequence(
    gens: Iterable[int],
    collector: Collector,
    normal_closure: bool = False,
    ambient: Iterable[int] | None = None,
) -> InducedSequence:
    """Induced sequence of ``<gens>`` (or of its normal closure under ``ambient``).

    ``ambient`` defaults to the PC generators of the collector's group.
    """
    seq = InducedSequence(collector)
    if ambient is None:
        ambient = [1 << k for k in range(collector.ngens)]
    ambient = list(ambient)
    heap: list[tuple[int, int]] = []

    def push(x: int) -> None:
        if x:
            heapq.heappush(heap, (_lead(x), x))

    for g in gens:
        push(g)
    while heap:
        _, g = heapq.heappop(heap)
        r = seq.sift(g)
        if not r:
            continue
        old = seq.generators()
        seq._insert(r)
        push(collector.square(r))
        for s in old:
            push(collector.comm(r, s))
        if normal_closure:
            for a in ambient:
                # r^a = r [r, a], so the conjugate lies in the subgroup iff the commutator does
                push(collector.comm(r, a))
    return seq


def frattini_subgroup(collector: Collector) -> InducedSequence:
    """``Phi(V) = V^2 [V, V]``: normal closure of all power and commutator tails."""
    pres = collector.pres
    tails = list(pres.power_tails) + list(pres.commutator_tails.values())
    return induced_sequence(tails, collector, normal_closure=True)


def lower_p_central_series(collector: Collector) -> list[InducedSequence]:
    """``lambda_1 = V``, ``lambda_{i+1} = [lambda_i, V] lambda_i^2``, ending with the trivial term."""
    n = collector.ngens
    ambient = [1 << k for k in range(n)]
    top = InducedSequence(collector)
    for k in range(n):
        top._insert(1 << k)
    series = [top]
    while series[-1].rows:
        cur = series[-1].generators()
        gens = [collector.square(r) for r in cur]
        gens += [collector.comm(r, a) for r in cur for a in ambient]
        nxt = induced_sequence(gens, collector, normal_closure=True, ambient=ambient)
        if nxt.size_log2 >= series[-1].size_log2:
            raise ArithmeticError("lower exponent-2 central series stalled")
        series.append(nxt)
    return series


def p_class(collector: Collector) -> int:
    return len(lower_p_central_series(collector)) - 1
