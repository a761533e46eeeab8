"""Invariant ladder of V(KG) for one catalogue group.

Tiers, cheapest first:

1. order of the center of V, order of the Frattini subgroup of V;
2. exponent and number of involutions of the center of V, 2-class of V;
3. number of involutions of V.

The center is handled on the algebra side: a unit is central in V exactly when
it is central in KG, and the central units form ``1 + (Z(KG) ∩ I)``, on which
squaring is GF(2)-linear.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields
from typing import Iterable

from . import gf2
from .algebra import CenterBasis, GroupAlgebra, MulTables
from .catalogue import CatalogueEntry
from .involutions import DEFAULT_SPLIT_BITS, ProgressCallback, build_quadratic_map, count_involutions
from .pcsub import frattini_subgroup, lower_p_central_series
from .unitpc import UnitPcPresentation, build_unit_pc_presentation

ALL_TIERS = frozenset({1, 2, 3})

# ladder order used to explain splits; (field, tier, human label)
LADDER = (
    ("center_order_log2", 1, "order of the center of V(KG) (log2)"),
    ("frattini_order_log2", 1, "order of the Frattini subgroup of V(KG) (log2)"),
    ("center_exponent", 2, "exponent of the center of V(KG)"),
    ("center_involutions", 2, "involutions in the center of V(KG)"),
    ("p_class", 2, "2-class of V(KG)"),
    ("involutions", 3, "involutions in V(KG)"),
)


@dataclass
class InvariantRecord:
    order: int
    catalogue_id: int
    v_order_log2: int
    presentation_hash: str = ""
    center_order_log2: int | None = None
    frattini_order_log2: int | None = None
    center_exponent: int | None = None
    center_involutions: int | None = None
    p_class: int | None = None
    involutions: int | None = None
    tiers: frozenset[int] = frozenset()
    runtime_ms: dict[str, float] = field(default_factory=dict)

    @property
    def square_roots_of_one(self) -> int | None:
        """``|{x in V : x^2 = 1}|``, the involutions plus the identity."""
        return None if self.involutions is None else self.involutions + 1

    def value(self, name: str) -> int | None:
        return getattr(self, name)

    def values(self) -> dict[str, int | None]:
        return {name: getattr(self, name) for name, _, _ in LADDER}

    def merge(self, other: "InvariantRecord") -> "InvariantRecord":
        """Fill missing values of ``self`` from ``other`` (same group)."""
        for f in fields(self):
            if getattr(self, f.name) is None and getattr(other, f.name) is not None:
                setattr(self, f.name, getattr(other, f.name))
        self.tiers = frozenset(self.tiers | other.tiers)
        self.runtime_ms = {**other.runtime_ms, **self.runtime_ms}
        return self


def center_order(cb: CenterBasis) -> int:
    """log2 of ``|Z(V(KG))|``: one less than the number of conjugacy classes."""
    return cb.k - 1


def center_squaring_map(cb: CenterBasis, t: MulTables) -> list[int]:
    """Matrix (columns) of ``z -> z^2`` on ``Z(KG) ∩ I`` in the basis ``cb.ideal_part()``."""
    basis = cb.ideal_part()
    eb = gf2.EchelonBasis()
    for z in basis:
        if not eb.add(z):
            raise ArithmeticError("class sums are linearly dependent")
    squares = []
    for z in basis:
        residue, combo = eb.reduce(t.mul(z, z))
        if residue:
            raise ArithmeticError("square of a central element left the center")
        squares.append(combo)
    for a, za in enumerate(basis):
        for b in range(a + 1, len(basis)):
            zb = basis[b]
            s = za ^ zb
            if t.mul(s, s) != t.mul(za, za) ^ t.mul(zb, zb):
                raise ArithmeticError("squaring is not additive on the center")
    return squares


def _nilpotency_index(cols: list[int]) -> int:
    """Least ``t`` with ``S^t = 0``."""
    n = len(cols)
    power = [1 << k for k in range(n)]
    t = 0
    while any(power):
        power = gf2.compose_cols(cols, power)
        t += 1
        if t > n:
            raise ArithmeticError("squaring map on the center is not nilpotent")
    return t


def center_exponent(s: list[int]) -> int:
    return 1 << _nilpotency_index(s)


def center_involutions(s: list[int]) -> int:
    return (1 << len(gf2.kernel(s))) - 1


class GroupContext:
    """Lazily built algebra and unit-group data for one catalogue entry."""

    def __init__(self, entry: CatalogueEntry) -> None:
        self.entry = entry
        self.algebra = GroupAlgebra(entry.table())
        self._units: UnitPcPresentation | None = None

    @property
    def units(self) -> UnitPcPresentation:
        if self._units is None:
            self._units = build_unit_pc_presentation(self.algebra.basis, self.algebra.tables)
        return self._units


def compute_record(
    entry: CatalogueEntry,
    tiers: Iterable[int] = ALL_TIERS,
    threads: int = 1,
    split_bits: int = DEFAULT_SPLIT_BITS,
    progress: ProgressCallback | None = None,
) -> InvariantRecord:
    tiers = frozenset(tiers)
    if not tiers <= ALL_TIERS:
        raise ValueError(f"unknown tiers {sorted(tiers - ALL_TIERS)}")
    ctx = GroupContext(entry)
    rec = InvariantRecord(
        order=entry.order,
        catalogue_id=entry.catalogue_id,
        v_order_log2=entry.order - 1,
        presentation_hash=entry.content_hash(),
        tiers=tiers,
    )
    timings = rec.runtime_ms

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[name] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    cb = ctx.algebra.center_basis()
    if 1 in tiers:
        rec.center_order_log2 = timed("center_order_log2", lambda: center_order(cb))
        rec.frattini_order_log2 = timed(
            "frattini_order_log2", lambda: frattini_subgroup(ctx.units.collector).size_log2
        )
    if 2 in tiers:
        s = timed("center_squaring_map", lambda: center_squaring_map(cb, ctx.algebra.tables))
        rec.center_exponent = timed("center_exponent", lambda: center_exponent(s))
        rec.center_involutions = timed("center_involutions", lambda: center_involutions(s))
        rec.p_class = timed("p_class", lambda: len(lower_p_central_series(ctx.units.collector)) - 1)
    if 3 in tiers:
        q = timed("quadratic_map", lambda: build_quadratic_map(ctx.algebra.tables))
        rec.involutions = timed(
            "involutions",
            lambda: count_involutions(q, split_bits=split_bits, threads=threads, progress=progress),
        )
    return rec
