"""Brute-force reference computations over all units of KG, for |G| <= 16.

These enumerate the 2^(|G|-1) normalized units as a numpy array and use only
the group multiplication table, so they share no code path with the PC
machinery, the center linear algebra or the quadratic-map counter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .pcgroup import GroupTable

MAX_ORDER = 16


def _check(t: GroupTable) -> None:
    if t.order > MAX_ORDER:
        raise ValueError(f"brute-force oracles are limited to |G| <= {MAX_ORDER}")


def all_elements(t: GroupTable) -> np.ndarray:
    _check(t)
    return np.arange(1 << t.order, dtype=np.uint32)


def all_units(t: GroupTable) -> np.ndarray:
    """Elements of augmentation 1."""
    x = all_elements(t)
    par = np.zeros_like(x)
    for g in range(t.order):
        par ^= (x >> g) & 1
    return x[par == 1]


def batch_mul(x: np.ndarray, y: np.ndarray, t: GroupTable) -> np.ndarray:
    """Elementwise products in KG of two equally shaped arrays (or an array and a scalar)."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.uint32), np.asarray(y, dtype=np.uint32))
    n = t.order
    xb = [(x >> g) & 1 for g in range(n)]
    yb = [(y >> h) & 1 for h in range(n)]
    out = np.zeros(x.shape, dtype=np.uint32)
    for g in range(n):
        if not xb[g].any():
            continue
        row = t.mul[g]
        for h in range(n):
            out ^= (xb[g] & yb[h]) << np.uint32(row[h])
    return out


def count_units(t: GroupTable) -> int:
    """Elements of KG some power of which is 1 (nonunits are nilpotent)."""
    x = all_elements(t)
    for _ in range(t.order.bit_length() + 1):
        x = batch_mul(x, x, t)
    return int(np.count_nonzero(x == 1))


def involution_count(t: GroupTable) -> int:
    u = all_units(t)
    return int(np.count_nonzero(batch_mul(u, u, t) == 1)) - 1


def _closure(gens: list[int], member: np.ndarray, elems: np.ndarray, t: GroupTable) -> np.ndarray:
    frontier = elems
    while frontier.size:
        new = np.unique(np.concatenate([batch_mul(frontier, np.uint32(g), t) for g in gens]))
        new = new[~member[new]]
        member[new] = True
        frontier = new
    return np.flatnonzero(member).astype(np.uint32)


def frattini_order(t: GroupTable) -> int:
    """``|<v^2 : v in V>|``; for a 2-group this subgroup already contains [V, V]."""
    u = all_units(t)
    squares = np.unique(batch_mul(u, u, t))
    member = np.zeros(1 << t.order, dtype=bool)
    member[1] = True
    elems = np.array([1], dtype=np.uint32)
    gens: list[int] = []
    for s in squares:
        if member[s]:
            continue
        gens.append(int(s))
        elems = _closure(gens, member, elems, t)
    return len(elems)


def subgroup_order(gens: list[int], t: GroupTable) -> int:
    _check(t)
    member = np.zeros(1 << t.order, dtype=bool)
    member[1] = True
    return len(_closure(gens, member, np.array([1], dtype=np.uint32), t))


@dataclass(frozen=True)
class CenterFacts:
    order: int
    exponent: int
    involutions: int


def center_facts(t: GroupTable, v_generators: list[int]) -> CenterFacts:
    """Center of V found by testing every unit against generators of V."""
    u = all_units(t)
    central = np.ones(u.shape, dtype=bool)
    for g in v_generators:
        central &= batch_mul(u, np.uint32(g), t) == batch_mul(np.uint32(g), u, t)
    z = u[central]
    exp = 1
    cur = z
    while np.any(cur != 1):
        cur = batch_mul(cur, cur, t)
        exp *= 2
    inv = int(np.count_nonzero(batch_mul(z, z, t) == 1)) - 1
    return CenterFacts(len(z), exp, inv)


# ---------------------------------------------------------------- full-space census


def _translation_tables(t: GroupTable, left: bool) -> np.ndarray:
    """``tab[g, c, b]``: image of byte ``b`` of chunk ``c`` under ``y -> g y`` (or ``y g``)."""
    n = t.order
    nchunks = (n + 7) // 8
    tab = np.zeros((n, nchunks, 256), dtype=np.uint32)
    for g in range(n):
        for c in range(nchunks):
            for b in range(1, 256):
                low = (b & -b).bit_length() - 1
                h = 8 * c + low
                img = 0
                if h < n:
                    img = 1 << (t.mul[g][h] if left else t.mul[h][g])
                tab[g, c, b] = tab[g, c, b & (b - 1)] | img
    return tab


@njit(cache=True, nogil=True)
def _direct_walk(lt, rt, sqg, n):
    """Gray walk over y in I (basis 1+g), updating s = y^2 from translations of y."""
    nchunks = lt.shape[1]
    m = n - 1
    y = np.uint32(0)
    s = np.uint32(0)
    count = np.int64(1)
    for step in range(1, np.int64(1) << m):
        k = 0
        x = step
        while (x & 1) == 0:
            x >>= 1
            k += 1
        g = k + 1
        # (y + 1 + g)^2 = y^2 + 1 + g^2 + y g + g y
        t = np.uint32(1) ^ sqg[g]
        for c in range(nchunks):
            b = (y >> np.uint32(8 * c)) & np.uint32(0xFF)
            t ^= lt[g, c, b] ^ rt[g, c, b]
        s ^= t
        y ^= np.uint32(1) | (np.uint32(1) << np.uint32(g))
        if s == 0:
            count += 1
    return count


def direct_square_root_count(t: GroupTable) -> int:
    """``|{x in V : x^2 = 1}|`` by walking all of I, independent of the quadratic-map tables.

    Works for every |G| <= 32; at order 32 it visits 2^31 points (about a minute).
    """
    if t.order > 32:
        raise ValueError("group order must be at most 32")
    lt = _translation_tables(t, left=True)
    rt = _translation_tables(t, left=False)
    sqg = np.array([1 << t.mul[g][g] for g in range(t.order)], dtype=np.uint32)
    return int(_direct_walk(lt, rt, sqg, t.order))
