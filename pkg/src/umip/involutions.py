"""Involution census of V(KG) by exhaustive evaluation of the squaring map.

Over GF(2), ``(1 + y)^2 = 1 + y^2``, so ``1 + y`` is an involution exactly when
``y != 0`` and ``Q(y) = y^2 = 0``.  For ``y = sum_i y_i b_i``

    Q(y) = sum_{i in y} sq[i] + sum_{i < j in y} cross[i][j],

with ``sq[i] = b_i^2`` and ``cross[i][j] = b_i b_j + b_j b_i``.  The space is
split into cosets by fixing the top ``s`` coordinates; each task walks its
coset in Gray-code order.

Two kernels are provided.  ``"walk"`` keeps ``R = Q(y)`` and the accumulators
``c_i = sum_{j in y} cross[j][i]`` and pays ``m`` word operations per point.
``"split"`` (the default) tabulates ``Q`` on the low ``l`` coordinates once and,
for each high part ``H``, counts low parts ``L`` with
``Q(L) + sum_{i in L} c_i(H) = Q(H)``, which costs O(1) per point.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numba import njit

from .algebra import MulTables, WeightedBasis, natural_basis

log = logging.getLogger(__name__)

DEFAULT_SPLIT_BITS = 8
TABLE_BITS = 16
ORACLE_MAX_ORDER = 16

ProgressCallback = Callable[[int, int, int], None]


class IntegrityError(RuntimeError):
    """Incrementally maintained Gray-code state disagreed with a recomputation."""


@dataclass(frozen=True, eq=False)
class QuadraticMap:
    """Squaring map on I in the coordinates of ``basis`` (a list of algebra elements)."""

    m: int
    sq: np.ndarray
    cross: np.ndarray
    basis: tuple[int, ...]

    def __call__(self, y: int) -> int:
        return evaluate(self.sq, self.cross, y)


@njit(cache=True, nogil=True)
def _evaluate(sq, cross, y):
    m = sq.shape[0]
    r = np.uint32(0)
    for i in range(m):
        if (y >> i) & 1:
            r ^= sq[i]
            for j in range(i + 1, m):
                if (y >> j) & 1:
                    r ^= cross[i, j]
    return r


def evaluate(sq: np.ndarray, cross: np.ndarray, y: int) -> int:
    return int(_evaluate(sq, cross, np.int64(y)))


def build_quadratic_map(t: MulTables, basis: WeightedBasis | Sequence[int] | None = None) -> QuadraticMap:
    """Tabulate ``sq`` and ``cross``; outputs are coordinates in the same basis.

    The default basis is the natural one, ``{1 + g : g != 1}``.
    """
    if basis is None:
        vectors = natural_basis(t.order)
        coords = lambda y: y >> 1  # noqa: E731
    elif isinstance(basis, WeightedBasis):
        vectors = list(basis.vectors)
        coords = basis.coordinates
    else:
        from . import gf2

        vectors = list(basis)
        inv = gf2.inverse_cols([v >> 1 for v in vectors], len(vectors))
        coords = lambda y: gf2.apply_cols(inv, y >> 1)  # noqa: E731
    m = len(vectors)
    sq = np.zeros(m, dtype=np.uint32)
    cross = np.zeros((max(m, 1), max(m, 1)), dtype=np.uint32)[:m, :m].copy()
    for i, b in enumerate(vectors):
        sq[i] = coords(t.mul(b, b))
        for j in range(i + 1, m):
            c = coords(t.mul(b, vectors[j]) ^ t.mul(vectors[j], b))
            cross[i, j] = cross[j, i] = c
    return QuadraticMap(m, sq, cross, tuple(vectors))


@njit(cache=True, nogil=True)
def _start_state(sq, cross, fixed):
    """``R = Q(fixed)`` and ``c_i = sum_{j in fixed} cross[j][i]``."""
    m = sq.shape[0]
    c = np.zeros(m, dtype=np.uint32)
    r = np.uint32(0)
    for j in range(m):
        if (fixed >> j) & 1:
            r ^= sq[j] ^ c[j]
            for i in range(m):
                c[i] ^= cross[j, i]
    return r, c


@njit(cache=True, nogil=True)
def _ctz(x):
    k = 0
    while (x & 1) == 0:
        x >>= 1
        k += 1
    return k


@njit(cache=True, nogil=True)
def _walk_task(sq, cross, fixed, free_bits):
    """Gray walk over the low ``free_bits`` coordinates with ``c`` accumulators.

    Returns ``(zeros, final_y, final_R)``; ``zeros`` counts points with Q = 0
    (including ``y = 0`` when it lies in the coset).
    """
    m = sq.shape[0]
    r, c = _start_state(sq, cross, fixed)
    y = fixed
    count = np.int64(1) if r == 0 else np.int64(0)
    total = np.int64(1) << free_bits
    for step in range(1, total):
        k = _ctz(step)
        # cross[k][k] = 0, so c_k is the same before and after the flip
        r ^= sq[k] ^ c[k]
        for i in range(m):
            c[i] ^= cross[k, i]
        y ^= np.int64(1) << k
        if r == 0:
            count += 1
    return count, y, r


@njit(cache=True, nogil=True)
def _low_table(sq, cross, l):
    """``Q`` on the low ``l`` coordinates, stored in Gray-code visiting order."""
    r, c = _start_state(sq, cross, np.int64(0))
    size = np.int64(1) << l
    tab = np.empty(size, dtype=np.uint32)
    tab[0] = 0
    for step in range(1, size):
        k = _ctz(step)
        r ^= sq[k] ^ c[k]
        for i in range(l):
            c[i] ^= cross[k, i]
        tab[step] = r
    return tab


@njit(cache=True, nogil=True)
def _split_task(sq, cross, fixed, l, high_bits, table):
    """Count zeros of Q on ``fixed + H + L`` over ``2^high_bits`` high and ``2^l`` low parts."""
    r, c = _start_state(sq, cross, fixed)
    m = sq.shape[0]
    size = np.int64(1) << l
    nh = np.int64(1) << high_bits
    count = np.int64(0)
    y = fixed
    v = np.uint32(0)
    for hstep in range(nh):
        if hstep > 0:
            k = l + _ctz(hstep)
            r ^= sq[k] ^ c[k]
            for i in range(m):
                c[i] ^= cross[k, i]
            y ^= np.int64(1) << k
        v = np.uint32(0)
        if table[0] == r:
            count += 1
        for step in range(1, size):
            v ^= c[_ctz(step)]
            if (table[step] ^ v) == r:
                count += 1
    # final point of the walk: high part y, low part gray(size - 1)
    low = (size - 1) ^ ((size - 1) >> 1)
    return count, y | low, table[size - 1] ^ v ^ r


@dataclass(frozen=True)
class CountTask:
    """A coset of the subgroup spanned by the free coordinates: top bits fixed to ``label``."""

    index: int
    fixed: int
    free_bits: int


def make_tasks(m: int, split_bits: int) -> list[CountTask]:
    s = max(0, min(split_bits, m))
    free = m - s
    return [CountTask(t, t << free, free) for t in range(1 << s)]


def _run_task(q: QuadraticMap, task: CountTask, method: str, table: np.ndarray | None, l: int) -> int:
    if method == "walk" or task.free_bits == 0:
        zeros, y, r = _walk_task(q.sq, q.cross, np.int64(task.fixed), task.free_bits)
        r = int(r)
    else:
        zeros, y, r = _split_task(
            q.sq, q.cross, np.int64(task.fixed), l, task.free_bits - l, table
        )
        r = int(r)
    expected = q(int(y))
    if r != expected:
        raise IntegrityError(f"task {task.index}: Gray state {r:#x} != recomputed {expected:#x} at y={int(y):#x}")
    return int(zeros)


def count_zeros(
    q: QuadraticMap,
    split_bits: int = DEFAULT_SPLIT_BITS,
    threads: int = 1,
    method: str = "split",
    progress: ProgressCallback | None = None,
) -> int:
    """Number of ``y`` (including 0) with ``Q(y) = 0``."""
    if method not in ("split", "walk"):
        raise ValueError(f"unknown method {method!r}")
    if q.m == 0:
        return 1
    tasks = make_tasks(q.m, split_bits)
    free = tasks[0].free_bits
    l = min(TABLE_BITS, free)
    table = _low_table(q.sq, q.cross, l) if method == "split" and free else None
    if table is not None and len(table) > 1:
        y_last = (len(table) - 1) ^ ((len(table) - 1) >> 1)
        if int(table[-1]) != q(y_last):
            raise IntegrityError("low table disagrees with direct evaluation")
    points_per_task = 1 << free
    counts = [0] * len(tasks)

    def run(task: CountTask) -> int:
        return _run_task(q, task, method, table, l)

    if threads <= 1:
        for done, task in enumerate(tasks, start=1):
            counts[task.index] = run(task)
            if progress:
                progress(done * points_per_task, done, len(tasks))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(run, task) for task in tasks]
            for done, (task, fut) in enumerate(zip(tasks, futures), start=1):
                counts[task.index] = fut.result()
                if progress:
                    progress(done * points_per_task, done, len(tasks))
    # summed in task order: the result does not depend on scheduling
    total = 0
    for c in counts:
        total += c
    return total


def count_involutions(
    q: QuadraticMap,
    split_bits: int = DEFAULT_SPLIT_BITS,
    threads: int = 1,
    method: str = "split",
    progress: ProgressCallback | None = None,
) -> int:
    return count_zeros(q, split_bits, threads, method, progress) - 1


def oracle_count_involutions(t: MulTables, allow_large: bool = False) -> int:
    """Count ``u != 1`` with ``u * u = 1`` by squaring every normalized unit."""
    if t.order > ORACLE_MAX_ORDER and not allow_large:
        raise ValueError(f"oracle refuses |G| = {t.order} > {ORACLE_MAX_ORDER} (pass allow_large)")
    count = 0
    mul = t.mul
    for v in range(1, 1 << (t.order - 1)):
        y = v << 1
        u = y | (1 - (y.bit_count() & 1))
        if mul(u, u) == 1:
            count += 1
    return count


@njit(cache=True, nogil=True)
def _order4_walk(sq, cross, free_bits):
    m = sq.shape[0]
    r, c = _start_state(sq, cross, np.int64(0))
    count = np.int64(1)
    for step in range(1, np.int64(1) << free_bits):
        k = _ctz(step)
        r ^= sq[k] ^ c[k]
        for i in range(m):
            c[i] ^= cross[k, i]
        if _evaluate(sq, cross, np.int64(r)) == 0:
            count += 1
    return count


def count_order_dividing_4(q: QuadraticMap) -> int:
    """Number of ``y`` (including 0) with ``Q(Q(y)) = 0``, i.e. units of order dividing 4."""
    if q.m == 0:
        return 1
    return int(_order4_walk(q.sq, q.cross, q.m))


def count_order_4(q: QuadraticMap) -> int:
    return count_order_dividing_4(q) - count_zeros(q, split_bits=0)
