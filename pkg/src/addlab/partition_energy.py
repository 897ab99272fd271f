"""Bipartition-energy quantities over subsets of a finite set.

Two maximized ratios are computed here, both of the shape
|X|^2 |Y|^2 / (|A| * E(X, Y)):

* the bipartition quantity, maximized over disjoint bipartitions
  X | Y = A (exact enumeration up to a cap, seeded local search beyond);
* the threshold quantity, maximized over X, Y subsets of A with
  |X| >= |A| / T (exact, small caps only).

Enumeration walks bipartitions in Gray-code order and maintains the
common energy E(X, Y) incrementally, so one bipartition costs O(|A|)
integer operations instead of O(|A|^2).  The exact walk may be chunked
across worker processes; the reduction (max ratio, then canonically
least X) is a total order, so the result is identical for any worker
count.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import Element, GroupError, GroupSet
from .setops import _subtractor, energy2

DEFAULT_ESTAR_CAP = 22
DEFAULT_ET_CAP = 12
PARALLEL_MIN_SIZE = 17


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit argument, else the ADDLAB_THREADS env var."""
    if workers is None:
        raw = os.environ.get("ADDLAB_THREADS", "1")
        try:
            workers = int(raw)
        except ValueError:
            workers = 1
    return max(1, workers)


@dataclass(frozen=True)
class Bipartition:
    """A pair of parts with its energy ratio |X|^2|Y|^2 / (|A| E(X,Y)).

    For the bipartition quantity X and Y are disjoint and cover A; the
    threshold quantity reuses the type for its (possibly overlapping)
    witness pair.
    """

    x: GroupSet
    y: GroupSet
    ratio: Fraction


@dataclass(frozen=True)
class PartitionQuantityReport:
    value: Fraction
    witness: Bipartition
    mode: str  # "exact" | "heuristic-lower-bound"
    trials: int
    seed: int | None


def _build_diff_table(elements: tuple[Element, ...], spec) -> tuple[list[list[int]], int]:
    """Index all pairwise differences; didx[i][j] locates a_i - a_j."""
    sub = _subtractor(spec)
    index: dict[Element, int] = {}
    n = len(elements)
    didx = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            d = sub(elements[i], elements[j])
            k = index.get(d)
            if k is None:
                k = len(index)
                index[d] = k
            didx[i][j] = k
    return didx, len(index)


class _BipartitionState:
    """Incremental E(X, Y) over a bipartition of a fixed element list.

    in_x[i] says which side element i is on; u and v count ordered
    difference pairs inside X and inside Y; energy = sum_k u[k] v[k].
    """

    __slots__ = ("n", "didx", "in_x", "u", "v", "energy", "x_size")

    def __init__(self, didx: list[list[int]], ndiffs: int, in_x: list[bool]):
        self.n = len(in_x)
        self.didx = didx
        self.in_x = list(in_x)
        self.u = [0] * ndiffs
        self.v = [0] * ndiffs
        self.energy = 0
        self.x_size = sum(self.in_x)
        u, v = self.u, self.v
        for i in range(self.n):
            row = didx[i]
            side = self.u if self.in_x[i] else self.v
            for j in range(self.n):
                if self.in_x[i] == self.in_x[j]:
                    side[row[j]] += 1
        self.energy = sum(a * b for a, b in zip(u, v))

    def move_to_x(self, e: int) -> None:
        didx, u, v, in_x = self.didx, self.u, self.v, self.in_x
        row = didx[e]
        k = row[e]
        v[k] -= 1
        self.energy -= u[k]
        for j in range(self.n):
            if j != e and not in_x[j]:
                k1, k2 = row[j], didx[j][e]
                v[k1] -= 1
                v[k2] -= 1
                self.energy -= u[k1] + u[k2]
        in_x[e] = True
        u[k] += 1
        self.energy += v[k]
        for j in range(self.n):
            if j != e and in_x[j]:
                k1, k2 = row[j], didx[j][e]
                u[k1] += 1
                u[k2] += 1
                self.energy += v[k1] + v[k2]
        self.x_size += 1

    def move_to_y(self, e: int) -> None:
        didx, u, v, in_x = self.didx, self.u, self.v, self.in_x
        row = didx[e]
        k = row[e]
        u[k] -= 1
        self.energy -= v[k]
        for j in range(self.n):
            if j != e and in_x[j]:
                k1, k2 = row[j], didx[j][e]
                u[k1] -= 1
                u[k2] -= 1
                self.energy -= v[k1] + v[k2]
        in_x[e] = False
        v[k] += 1
        self.energy += u[k]
        for j in range(self.n):
            if j != e and not in_x[j]:
                k1, k2 = row[j], didx[j][e]
                v[k1] += 1
                v[k2] += 1
                self.energy += u[k1] + u[k2]
        self.x_size -= 1

    def ratio_parts(self, total: int) -> tuple[int, int]:
        """(numerator, denominator) of the current ratio, unreduced."""
        cx = self.x_size
        cy = self.n - cx
        return (cx * cy) ** 2, total * self.energy

    def x_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.in_x[i])


def _better(num: int, den: int, xi: tuple[int, ...],
            best: tuple[int, int, tuple[int, ...]] | None) -> bool:
    """Strict improvement under (ratio desc, X canonical asc)."""
    if best is None:
        return True
    bn, bd, bx = best
    lhs = num * bd
    rhs = bn * den
    if lhs != rhs:
        return lhs > rhs
    return xi < bx


def _scan_masks(elements: tuple[Element, ...], spec, lo: int, hi: int
                ) -> tuple[int, int, tuple[int, ...]] | None:
    """Best bipartition over Gray-walk positions [lo, hi).

    Position i encodes the mask gray(i) over the n-1 free elements;
    element 0 is always on the X side.  Positions whose mask puts every
    free element in X (empty Y) are skipped; a window holding only that
    position yields None.
    """
    n = len(elements)
    didx, ndiffs = _build_diff_table(elements, spec)
    full = (1 << (n - 1)) - 1
    g = lo ^ (lo >> 1)
    in_x = [True] + [bool((g >> b) & 1) for b in range(n - 1)]
    state = _BipartitionState(didx, ndiffs, in_x)
    best: tuple[int, int, tuple[int, ...]] | None = None
    if g != full:
        num, den = state.ratio_parts(n)
        best = (num, den, state.x_indices())
    for i in range(lo + 1, hi):
        bit = (i & -i).bit_length() - 1
        e = bit + 1
        if (i ^ (i >> 1)) >> bit & 1:
            state.move_to_x(e)
        else:
            state.move_to_y(e)
        if (i ^ (i >> 1)) == full:
            continue
        num, den = state.ratio_parts(n)
        if best is None or num * best[1] > best[0] * den:
            best = (num, den, state.x_indices())
        elif num * best[1] == best[0] * den:
            xi = state.x_indices()
            if xi < best[2]:
                best = (num, den, xi)
    return best


def _scan_chunk(args) -> tuple[int, int, tuple[int, ...]] | None:
    elements, spec, lo, hi = args
    return _scan_masks(elements, spec, lo, hi)


def estar_exact(a: GroupSet, exact_cap: int = DEFAULT_ESTAR_CAP,
                workers: int | None = None) -> PartitionQuantityReport:
    """Exact maximum of the ratio over all bipartitions X | Y = A.

    Enumerates the 2^(|A|-1) - 1 unordered bipartitions with both sides
    nonempty; among maximizers returns the witness whose X (the side
    holding the least element of A) is canonically smallest.
    """
    n = len(a)
    if n < 2:
        raise GroupError("bipartition quantity needs |A| >= 2")
    if n > exact_cap:
        raise GroupError(
            f"|A| = {n} exceeds the exact enumeration cap {exact_cap}; "
            "use the heuristic")
    total = 1 << (n - 1)
    workers = resolve_workers(workers)
    if workers > 1 and n >= PARALLEL_MIN_SIZE:
        bounds = [total * k // workers for k in range(workers + 1)]
        jobs = [(a.elements, a.spec, lo, hi)
                for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for r in pool.map(_scan_chunk, jobs) if r is not None]
        best = results[0]
        for cand in results[1:]:
            if _better(cand[0], cand[1], cand[2], best):
                best = cand
    else:
        best = _scan_masks(a.elements, a.spec, 0, total)
    assert best is not None
    num, den, xi = best
    x = GroupSet(a.spec, tuple(a.elements[i] for i in xi))
    members = x.member_set()
    y = GroupSet(a.spec, tuple(e for e in a.elements if e not in members))
    value = Fraction(num, den)
    return PartitionQuantityReport(
        value=value,
        witness=Bipartition(x, y, value),
        mode="exact",
        trials=total - 1,
        seed=None,
    )


def estar_heuristic(a: GroupSet, budget: int, seed: int) -> PartitionQuantityReport:
    """Seeded lower-bound search for the bipartition quantity.

    Each of `budget` restarts draws a random bipartition (element 0
    pinned to the X side) and hill-climbs by single-element moves,
    accepting a move only when the ratio strictly increases under exact
    comparison.  The reported value never exceeds the true maximum.
    """
    n = len(a)
    if n < 2:
        raise GroupError("bipartition quantity needs |A| >= 2")
    if budget < 1:
        raise GroupError("budget must be >= 1")
    rng = random.Random(seed)
    didx, ndiffs = _build_diff_table(a.elements, a.spec)
    best: tuple[int, int, tuple[int, ...]] | None = None
    for _ in range(budget):
        while True:
            flags = [True] + [bool(rng.getrandbits(1)) for _ in range(n - 1)]
            if not all(flags):
                break
        state = _BipartitionState(didx, ndiffs, flags)
        improved = True
        while improved:
            improved = False
            for e in range(1, n):
                to_x = not state.in_x[e]
                if to_x and state.x_size == n - 1:
                    continue  # would empty Y; X always keeps element 0
                cur_num, cur_den = state.ratio_parts(n)
                if to_x:
                    state.move_to_x(e)
                else:
                    state.move_to_y(e)
                new_num, new_den = state.ratio_parts(n)
                if new_num * cur_den > cur_num * new_den:
                    improved = True
                else:
                    if to_x:
                        state.move_to_y(e)
                    else:
                        state.move_to_x(e)
        num, den = state.ratio_parts(n)
        xi = state.x_indices()
        if _better(num, den, xi, best):
            best = (num, den, xi)
    assert best is not None
    num, den, xi = best
    x = GroupSet(a.spec, tuple(a.elements[i] for i in xi))
    members = x.member_set()
    y = GroupSet(a.spec, tuple(e for e in a.elements if e not in members))
    value = Fraction(num, den)
    return PartitionQuantityReport(
        value=value,
        witness=Bipartition(x, y, value),
        mode="heuristic-lower-bound",
        trials=budget,
        seed=seed,
    )


def _mask_subset(a: GroupSet, mask: int) -> GroupSet:
    elems = tuple(a.elements[i] for i in range(len(a)) if (mask >> i) & 1)
    return GroupSet(a.spec, elems)


def et_exact(a: GroupSet, t: Fraction | int, cap: int = DEFAULT_ET_CAP
             ) -> PartitionQuantityReport:
    """Exact maximum of the ratio over X, Y subsets of A with |X| >= |A|/T.

    Both subsets range over all nonempty subsets of A (they may overlap
    and may equal A).  Pairwise energies for all subset pairs come from
    one integer Gram product of per-subset difference-count vectors; the
    counts stay far below 2^53, so the float64 matrix product and the
    final float comparisons are exact.
    """
    t = Fraction(t)
    if t < 1:
        raise GroupError("threshold parameter T must be >= 1")
    n = len(a)
    if n < 1:
        raise GroupError("threshold quantity needs |A| >= 1")
    if n > cap:
        raise GroupError(f"|A| = {n} exceeds the enumeration cap {cap}")
    didx, ndiffs = _build_diff_table(a.elements, a.spec)
    size = 1 << n
    m = np.zeros((size, ndiffs), dtype=np.int32)
    for mask in range(1, size):
        low = mask & -mask
        e = low.bit_length() - 1
        rest = mask ^ low
        np.copyto(m[mask], m[rest])
        row = didx[e]
        m[mask, row[e]] += 1
        r = rest
        while r:
            b = r & -r
            j = b.bit_length() - 1
            r ^= b
            m[mask, row[j]] += 1
            m[mask, didx[j][e]] += 1
    popcount = np.array([bin(x).count("1") for x in range(size)], dtype=np.int64)
    x_masks = np.nonzero(popcount * t.numerator >= n * t.denominator)[0]
    x_masks = x_masks[x_masks > 0]
    y_masks = np.arange(1, size, dtype=np.int64)
    if x_masks.size == 0:
        raise GroupError("no subset satisfies the size constraint")
    mf = m.astype(np.float64)
    sy2 = (popcount[y_masks] ** 2).astype(np.float64)
    yt = mf[y_masks].T
    best_val = -1.0
    ties: list[tuple[int, int]] = []
    block = max(1, (1 << 22) // size)
    for start in range(0, x_masks.size, block):
        rows = x_masks[start:start + block]
        energies = mf[rows] @ yt
        num = (popcount[rows] ** 2).astype(np.float64)[:, None] * sy2[None, :]
        ratios = num / (n * energies)
        bmax = float(ratios.max())
        if bmax > best_val:
            best_val = bmax
            ties = []
        if bmax == best_val:
            for i, j in np.argwhere(ratios == best_val):
                ties.append((int(rows[i]), int(y_masks[j])))
    assert ties, "enumeration found no candidate"
    xm, ym = min(
        ties,
        key=lambda p: (_mask_subset(a, p[0]).elements, _mask_subset(a, p[1]).elements),
    )
    x = _mask_subset(a, xm)
    y = _mask_subset(a, ym)
    value = Fraction((len(x) * len(y)) ** 2, n * energy2(x, y))
    assert float(value) == best_val
    return PartitionQuantityReport(
        value=value,
        witness=Bipartition(x, y, value),
        mode="exact",
        trials=int(x_masks.size) * int(y_masks.size),
        seed=None,
    )
