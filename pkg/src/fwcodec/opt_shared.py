"""Optimal single shared prefix code for both entry fields.

With one code serving both fields, adding elements one at a time cannot
preserve optimality: the success indicator for a new element depends on
lengths not chosen yet.  Adding *codeword lengths* in a zig-zag order
around L/2 does work:

    L/2, L/2+1, L/2-1, L/2+2, L/2-2, ..., L-1, 1        (even L)

Each newly admitted length is either larger than everything admitted so
far (it pairs with nothing, contributing weight but no success mass and
landing on the high-index end of an element range) or smaller than
everything so far (it pairs with everything, landing on the low-index
end).  G(l, [k1, k2], N) is the best success mass over assignments of the
admitted lengths to exactly the elements k1..k2 within weight budget N.

For odd L = 2m+1 the starting layer admits the length pair {m, m+1}: only
(m+1, m+1) pairs overflow, so a range split into a low-index m-block and
a high-index (m+1)-block scores (total mass)^2 - (m+1 block mass)^2.
Later lengths start at m+2 (pairs with nothing) and m-1 (pairs with
everything), exactly the two step shapes of the even case.

The per-step maximization over how many elements take the new length
telescopes into a single-element recurrence, so each (range, budget) cell
costs O(1): taking one more element at a pairs-with-everything length l'
adds p*(p + 2*rest_mass) regardless of how many took l' already.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codebook import MAX_WIDTH, canonical_prefix_from_lengths
from .codec import success_probability
from .distribution import ElementDistribution, EntryDistribution
from .errors import WidthTooLarge, WidthTooSmall


@dataclass(frozen=True)
class LengthSequence:
    """Admission order of codeword lengths for the shared-code solver."""

    base: tuple[int, ...]
    steps: tuple[tuple[str, int], ...]  # ("right"|"left", length)

    @property
    def lengths(self) -> tuple[int, ...]:
        return self.base + tuple(l for _, l in self.steps)


def length_sequence(L: int) -> LengthSequence:
    """Zig-zag length order for width L; every length in 1..L-1 once.

    Even L starts at L/2 alone; odd L starts at the pair {m, m+1} with
    m = (L-1)/2.  Steps then alternate right (longer) and left (shorter).
    """
    if L < 2:
        raise WidthTooSmall("shared-code width must be at least 2")
    if L % 2 == 0:
        base = (L // 2,)
        rights = range(L // 2 + 1, L)
        lefts = range(L // 2 - 1, 0, -1)
    else:
        m = L // 2
        base = (m, m + 1)
        rights = range(m + 2, L)
        lefts = range(m - 1, 0, -1)
    steps: list[tuple[str, int]] = []
    for r, l in zip(rights, lefts):
        steps.append(("right", r))
        steps.append(("left", l))
    return LengthSequence(base=base, steps=tuple(steps))


def shared_success_probability(
    lengths: Sequence, P: ElementDistribution, L: int
) -> float:
    """Mass of element pairs whose two codeword lengths fit in L bits."""
    D = EntryDistribution(first=P, second=P)
    return success_probability(lengths, lengths, D, L)


class _RangeGrid:
    """Flat storage of one value row per element range [k1, k2].

    Ranges with k2 = k1 - 1 are the empty ranges, pinned at value 0 for
    budgets N >= 0.  Rows are float64 over budgets 0..2^L.
    """

    def __init__(self, n: int, size: int):
        self.n = n
        self.size = size
        self.rid = np.full((n + 2, n + 1), -1, dtype=np.int64)
        ids = []
        for k1 in range(1, n + 2):
            for k2 in range(k1 - 1, n + 1):
                self.rid[k1][k2] = len(ids)
                ids.append((k1, k2))
        self.pairs = ids
        self.empty_mask = np.array([k2 < k1 for k1, k2 in ids])

    def blank_layer(self) -> np.ndarray:
        layer = np.full((len(self.pairs), self.size), -np.inf)
        layer[self.empty_mask] = 0.0
        return layer


def _shifted(rows: np.ndarray, w: int) -> np.ndarray:
    """rows re-indexed by N-w; budgets below w read as -inf."""
    out = np.full_like(rows, -np.inf)
    if w < rows.shape[-1]:
        out[..., w:] = rows[..., :-w]
    return out


def optimal_shared_code(
    P: ElementDistribution, L: int
) -> tuple[list[int | None], float]:
    """Shared-code lengths maximizing the two-field success probability.

    Returns element-aligned lengths in monotone form (unassigned elements
    trail) and the optimum P_success = max_k G(1, [1, k], 2^L).  When L
    covers two fixed-length codes outright the trivial width-ceil(log2 n)
    code is returned with probability 1.
    """
    if L > MAX_WIDTH:
        raise WidthTooLarge(f"width {L} exceeds {MAX_WIDTH}")
    seq = length_sequence(L)
    n = P.n
    w_fixed = max(max(n - 1, 0).bit_length(), 1)
    if L >= 2 * w_fixed:
        return [w_fixed] * n, 1.0

    p = np.asarray(P.probs)
    prefix = np.concatenate([[0.0], np.cumsum(p)])  # prefix[k] = p_1 + .. + p_k
    size = (1 << L) + 1
    grid = _RangeGrid(n, size)
    n_grid = np.arange(size)

    def range_mass(k1: int, k2: np.ndarray | int) -> np.ndarray | float:
        return prefix[k2] - prefix[k1 - 1]

    # inc[k1, k2]: mass gained when element k1 takes a pairs-with-everything
    # length inside the range [k1, k2] (independent of how many already did).
    def left_inc(k1: int, k2s: np.ndarray) -> np.ndarray:
        rest = prefix[k2s] - prefix[k1]
        return p[k1 - 1] * (p[k1 - 1] + 2.0 * rest)

    layers: list[tuple[str, int, np.ndarray | None]] = []

    if len(seq.base) == 1:
        base_len = seq.base[0]
        w = 1 << (L - base_len)
        cur = grid.blank_layer()
        for k1 in range(1, n + 1):
            k2s = np.arange(k1, n + 1)
            rows = grid.rid[k1][k2s]
            sizes = k2s - k1 + 1
            feasible = n_grid[None, :] >= (sizes * w)[:, None]
            mass = np.asarray(range_mass(k1, k2s)) ** 2
            cur[rows] = np.where(feasible, mass[:, None], -np.inf)
        layers.append(("base-even", base_len, None))
    else:
        m, m1 = seq.base
        wm, wm1 = 1 << (L - m), 1 << (L - m1)
        cur = grid.blank_layer()
        flags = np.zeros((len(grid.pairs), size), dtype=np.uint8)
        for k1 in range(n, 0, -1):
            k2s = np.arange(k1, n + 1)
            rows = grid.rid[k1][k2s]
            sizes = k2s - k1 + 1
            # all-(m+1) branch: zero mass, sizes*wm1 weight
            base_branch = np.where(n_grid[None, :] >= (sizes * wm1)[:, None], 0.0, -np.inf)
            chain = _shifted(cur[grid.rid[k1 + 1][k2s]], wm) + left_inc(k1, k2s)[:, None]
            better = chain > base_branch
            cur[rows] = np.where(better, chain, base_branch)
            flags[rows] = better
        layers.append(("base-odd", m, flags))

    for kind, new_len in seq.steps:
        w = 1 << (L - new_len)
        prev, cur = cur, grid.blank_layer()
        flags = np.zeros((len(grid.pairs), size), dtype=np.uint8)
        if kind == "right":
            for k2 in range(1, n + 1):
                k1s = np.arange(1, k2 + 1)
                rows = grid.rid[k1s, k2]
                chain = _shifted(cur[grid.rid[k1s, k2 - 1]], w)
                base_branch = prev[rows]
                better = chain > base_branch
                cur[rows] = np.where(better, chain, base_branch)
                flags[rows] = better
        else:
            for k1 in range(n, 0, -1):
                k2s = np.arange(k1, n + 1)
                rows = grid.rid[k1][k2s]
                chain = _shifted(cur[grid.rid[k1 + 1][k2s]], w) + left_inc(k1, k2s)[:, None]
                base_branch = prev[rows]
                better = chain > base_branch
                cur[rows] = np.where(better, chain, base_branch)
                flags[rows] = better
        layers.append((kind, new_len, flags))

    budget = size - 1
    best_k, best_val = 1, -np.inf
    for k in range(1, n + 1):
        val = cur[grid.rid[1][k]][budget]
        if val > best_val:
            best_val, best_k = val, k

    # Traceback: peel assignments layer by layer, newest length first.
    lengths: list[int | None] = [None] * n
    k1, k2, N = 1, best_k, budget
    for kind, length, flags in reversed(layers):
        if k2 < k1:
            break
        if kind == "base-even":
            for i in range(k1, k2 + 1):
                lengths[i - 1] = length
            break
        if kind == "base-odd":
            w = 1 << (L - length)
            while k2 >= k1 and flags[grid.rid[k1][k2]][N]:
                lengths[k1 - 1] = length
                k1 += 1
                N -= w
            for i in range(k1, k2 + 1):
                lengths[i - 1] = length + 1
            break
        w = 1 << (L - length)
        if kind == "right":
            while k2 >= k1 and flags[grid.rid[k1][k2]][N]:
                lengths[k2 - 1] = length
                k2 -= 1
                N -= w
        else:
            while k2 >= k1 and flags[grid.rid[k1][k2]][N]:
                lengths[k1 - 1] = length
                k1 += 1
                N -= w

    p_success = float(best_val)
    assert (
        abs(shared_success_probability(lengths, P, L) - p_success) <= 1e-9
    ), "traceback disagrees with DP optimum"
    return lengths, p_success


def shared_codebook(P: ElementDistribution, L: int):
    """Optimal shared code materialized as a canonical prefix codebook."""
    lengths, p_success = optimal_shared_code(P, L)
    return canonical_prefix_from_lengths(lengths, P.labels), p_success
