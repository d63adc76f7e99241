"""Ground-truth machinery: enumerate and count monotone codes, and find
optimal schemes on small instances by exhaustive search.

Monotone prefix codes correspond to binary trees whose leaf depths never
decrease left to right; a Kraft-equality length vector on n elements obeys
l_n <= n-1 and l_{n-1} = l_n.  Two independent routes to the same census
exist here: direct recursive tree composition (a monotone tree is a left
and a right monotone subtree, where the right subtree's leftmost leaf is
at least as deep as the left one's rightmost leaf), and the integer-exact
counting recursion

    A(i, l, x) = sum over r in [l, n-1] of A(i-1, r, x - 2^-r),

the number of non-decreasing vectors of i lengths, all >= l, whose Kraft
sum is exactly x.  The censused count Z_n = A(n, 1, 1) grows at least as
fast as the cube root of 2 per element, which is why the exhaustive
searches guard their instance sizes.

The brute-force optimizers search the true feasible sets: Kraft-feasible
prefix vectors for a first field or a shared code, and, for the second
field of a pair scheme, length vectors realizable by a padding-invariant
code.  Realizability there is the counting condition that at most 2^b
codewords have length <= b for every b (distinct strings survive padding
iff distinct after stripping; there are exactly 2^b strings of length at
most b ending in a one bit, counting the empty string).
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from .codec import success_probability
from .distribution import ElementDistribution, EntryDistribution
from .errors import EmptyInput, ExplosionGuard

DEFAULT_CAP = 10_000_000

KRAFT_EQUALITY = "kraft-equality"
KRAFT_AT_MOST = "kraft-at-most"


def _monotone_trees(n: int, cap: int) -> list[list[tuple[int, ...]]]:
    """Leaf-depth vectors of monotone trees for every size 1..n."""
    by_size: list[list[tuple[int, ...]]] = [[], [(0,)]]
    total = 1
    for size in range(2, n + 1):
        vectors: list[tuple[int, ...]] = []
        for j in range(1, size // 2 + 1):
            for left in by_size[j]:
                for right in by_size[size - j]:
                    if left[-1] <= right[0]:
                        vectors.append(
                            tuple(d + 1 for d in left) + tuple(d + 1 for d in right)
                        )
        total += len(vectors)
        if total > cap:
            raise ExplosionGuard(f"more than {cap} monotone trees at n={size}")
        by_size.append(vectors)
    return by_size


def _kraft_at_most_vectors(n: int, max_len: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing vectors of n lengths in [1, max_len], Kraft sum <= 1."""
    budget = 1 << max_len  # Kraft budget in units of 2^-max_len
    cur: list[int] = []
    count = 0

    def rec(remaining: int, min_len: int, used: int) -> Iterator[tuple[int, ...]]:
        nonlocal count
        if remaining == 0:
            count += 1
            if count > cap:
                raise ExplosionGuard(f"more than {cap} vectors enumerated")
            yield tuple(cur)
            return
        for ell in range(min_len, max_len + 1):
            cost = 1 << (max_len - ell)
            if used + cost > budget:
                continue
            cur.append(ell)
            yield from rec(remaining - 1, ell, used + cost)
            cur.pop()

    yield from rec(n, 1, 0)


def enumerate_monotone_vectors(
    n: int, max_len: int, mode: str = KRAFT_EQUALITY, cap: int = DEFAULT_CAP
) -> list[tuple[int, ...]]:
    """All non-decreasing length vectors of exactly n elements.

    kraft-equality mode composes monotone trees, so the Kraft sum is
    exactly 1; kraft-at-most mode allows slack.  Vectors whose longest
    length exceeds max_len are dropped.
    """
    if n < 1 or max_len < 1:
        raise EmptyInput("need n >= 1 and max_len >= 1")
    if mode == KRAFT_EQUALITY:
        vectors = _monotone_trees(n, cap)[n]
        return [v for v in vectors if v[-1] <= max_len]
    if mode == KRAFT_AT_MOST:
        return list(_kraft_at_most_vectors(n, max_len, cap))
    raise EmptyInput(f"unknown enumeration mode {mode!r}")


def count_codes(n: int) -> int:
    """Z_n, the number of monotone Kraft-equality length vectors.

    The Kraft coordinate is held as an exact integer multiple of
    2^-(n-1), so memoization never suffers float collisions.
    """
    if n < 1:
        raise EmptyInput("need n >= 1")
    if n > 64:
        raise ExplosionGuard("count_codes supports n <= 64")
    if n == 1:
        return 1  # the single-node tree, length vector (0)
    unit_exp = n - 1  # x is stored as x * 2^(n-1)
    memo: dict[tuple[int, int, int], int] = {}

    def A(i: int, min_len: int, x: int) -> int:
        if x <= 0:
            return 0
        if i == 1:
            # One vector iff x = 2^-r for some r in [min_len, n-1].
            ok = x & (x - 1) == 0 and x <= (1 << (unit_exp - min_len))
            return 1 if ok else 0
        key = (i, min_len, x)
        if key not in memo:
            memo[key] = sum(
                A(i - 1, r, x - (1 << (unit_exp - r))) for r in range(min_len, n)
            )
        return memo[key]

    return A(n, 1, 1 << unit_exp)


def _second_field_vectors(
    n: int, max_len: int, cap: int
) -> Iterator[tuple[int, ...]]:
    """Non-decreasing vectors realizable by a padding-invariant code.

    Lengths live in [0, max_len]; position i (1-based) needs 2^l >= i,
    which in particular allows at most one empty codeword, first.
    """
    cur: list[int] = []
    count = 0

    def rec(i: int, min_len: int) -> Iterator[tuple[int, ...]]:
        nonlocal count
        if i > n:
            count += 1
            if count > cap:
                raise ExplosionGuard(f"more than {cap} vectors enumerated")
            yield tuple(cur)
            return
        start = max(min_len, (i - 1).bit_length())  # smallest l with 2^l >= i
        for ell in range(start, max_len + 1):
            cur.append(ell)
            yield from rec(i + 1, ell)
            cur.pop()

    yield from rec(1, 0)


def _pad(vec: Sequence[int], n: int) -> tuple:
    return tuple(vec) + (None,) * (n - len(vec))


def brute_force_optimal_pair(
    D: EntryDistribution, L: int, cap: int = DEFAULT_CAP
) -> tuple[tuple, tuple, float]:
    """Exhaustive optimum over realizable pairs of monotone length vectors.

    First field: Kraft-feasible prefix vectors, lengths in [1, L], any
    assigned count.  Second field: padding-invariant-realizable vectors,
    lengths in [0, L-1], any assigned count.  Returns element-aligned
    (lengths1, lengths2, P_success).
    """
    n1, n2 = D.first.n, D.second.n
    if n1 > 8 or n2 > 8 or L > 8:
        raise ExplosionGuard("brute_force_optimal_pair is limited to n <= 8, L <= 8")
    v1s: list[tuple[int, ...]] = [()]
    for k in range(1, n1 + 1):
        v1s.extend(_kraft_at_most_vectors(k, L, cap))
    v2s: list[tuple[int, ...]] = [()]
    for k in range(1, n2 + 1):
        v2s.extend(_second_field_vectors(k, L - 1, cap))
    if len(v1s) * len(v2s) > cap:
        raise ExplosionGuard(f"{len(v1s)}x{len(v2s)} candidate pairs exceed cap")

    p1 = np.asarray(D.first.probs)
    p2 = np.asarray(D.second.probs)
    # mass1[v][b]: first-field mass whose codeword leaves exactly b spare bits;
    # gain2[v][b]: second-field mass fitting within b spare bits.
    mass1 = np.zeros((len(v1s), L + 1))
    for vi, vec in enumerate(v1s):
        for i, ell in enumerate(vec):
            mass1[vi][L - ell] += p1[i]
    gain2 = np.zeros((len(v2s), L + 1))
    for vi, vec in enumerate(v2s):
        for b in range(L + 1):
            gain2[vi][b] = p2[: np.searchsorted(vec, b, side="right")].sum()
    scores = mass1 @ gain2.T
    flat = int(np.argmax(scores))
    bi1, bi2 = divmod(flat, len(v2s))
    return (
        _pad(v1s[bi1], n1),
        _pad(v2s[bi2], n2),
        float(scores[bi1][bi2]),
    )


def brute_force_optimal_shared(
    P: ElementDistribution, L: int, cap: int = DEFAULT_CAP
) -> tuple[tuple, float]:
    """Exhaustive optimum over monotone Kraft-feasible shared-code vectors.

    Lengths in [1, L-1] (a length-L shared codeword can never pair), any
    assigned count.  Returns element-aligned (lengths, P_success).
    """
    n = P.n
    if n > 8 or L > 8:
        raise ExplosionGuard("brute_force_optimal_shared is limited to n <= 8, L <= 8")
    if L < 2:
        raise EmptyInput("shared codes need L >= 2")
    best_vec: tuple[int, ...] = ()
    best = 0.0
    p = P.probs
    for k in range(1, n + 1):
        for vec in _kraft_at_most_vectors(k, L - 1, cap):
            masses: dict[int, float] = {}
            for i, ell in enumerate(vec):
                masses[ell] = masses.get(ell, 0.0) + p[i]
            val = math.fsum(
                ma * mb
                for la, ma in masses.items()
                for lb, mb in masses.items()
                if la + lb <= L
            )
            if val > best:
                best, best_vec = val, vec
    return _pad(best_vec, n), best
