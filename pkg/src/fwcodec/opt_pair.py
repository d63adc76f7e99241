"""Optimal two-code entry schemes via a weight-budget dynamic program.

The search for the best prefix code on the first field, given any fixed
second-field code, decomposes by element count k and remaining codeword
weight N (a length-l codeword costs 2^(L-l) units of 2^(-L), and Kraft's
inequality caps the total at 2^L).  F(k, N) is the best success mass
reachable using only the k most probable first-field elements within
weight budget N, and satisfies

    F(k, N) = max( max_{l0 in [1,L]} F(k-1, N - 2^(L-l0)) + p1_k * gain(l0),
                   F(k-1, N) )

where gain(l0) is the second-field mass that fits beside a length-l0
codeword.  Paired with the universal second code, whose gain is the
partial sum of the top min(n2, 2^(L-l0)) second-field probabilities, the
budget-exhausting solution F(n1, 2^L) is optimal among all uniquely
decodable schemes with a prefix first field, not merely conditionally
optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codebook import (
    Codebook,
    canonical_prefix_from_lengths,
    kraft_weight,
    universal_second_code,
    MAX_WIDTH,
)
from .codec import EntryScheme
from .distribution import ElementDistribution, EntryDistribution
from .errors import DimensionMismatch, WidthTooLarge


def second_field_gain(
    lengths2: Sequence, P2: ElementDistribution, L: int
) -> np.ndarray:
    """gain[l0] = second-field mass encodable next to a length-l0 codeword.

    Indexable for l0 in 0..L; unassigned second-field elements contribute
    nothing.  Non-increasing in l0.
    """
    if len(lengths2) != P2.n:
        raise DimensionMismatch("second-field lengths do not align with P2")
    gain = np.zeros(L + 1)
    for l0 in range(L + 1):
        gain[l0] = math.fsum(
            p
            for p, l2 in zip(P2.probs, lengths2)
            if l2 is not None and l0 + l2 <= L
        )
    return gain


@dataclass
class DPTableF:
    """Value/traceback state of one conditional-code solve.

    ``choices[k][N]`` records the codeword length chosen for element k at
    budget N (0 means no codeword).  ``values`` holds the full F table
    only when the solve was asked to keep it; the last row is always kept.
    """

    L: int
    n1: int
    choices: np.ndarray
    last_row: np.ndarray
    values: np.ndarray | None = None

    def value(self, k: int, N: int) -> float:
        if self.values is None:
            raise ValueError("solve did not retain the full table")
        return float(self.values[k][N])

    def trace_lengths(self, k: int, N: int) -> list[int | None]:
        """Element-aligned codeword lengths of a solution achieving F(k, N)."""
        out: list[int | None] = [None] * k
        budget = N
        for i in range(k, 0, -1):
            pick = int(self.choices[i][budget])
            if pick > 0:
                out[i - 1] = pick
                budget -= 1 << (self.L - pick)
        return out

    def dump_csv(self, path: str) -> None:
        """Write the F/Q grid, one row per budget N, one column pair per k."""
        if self.values is None:
            raise ValueError("solve did not retain the full table")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            header = ["N"]
            for k in range(1, self.n1 + 1):
                header += [f"F(k={k})", f"Q(k={k})"]
            fh.write(",".join(header) + "\n")
            for N in range(self.values.shape[1]):
                row = [str(N)]
                for k in range(1, self.n1 + 1):
                    lengths = self.trace_lengths(k, N)
                    q = " ".join("-" if l is None else str(l) for l in lengths)
                    row += [f"{self.values[k][N]:.12g}", q]
                fh.write(",".join(row) + "\n")


def optimal_conditional_prefix(
    D: EntryDistribution,
    L: int,
    lengths2: Sequence,
    keep_table: bool = False,
) -> tuple[list[int | None], float, DPTableF]:
    """Best prefix code for the first field given the second field's lengths.

    Returns element-aligned first-field lengths in monotone form (sorted
    non-decreasing, unassigned elements last), the achieved success
    probability F(n1, 2^L), and the DP table.

    Ties prefer dropping the element over assigning it, and longer over
    shorter codewords, so reruns are bit-identical.
    """
    if L > MAX_WIDTH:
        raise WidthTooLarge(f"width {L} exceeds {MAX_WIDTH}")
    if L < 1:
        raise WidthTooLarge("width must be at least 1")
    n1 = D.first.n
    p1 = D.first.probs
    gain = second_field_gain(lengths2, D.second, L)
    size = (1 << L) + 1

    prev = np.zeros(size)
    choices = np.zeros((n1 + 1, size), dtype=np.int8)
    values = np.zeros((n1 + 1, size)) if keep_table else None
    for k in range(1, n1 + 1):
        best = prev.copy()  # the "no codeword for element k" branch
        choice = choices[k]
        for l0 in range(L, 0, -1):
            add = p1[k - 1] * gain[l0]
            w = 1 << (L - l0)
            if w >= size:
                continue
            cand = np.full(size, -np.inf)
            cand[w:] = prev[:-w] + add
            better = cand > best
            best[better] = cand[better]
            choice[better] = l0
        prev = best
        if values is not None:
            values[k] = best

    table = DPTableF(L=L, n1=n1, choices=choices, last_row=prev, values=values)
    raw = table.trace_lengths(n1, size - 1)
    assigned = sorted(l for l in raw if l is not None)
    lengths1: list[int | None] = assigned + [None] * (n1 - len(assigned))
    p_success = float(prev[size - 1])
    return lengths1, p_success, table


@dataclass(frozen=True)
class PairSchemeResult:
    scheme: EntryScheme
    p_success: float
    lengths1: tuple
    lengths2: tuple
    table: DPTableF | None = None


def optimal_pair_scheme(
    D: EntryDistribution, L: int, keep_table: bool = False
) -> PairSchemeResult:
    """Success-probability-optimal scheme for an entry distribution at width L.

    Whenever two plain fixed-length codes fit side by side, use them and
    succeed with probability 1.  Otherwise pair the universal second code
    with the conditionally optimal prefix code for the first field.
    """
    n1, n2 = D.first.n, D.second.n
    w1 = max(n1 - 1, 0).bit_length()  # ceil(log2 n)
    w2 = max(n2 - 1, 0).bit_length()
    if L >= w1 + w2:
        sigma1 = canonical_prefix_from_lengths([w1] * n1, D.first.labels)
        sigma2 = canonical_prefix_from_lengths([w2] * n2, D.second.labels)
        scheme = EntryScheme(sigma1=sigma1, sigma2=sigma2, L=L)
        return PairSchemeResult(
            scheme=scheme,
            p_success=1.0,
            lengths1=sigma1.lengths(),
            lengths2=sigma2.lengths(),
        )

    sigma2 = universal_second_code(n2, D.second.labels)
    lengths1, p_success, table = optimal_conditional_prefix(
        D, L, sigma2.lengths(), keep_table=keep_table
    )
    sigma1 = canonical_prefix_from_lengths(lengths1, D.first.labels)
    assert kraft_weight(lengths1, L) <= (1 << L)
    scheme = EntryScheme(sigma1=sigma1, sigma2=sigma2, L=L)
    return PairSchemeResult(
        scheme=scheme,
        p_success=p_success,
        lengths1=tuple(lengths1),
        lengths2=sigma2.lengths(),
        table=table,
    )
