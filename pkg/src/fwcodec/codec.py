"""Bit-exact entry encoding and decoding, and exact success evaluation.

An entry scheme is a prefix code for the first field, a padding-invariant
(or prefix) code for the second field, and the memory width L.  Encoding
concatenates the two codewords and pads with zeros on the right to exactly
L bits; if the codewords alone need more than L bits the entry fails and
is reported as a value (``None``), not an exception.  Decoding scans for
the unique first-field prefix match, then recovers the second field from
the residual bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .codebook import (
    PADDING_INVARIANT,
    PREFIX,
    Codebook,
    check_padding_invariant,
    check_prefix,
    strip_trailing_zeros,
)
from .distribution import EntryDistribution
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    LengthExceedsWidth,
    KraftViolation,
    NoPrefixMatch,
    UnknownResidual,
)


@dataclass(frozen=True)
class EntryScheme:
    """A validated (sigma1, sigma2, L) entry coding configuration."""

    sigma1: Codebook
    sigma2: Codebook
    L: int

    def __post_init__(self) -> None:
        if self.L < 1:
            raise LengthExceedsWidth("memory width must be at least 1")
        for w in self.sigma1.words:
            if w is not None and len(w) > self.L:
                raise LengthExceedsWidth(
                    f"first-field codeword {w!r} exceeds width {self.L}"
                )
        if not check_prefix(self.sigma1):
            raise KraftViolation("first-field code is not a prefix code")
        if self.sigma2.kind == PREFIX:
            if not check_prefix(self.sigma2):
                raise KraftViolation("second-field code claims prefix but is not")
        elif not check_padding_invariant(self.sigma2):
            raise KraftViolation("second-field code is not padding-invariant")


def encode(scheme: EntryScheme, i1: int, i2: int) -> str | None:
    """Encode the entry (element i1, element i2) into exactly L bits.

    Returns None (encoding failure) when either element has no codeword or
    the concatenation would not fit.  Indices are 0-based.
    """
    if not 0 <= i1 < scheme.sigma1.n:
        raise IndexOutOfRange(f"first-field index {i1} out of range")
    if not 0 <= i2 < scheme.sigma2.n:
        raise IndexOutOfRange(f"second-field index {i2} out of range")
    w1 = scheme.sigma1.words[i1]
    w2 = scheme.sigma2.words[i2]
    if w1 is None or w2 is None:
        return None
    if len(w1) + len(w2) > scheme.L:
        return None
    body = w1 + w2
    return body + "0" * (scheme.L - len(body))


def decode(scheme: EntryScheme, word: str) -> tuple[int, int]:
    """Invert ``encode`` on any word it produced.

    Words outside the image of the encoder raise NoPrefixMatch or
    UnknownResidual rather than decoding to an arbitrary entry.
    """
    if len(word) != scheme.L or set(word) - {"0", "1"}:
        raise DimensionMismatch(f"word must be {scheme.L} bits over 0/1")
    i1 = None
    for i, w1 in enumerate(scheme.sigma1.words):
        if w1 is not None and word.startswith(w1):
            i1 = i
            break
    if i1 is None:
        raise NoPrefixMatch(f"no first-field codeword starts {word!r}")
    residual = word[len(scheme.sigma1.words[i1]) :]

    if scheme.sigma2.kind == PREFIX:
        # Unique prefix scan; whatever follows the match must be padding.
        for j, w2 in enumerate(scheme.sigma2.words):
            if w2 is not None and residual.startswith(w2):
                if residual[len(w2) :].strip("0"):
                    break
                return i1, j
        raise UnknownResidual(f"residual {residual!r} matches no codeword")

    stripped = strip_trailing_zeros(residual)
    for j, w2 in enumerate(scheme.sigma2.words):
        if w2 is not None and strip_trailing_zeros(w2) == stripped:
            return i1, j
    raise UnknownResidual(f"residual {residual!r} matches no codeword")


def success_probability(
    lengths1: Sequence,
    lengths2: Sequence,
    D: EntryDistribution,
    L: int,
) -> float:
    """Probability mass of entries whose codeword lengths fit in L bits.

    Unassigned elements (length None) never fit.  Only lengths matter, so
    any concrete code realization with these lengths evaluates the same.
    """
    if len(lengths1) != D.first.n:
        raise DimensionMismatch("first-field lengths do not align with D")
    if len(lengths2) != D.second.n:
        raise DimensionMismatch("second-field lengths do not align with D")
    inner: dict[int, float] = {}
    terms = []
    for p1, l1 in zip(D.first.probs, lengths1):
        if l1 is None or l1 > L:
            continue
        if l1 not in inner:
            inner[l1] = math.fsum(
                p2
                for p2, l2 in zip(D.second.probs, lengths2)
                if l2 is not None and l1 + l2 <= L
            )
        terms.append(p1 * inner[l1])
    return math.fsum(terms)
