"""Codebooks: codeword sets indexed like a distribution, plus code properties.

A codeword is a string over "0"/"1"; the empty string is the empty codeword
and is distinct from ``None``, which marks an element with no codeword at
all.  Two structural properties matter here:

* prefix: no codeword is a prefix of another, so a left-to-right scan of a
  memory word finds the first field unambiguously;
* padding invariance: stripping all trailing zero bits leaves the codewords
  pairwise distinct, so the second field survives zero padding.

Every prefix code is also padding-invariant (two codewords equal after
stripping would make one a prefix of the other), but not vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import KraftViolation, LengthExceedsWidth

# Weights 2^(L-len) must stay exact in native ints; 62 leaves headroom in
# signed 64-bit arithmetic and far exceeds any instance where the solvers
# do real work (they fall back to fixed-length codes long before).
MAX_WIDTH = 62

PREFIX = "prefix"
PADDING_INVARIANT = "padding-invariant"
UNCHECKED = "unchecked"

Lengths = Sequence  # of int | None, index-aligned with a distribution


@dataclass(frozen=True)
class Codebook:
    """Per-element optional codewords, index-aligned with a distribution."""

    words: tuple[str | None, ...]
    labels: tuple[str, ...] = field(default=())
    kind: str = UNCHECKED

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(str(i + 1) for i in range(len(self.words)))
            )
        if len(self.labels) != len(self.words):
            raise KraftViolation("labels and words must align")
        for w in self.words:
            if w is not None and set(w) - {"0", "1"}:
                raise KraftViolation(f"codeword {w!r} is not binary")

    @property
    def n(self) -> int:
        return len(self.words)

    def lengths(self) -> tuple[int | None, ...]:
        return tuple(None if w is None else len(w) for w in self.words)

    def assigned(self) -> list[str]:
        return [w for w in self.words if w is not None]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None


def kraft_weight(lengths: Lengths, L: int) -> int:
    """Total codeword weight in units of 2^(-L), as an exact integer.

    A length-l codeword weighs 2^(L-l); unassigned elements weigh nothing.
    A prefix code with these lengths exists iff the total is at most 2^L.
    """
    if L < 1 or L > MAX_WIDTH:
        raise LengthExceedsWidth(f"width {L} outside [1, {MAX_WIDTH}]")
    total = 0
    for ell in lengths:
        if ell is None:
            continue
        if ell > L:
            raise LengthExceedsWidth(f"length {ell} exceeds width {L}")
        total += 1 << (L - ell)
    return total


def _check_monotone_assigned(lengths: Lengths) -> list[int]:
    assigned: list[int] = []
    seen_unassigned = False
    for ell in lengths:
        if ell is None:
            seen_unassigned = True
            continue
        if seen_unassigned:
            raise KraftViolation("unassigned entries must trail the assigned ones")
        if assigned and ell < assigned[-1]:
            raise KraftViolation("lengths must be non-decreasing")
        if ell < 0:
            raise KraftViolation("negative codeword length")
        assigned.append(int(ell))
    return assigned


def canonical_prefix_from_lengths(
    lengths: Lengths, labels: Sequence[str] = ()
) -> Codebook:
    """Deterministic prefix code with the given non-decreasing lengths.

    Codewords are allocated in increasing numeric order, shortest first:
    each codeword is the previous one plus one, left-shifted when the
    length grows.  (2,2,2,3,3) becomes 00,01,10,110,111.
    """
    assigned = _check_monotone_assigned(lengths)
    if assigned:
        # Kraft check with exact integers scaled by 2^max_len.
        scale = max(assigned)
        if sum(1 << (scale - ell) for ell in assigned) > (1 << scale):
            raise KraftViolation(f"lengths {assigned} violate Kraft's inequality")
    words: list[str | None] = []
    code = 0
    prev_len = assigned[0] if assigned else 0
    for ell in assigned:
        code <<= ell - prev_len
        prev_len = ell
        words.append(format(code, "b").zfill(ell) if ell > 0 else "")
        code += 1
    words.extend([None] * (len(lengths) - len(assigned)))
    return Codebook(words=tuple(words), labels=tuple(labels), kind=PREFIX)


def universal_second_code(n: int, labels: Sequence[str] = ()) -> Codebook:
    """The padding-invariant code that packs as many elements as possible
    under every residual bit budget.

    Element j maps to the shortest binary representation of j-1, written
    least-significant bit first; element 1 gets the empty codeword.  For
    every budget of b leftover bits, exactly the first min(n, 2^b)
    elements fit, which no code can beat.
    """
    if n < 1:
        raise KraftViolation("universal_second_code needs n >= 1")
    words: list[str | None] = [""]
    for j in range(2, n + 1):
        words.append(format(j - 1, "b")[::-1])
    return Codebook(words=tuple(words), labels=tuple(labels), kind=PADDING_INVARIANT)


def check_prefix(code: Codebook) -> bool:
    """True iff no assigned codeword is a prefix of another one."""
    words = code.assigned()
    for i, w in enumerate(words):
        for j, u in enumerate(words):
            if i != j and u.startswith(w):
                return False
    return True


def strip_trailing_zeros(word: str) -> str:
    return word.rstrip("0")


def check_padding_invariant(code: Codebook) -> bool:
    """True iff codewords stay pairwise distinct after stripping trailing zeros."""
    stripped = [strip_trailing_zeros(w) for w in code.assigned()]
    return len(set(stripped)) == len(stripped)


def codebook_to_doc(code: Codebook, L: int | None = None) -> dict:
    doc: dict = {
        "codewords": [
            {"label": lab, "bits": w} for lab, w in zip(code.labels, code.words)
        ],
        "kind": code.kind,
    }
    if L is not None:
        doc = {"L": L, **doc}
    return doc


def codebook_from_doc(doc: dict) -> Codebook:
    entries = doc["codewords"]
    labels = tuple(str(e["label"]) for e in entries)
    words = tuple(e["bits"] for e in entries)
    kind = doc.get("kind")
    if kind not in (PREFIX, PADDING_INVARIANT):
        probe = Codebook(words=words, labels=labels)
        kind = PREFIX if check_prefix(probe) else (
            PADDING_INVARIANT if check_padding_invariant(probe) else UNCHECKED
        )
    return Codebook(words=words, labels=labels, kind=kind)
