"""Element and entry distributions.

An element distribution is an ordered set of labeled elements with strictly
positive probabilities, kept sorted in non-increasing probability order.  An
entry distribution is a pair of element distributions, one per entry field;
the two fields are drawn independently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateLabel,
    EmptyInput,
    NonPositiveProbability,
    ProbabilitySumMismatch,
)

SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ElementDistribution:
    """Labeled probabilities, sorted non-increasing, summing to 1."""

    labels: tuple[str, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.labels) == 0:
            raise EmptyInput("distribution needs at least one element")
        if len(self.labels) != len(self.probs):
            raise ProbabilitySumMismatch(
                f"{len(self.labels)} labels but {len(self.probs)} probabilities"
            )
        if len(set(self.labels)) != len(self.labels):
            raise DuplicateLabel("element labels must be pairwise distinct")
        for p in self.probs:
            if not (p > 0.0):
                raise NonPositiveProbability(f"probability {p!r} is not positive")
        for a, b in zip(self.probs, self.probs[1:]):
            if a < b:
                raise ProbabilitySumMismatch(
                    "probabilities must be sorted non-increasing; "
                    "use new_distribution() to sort"
                )
        total = math.fsum(self.probs)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ProbabilitySumMismatch(f"probabilities sum to {total!r}, not 1")

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class EntryDistribution:
    """Independent distributions for the two fields of an entry."""

    first: ElementDistribution
    second: ElementDistribution


def new_distribution(
    labels: Sequence[str], probs: Sequence[float]
) -> ElementDistribution:
    """Build a distribution, stably sorting elements by descending probability.

    Ties keep their input order, so construction is deterministic.
    """
    if len(labels) != len(probs):
        raise ProbabilitySumMismatch(
            f"{len(labels)} labels but {len(probs)} probabilities"
        )
    order = sorted(range(len(probs)), key=lambda i: -probs[i])
    return ElementDistribution(
        labels=tuple(str(labels[i]) for i in order),
        probs=tuple(float(probs[i]) for i in order),
    )


def zipf(n: int, mu: float) -> ElementDistribution:
    """Zipf distribution on n elements: p_i proportional to i^(-mu).

    mu=0 degenerates to the uniform distribution.  Labels are "1".."n".
    """
    if n < 1:
        raise EmptyInput("zipf needs n >= 1")
    if mu < 0:
        raise NonPositiveProbability("zipf exponent must be non-negative")
    weights = [float(i) ** -mu for i in range(1, n + 1)]
    total = math.fsum(weights)
    return ElementDistribution(
        labels=tuple(str(i) for i in range(1, n + 1)),
        probs=tuple(w / total for w in weights),
    )


def distribution_to_doc(dist: ElementDistribution) -> dict:
    return {
        "elements": [
            {"label": lab, "prob": p} for lab, p in zip(dist.labels, dist.probs)
        ]
    }


def distribution_from_doc(doc: dict) -> ElementDistribution:
    """Parse {"elements":[{"label":...,"prob":...},...]} with full validation."""
    try:
        elements: Iterable[dict] = doc["elements"]
        labels = [e["label"] for e in elements]
        probs = [e["prob"] for e in doc["elements"]]
    except (KeyError, TypeError) as exc:
        raise EmptyInput(f"malformed distribution document: {exc}") from exc
    return new_distribution(labels, probs)


def load_distribution(path: str) -> ElementDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        return distribution_from_doc(json.load(fh))


def save_distribution(dist: ElementDistribution, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(distribution_to_doc(dist), fh, indent=2)
        fh.write("\n")
