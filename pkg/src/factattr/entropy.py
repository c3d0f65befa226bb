"""Entropy machinery for the fact-vs-subquestion uncertainty comparison.

Operates on supplied support sets and distributions; natural log
throughout (the comparison is base-invariant).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptySet, NotNormalized

LN2 = math.log(2.0)
_TOL = 1e-9


class SupportKind(str, enum.Enum):
    ATOMIC_FACTS = "atomic_facts"
    SUB_QUESTIONS = "sub_questions"


@dataclass(frozen=True)
class SupportSet:
    """Distinct generations a model can emit for one answer."""

    items: frozenset[str]
    kind: SupportKind

    @classmethod
    def of(cls, items: Sequence[str], kind: SupportKind) -> "SupportSet":
        return cls(items=frozenset(items), kind=kind)


@dataclass(frozen=True)
class TokenDistribution:
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(not 0.0 < p <= 1.0 for p in self.probs):
            raise ValueError("probabilities must lie in (0, 1]")


def entropy(probs: Sequence[float]) -> float:
    """Shannon entropy in nats; zero for a point mass."""
    total = sum(probs)
    if abs(total - 1.0) > _TOL:
        raise NotNormalized(f"probabilities sum to {total}, not 1")
    return -sum(p * math.log(p) for p in probs if p > 0.0)


def sequence_probability(token_probs: Sequence[float]) -> float:
    """Product of per-token conditional probabilities."""
    result = 1.0
    for p in token_probs:
        if not 0.0 < p <= 1.0:
            raise ValueError("conditional probabilities must lie in (0, 1]")
        result *= p
    return result


def support_entropy_bound(s: SupportSet) -> float:
    """Maximum-entropy (uniform) bound: ln of the support size."""
    if not s.items:
        raise EmptySet("support set is empty")
    return math.log(len(s.items))


@dataclass(frozen=True)
class HypothesisCheck:
    gap: float
    holds: bool  # gap >= ln 2
    premise_satisfied: bool  # |S_Q| >= 2 |S_AF|


def hypothesis_gap(af: SupportSet, q: SupportSet) -> HypothesisCheck:
    """Entropy-bound gap between sub-question and atomic-fact support sets.

    The gap is ln|S_Q| - ln|S_AF|; it is guaranteed to be at least ln 2
    whenever the premise |S_Q| >= 2 |S_AF| holds.
    """
    if af.kind is not SupportKind.ATOMIC_FACTS:
        raise ValueError("first argument must be an atomic-fact support set")
    if q.kind is not SupportKind.SUB_QUESTIONS:
        raise ValueError("second argument must be a sub-question support set")
    gap = support_entropy_bound(q) - support_entropy_bound(af)
    return HypothesisCheck(
        gap=gap,
        holds=gap >= LN2 - _TOL,
        premise_satisfied=len(q.items) >= 2 * len(af.items),
    )
