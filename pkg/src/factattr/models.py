"""Shared domain types for answers, decompositions, evidence and reports.

All types are immutable value objects with a canonical JSON encoding
(``to_dict`` / ``*_from_dict``). Structural validation of a decomposition
lives in :func:`validate_decomposition`, which reports violations as data
rather than raising, so malformed model output can be inspected.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field, replace
from typing import Optional


def normalize_ws(text: str) -> str:
    """Collapse runs of whitespace and trim."""
    return " ".join(text.split())


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    dataset_tag: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("question text must be non-empty")

    def to_dict(self) -> dict:
        return {"id": self.id, "text": self.text, "dataset_tag": self.dataset_tag}


def question_from_dict(d: dict) -> Question:
    return Question(id=d["id"], text=d["text"], dataset_tag=d.get("dataset_tag"))


@dataclass(frozen=True)
class LongFormAnswer:
    """A long-form answer with word-level tokenization.

    Tokens are whitespace-split with punctuation kept attached, so joining
    them with single spaces reproduces the whitespace-normalized text.
    """

    text: str

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.text.split())

    @property
    def normalized(self) -> str:
        return " ".join(self.tokens)

    def to_dict(self) -> dict:
        return {"text": self.text, "tokenization": list(self.tokens)}


def answer_from_dict(d: dict) -> LongFormAnswer:
    return LongFormAnswer(text=d["text"])


@dataclass(frozen=True)
class AtomicFact:
    """An indivisible factual statement, addressed by (clause_index, fact_index).

    Indices are 1-based. ``original_text`` keeps the pre-edit wording;
    it equals ``text`` while ``edited`` is False.
    """

    clause_index: int
    fact_index: int
    text: str
    edited: bool = False
    original_text: Optional[str] = None

    def __post_init__(self) -> None:
        if self.original_text is None:
            object.__setattr__(self, "original_text", self.text)

    def with_edit(self, new_text: str) -> "AtomicFact":
        return replace(self, text=new_text, edited=True)

    def to_dict(self) -> dict:
        return {
            "clause_index": self.clause_index,
            "fact_index": self.fact_index,
            "text": self.text,
            "edited": self.edited,
            "original_text": self.original_text,
        }


def fact_from_dict(d: dict) -> AtomicFact:
    return AtomicFact(
        clause_index=d["clause_index"],
        fact_index=d["fact_index"],
        text=d["text"],
        edited=d.get("edited", False),
        original_text=d.get("original_text"),
    )


@dataclass(frozen=True)
class MolecularClause:
    index: int
    text: str
    atomic_facts: tuple[AtomicFact, ...]

    @property
    def edited(self) -> bool:
        return any(f.edited for f in self.atomic_facts)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "text": self.text,
            "atomic_facts": [f.to_dict() for f in self.atomic_facts],
        }


def clause_from_dict(d: dict) -> MolecularClause:
    return MolecularClause(
        index=d["index"],
        text=d["text"],
        atomic_facts=tuple(fact_from_dict(f) for f in d["atomic_facts"]),
    )


@dataclass(frozen=True)
class AnswerDecomposition:
    answer: LongFormAnswer
    clauses: tuple[MolecularClause, ...]

    @property
    def m(self) -> int:
        return len(self.clauses)

    def facts(self) -> tuple[AtomicFact, ...]:
        return tuple(f for c in self.clauses for f in c.atomic_facts)

    def to_dict(self) -> dict:
        return {
            "answer": self.answer.to_dict(),
            "clauses": [c.to_dict() for c in self.clauses],
        }


def decomposition_from_dict(d: dict) -> AnswerDecomposition:
    return AnswerDecomposition(
        answer=answer_from_dict(d["answer"]),
        clauses=tuple(clause_from_dict(c) for c in d["clauses"]),
    )


def validate_decomposition(d: AnswerDecomposition) -> list[str]:
    """Check the structural invariants of a decomposition.

    Returns an empty list iff the decomposition is well-formed. Violations
    are descriptions, not exceptions: malformed structures must remain
    representable so they can be reported.
    """
    violations: list[str] = []
    if d.m < 1:
        violations.append("decomposition has no clauses")
    for pos, clause in enumerate(d.clauses, start=1):
        if clause.index != pos:
            violations.append(
                f"clause at position {pos} has index {clause.index}; expected contiguous 1..m"
            )
        if not clause.text.strip():
            violations.append(f"clause {clause.index} has empty text")
        if not clause.atomic_facts:
            violations.append(f"clause {clause.index} has no atomic facts")
        for fact in clause.atomic_facts:
            if fact.clause_index != clause.index:
                violations.append(
                    f"fact ({fact.clause_index},{fact.fact_index}) owned by clause {clause.index}"
                )
            if not fact.text.strip():
                violations.append(
                    f"fact ({fact.clause_index},{fact.fact_index}) has empty text"
                )
            if not fact.edited and fact.text != fact.original_text:
                violations.append(
                    f"fact ({fact.clause_index},{fact.fact_index}) unedited but text differs from original"
                )
    seen: set[tuple[int, int]] = set()
    for fact in d.facts():
        key = (fact.clause_index, fact.fact_index)
        if key in seen:
            violations.append(f"duplicate fact index {key}")
        seen.add(key)
    return violations


@dataclass(frozen=True)
class EvidenceItem:
    snippet: str
    source_url: str
    rank_score: float
    query_used: str

    def __post_init__(self) -> None:
        if not self.snippet.strip():
            raise ValueError("evidence snippet must be non-empty")
        if not -1.0 - 1e-9 <= self.rank_score <= 1.0 + 1e-9:
            raise ValueError("rank_score must lie in [-1, 1]")

    def to_dict(self) -> dict:
        return {
            "snippet": self.snippet,
            "source_url": self.source_url,
            "rank_score": self.rank_score,
            "query_used": self.query_used,
        }


def evidence_from_dict(d: dict) -> EvidenceItem:
    return EvidenceItem(
        snippet=d["snippet"],
        source_url=d["source_url"],
        rank_score=d["rank_score"],
        query_used=d["query_used"],
    )


@dataclass(frozen=True)
class EvidenceSet:
    """Deduplicated evidence snippets aggregated for one clause."""

    clause_index: int
    snippets: tuple[str, ...]
    sources: tuple[str, ...]
    supported: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        if not self.supported:
            object.__setattr__(self, "supported", tuple(True for _ in self.snippets))
        norm = [normalize_ws(s) for s in self.snippets]
        if len(set(norm)) != len(norm):
            raise ValueError("evidence set contains duplicate snippets")

    def to_dict(self) -> dict:
        return {
            "clause_index": self.clause_index,
            "snippets": list(self.snippets),
            "sources": list(self.sources),
            "supported": list(self.supported),
        }


def evidence_set_from_dict(d: dict) -> EvidenceSet:
    return EvidenceSet(
        clause_index=d["clause_index"],
        snippets=tuple(d["snippets"]),
        sources=tuple(d["sources"]),
        supported=tuple(d.get("supported", ())),
    )


class VerificationStatus(enum.IntEnum):
    SUPPORTIVE = 1
    EDITING_REQUIRED = 2
    IRRELEVANT = 3


class TrailAction(str, enum.Enum):
    NONE = "none"
    EDITED = "edited"
    EXPANDED_AND_RERETRIEVED = "expanded_and_reretrieved"


class TrailTerminal(str, enum.Enum):
    RESOLVED = "resolved"
    EXHAUSTED_ITERATIONS = "exhausted_iterations"


@dataclass(frozen=True)
class TrailStep:
    iteration: int
    status: VerificationStatus
    action: TrailAction
    evidence: Optional[EvidenceItem]

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "status": int(self.status),
            "action": self.action.value,
            "evidence": self.evidence.to_dict() if self.evidence else None,
        }


def trail_step_from_dict(d: dict) -> TrailStep:
    return TrailStep(
        iteration=d["iteration"],
        status=VerificationStatus(d["status"]),
        action=TrailAction(d["action"]),
        evidence=evidence_from_dict(d["evidence"]) if d.get("evidence") else None,
    )


@dataclass(frozen=True)
class VerificationTrail:
    clause_index: int
    fact_index: int
    steps: tuple[TrailStep, ...]
    terminal: TrailTerminal

    def final_evidence(self) -> Optional[EvidenceItem]:
        for step in reversed(self.steps):
            if step.evidence is not None:
                return step.evidence
        return None

    def to_dict(self) -> dict:
        return {
            "clause_index": self.clause_index,
            "fact_index": self.fact_index,
            "steps": [s.to_dict() for s in self.steps],
            "terminal": self.terminal.value,
        }


def trail_from_dict(d: dict) -> VerificationTrail:
    return VerificationTrail(
        clause_index=d["clause_index"],
        fact_index=d["fact_index"],
        steps=tuple(trail_step_from_dict(s) for s in d["steps"]),
        terminal=TrailTerminal(d["terminal"]),
    )


@dataclass
class RunCounters:
    """Per-question usage counters. Mutable accumulator, safe for
    concurrent workers."""

    llm_interactions: int = 0
    tokens_consumed: int = 0
    retrieval_calls: int = 0
    wall_seconds: float = 0.0
    _lock: threading.Lock = field(
        default_factory=threading.Lock, repr=False, compare=False
    )

    def add_chat(self, tokens_in: int, tokens_out: int) -> None:
        with self._lock:
            self.llm_interactions += 1
            self.tokens_consumed += tokens_in + tokens_out

    def add_retrieval(self) -> None:
        with self._lock:
            self.retrieval_calls += 1

    def to_dict(self) -> dict:
        return {
            "llm_interactions": self.llm_interactions,
            "tokens_consumed": self.tokens_consumed,
            "retrieval_calls": self.retrieval_calls,
            "wall_seconds": self.wall_seconds,
        }


def counters_from_dict(d: dict) -> RunCounters:
    return RunCounters(
        llm_interactions=d["llm_interactions"],
        tokens_consumed=d["tokens_consumed"],
        retrieval_calls=d["retrieval_calls"],
        wall_seconds=d.get("wall_seconds", 0.0),
    )


@dataclass(frozen=True)
class AttributionResult:
    """Output of one pipeline run: revised answer, report and trace."""

    question: Question
    original: LongFormAnswer
    revised: LongFormAnswer
    decomposition: AnswerDecomposition
    revised_clauses: tuple[str, ...]
    report: tuple[EvidenceSet, ...]
    trails: tuple[VerificationTrail, ...]
    counters: RunCounters

    def to_dict(self) -> dict:
        return {
            "question": self.question.to_dict(),
            "original": self.original.to_dict(),
            "revised": self.revised.to_dict(),
            "decomposition": self.decomposition.to_dict(),
            "revised_clauses": list(self.revised_clauses),
            "report": [e.to_dict() for e in self.report],
            "trails": [t.to_dict() for t in self.trails],
            "counters": self.counters.to_dict(),
        }


def result_from_dict(d: dict) -> AttributionResult:
    return AttributionResult(
        question=question_from_dict(d["question"]),
        original=answer_from_dict(d["original"]),
        revised=answer_from_dict(d["revised"]),
        decomposition=decomposition_from_dict(d["decomposition"]),
        revised_clauses=tuple(d["revised_clauses"]),
        report=tuple(evidence_set_from_dict(e) for e in d["report"]),
        trails=tuple(trail_from_dict(t) for t in d["trails"]),
        counters=counters_from_dict(d["counters"]),
    )


@dataclass(frozen=True)
class MetricsReport:
    attr_r: float
    attr_p: float
    pres: Optional[float]
    f1_rp: Optional[float]
    f1_pp: Optional[float]

    def __post_init__(self) -> None:
        from .metrics import f1  # local import to avoid a cycle

        for name in ("attr_r", "attr_p"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} out of [0,1]: {v}")
        if self.pres is not None:
            if not 0.0 <= self.pres <= 1.0:
                raise ValueError(f"pres out of [0,1]: {self.pres}")
            if abs(f1(self.attr_r, self.pres) - (self.f1_rp or 0.0)) > 1e-9:
                raise ValueError("f1_rp is not the harmonic mean of attr_r and pres")
            if abs(f1(self.attr_p, self.pres) - (self.f1_pp or 0.0)) > 1e-9:
                raise ValueError("f1_pp is not the harmonic mean of attr_p and pres")

    def to_dict(self) -> dict:
        return {
            "attr_r": self.attr_r,
            "attr_p": self.attr_p,
            "pres": self.pres,
            "f1_rp": self.f1_rp,
            "f1_pp": self.f1_pp,
        }


def metrics_from_dict(d: dict) -> MetricsReport:
    return MetricsReport(
        attr_r=d["attr_r"],
        attr_p=d["attr_p"],
        pres=d.get("pres"),
        f1_rp=d.get("f1_rp"),
        f1_pp=d.get("f1_pp"),
    )
