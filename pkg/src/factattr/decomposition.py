"""Answer generation, clause/fact decomposition, and decomposition quality
scores (count consistency and meaning correctness)."""

from __future__ import annotations

import json
import re

from .chat import ChatSession
from .errors import EmptyGeneration, ParseError
from .models import (
    AnswerDecomposition,
    AtomicFact,
    LongFormAnswer,
    MolecularClause,
    Question,
    validate_decomposition,
)
from .prompting import render
from .providers.base import NliProvider

_LABEL_RE = re.compile(r"^MF(\d+)$")
_SENTENCE_RE = re.compile(r"(?<=[.?!])\s+")


def split_sentences(text: str) -> list[str]:
    normalized = " ".join(text.split())
    return [s for s in _SENTENCE_RE.split(normalized) if s]


def generate_answer(q: Question, session: ChatSession) -> LongFormAnswer:
    """Ask the chat model for a long-form answer; blank output is retried
    once, then fatal for this question."""
    for _ in range(2):
        text = session.ask("answer", question=q.text).strip()
        if text:
            return LongFormAnswer(text=text)
    raise EmptyGeneration(f"model returned blank answer for question {q.id}")


def _extract_json(raw: str) -> dict:
    start, end = raw.find("{"), raw.rfind("}")
    if start == -1 or end <= start:
        raise ParseError("no JSON object found in model output")
    try:
        obj = json.loads(raw[start : end + 1])
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}")
    if not isinstance(obj, dict):
        raise ParseError("top level is not an object")
    return obj


def parse_decomposition_json(raw: str, x: LongFormAnswer) -> AnswerDecomposition:
    """Parse the ``{"output": [{clause: [facts...]}...]}`` schema.

    Clause keys may be the clause sentences themselves, or ``MF<n>`` labels;
    labeled clauses are ordered by numeric suffix (ties keep appearance
    order) and take their text from the answer's sentences when the counts
    line up, else from their facts.
    """
    obj = _extract_json(raw)
    if "output" not in obj or not isinstance(obj["output"], list):
        raise ParseError('missing "output" list')
    entries: list[tuple[str, list[str]]] = []
    for item in obj["output"]:
        if not isinstance(item, dict) or not item:
            raise ParseError("each output entry must be a non-empty object")
        for key, value in item.items():
            if not isinstance(key, str) or not key.strip():
                raise ParseError("clause key must be a non-empty string")
            if isinstance(value, str):
                value = [value]
            if not isinstance(value, list) or not value:
                raise ParseError(f"clause {key!r} has no facts")
            facts = []
            for fact in value:
                if not isinstance(fact, str) or not fact.strip():
                    raise ParseError(f"clause {key!r} contains a non-text fact")
                facts.append(fact.strip())
            entries.append((key.strip(), facts))
    if not entries:
        raise ParseError("decomposition has no clauses")

    labels = [_LABEL_RE.match(key) for key, _ in entries]
    if all(labels):
        order = sorted(range(len(entries)), key=lambda i: int(labels[i].group(1)))
        entries = [entries[i] for i in order]
        sentences = split_sentences(x.text)
        texts = (
            sentences
            if len(sentences) == len(entries)
            else [" ".join(facts) for _, facts in entries]
        )
    else:
        texts = [key for key, _ in entries]

    clauses = []
    for i, ((_, facts), text) in enumerate(zip(entries, texts), start=1):
        clauses.append(
            MolecularClause(
                index=i,
                text=text,
                atomic_facts=tuple(
                    AtomicFact(clause_index=i, fact_index=j, text=f)
                    for j, f in enumerate(facts, start=1)
                ),
            )
        )
    return AnswerDecomposition(answer=x, clauses=tuple(clauses))


def fallback_decomposition(x: LongFormAnswer) -> AnswerDecomposition:
    """Deterministic sentence-split fallback: one clause per sentence, one
    fact per clause. Joining clause texts reproduces the normalized answer."""
    sentences = split_sentences(x.text) or [x.normalized]
    clauses = tuple(
        MolecularClause(
            index=i,
            text=s,
            atomic_facts=(AtomicFact(clause_index=i, fact_index=1, text=s),),
        )
        for i, s in enumerate(sentences, start=1)
    )
    return AnswerDecomposition(answer=x, clauses=clauses)


def decompose(x: LongFormAnswer, session: ChatSession) -> AnswerDecomposition:
    """Decompose an answer via the chat provider, with one JSON-repair
    reprompt and a sentence-split fallback."""
    if not x.text.strip():
        raise ValueError("answer must be non-empty")
    raw = session.ask("decompose", answer=x.text)
    try:
        d = parse_decomposition_json(raw, x)
    except ParseError as err:
        system, user = render("decompose", answer=x.text)
        repair = (
            f"{user}\nYour previous reply could not be parsed ({err}). "
            "Reply again with valid JSON only."
        )
        try:
            d = parse_decomposition_json(session.ask_raw(system, repair), x)
        except ParseError:
            return fallback_decomposition(x)
    if validate_decomposition(d):
        return fallback_decomposition(x)
    return d


def consistency_score(
    pred: AnswerDecomposition, gold: AnswerDecomposition
) -> tuple[float, float]:
    """Relative closeness of unit counts, at the molecular and atomic level.

    1 - |n_pred - n_gold| / max(n_pred, n_gold), clamped to [0, 1].
    """

    def rel(a: int, b: int) -> float:
        if max(a, b) == 0:
            return 1.0
        return min(max(1.0 - abs(a - b) / max(a, b), 0.0), 1.0)

    return rel(pred.m, gold.m), rel(len(pred.facts()), len(gold.facts()))


def correctness_score(
    pred: AnswerDecomposition, judge: NliProvider
) -> tuple[float, float]:
    """Fraction of units whose text the source answer entails (binary),
    at the molecular and atomic level."""
    source = pred.answer.text
    clauses = pred.clauses
    facts = pred.facts()
    mol = sum(judge.nli(source, c.text).binary_entail for c in clauses) / len(clauses)
    atom = sum(judge.nli(source, f.text).binary_entail for f in facts) / len(facts)
    return mol, atom
