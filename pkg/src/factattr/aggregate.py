"""Revised-answer reassembly (backtracking) and per-clause evidence
aggregation with deduplication."""

from __future__ import annotations

import json

from .chat import ChatSession
from .decomposition import split_sentences
from .models import (
    AnswerDecomposition,
    EvidenceSet,
    LongFormAnswer,
    MolecularClause,
    TrailTerminal,
    VerificationTrail,
    normalize_ws,
)


def aggregate_evidence(
    trails: list[VerificationTrail], d: AnswerDecomposition
) -> list[EvidenceSet]:
    """One evidence set per clause: the facts' terminal evidence in fact
    order, deduplicated after whitespace normalization. Snippets whose fact
    never reached a supportive verdict are flagged unsupported."""
    by_fact = {(t.clause_index, t.fact_index): t for t in trails}
    sets = []
    for clause in d.clauses:
        snippets: list[str] = []
        sources: list[str] = []
        supported: list[bool] = []
        seen: dict[str, int] = {}
        for fact in clause.atomic_facts:
            trail = by_fact.get((fact.clause_index, fact.fact_index))
            if trail is None:
                continue
            evidence = trail.final_evidence()
            if evidence is None:
                continue
            ok = trail.terminal is TrailTerminal.RESOLVED
            key = normalize_ws(evidence.snippet)
            if key in seen:
                pos = seen[key]
                supported[pos] = supported[pos] or ok
                continue
            seen[key] = len(snippets)
            snippets.append(evidence.snippet)
            sources.append(evidence.source_url)
            supported.append(ok)
        sets.append(
            EvidenceSet(
                clause_index=clause.index,
                snippets=tuple(snippets),
                sources=tuple(sources),
                supported=tuple(supported),
            )
        )
    return sets


def splice_clause(clause: MolecularClause) -> str:
    """Deterministic clause revision: replace each edited fact's original
    wording inside the clause where it occurs, else append the new fact."""
    text = clause.text
    for fact in clause.atomic_facts:
        if not fact.edited:
            continue
        if fact.original_text and fact.original_text in text:
            text = text.replace(fact.original_text, fact.text)
        else:
            text = f"{text} {fact.text}"
    return text


def _structure_json(d: AnswerDecomposition) -> str:
    return json.dumps(
        [{c.text: [f.text for f in c.atomic_facts]} for c in d.clauses],
        ensure_ascii=False,
    )


def backtrack(
    d: AnswerDecomposition, session: ChatSession
) -> tuple[LongFormAnswer, tuple[str, ...]]:
    """Reassemble the revised answer from the (possibly edited) facts.

    Clauses with no edited facts are guaranteed verbatim in the output;
    with no edits at all the original answer is returned without a provider
    call. Blank or misaligned model output falls back to deterministic
    splicing of edited facts into their clauses.
    """
    if not any(f.edited for f in d.facts()):
        return d.answer, tuple(c.text for c in d.clauses)

    reply = session.ask(
        "backtrack", reference=d.answer.text, structure=_structure_json(d)
    )
    rendered = reply.split("Sentences:", 1)[-1].strip()
    sentences = split_sentences(rendered) if rendered else []
    aligned = len(sentences) == d.m

    texts = []
    for i, clause in enumerate(d.clauses):
        if not clause.edited:
            texts.append(clause.text)  # untouched clauses stay verbatim
        elif aligned:
            texts.append(sentences[i])
        else:
            texts.append(splice_clause(clause))
    return LongFormAnswer(text=" ".join(texts)), tuple(texts)
