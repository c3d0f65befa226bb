"""Three-state evidence verification and the bounded
verify -> {keep | edit | expand and re-retrieve} loop."""

from __future__ import annotations

import logging
import re
from typing import Optional

from .chat import ChatSession
from .errors import EmptyEdit, NoEvidence
from .models import (
    AtomicFact,
    EvidenceItem,
    TrailAction,
    TrailStep,
    TrailTerminal,
    VerificationStatus,
    VerificationTrail,
)
from .retrieval import Retriever

log = logging.getLogger(__name__)

_STATUS_RE = re.compile(r"\b([123])\b")
_FIX_RE = re.compile(r"my fix:\s*", re.IGNORECASE)

DEFAULT_MAX_ITERATIONS = 4


def _parse_status(text: str) -> Optional[VerificationStatus]:
    m = _STATUS_RE.search(text)
    if m:
        return VerificationStatus(int(m.group(1)))
    lowered = text.casefold()
    if "supportive" in lowered or "support" in lowered:
        return VerificationStatus.SUPPORTIVE
    if "edit" in lowered or "revis" in lowered:
        return VerificationStatus.EDITING_REQUIRED
    if "irrelevant" in lowered:
        return VerificationStatus.IRRELEVANT
    return None


class Verifier:
    """Drives the verification loop for single atomic facts."""

    def __init__(self, session: ChatSession):
        self.session = session

    def verify(self, fact: AtomicFact, evidence: EvidenceItem) -> VerificationStatus:
        """Classify the fact/evidence relationship as supportive, editing
        required, or irrelevant. Unparseable output is reprompted once,
        then treated as irrelevant."""
        if not evidence.snippet.strip():
            raise ValueError("evidence snippet must be non-empty")
        reply = self.session.ask("verify", fact=fact.text, evidence=evidence.snippet)
        status = _parse_status(reply)
        if status is None:
            retry = self.session.ask_raw(
                "Reply with exactly one digit: 1, 2 or 3.",
                f"Fact: {fact.text}\nArticle: {evidence.snippet}\nDigit:",
            )
            status = _parse_status(retry)
        return status if status is not None else VerificationStatus.IRRELEVANT

    def edit_fact(self, fact: AtomicFact, evidence: EvidenceItem) -> AtomicFact:
        """Revise the fact against the evidence. Keeps (i, j) and the
        original text; raises EmptyEdit on blank output."""
        reply = self.session.ask("edit", fact=fact.text, evidence=evidence.snippet)
        m = _FIX_RE.search(reply)
        fixed = (reply[m.end() :] if m else reply).strip()
        if not fixed:
            raise EmptyEdit(f"editor returned no text for fact "
                            f"({fact.clause_index},{fact.fact_index})")
        if fixed == fact.text:
            log.warning(
                "no-op edit for fact (%d,%d)", fact.clause_index, fact.fact_index
            )
        return fact.with_edit(fixed)

    def expand_fact(self, fact: AtomicFact) -> list[str]:
        """Rewrite the fact into two short search phrases; short output is
        padded with the fact text itself."""
        reply = self.session.ask("expand", fact=fact.text)
        phrases = []
        for line in reply.splitlines():
            cleaned = line.strip().lstrip("-*0123456789. ").strip()
            if cleaned:
                phrases.append(cleaned)
        phrases = phrases[:2]
        while len(phrases) < 2:
            phrases.append(fact.text)
        return phrases

    def verify_edit_loop(
        self,
        fact: AtomicFact,
        retriever: Retriever,
        max_iterations: int = DEFAULT_MAX_ITERATIONS,
    ) -> tuple[AtomicFact, Optional[EvidenceItem], VerificationTrail]:
        """Retrieve, then iterate verification up to ``max_iterations``.

        Supportive breaks out; editing-required revises the fact and
        re-verifies it against the same evidence; irrelevant (or missing)
        evidence triggers expansion and re-retrieval, skipped when no
        iteration remains to use the new evidence.
        """
        evidence: Optional[EvidenceItem] = None
        try:
            evidence = retriever.retrieve_evidence(fact)
        except NoEvidence:
            pass
        steps: list[TrailStep] = []
        terminal = TrailTerminal.EXHAUSTED_ITERATIONS
        for iteration in range(max_iterations):
            status = (
                self.verify(fact, evidence)
                if evidence is not None
                else VerificationStatus.IRRELEVANT
            )
            if status is VerificationStatus.SUPPORTIVE:
                steps.append(
                    TrailStep(iteration, status, TrailAction.NONE, evidence)
                )
                terminal = TrailTerminal.RESOLVED
                break
            if status is VerificationStatus.EDITING_REQUIRED:
                action = TrailAction.EDITED
                try:
                    fact = self.edit_fact(fact, evidence)
                except EmptyEdit:
                    action = TrailAction.NONE
                steps.append(TrailStep(iteration, status, action, evidence))
                continue
            # irrelevant: expand and re-retrieve, unless this was the last pass
            action = TrailAction.NONE
            if iteration < max_iterations - 1:
                for query in self.expand_fact(fact):
                    try:
                        evidence = retriever.retrieve_evidence(fact, query)
                        action = TrailAction.EXPANDED_AND_RERETRIEVED
                        break
                    except NoEvidence:
                        continue
            steps.append(TrailStep(iteration, status, action, evidence))
        trail = VerificationTrail(
            clause_index=fact.clause_index,
            fact_index=fact.fact_index,
            steps=tuple(steps),
            terminal=terminal,
        )
        return fact, evidence, trail
