"""Instruction-tuning dataset construction from knowledge-graph triples:
one-hop extraction, heuristic filtering, fact verbalization, and coherent
text generation with clause/fact alignment."""

from __future__ import annotations

import json
import logging
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import httpx

from .chat import ChatSession
from .decomposition import parse_decomposition_json
from .errors import FactAttrError, ParseError, TransportError, UnknownEntity
from .models import AnswerDecomposition, LongFormAnswer, normalize_ws, validate_decomposition

log = logging.getLogger(__name__)


class SampleRejected(FactAttrError):
    """A generated sample violated alignment or traceability invariants."""


@dataclass(frozen=True)
class Triple:
    subject: str
    property: str
    object: str
    property_id: str = ""

    def __post_init__(self) -> None:
        if not (self.subject.strip() and self.property.strip() and self.object.strip()):
            raise ValueError("triple labels must be non-empty")

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "property": self.property,
            "object": self.object,
            "property_id": self.property_id,
        }


@dataclass(frozen=True)
class InstructionSample:
    generated_text: str
    alignment: AnswerDecomposition
    source_triples: tuple[Triple, ...]

    def to_dict(self) -> dict:
        return {
            "generated_text": self.generated_text,
            "alignment": {
                "output": [
                    {c.text: [f.text for f in c.atomic_facts]}
                    for c in self.alignment.clauses
                ]
            },
            "source_triples": [t.to_dict() for t in self.source_triples],
        }


# Properties and objects that carry identifiers, media or codes rather than
# statements about the entity.
DEFAULT_DENY_PROPERTIES = (
    r"issn",
    r"isbn",
    r"\bcode\b",
    r"\bid\b",
    r"identifier",
    r"image",
    r"jpeg",
    r"logo",
    r"\burl\b",
    r"website",
)
DEFAULT_DENY_OBJECTS = (
    r"^https?://",
    r"\.(jpe?g|png|svg|gif|tiff?)$",
    r"^(?=.*\d)(?=.*[a-z])[a-z0-9.\-]+$",  # letter/digit codes, no spaces
    r"^\d{4}-\d{3}[\dx]$",  # ISSN-shaped
)


@dataclass(frozen=True)
class FilterRules:
    deny_properties: tuple[str, ...] = DEFAULT_DENY_PROPERTIES
    deny_objects: tuple[str, ...] = DEFAULT_DENY_OBJECTS

    def denies(self, t: Triple) -> bool:
        prop = t.property.casefold()
        obj = t.object.casefold()
        if any(re.search(p, prop) for p in self.deny_properties):
            return True
        if any(re.search(p, t.property_id.casefold()) for p in self.deny_properties):
            return True
        return any(re.search(p, obj) for p in self.deny_objects)


def filter_triples(ts: Sequence[Triple], rules: Optional[FilterRules] = None) -> list[Triple]:
    """Drop triples whose property or object matches a deny pattern.
    Idempotent."""
    rules = rules or FilterRules()
    return [t for t in ts if not rules.denies(t)]


class TsvKgClient:
    """Fixture-mode KG: a TSV of (subject, property, object, property_id)."""

    def __init__(self, path: Path):
        self._by_entity: dict[str, list[Triple]] = {}
        for line in Path(path).read_text("utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                continue
            subject, prop, obj = parts[0], parts[1], parts[2]
            pid = parts[3] if len(parts) > 3 else ""
            self._by_entity.setdefault(subject, []).append(
                Triple(subject=subject, property=prop, object=obj, property_id=pid)
            )

    def entities(self) -> list[str]:
        return sorted(self._by_entity)

    def one_hop(self, entity_id: str) -> list[Triple]:
        if entity_id not in self._by_entity:
            raise UnknownEntity(entity_id)
        return list(self._by_entity[entity_id])


class HttpKgClient:
    """Live KG client; GET mirrors the entity-search API wire shape."""

    def __init__(self, endpoint: str, timeout: float = 15.0,
                 transport: httpx.BaseTransport | None = None):
        self.endpoint = endpoint
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def one_hop(self, entity_id: str) -> list[Triple]:
        try:
            resp = self._client.get(
                self.endpoint,
                params={
                    "action": "wbsearchentities",
                    "search": entity_id,
                    "format": "json",
                },
            )
        except httpx.HTTPError as exc:
            raise TransportError(str(exc))
        if resp.status_code >= 400:
            raise TransportError(f"HTTP {resp.status_code}")
        body = resp.json()
        if not body.get("triples"):
            raise UnknownEntity(entity_id)
        return [
            Triple(
                subject=t["subject"],
                property=t["property"],
                object=t["object"],
                property_id=t.get("property_id", ""),
            )
            for t in body["triples"]
        ]


def fetch_one_hop(entity_id: str, kg) -> list[Triple]:
    """All one-hop triples whose subject is the given entity."""
    triples = kg.one_hop(entity_id)
    return [t for t in triples if t.subject == entity_id or not entity_id]


def triples_to_facts(ts: Sequence[Triple], session: ChatSession) -> list[str]:
    """One fact sentence per triple, each mentioning the subject. Falls back
    to a plain verbalization when the model drops the subject."""
    facts = []
    for t in ts:
        reply = session.ask(
            "triple_fact", subject=t.subject, property=t.property, object=t.object
        ).strip()
        if not reply or t.subject.casefold() not in reply.casefold():
            reply = f"{t.subject} {t.property} {t.object}."
        facts.append(reply)
    return facts


def sample_violations(sample: InstructionSample, input_facts: Sequence[str]) -> list[str]:
    """Structural and traceability violations for one generated sample."""
    violations = validate_decomposition(sample.alignment)
    known = {normalize_ws(f).casefold() for f in input_facts}
    labels = []
    for t in sample.source_triples:
        labels.extend((t.subject.casefold(), t.object.casefold()))
    for fact in sample.alignment.facts():
        text = normalize_ws(fact.text).casefold()
        if text in known:
            continue
        if labels and any(lab in text for lab in labels):
            continue
        violations.append(
            f"fact ({fact.clause_index},{fact.fact_index}) not traceable to inputs"
        )
    return violations


def facts_to_sample(
    facts: Sequence[str],
    session: ChatSession,
    source_triples: Sequence[Triple] = (),
) -> InstructionSample:
    """Turn fact sentences into a coherent text with clause/fact alignment.

    Raises SampleRejected when the model's alignment is structurally invalid
    or introduces facts that cannot be traced back to the inputs.
    """
    if not facts:
        raise ValueError("facts_to_sample requires at least one fact")
    reply = session.ask("facts_text", facts="\n".join(f"- {f}" for f in facts))
    placeholder = LongFormAnswer(text=" ".join(facts))
    alignment = parse_decomposition_json(reply, placeholder)
    generated = " ".join(c.text for c in alignment.clauses)
    alignment = AnswerDecomposition(
        answer=LongFormAnswer(text=generated), clauses=alignment.clauses
    )
    sample = InstructionSample(
        generated_text=generated,
        alignment=alignment,
        source_triples=tuple(source_triples),
    )
    violations = sample_violations(sample, facts)
    if violations:
        raise SampleRejected("; ".join(violations))
    return sample


def build_dataset(
    entity_ids: Sequence[str],
    kg,
    session: ChatSession,
    out_dir: Optional[Path] = None,
    split_ratio: float = 0.8,
    seed: int = 0,
    rules: Optional[FilterRules] = None,
    min_triples: int = 3,
    max_triples: int = 8,
) -> dict[str, list[InstructionSample]]:
    """Build train/eval splits from entity seeds.

    Entities are processed in sorted order and the split is drawn from a
    seeded RNG, so rebuilds with the same inputs are byte-identical.
    Per-entity failures are logged and skipped.
    """
    rng = random.Random(seed)
    samples: list[InstructionSample] = []
    for entity_id in sorted(set(entity_ids)):
        try:
            triples = filter_triples(fetch_one_hop(entity_id, kg), rules)
            if not triples:
                log.info("entity %s: no triples survived filtering", entity_id)
                continue
            count = rng.randint(min_triples, max_triples)
            count = max(1, min(count, len(triples)))
            chosen = rng.sample(triples, count)
            facts = triples_to_facts(chosen, session)
            samples.append(facts_to_sample(facts, session, source_triples=chosen))
        except (FactAttrError, ParseError) as exc:
            log.warning("entity %s skipped: %s", entity_id, exc)
    order = list(range(len(samples)))
    rng.shuffle(order)
    cut = round(split_ratio * len(samples))
    split = {
        "train": [samples[i] for i in order[:cut]],
        "eval": [samples[i] for i in order[cut:]],
    }
    if out_dir is not None and samples:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name in ("train", "eval"):
            with open(out_dir / f"{name}.jsonl", "w", encoding="utf-8") as fh:
                for s in split[name]:
                    fh.write(json.dumps(s.to_dict(), sort_keys=True) + "\n")
    return split
