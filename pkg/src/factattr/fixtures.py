"""Fixture-suite loading: deterministic transcript-replay providers.

A fixture directory contains:

    chat.jsonl       {"key", "response"} per line; key = prompt hash
    search.jsonl     {"query", "results": [{"title","snippet","url"}]}
    embed.jsonl      {"dim": int} config (empty file -> default dim)
    nli.jsonl        {"key", "entail_prob", "binary_entail"} overrides
    kg.tsv           subject<TAB>property<TAB>object<TAB>property_id
    questions.jsonl  {"id", "text", "dataset_tag"?}

Chat and search replay strictly: calls not covered by the transcripts
raise FixtureMiss, surfacing untracked provider traffic as a test failure.
Embedding and NLI are algorithmic mocks (with optional NLI overrides), so
they never miss.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import FixtureMiss
from .models import Question, question_from_dict
from .providers.base import ProviderBundle, SearchResult
from .providers.mocks import (
    FixtureChatProvider,
    FixtureNli,
    MockSearchProvider,
    TrigramHashEmbedder,
)

REQUIRED_FILES = (
    "chat.jsonl",
    "search.jsonl",
    "embed.jsonl",
    "nli.jsonl",
    "kg.tsv",
    "questions.jsonl",
)


def _read_jsonl(path: Path) -> list[dict]:
    records = []
    for line in path.read_text("utf-8").splitlines():
        if line.strip():
            records.append(json.loads(line))
    return records


@dataclass
class FixtureSuite:
    directory: Path
    providers: ProviderBundle
    questions: list[Question]

    @property
    def kg_path(self) -> Path:
        return self.directory / "kg.tsv"


def load_fixture_suite(directory) -> FixtureSuite:
    directory = Path(directory)
    missing = [f for f in REQUIRED_FILES if not (directory / f).exists()]
    if missing:
        raise FixtureMiss(
            f"fixture dir {directory} is missing: {', '.join(missing)}"
        )

    chat_table = {
        rec["key"]: rec["response"] for rec in _read_jsonl(directory / "chat.jsonl")
    }
    search_table = {
        rec["query"]: [
            SearchResult(title=r["title"], snippet=r["snippet"], url=r["url"])
            for r in rec["results"]
        ]
        for rec in _read_jsonl(directory / "search.jsonl")
    }
    embed_cfg = _read_jsonl(directory / "embed.jsonl")
    dim = embed_cfg[0].get("dim", 64) if embed_cfg else 64
    nli_table = {
        rec["key"]: (rec["entail_prob"], rec["binary_entail"])
        for rec in _read_jsonl(directory / "nli.jsonl")
    }
    questions = [
        question_from_dict(rec) for rec in _read_jsonl(directory / "questions.jsonl")
    ]
    bundle = ProviderBundle(
        chat=FixtureChatProvider(chat_table),
        search=MockSearchProvider(search_table, strict=True),
        embed=TrigramHashEmbedder(dim=dim),
        nli=FixtureNli(nli_table),
    )
    return FixtureSuite(directory=directory, providers=bundle, questions=questions)
