"""Evidence retrieval: search, cosine rerank, top-1 selection, and a
persistent query cache."""

from __future__ import annotations

import json
import math
import threading
import time
from pathlib import Path
from typing import Optional

from .errors import DimMismatch, EmptyCandidates, NoEvidence, ZeroVector
from .models import AtomicFact, EvidenceItem, RunCounters, normalize_ws
from .providers.base import (
    EmbeddingProvider,
    EmbeddingVector,
    SearchProvider,
    SearchResult,
)


def cosine_similarity(u: EmbeddingVector, v: EmbeddingVector) -> float:
    if u.dim != v.dim:
        raise DimMismatch(f"dims differ: {u.dim} vs {v.dim}")
    dot = sum(a * b for a, b in zip(u.values, v.values))
    nu = math.sqrt(sum(a * a for a in u.values))
    nv = math.sqrt(sum(b * b for b in v.values))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine undefined for all-zero vector")
    return dot / (nu * nv)


def rerank(
    fact: AtomicFact,
    candidates: list[SearchResult],
    embedder: EmbeddingProvider,
    query_used: str = "",
) -> list[EvidenceItem]:
    """Order candidates by cosine similarity to the fact, descending.

    Candidates with empty snippets are skipped; ties keep search order.
    """
    if not candidates:
        raise EmptyCandidates("no candidates to rerank")
    usable = [c for c in candidates if c.snippet.strip()]
    if not usable:
        raise EmptyCandidates("all candidate snippets are empty")
    vectors = embedder.embed([fact.text] + [c.snippet for c in usable])
    fact_vec, cand_vecs = vectors[0], vectors[1:]
    scored = [
        (cosine_similarity(vec, fact_vec), pos, cand)
        for pos, (cand, vec) in enumerate(zip(usable, cand_vecs))
    ]
    scored.sort(key=lambda t: (-t[0], t[1]))
    query = query_used or fact.text
    return [
        EvidenceItem(
            snippet=cand.snippet,
            source_url=cand.url,
            rank_score=max(min(score, 1.0), -1.0),
            query_used=query,
        )
        for score, _, cand in scored
    ]


class SearchCache:
    """JSONL-backed query cache keyed by the normalized query string.

    Values are deterministic per key, so concurrent last-writer-wins races
    are benign. ``fetched_at`` is 0 under deterministic (mock) runs.
    """

    def __init__(self, path: Optional[Path] = None, deterministic: bool = False):
        self.path = Path(path) if path else None
        self.deterministic = deterministic
        self._entries: dict[str, list[SearchResult]] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            for line in self.path.read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                rec = json.loads(line)
                self._entries[rec["query"]] = [
                    SearchResult(title=r["title"], snippet=r["snippet"], url=r["url"])
                    for r in rec["results"]
                ]

    def get(self, query: str) -> Optional[list[SearchResult]]:
        with self._lock:
            results = self._entries.get(normalize_ws(query))
            return list(results) if results is not None else None

    def put(self, query: str, results: list[SearchResult]) -> None:
        key = normalize_ws(query)
        record = {
            "query": key,
            "results": [
                {"title": r.title, "snippet": r.snippet, "url": r.url}
                for r in results
            ],
            "fetched_at": 0.0 if self.deterministic else time.time(),
        }
        with self._lock:
            self._entries[key] = list(results)
            if self.path:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record, sort_keys=True) + "\n")


class Retriever:
    """Per-fact evidence retrieval with rerank and top-1 selection."""

    def __init__(
        self,
        search: SearchProvider,
        embedder: EmbeddingProvider,
        counters: Optional[RunCounters] = None,
        k: int = 5,
        cache: Optional[SearchCache] = None,
    ):
        self.search = search
        self.embedder = embedder
        self.counters = counters if counters is not None else RunCounters()
        self.k = k
        self.cache = cache

    def retrieve_evidence(
        self, fact: AtomicFact, query_override: Optional[str] = None
    ) -> EvidenceItem:
        """Top reranked evidence for the fact; raises NoEvidence when search
        yields nothing usable."""
        query = query_override or fact.text
        self.counters.add_retrieval()
        results = self.cache.get(query) if self.cache else None
        if results is None:
            results = self.search.search(query, self.k)
            if self.cache:
                self.cache.put(query, results)
        if not results:
            raise NoEvidence(f"no search results for {query!r}")
        try:
            ranked = rerank(fact, results, self.embedder, query_used=query)
        except EmptyCandidates:
            raise NoEvidence(f"all snippets empty for {query!r}")
        return ranked[0]
