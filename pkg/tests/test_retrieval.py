import json
import math

import pytest

from factattr.errors import DimMismatch, EmptyCandidates, NoEvidence, ZeroVector
from factattr.models import AtomicFact, RunCounters
from factattr.providers.base import EmbeddingVector, SearchResult
from factattr.providers.mocks import MockSearchProvider, TrigramHashEmbedder
from factattr.retrieval import Retriever, SearchCache, cosine_similarity, rerank


def vec(*values):
    return EmbeddingVector(values=tuple(float(v) for v in values), dim=len(values))


def fact(text="some fact", i=1, j=1):
    return AtomicFact(clause_index=i, fact_index=j, text=text)


def test_cosine_known_value():
    assert cosine_similarity(vec(1, 1), vec(1, 0)) == pytest.approx(
        0.70710678, abs=1e-8
    )
    assert cosine_similarity(vec(2, 0), vec(5, 0)) == pytest.approx(1.0)
    assert cosine_similarity(vec(1, 0), vec(0, 1)) == pytest.approx(0.0)


def test_cosine_errors():
    with pytest.raises(DimMismatch):
        cosine_similarity(vec(1, 0), vec(1, 0, 0))
    with pytest.raises(ZeroVector):
        cosine_similarity(vec(0, 0), vec(1, 0))


class ScriptedEmbedder:
    """Maps exact texts to fixed vectors."""

    def __init__(self, table):
        self.table = table

    def embed(self, texts):
        return [self.table[t] for t in texts]


def test_rerank_orders_by_cosine_with_stable_ties():
    candidates = [
        SearchResult(title="far", snippet="far snippet", url="u1"),
        SearchResult(title="near", snippet="near snippet", url="u2"),
        SearchResult(title="tie", snippet="tie snippet", url="u3"),
    ]
    embedder = ScriptedEmbedder(
        {
            "the fact": vec(1, 0),
            "far snippet": vec(0, 1),
            "near snippet": vec(1, 0.1),
            "tie snippet": vec(0, 1),  # same score as "far", later position
        }
    )
    ranked = rerank(fact("the fact"), candidates, embedder)
    assert [e.source_url for e in ranked] == ["u2", "u1", "u3"]
    assert ranked[0].rank_score >= ranked[1].rank_score >= ranked[2].rank_score
    assert ranked[0].query_used == "the fact"


def test_rerank_skips_empty_snippets_and_raises_when_all_empty():
    good = SearchResult(title="t", snippet="alpha", url="u")
    blank = SearchResult(title="t", snippet="   ", url="u2")
    embedder = TrigramHashEmbedder(dim=64)
    ranked = rerank(fact("alpha"), [blank, good], embedder)
    assert [e.snippet for e in ranked] == ["alpha"]
    with pytest.raises(EmptyCandidates):
        rerank(fact("alpha"), [blank], embedder)
    with pytest.raises(EmptyCandidates):
        rerank(fact("alpha"), [], embedder)


def test_retriever_returns_top_one_and_counts_calls():
    results = [
        SearchResult(title="t1", snippet="completely unrelated words", url="u1"),
        SearchResult(title="t2", snippet="some fact restated here", url="u2"),
    ]
    counters = RunCounters()
    retriever = Retriever(
        MockSearchProvider({"some fact": results}),
        TrigramHashEmbedder(dim=64),
        counters,
    )
    item = retriever.retrieve_evidence(fact("some fact"))
    assert item.source_url == "u2"
    assert counters.retrieval_calls == 1


def test_retriever_no_results_raises_no_evidence_but_still_counts():
    counters = RunCounters()
    retriever = Retriever(
        MockSearchProvider({}), TrigramHashEmbedder(dim=64), counters
    )
    with pytest.raises(NoEvidence):
        retriever.retrieve_evidence(fact("missing"))
    assert counters.retrieval_calls == 1


def test_retriever_query_override():
    results = [SearchResult(title="t", snippet="expansion phrase data", url="u")]
    retriever = Retriever(
        MockSearchProvider({"expansion phrase": results}),
        TrigramHashEmbedder(dim=64),
        RunCounters(),
    )
    item = retriever.retrieve_evidence(fact("original"), query_override="expansion phrase")
    assert item.query_used == "expansion phrase"


def test_search_cache_roundtrip_and_determinism(tmp_path):
    path = tmp_path / "cache.jsonl"
    cache = SearchCache(path, deterministic=True)
    results = [SearchResult(title="t", snippet="s", url="u")]
    assert cache.get("a query") is None
    cache.put("a  query", results)
    assert cache.get("a query") == results  # normalized key

    record = json.loads(path.read_text().splitlines()[0])
    assert record["fetched_at"] == 0.0
    assert record["query"] == "a query"

    reloaded = SearchCache(path)
    assert reloaded.get("a query") == results


def test_retriever_consults_cache_before_search(tmp_path):
    cache = SearchCache(tmp_path / "c.jsonl", deterministic=True)
    cache.put("some fact", [SearchResult(title="t", snippet="cached hit", url="u")])

    class ExplodingSearch:
        def search(self, query, k):
            raise AssertionError("search should not be called on cache hit")

    retriever = Retriever(
        ExplodingSearch(), TrigramHashEmbedder(dim=64), RunCounters(), cache=cache
    )
    assert retriever.retrieve_evidence(fact("some fact")).snippet == "cached hit"
