"""Deterministic in-process providers for tests and offline runs.

Every mock is a pure function of its inputs and fixture tables: repeated
calls return byte-identical results.
"""

from __future__ import annotations

import hashlib
import re

from ..errors import EmptyQuery, FixtureMiss
from ..models import normalize_ws
from .base import (
    ChatProvider,
    ChatRequest,
    ChatResponse,
    EmbeddingProvider,
    EmbeddingVector,
    NliProvider,
    NliVerdict,
    SearchProvider,
    SearchResult,
)

_WORD_RE = re.compile(r"[0-9a-z]+")


def prompt_key(system_prompt: str, user_prompt: str) -> str:
    """Stable transcript key: hash of the whitespace-normalized prompts.

    Editing a prompt template intentionally invalidates fixtures keyed on it.
    """
    payload = normalize_ws(system_prompt) + "\x1f" + normalize_ws(user_prompt)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def _approx_tokens(text: str) -> int:
    return len(text.split())


class FixtureChatProvider(ChatProvider):
    """Chat mock backed by a key -> response table."""

    def __init__(self, table: dict[str, str]):
        self.table = dict(table)

    def chat(self, req: ChatRequest) -> ChatResponse:
        key = prompt_key(req.system_prompt, req.user_prompt)
        if key not in self.table:
            raise FixtureMiss(
                f"no chat fixture for key {key} (user prompt starts: "
                f"{normalize_ws(req.user_prompt)[:80]!r})"
            )
        text = self.table[key]
        return ChatResponse(
            text=text,
            tokens_in=_approx_tokens(req.system_prompt) + _approx_tokens(req.user_prompt),
            tokens_out=_approx_tokens(text),
        )


class MockSearchProvider(SearchProvider):
    """Search mock backed by a normalized-query -> results table.

    Non-strict instances return no results for unknown queries; strict
    instances (fixture replay) raise FixtureMiss so untracked calls surface
    as test failures.
    """

    def __init__(self, table: dict[str, list[SearchResult]], strict: bool = False):
        self.table = {normalize_ws(q): list(rs) for q, rs in table.items()}
        self.strict = strict

    def search(self, query: str, k: int) -> list[SearchResult]:
        if not query.strip():
            raise EmptyQuery("search query must be non-empty")
        norm = normalize_ws(query)
        if norm not in self.table:
            if self.strict:
                raise FixtureMiss(f"no search fixture for query {norm!r}")
            return []
        return self.table[norm][:k]


class TrigramHashEmbedder(EmbeddingProvider):
    """Character-trigram hashed-count embedding, fixed dimension."""

    def __init__(self, dim: int = 64):
        self.dim = dim

    def _vector(self, text: str) -> EmbeddingVector:
        counts = [0.0] * self.dim
        folded = normalize_ws(text).casefold()
        padded = f"  {folded}  "
        for i in range(len(padded) - 2):
            tri = padded[i : i + 3]
            bucket = int.from_bytes(
                hashlib.md5(tri.encode("utf-8")).digest()[:4], "big"
            ) % self.dim
            counts[bucket] += 1.0
        return EmbeddingVector(values=tuple(counts), dim=self.dim)

    def embed(self, texts: list[str]) -> list[EmbeddingVector]:
        if not texts:
            raise ValueError("embed requires at least one text")
        return [self._vector(t) for t in texts]


def overlap_ratio(premise: str, hypothesis: str) -> float:
    """Fraction of hypothesis words present in the premise (case-folded).

    A hypothesis that is a substring of the premise scores 1.0.
    """
    p = normalize_ws(premise).casefold()
    h = normalize_ws(hypothesis).casefold()
    if h and h in p:
        return 1.0
    hyp_words = _WORD_RE.findall(h)
    if not hyp_words:
        return 0.0
    prem_words = set(_WORD_RE.findall(p))
    hits = sum(1 for w in hyp_words if w in prem_words)
    return hits / len(hyp_words)


class OverlapNli(NliProvider):
    """Lexical-overlap entailment scorer with an analytic oracle.

    entail_prob is the hypothesis word coverage; the binary label requires
    full coverage.
    """

    def nli(self, premise: str, hypothesis: str) -> NliVerdict:
        if not premise.strip() or not hypothesis.strip():
            raise ValueError("premise and hypothesis must be non-empty")
        r = overlap_ratio(premise, hypothesis)
        return NliVerdict(entail_prob=r, binary_entail=r >= 1.0)


class FixtureNli(NliProvider):
    """NLI mock with fixture overrides, falling back to lexical overlap."""

    def __init__(self, table: dict[str, tuple[float, bool]] | None = None):
        self.table = dict(table or {})
        self._fallback = OverlapNli()

    @staticmethod
    def pair_key(premise: str, hypothesis: str) -> str:
        payload = normalize_ws(premise) + "\x1f" + normalize_ws(hypothesis)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def nli(self, premise: str, hypothesis: str) -> NliVerdict:
        key = self.pair_key(premise, hypothesis)
        if key in self.table:
            prob, binary = self.table[key]
            return NliVerdict(entail_prob=prob, binary_entail=binary)
        return self._fallback.nli(premise, hypothesis)
