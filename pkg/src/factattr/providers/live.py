"""Live HTTP adapters for the chat, search, embedding and NLI services.

Endpoints, keys and timeouts all come from configuration; secrets are read
from environment variables only. Transport failures are retried twice with
exponential backoff; quota rejections are not retried.
"""

from __future__ import annotations

import os
import threading
import time
from typing import Callable

import httpx

from ..errors import EmptyQuery, QuotaError, TransportError
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

ENV_LLM_API_KEY = "ARE_LLM_API_KEY"
ENV_SEARCH_API_KEY = "ARE_SEARCH_API_KEY"
ENV_SEARCH_CX = "ARE_SEARCH_CX"
ENV_NLI_ENDPOINT = "ARE_NLI_ENDPOINT"
ENV_EMBED_ENDPOINT = "ARE_EMBED_ENDPOINT"

DEFAULT_SEARCH_ENDPOINT = "https://customsearch.googleapis.com/customsearch/v1"

MAX_RETRIES = 2
BACKOFF_BASE_SECONDS = 0.5


class TokenBucket:
    """Per-provider rate limiter, safe under concurrent calls."""

    def __init__(self, rate_per_second: float, burst: int = 1):
        self.rate = rate_per_second
        self.capacity = float(burst)
        self._tokens = float(burst)
        self._last = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        if self.rate <= 0:
            return
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(
                    self.capacity, self._tokens + (now - self._last) * self.rate
                )
                self._last = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            time.sleep(wait)


def _call_with_retry(fn: Callable[[], httpx.Response], sleep=time.sleep) -> httpx.Response:
    last: Exception | None = None
    for attempt in range(MAX_RETRIES + 1):
        try:
            resp = fn()
        except httpx.HTTPError as exc:
            last = TransportError(str(exc))
        else:
            if resp.status_code == 429:
                raise QuotaError(f"quota exceeded: {resp.text[:200]}")
            if resp.status_code >= 400:
                last = TransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
            else:
                return resp
        if attempt < MAX_RETRIES:
            sleep(BACKOFF_BASE_SECONDS * (2**attempt))
    raise last  # type: ignore[misc]


class HttpChatProvider(ChatProvider):
    """Generic chat-completions adapter (role/content message JSON)."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: str | None = None,
        timeout: float = 30.0,
        rate_per_second: float = 0.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint
        self.model = model
        self.api_key = api_key if api_key is not None else os.environ.get(ENV_LLM_API_KEY, "")
        self._client = httpx.Client(timeout=timeout, transport=transport)
        self._bucket = TokenBucket(rate_per_second)

    def chat(self, req: ChatRequest) -> ChatResponse:
        self._bucket.acquire()
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": req.system_prompt},
                {"role": "user", "content": req.user_prompt},
            ],
            "max_tokens": req.max_output_tokens,
            "temperature": req.temperature,
        }
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        resp = _call_with_retry(
            lambda: self._client.post(self.endpoint, json=payload, headers=headers)
        )
        body = resp.json()
        try:
            text = body["choices"][0]["message"]["content"]
            usage = body.get("usage", {})
        except (KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed chat response: {exc}")
        return ChatResponse(
            text=text,
            tokens_in=int(usage.get("prompt_tokens", 0)),
            tokens_out=int(usage.get("completion_tokens", 0)),
        )


class GoogleSearchProvider(SearchProvider):
    """Custom-search adapter (GET with key, cx, q, num)."""

    def __init__(
        self,
        endpoint: str = DEFAULT_SEARCH_ENDPOINT,
        api_key: str | None = None,
        cx: str | None = None,
        timeout: float = 15.0,
        rate_per_second: float = 0.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint
        self.api_key = api_key if api_key is not None else os.environ.get(ENV_SEARCH_API_KEY, "")
        self.cx = cx if cx is not None else os.environ.get(ENV_SEARCH_CX, "")
        self._client = httpx.Client(timeout=timeout, transport=transport)
        self._bucket = TokenBucket(rate_per_second)

    def search(self, query: str, k: int) -> list[SearchResult]:
        if not query.strip():
            raise EmptyQuery("search query must be non-empty")
        self._bucket.acquire()
        params = {"key": self.api_key, "cx": self.cx, "q": query, "num": k}
        resp = _call_with_retry(lambda: self._client.get(self.endpoint, params=params))
        items = resp.json().get("items", [])
        return [
            SearchResult(
                title=item.get("title", ""),
                snippet=item.get("snippet", ""),
                url=item.get("link", ""),
            )
            for item in items[:k]
        ]


class HttpEmbeddingProvider(EmbeddingProvider):
    """POST {"texts": [...]} -> {"vectors": [[...], ...]}."""

    def __init__(
        self,
        endpoint: str | None = None,
        timeout: float = 30.0,
        rate_per_second: float = 0.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint or os.environ.get(ENV_EMBED_ENDPOINT, "")
        self._client = httpx.Client(timeout=timeout, transport=transport)
        self._bucket = TokenBucket(rate_per_second)

    def embed(self, texts: list[str]) -> list[EmbeddingVector]:
        if not texts:
            raise ValueError("embed requires at least one text")
        self._bucket.acquire()
        resp = _call_with_retry(
            lambda: self._client.post(self.endpoint, json={"texts": texts})
        )
        vectors = resp.json().get("vectors", [])
        if len(vectors) != len(texts):
            raise TransportError("embedding service returned wrong vector count")
        return [
            EmbeddingVector(values=tuple(float(v) for v in vec), dim=len(vec))
            for vec in vectors
        ]


class HttpNliProvider(NliProvider):
    """POST the T5-style "premise: ... hypothesis: ..." input, read back
    {"entail_prob": float, "binary_entail": bool}."""

    def __init__(
        self,
        endpoint: str | None = None,
        timeout: float = 30.0,
        rate_per_second: float = 0.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint or os.environ.get(ENV_NLI_ENDPOINT, "")
        self._client = httpx.Client(timeout=timeout, transport=transport)
        self._bucket = TokenBucket(rate_per_second)

    def nli(self, premise: str, hypothesis: str) -> NliVerdict:
        if not premise.strip() or not hypothesis.strip():
            raise ValueError("premise and hypothesis must be non-empty")
        self._bucket.acquire()
        payload = {"input": f"premise: {premise} hypothesis: {hypothesis}"}
        resp = _call_with_retry(
            lambda: self._client.post(self.endpoint, json=payload)
        )
        body = resp.json()
        return NliVerdict(
            entail_prob=float(body["entail_prob"]),
            binary_entail=bool(body["binary_entail"]),
        )
