"""Provider interfaces for the four external model services:
chat LLM, web search, text embedding, and NLI entailment scoring.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ChatRequest:
    system_prompt: str
    user_prompt: str
    max_output_tokens: int = 1024
    temperature: float = 0.0

    def __post_init__(self) -> None:
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class ChatResponse:
    text: str
    tokens_in: int
    tokens_out: int

    def __post_init__(self) -> None:
        if self.tokens_in < 0 or self.tokens_out < 0:
            raise ValueError("token counts must be >= 0")


@dataclass(frozen=True)
class SearchResult:
    title: str
    snippet: str  # may be empty; engines do not always return content
    url: str


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]
    dim: int

    def __post_init__(self) -> None:
        if self.dim <= 0 or len(self.values) != self.dim:
            raise ValueError("dim must match the number of values and be > 0")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("embedding entries must be finite")


@dataclass(frozen=True)
class NliVerdict:
    entail_prob: float
    binary_entail: bool  # the scorer's own discrete label

    def __post_init__(self) -> None:
        if not 0.0 <= self.entail_prob <= 1.0:
            raise ValueError("entail_prob must lie in [0, 1]")


class ChatProvider(abc.ABC):
    @abc.abstractmethod
    def chat(self, req: ChatRequest) -> ChatResponse: ...


class SearchProvider(abc.ABC):
    @abc.abstractmethod
    def search(self, query: str, k: int) -> list[SearchResult]: ...


class EmbeddingProvider(abc.ABC):
    @abc.abstractmethod
    def embed(self, texts: list[str]) -> list[EmbeddingVector]: ...


class NliProvider(abc.ABC):
    @abc.abstractmethod
    def nli(self, premise: str, hypothesis: str) -> NliVerdict: ...


@dataclass
class ProviderBundle:
    chat: ChatProvider
    search: SearchProvider
    embed: EmbeddingProvider
    nli: NliProvider
