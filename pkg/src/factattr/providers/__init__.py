from .base import (
    ChatProvider,
    ChatRequest,
    ChatResponse,
    EmbeddingProvider,
    EmbeddingVector,
    NliProvider,
    NliVerdict,
    ProviderBundle,
    SearchProvider,
    SearchResult,
)
from .mocks import (
    FixtureChatProvider,
    FixtureNli,
    MockSearchProvider,
    OverlapNli,
    TrigramHashEmbedder,
    overlap_ratio,
    prompt_key,
)

__all__ = [
    "ChatProvider",
    "ChatRequest",
    "ChatResponse",
    "EmbeddingProvider",
    "EmbeddingVector",
    "NliProvider",
    "NliVerdict",
    "ProviderBundle",
    "SearchProvider",
    "SearchResult",
    "FixtureChatProvider",
    "FixtureNli",
    "MockSearchProvider",
    "OverlapNli",
    "TrigramHashEmbedder",
    "overlap_ratio",
    "prompt_key",
]
