"""Thin chat-session wrapper tying templates, a provider, and counters."""

from __future__ import annotations

from typing import Optional

from .models import RunCounters
from .prompting import render
from .providers.base import ChatProvider, ChatRequest


class ChatSession:
    """Renders templates, calls the provider, and accumulates counters."""

    def __init__(
        self,
        provider: ChatProvider,
        counters: Optional[RunCounters] = None,
        max_output_tokens: int = 1024,
        temperature: float = 0.0,
    ):
        self.provider = provider
        self.counters = counters if counters is not None else RunCounters()
        self.max_output_tokens = max_output_tokens
        self.temperature = temperature

    def ask_raw(self, system_prompt: str, user_prompt: str) -> str:
        resp = self.provider.chat(
            ChatRequest(
                system_prompt=system_prompt,
                user_prompt=user_prompt,
                max_output_tokens=self.max_output_tokens,
                temperature=self.temperature,
            )
        )
        self.counters.add_chat(resp.tokens_in, resp.tokens_out)
        return resp.text

    def ask(self, template: str, **fields: str) -> str:
        system, user = render(template, **fields)
        return self.ask_raw(system, user)
