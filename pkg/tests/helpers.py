"""Shared helpers for building scripted chat providers in tests."""

from factattr.chat import ChatSession
from factattr.models import RunCounters
from factattr.prompting import render
from factattr.providers.mocks import FixtureChatProvider, prompt_key


def scripted_chat(entries):
    """Build a fixture chat provider from (template, fields, response)
    triples; raw prompts can be scripted with template=None and
    fields=(system, user)."""
    table = {}
    for template, fields, response in entries:
        if template is None:
            system, user = fields
        else:
            system, user = render(template, **fields)
        table[prompt_key(system, user)] = response
    return FixtureChatProvider(table)


def scripted_session(entries, counters=None):
    return ChatSession(scripted_chat(entries), counters or RunCounters())
