"""Versioned prompt templates and rendering helpers.

Each asset holds a system prompt and a user-prompt template separated by a
``---`` line. User templates use ``str.format`` placeholders; literal braces
are escaped as ``{{``/``}}``.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load_template(name: str) -> tuple[str, str]:
    text = (
        resources.files("factattr.prompts").joinpath(f"{name}.txt").read_text("utf-8")
    )
    system, _, user = text.partition("\n---\n")
    if not user:
        raise ValueError(f"template {name!r} is missing the system/user separator")
    return system.strip(), user.strip()


def render(name: str, **fields: str) -> tuple[str, str]:
    """Return (system_prompt, user_prompt) for the named template."""
    system, user = load_template(name)
    return system, user.format(**fields)
