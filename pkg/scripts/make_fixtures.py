"""Regenerate the committed test fixtures.

Runs the real pipeline against a recording chat provider whose replies come
from a rule-based responder, then writes the captured transcripts. Keys are
derived from the rendered prompts, so fixture files stay in sync with the
prompt templates: edit a template, rerun this script.

Usage: python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from factattr.chat import ChatSession
from factattr.dataset_builder import TsvKgClient, build_dataset
from factattr.models import Question, RunCounters
from factattr.pipeline import Config, run_pipeline
from factattr.providers.base import (
    ChatProvider,
    ChatRequest,
    ChatResponse,
    ProviderBundle,
    SearchResult,
)
from factattr.providers.mocks import (
    FixtureNli,
    MockSearchProvider,
    TrigramHashEmbedder,
    prompt_key,
)

FIXTURES = ROOT / "tests" / "fixtures"


class RecordingChat(ChatProvider):
    """Answers via a responder function and records key -> response."""

    def __init__(self, responder):
        self.responder = responder
        self.recorded: dict[str, str] = {}

    def chat(self, req: ChatRequest) -> ChatResponse:
        text = self.responder(req.system_prompt, req.user_prompt)
        self.recorded[prompt_key(req.system_prompt, req.user_prompt)] = text
        return ChatResponse(
            text=text,
            tokens_in=len(req.system_prompt.split()) + len(req.user_prompt.split()),
            tokens_out=len(text.split()),
        )


def write_jsonl(path: Path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


# ---------------------------------------------------------------- fig2 suite

QUESTION = Question(id="fig2", text="Who has the most Super Bowl rings?")

X = (
    "The player with the most Super Bowl rings is Tom Brady. "
    "Tom Brady is an American football quarterback who has won six "
    "Super Bowl championships."
)

CLAUSE_1 = "The player with the most Super Bowl rings is Tom Brady."
CLAUSE_2 = (
    "Tom Brady is an American football quarterback who has won six "
    "Super Bowl championships."
)
AF_11 = "Tom Brady has the most Super Bowl rings."
AF_21 = "Tom Brady is an American football quarterback."
AF_22 = "Tom Brady has won six Super Bowl championships."
AF_22_FIXED = "Tom Brady has won seven Super Bowl championships."

EXPANSION = (
    "Thomas Edward Patrick Brady Jr. American football quarterback",
    "Tom Brady NFL quarterback career",
)

E_RINGS = (
    "Tom Brady has the most Super Bowl rings of any player in NFL history.",
    "https://example.org/rings",
)
E_LEAGUE = (
    "The Super Bowl is the annual championship game of the National "
    "Football League.",
    "https://example.org/league",
)
E_CAREER = (
    "Tom Brady is an American football quarterback widely regarded as the "
    "greatest of all time.",
    "https://example.org/career",
)
E_SEVEN = (
    "Tom Brady has won seven Super Bowl championships, the most of any "
    "NFL player.",
    "https://example.org/seven",
)

SEARCH_TABLE = {
    AF_11: [E_RINGS],
    AF_21: [E_LEAGUE],
    EXPANSION[0]: [E_CAREER],
    AF_22: [E_SEVEN],
}

DECOMPOSITION_JSON = json.dumps(
    {"output": [{CLAUSE_1: [AF_11]}, {CLAUSE_2: [AF_21, AF_22]}]},
    ensure_ascii=False,
)

# verdict per (fact text, evidence snippet) pair seen by the verifier
VERDICTS = {
    (AF_11, E_RINGS[0]): "5. Therefore: 1",
    (AF_21, E_LEAGUE[0]): "5. Therefore: 3",
    (AF_21, E_CAREER[0]): "5. Therefore: 1",
    (AF_22, E_SEVEN[0]): "5. Therefore: 2",
    (AF_22_FIXED, E_SEVEN[0]): "5. Therefore: 1",
}

BACKTRACKED = (
    "Sentences: The player with the most Super Bowl rings is Tom Brady. "
    "Tom Brady is an American football quarterback who has won seven "
    "Super Bowl championships."
)

_VERIFY_RE = re.compile(
    r"1\. You said: (?P<fact>.*?)\s*3\. I found this article: (?P<ev>.*?)"
    r"\s*5\. Therefore:",
    re.DOTALL,
)
_EDIT_RE = re.compile(
    r"1\. You said: (?P<fact>.*?)\s*2\. I found these evidences:", re.DOTALL
)


def fig2_responder(system: str, user: str) -> str:
    if user.startswith("Question:"):
        return X
    if user.startswith("Passage:"):
        return DECOMPOSITION_JSON
    if '"reference answer"' in user:
        return BACKTRACKED
    if user.startswith("Fact:"):
        fact = user.partition("Fact:")[2].strip()
        assert fact == AF_21, f"unexpected expansion request: {fact!r}"
        return "\n".join(EXPANSION)
    m = _EDIT_RE.search(user)
    if m and "evidences" in user:
        assert m.group("fact").strip() == AF_22
        return f"My fix: {AF_22_FIXED}"
    m = _VERIFY_RE.search(user)
    if m:
        pair = (m.group("fact").strip(), m.group("ev").strip())
        if pair not in VERDICTS:
            raise KeyError(f"no scripted verdict for {pair!r}")
        return VERDICTS[pair]
    raise KeyError(f"unhandled prompt: {user[:80]!r}")


FIG2_KG = [
    ("Q448", "sport", "American football", "P641"),
    ("Q448", "position played", "quarterback", "P413"),
    ("Q448", "award received", "Super Bowl MVP", "P166"),
]


def build_fig2() -> None:
    out = FIXTURES / "fig2"
    out.mkdir(parents=True, exist_ok=True)
    chat = RecordingChat(fig2_responder)
    search = {
        q: [SearchResult(title=url.rsplit("/", 1)[-1], snippet=s, url=url)
            for s, url in rs]
        for q, rs in SEARCH_TABLE.items()
    }
    bundle = ProviderBundle(
        chat=chat,
        search=MockSearchProvider(search, strict=True),
        embed=TrigramHashEmbedder(dim=64),
        nli=FixtureNli(),
    )
    cfg = Config(mock_dir=str(out), parallelism=1)
    result = run_pipeline(QUESTION, bundle, cfg)
    assert result.revised.text != X, "expected an edited revision"
    assert len(result.report) == 2

    write_jsonl(
        out / "chat.jsonl",
        [{"key": k, "response": v} for k, v in sorted(chat.recorded.items())],
    )
    write_jsonl(
        out / "search.jsonl",
        [
            {
                "query": q,
                "results": [
                    {"title": url.rsplit("/", 1)[-1], "snippet": s, "url": url}
                    for s, url in rs
                ],
            }
            for q, rs in SEARCH_TABLE.items()
        ],
    )
    write_jsonl(out / "embed.jsonl", [{"dim": 64}])
    (out / "nli.jsonl").write_text("", "utf-8")
    write_jsonl(out / "questions.jsonl", [{"id": QUESTION.id, "text": QUESTION.text}])
    with open(out / "kg.tsv", "w", encoding="utf-8") as fh:
        for row in FIG2_KG:
            fh.write("\t".join(row) + "\n")
    print(f"fig2: {len(chat.recorded)} chat transcripts -> {out}")


# ---------------------------------------------------------------- kg20 suite

PROPERTIES = [
    ("instance of", "P31", "a research topic"),
    ("country", "P17", "Freedonia"),
    ("capital", "P36", "Fredville"),
    ("population", "P1082", "around two million"),
    ("founded in", "P571", "the twelfth century"),
    ("known for", "P101", "its long winters"),
]
DENIED = [
    ("ISSN", "P236", "0028-0836"),
    ("image", "P18", "portrait.jpeg"),
    ("postal code", "P281", "ab12cd3"),
]


def kg20_rows() -> list[tuple[str, str, str, str]]:
    """(subject, property, object, property_id) rows for 20 entities."""
    rows = []
    for n in range(1, 21):
        entity = f"Q{1000 + n}"
        for prop, pid, obj in PROPERTIES:
            rows.append((entity, prop, f"{obj} ({n})", pid))
        # every third entity also carries identifier/media noise
        if n % 3 == 0:
            for prop, pid, obj in DENIED:
                rows.append((entity, prop, obj, pid))
    return rows


_TRIPLE_RE = re.compile(r"Triple: (?P<s>.*?) \| (?P<p>.*?) \| (?P<o>.*)$", re.DOTALL)


def kg20_responder(system: str, user: str) -> str:
    m = _TRIPLE_RE.search(user)
    if m:
        return f"{m.group('s')} has {m.group('p')} {m.group('o').strip()}."
    if user.startswith("Facts:"):
        facts = [
            line[2:].strip()
            for line in user.splitlines()
            if line.startswith("- ")
        ]
        clauses = []
        for i in range(0, len(facts), 2):
            group = facts[i : i + 2]
            clauses.append({" ".join(group): group})
        return json.dumps({"output": clauses}, ensure_ascii=False)
    raise KeyError(f"unhandled prompt: {user[:80]!r}")


def build_kg20() -> None:
    out = FIXTURES / "kg20"
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "kg.tsv", "w", encoding="utf-8") as fh:
        for row in kg20_rows():
            fh.write("\t".join(row) + "\n")

    chat = RecordingChat(kg20_responder)
    kg = TsvKgClient(out / "kg.tsv")
    session = ChatSession(chat, RunCounters())
    split = build_dataset(kg.entities(), kg, session, seed=0)
    total = len(split["train"]) + len(split["eval"])
    assert total == 20, f"expected 20 samples, got {total}"

    write_jsonl(
        out / "chat.jsonl",
        [{"key": k, "response": v} for k, v in sorted(chat.recorded.items())],
    )
    (out / "search.jsonl").write_text("", "utf-8")
    write_jsonl(out / "embed.jsonl", [{"dim": 64}])
    (out / "nli.jsonl").write_text("", "utf-8")
    (out / "questions.jsonl").write_text("", "utf-8")
    print(f"kg20: {len(chat.recorded)} chat transcripts -> {out}")


# -------------------------------------------------------------- batch20 suite

def _city_answer(n: int) -> str:
    return (
        f"Zephyria {n} is a coastal city in Freedonia. "
        "The city has a famous lighthouse and an old harbor."
    )


def _city_decomposition(n: int) -> tuple[list[tuple[str, list[str]]], str]:
    clauses = [
        (
            f"Zephyria {n} is a coastal city in Freedonia.",
            [
                f"Zephyria {n} is a coastal city.",
                f"Zephyria {n} is located in Freedonia.",
            ],
        ),
        (
            "The city has a famous lighthouse and an old harbor.",
            [
                f"Zephyria {n} has a famous lighthouse.",
                f"Zephyria {n} has an old harbor.",
            ],
        ),
    ]
    payload = json.dumps(
        {"output": [{text: facts} for text, facts in clauses]}, ensure_ascii=False
    )
    return clauses, payload


_CITY_RE = re.compile(r"Zephyria (\d+)")


def batch20_responder(system: str, user: str) -> str:
    if user.startswith("Question:"):
        return _city_answer(int(_CITY_RE.search(user).group(1)))
    if user.startswith("Passage:"):
        return _city_decomposition(int(_CITY_RE.search(user).group(1)))[1]
    if "I found this article" in user:
        return "5. Therefore: 1"
    raise KeyError(f"unhandled prompt: {user[:80]!r}")


def build_batch20() -> None:
    out = FIXTURES / "batch20"
    out.mkdir(parents=True, exist_ok=True)

    questions = [
        Question(id=f"q{n:02d}", text=f"What is notable about Zephyria {n}?")
        for n in range(1, 21)
    ]
    search_records = []
    search_table: dict[str, list[SearchResult]] = {}
    for n in range(1, 21):
        clauses, _ = _city_decomposition(n)
        for _, facts in clauses:
            for j, fact in enumerate(facts, start=1):
                snippet = f"{fact} This is noted in the regional gazetteer."
                url = f"https://example.org/zephyria{n}/{j}"
                search_table[fact] = [
                    SearchResult(title=f"zephyria{n}-{j}", snippet=snippet, url=url)
                ]
                search_records.append(
                    {
                        "query": fact,
                        "results": [
                            {"title": f"zephyria{n}-{j}", "snippet": snippet,
                             "url": url}
                        ],
                    }
                )

    chat = RecordingChat(batch20_responder)
    bundle = ProviderBundle(
        chat=chat,
        search=MockSearchProvider(search_table, strict=True),
        embed=TrigramHashEmbedder(dim=64),
        nli=FixtureNli(),
    )
    cfg = Config(mock_dir=str(out), parallelism=1)
    for q in questions:
        result = run_pipeline(q, bundle, cfg)
        assert result.revised.text == result.original.text

    write_jsonl(
        out / "chat.jsonl",
        [{"key": k, "response": v} for k, v in sorted(chat.recorded.items())],
    )
    write_jsonl(out / "search.jsonl", search_records)
    write_jsonl(out / "embed.jsonl", [{"dim": 64}])
    (out / "nli.jsonl").write_text("", "utf-8")
    write_jsonl(
        out / "questions.jsonl", [{"id": q.id, "text": q.text} for q in questions]
    )
    with open(out / "kg.tsv", "w", encoding="utf-8") as fh:
        fh.write("Q1\tinstance of\tcity\tP31\n")
    print(f"batch20: {len(chat.recorded)} chat transcripts -> {out}")


if __name__ == "__main__":
    build_fig2()
    build_kg20()
    build_batch20()
