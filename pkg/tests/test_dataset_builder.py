import json

import httpx
import pytest

from factattr.dataset_builder import (
    FilterRules,
    HttpKgClient,
    InstructionSample,
    SampleRejected,
    Triple,
    TsvKgClient,
    build_dataset,
    facts_to_sample,
    fetch_one_hop,
    filter_triples,
    sample_violations,
    triples_to_facts,
)
from factattr.errors import TransportError, UnknownEntity

from .helpers import scripted_session


def triple(prop, obj, subject="Q1", pid=""):
    return Triple(subject=subject, property=prop, object=obj, property_id=pid)


def test_triple_requires_labels():
    with pytest.raises(ValueError):
        Triple(subject="", property="p", object="o")


@pytest.mark.parametrize(
    "t",
    [
        triple("ISSN", "0028-0836"),
        triple("image", "portrait.jpeg"),
        triple("official website", "https://example.org"),
        triple("postal code", "ab12cd3"),
        triple("country", "https://example.org/flag.png"),
    ],
)
def test_filter_denies_identifier_media_and_code_triples(t):
    assert filter_triples([t]) == []


@pytest.mark.parametrize(
    "t",
    [
        triple("country", "Freedonia"),
        triple("population", "around two million"),
        triple("capital", "Fredville"),
    ],
)
def test_filter_keeps_statement_triples(t):
    assert filter_triples([t]) == [t]


def test_filter_is_idempotent():
    ts = [triple("country", "Freedonia"), triple("ISSN", "0028-0836")]
    once = filter_triples(ts)
    assert filter_triples(once) == once


def test_filter_checks_property_id():
    rules = FilterRules(deny_properties=("p18",))
    t = triple("depiction", "something", pid="P18")
    assert filter_triples([t], rules) == []


def test_tsv_kg_client(tmp_path):
    path = tmp_path / "kg.tsv"
    path.write_text(
        "Q1\tcountry\tFreedonia\tP17\n"
        "Q1\tcapital\tFredville\tP36\n"
        "Q2\tinstance of\tcity\tP31\n",
        "utf-8",
    )
    kg = TsvKgClient(path)
    assert kg.entities() == ["Q1", "Q2"]
    assert [t.object for t in fetch_one_hop("Q1", kg)] == ["Freedonia", "Fredville"]
    with pytest.raises(UnknownEntity):
        kg.one_hop("Q404")


def test_http_kg_client_wire_shape():
    seen = []

    def handler(request):
        seen.append(dict(httpx.QueryParams(request.url.query)))
        return httpx.Response(
            200,
            json={
                "triples": [
                    {"subject": "Q1", "property": "country", "object": "Freedonia",
                     "property_id": "P17"}
                ]
            },
        )

    kg = HttpKgClient("https://kg.example/w/api.php",
                      transport=httpx.MockTransport(handler))
    triples = kg.one_hop("Q1")
    assert seen[0]["action"] == "wbsearchentities"
    assert seen[0]["search"] == "Q1"
    assert triples[0].property_id == "P17"

    empty = HttpKgClient(
        "https://kg.example",
        transport=httpx.MockTransport(lambda r: httpx.Response(200, json={})),
    )
    with pytest.raises(UnknownEntity):
        empty.one_hop("Q404")


def test_triples_to_facts_uses_chat_with_subject_fallback():
    t = triple("country", "Freedonia")
    session = scripted_session(
        [
            ("triple_fact",
             {"subject": "Q1", "property": "country", "object": "Freedonia"},
             "The subject is located in Freedonia."),  # drops the subject
        ]
    )
    facts = triples_to_facts([t], session)
    assert facts == ["Q1 country Freedonia."]  # deterministic fallback


def _sample_reply(facts):
    clauses = []
    for i in range(0, len(facts), 2):
        group = facts[i : i + 2]
        clauses.append({" ".join(group): group})
    return json.dumps({"output": clauses})


def test_facts_to_sample_roundtrip_and_schema():
    facts = ["Q1 is a city.", "Q1 lies in Freedonia.", "Q1 has a harbor."]
    session = scripted_session(
        [("facts_text", {"facts": "\n".join(f"- {f}" for f in facts)},
          _sample_reply(facts))]
    )
    sample = facts_to_sample(facts, session)
    assert isinstance(sample, InstructionSample)
    assert sample_violations(sample, facts) == []
    payload = sample.to_dict()
    assert list(payload["alignment"].keys()) == ["output"]
    assert sum(len(v) for entry in payload["alignment"]["output"]
               for v in entry.values()) == 3


def test_facts_to_sample_rejects_untraceable_facts():
    facts = ["Q1 is a city."]
    reply = json.dumps({"output": [{"Q9 invented something.":
                                    ["Q9 invented something."]}]})
    session = scripted_session(
        [("facts_text", {"facts": "- Q1 is a city."}, reply)]
    )
    with pytest.raises(SampleRejected):
        facts_to_sample(facts, session)


def _dataset_kg(tmp_path):
    path = tmp_path / "kg.tsv"
    lines = []
    for n in (1, 2, 3, 4, 5):
        lines.append(f"Q{n}\tcountry\tFreedonia {n}\tP17")
        lines.append(f"Q{n}\tcapital\tFredville {n}\tP36")
        lines.append(f"Q{n}\tknown for\tlong winters {n}\tP101")
        lines.append(f"Q{n}\tISSN\t0028-083{n}\tP236")
    path.write_text("\n".join(lines) + "\n", "utf-8")
    return TsvKgClient(path)


class EchoChat:
    """Deterministic rule-based chat standing in for transcripts."""

    def chat(self, req):
        import re

        from factattr.providers.base import ChatResponse

        user = req.user_prompt
        m = re.search(r"Triple: (.*?) \| (.*?) \| (.*)$", user, re.DOTALL)
        if m:
            text = f"{m.group(1)} has {m.group(2)} {m.group(3).strip()}."
        else:
            facts = [l[2:].strip() for l in user.splitlines() if l.startswith("- ")]
            text = _sample_reply(facts)
        return ChatResponse(text=text, tokens_in=1, tokens_out=1)


def test_build_dataset_split_determinism_and_filtering(tmp_path):
    from factattr.chat import ChatSession
    from factattr.models import RunCounters

    kg = _dataset_kg(tmp_path)
    out1, out2 = tmp_path / "d1", tmp_path / "d2"
    for out in (out1, out2):
        session = ChatSession(EchoChat(), RunCounters())
        split = build_dataset(kg.entities(), kg, session, out_dir=out, seed=7)
        assert len(split["train"]) + len(split["eval"]) == 5
        assert len(split["train"]) == 4  # round(0.8 * 5)
    assert (out1 / "train.jsonl").read_bytes() == (out2 / "train.jsonl").read_bytes()
    assert (out1 / "eval.jsonl").read_bytes() == (out2 / "eval.jsonl").read_bytes()

    for line in (out1 / "train.jsonl").read_text().splitlines():
        record = json.loads(line)
        assert all(
            t["property"] != "ISSN" for t in record["source_triples"]
        )  # denied triples never reach a sample


def test_build_dataset_skips_failing_entities(tmp_path, caplog):
    kg = _dataset_kg(tmp_path)

    class FlakyKg:
        def one_hop(self, entity_id):
            if entity_id == "Q3":
                raise UnknownEntity(entity_id)
            return kg.one_hop(entity_id)

    from factattr.chat import ChatSession
    from factattr.models import RunCounters

    session = ChatSession(EchoChat(), RunCounters())
    split = build_dataset([f"Q{n}" for n in (1, 2, 3)], FlakyKg(), session, seed=0)
    assert len(split["train"]) + len(split["eval"]) == 2
