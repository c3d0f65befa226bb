import pytest

from factattr.errors import FixtureMiss
from factattr.fixtures import REQUIRED_FILES, load_fixture_suite
from factattr.providers.base import ChatRequest


def test_required_manifest():
    assert REQUIRED_FILES == (
        "chat.jsonl",
        "search.jsonl",
        "embed.jsonl",
        "nli.jsonl",
        "kg.tsv",
        "questions.jsonl",
    )


def test_suite_loads_all_files_present(fig2_dir):
    for name in REQUIRED_FILES:
        assert (fig2_dir / name).exists()
    suite = load_fixture_suite(fig2_dir)
    assert suite.questions and suite.questions[0].id == "fig2"
    assert suite.kg_path.exists()


def test_missing_file_raises_fixture_miss(tmp_path):
    (tmp_path / "chat.jsonl").write_text("", "utf-8")
    with pytest.raises(FixtureMiss) as err:
        load_fixture_suite(tmp_path)
    assert "search.jsonl" in str(err.value)


def test_unknown_prompt_key_raises_fixture_miss(fig2_dir):
    suite = load_fixture_suite(fig2_dir)
    with pytest.raises(FixtureMiss) as err:
        suite.providers.chat.chat(
            ChatRequest(
                system_prompt="never recorded",
                user_prompt="never recorded",
                max_output_tokens=8,
                temperature=0.0,
            )
        )
    assert "key" in str(err.value)


def test_unknown_search_query_raises_fixture_miss(fig2_dir):
    suite = load_fixture_suite(fig2_dir)
    with pytest.raises(FixtureMiss):
        suite.providers.search.search("query nobody recorded", 5)


def test_replay_twice_identical(fig2_dir):
    suite = load_fixture_suite(fig2_dir)
    r1 = suite.providers.search.search(
        "Tom Brady has the most Super Bowl rings.", 5
    )
    r2 = suite.providers.search.search(
        "Tom Brady has the most Super Bowl rings.", 5
    )
    assert r1 == r2
    v1 = suite.providers.nli.nli("alpha beta", "alpha")
    v2 = suite.providers.nli.nli("alpha beta", "alpha")
    assert v1 == v2
