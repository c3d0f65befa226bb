"""End-to-end orchestration: run one question through decomposition,
per-fact verification, aggregation and backtracking; batch runs with
persistent records; and run-record evaluation."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from . import metrics as metrics_mod
from .aggregate import aggregate_evidence, backtrack
from .chat import ChatSession
from .decomposition import decompose, generate_answer
from .errors import ConfigError, EmptyGeneration, FactAttrError
from .fixtures import load_fixture_suite
from .models import (
    AnswerDecomposition,
    AtomicFact,
    AttributionResult,
    MolecularClause,
    Question,
    RunCounters,
    TrailTerminal,
    VerificationTrail,
    answer_from_dict,
    decomposition_from_dict,
    evidence_set_from_dict,
    question_from_dict,
)
from .providers.base import ProviderBundle
from .providers.live import (
    GoogleSearchProvider,
    HttpChatProvider,
    HttpEmbeddingProvider,
    HttpNliProvider,
)
from .retrieval import Retriever, SearchCache
from .verify import DEFAULT_MAX_ITERATIONS, Verifier

log = logging.getLogger(__name__)


@dataclass
class Config:
    chat_endpoint: str = ""
    chat_model: str = ""
    search_endpoint: str = "https://customsearch.googleapis.com/customsearch/v1"
    nli_endpoint: str = ""
    embed_endpoint: str = ""
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    search_k: int = 5
    parallelism: int = 4
    cache_path: str = ""
    mock_dir: str = ""
    no_cache: bool = False
    seed: int = 0
    edit_stage: bool = True
    rate_per_second: float = 0.0


_INT_FIELDS = {"max_iterations", "search_k", "parallelism", "seed"}
_FLOAT_FIELDS = {"rate_per_second"}
_BOOL_FIELDS = {"no_cache", "edit_stage"}


def load_config(path: Optional[Path] = None, **overrides) -> Config:
    """Read the key=value config document; unknown keys are errors."""
    known = {f.name for f in fields(Config)}
    values: dict = {}
    if path is not None:
        for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in _INT_FIELDS:
                values[key] = int(value)
            elif key in _FLOAT_FIELDS:
                values[key] = float(value)
            elif key in _BOOL_FIELDS:
                values[key] = value.lower() in ("1", "true", "yes")
            else:
                values[key] = value
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Config(**values)


def build_providers(cfg: Config) -> ProviderBundle:
    """Fixture-replay providers when mock_dir is set, else live HTTP."""
    if cfg.mock_dir:
        return load_fixture_suite(cfg.mock_dir).providers
    return ProviderBundle(
        chat=HttpChatProvider(
            endpoint=cfg.chat_endpoint,
            model=cfg.chat_model,
            rate_per_second=cfg.rate_per_second,
        ),
        search=GoogleSearchProvider(
            endpoint=cfg.search_endpoint, rate_per_second=cfg.rate_per_second
        ),
        embed=HttpEmbeddingProvider(endpoint=cfg.embed_endpoint or None),
        nli=HttpNliProvider(endpoint=cfg.nli_endpoint or None),
    )


def _rebuild_with_facts(
    d: AnswerDecomposition, final_facts: dict[tuple[int, int], AtomicFact]
) -> AnswerDecomposition:
    clauses = []
    for clause in d.clauses:
        facts = tuple(
            final_facts.get((f.clause_index, f.fact_index), f)
            for f in clause.atomic_facts
        )
        clauses.append(replace(clause, atomic_facts=facts))
    return AnswerDecomposition(answer=d.answer, clauses=tuple(clauses))


def run_pipeline(
    question: Question,
    bundle: ProviderBundle,
    cfg: Config,
    cache: Optional[SearchCache] = None,
) -> AttributionResult:
    """Generate, decompose, verify/edit every atomic fact, aggregate the
    evidence and backtrack the revised answer.

    Per-fact provider failures degrade that fact to unattributed; only
    answer-generation failure aborts the question.
    """
    counters = RunCounters()
    session = ChatSession(bundle.chat, counters)
    started = time.monotonic()

    x = generate_answer(question, session)
    d = decompose(x, session)

    if cache is None and cfg.cache_path and not cfg.no_cache:
        cache = SearchCache(Path(cfg.cache_path), deterministic=bool(cfg.mock_dir))
    retriever = Retriever(
        bundle.search, bundle.embed, counters, k=cfg.search_k, cache=cache
    )
    verifier = Verifier(session)

    def process(fact: AtomicFact):
        try:
            return verifier.verify_edit_loop(
                fact, retriever, max_iterations=cfg.max_iterations
            )
        except FactAttrError as exc:
            log.warning(
                "fact (%d,%d) degraded to unattributed: %s",
                fact.clause_index, fact.fact_index, exc,
            )
            trail = VerificationTrail(
                clause_index=fact.clause_index,
                fact_index=fact.fact_index,
                steps=(),
                terminal=TrailTerminal.EXHAUSTED_ITERATIONS,
            )
            return fact, None, trail

    facts = d.facts()
    if cfg.parallelism > 1 and len(facts) > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            outcomes = list(pool.map(process, facts))
    else:
        outcomes = [process(f) for f in facts]
    outcomes.sort(key=lambda o: (o[0].clause_index, o[0].fact_index))

    final_facts = {(f.clause_index, f.fact_index): f for f, _, _ in outcomes}
    trails = tuple(t for _, _, t in outcomes)
    d_final = _rebuild_with_facts(d, final_facts)

    report = tuple(aggregate_evidence(list(trails), d_final))
    revised, revised_clauses = backtrack(d_final, session)

    counters.wall_seconds = 0.0 if cfg.mock_dir else time.monotonic() - started
    return AttributionResult(
        question=question,
        original=x,
        revised=revised,
        decomposition=d_final,
        revised_clauses=revised_clauses,
        report=report,
        trails=trails,
        counters=counters,
    )


def report_to_dict(result: AttributionResult) -> dict:
    """Attribution-report JSON: per clause, original and revised text plus
    the supporting evidence."""
    by_index = {e.clause_index: e for e in result.report}
    clauses = []
    for clause, revised_text in zip(
        result.decomposition.clauses, result.revised_clauses
    ):
        ev = by_index.get(clause.index)
        clauses.append(
            {
                "index": clause.index,
                "text": clause.text,
                "revised_text": revised_text,
                "evidence": [
                    {"snippet": s, "url": u, "supported": ok}
                    for s, u, ok in zip(ev.snippets, ev.sources, ev.supported)
                ]
                if ev
                else [],
            }
        )
    return {"clauses": clauses}


def record_for_result(result: AttributionResult, scorer) -> dict:
    rep = metrics_mod.evaluate(result, scorer)
    record = result.to_dict()
    record["attribution_report"] = report_to_dict(result)
    record["metrics"] = rep.to_dict()
    return record


def read_questions(path: Path) -> list[Question]:
    questions = []
    for line in Path(path).read_text("utf-8").splitlines():
        if line.strip():
            questions.append(question_from_dict(json.loads(line)))
    return questions


def run_batch(
    input_path: Path,
    bundle: ProviderBundle,
    cfg: Config,
    out_path: Path,
) -> tuple[int, int]:
    """One JSONL record per question, in input order; per-question errors
    become error records and the batch continues. Returns (ok, failed)."""
    questions = read_questions(input_path)
    cache = None
    if cfg.cache_path and not cfg.no_cache:
        cache = SearchCache(Path(cfg.cache_path), deterministic=bool(cfg.mock_dir))
    ok = failed = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        for q in questions:
            try:
                result = run_pipeline(q, bundle, cfg, cache=cache)
                record = record_for_result(result, bundle.nli)
                ok += 1
            except (FactAttrError, EmptyGeneration) as exc:
                record = {"question": q.to_dict(), "error": str(exc)}
                failed += 1
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    return ok, failed


def evaluate_run(
    run_path: Path,
    scorer,
    csv_path: Path,
    summary_path: Optional[Path] = None,
    include_pres: bool = True,
) -> tuple[list, dict]:
    """Recompute per-sample metrics from a run-record file and emit the CSV
    plus a usage-counters summary. Malformed records are skipped with a
    warning."""
    rows = []
    counter_totals = {"retrievals": 0.0, "interactions": 0.0, "tokens": 0.0,
                      "latency": 0.0}
    n = 0
    for lineno, line in enumerate(Path(run_path).read_text("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            if "error" in record:
                log.warning("line %d: error record skipped (%s)",
                            lineno, record["error"])
                continue
            result = AttributionResult(
                question=question_from_dict(record["question"]),
                original=answer_from_dict(record["original"]),
                revised=answer_from_dict(record["revised"]),
                decomposition=decomposition_from_dict(record["decomposition"]),
                revised_clauses=tuple(record["revised_clauses"]),
                report=tuple(
                    evidence_set_from_dict(e) for e in record["report"]
                ),
                trails=(),
                counters=RunCounters(),
            )
            rep = metrics_mod.evaluate(result, scorer, include_pres=include_pres)
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            log.warning("line %d: malformed record skipped (%s)", lineno, exc)
            continue
        rows.append((result.question.id, rep))
        c = record["counters"]
        counter_totals["retrievals"] += c["retrieval_calls"]
        counter_totals["interactions"] += c["llm_interactions"]
        counter_totals["tokens"] += c["tokens_consumed"]
        counter_totals["latency"] += c.get("wall_seconds", 0.0)
        n += 1
    metrics_mod.write_metrics_csv(rows, csv_path)
    summary = {
        key: (total / n if n else 0.0) for key, total in counter_totals.items()
    }
    summary["samples"] = n
    if summary_path is not None:
        with open(summary_path, "w", encoding="utf-8") as fh:
            fh.write("latency,interactions,tokens,retrievals,samples\n")
            fh.write(
                f"{summary['latency']:.6f},{summary['interactions']:.4f},"
                f"{summary['tokens']:.4f},{summary['retrievals']:.4f},{n}\n"
            )
    return rows, summary
