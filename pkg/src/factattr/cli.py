"""Command-line interface.

Exit codes: 0 success, 1 configuration error, 2 fatal provider error,
3 input error.
"""

from __future__ import annotations

import json
import logging
import random
import sys
from pathlib import Path

import click

from . import entropy as entropy_mod
from .chat import ChatSession
from .dataset_builder import TsvKgClient, build_dataset
from .decomposition import decompose, generate_answer
from .errors import (
    ConfigError,
    EmptyGeneration,
    FactAttrError,
    FixtureMiss,
    QuotaError,
    TransportError,
)
from .fixtures import load_fixture_suite
from .models import Question, RunCounters
from .pipeline import (
    build_providers,
    evaluate_run,
    load_config,
    record_for_result,
    run_batch,
    run_pipeline,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PROVIDER = 2
EXIT_INPUT = 3

_PROVIDER_FATAL = (TransportError, QuotaError, FixtureMiss)


def _common(fn):
    fn = click.option(
        "--config", "config_path", type=click.Path(path_type=Path), default=None,
        help="Key=value configuration file.",
    )(fn)
    fn = click.option(
        "--mock", "mock_dir", type=click.Path(path_type=Path), default=None,
        help="Fixture directory; replaces live providers with replays.",
    )(fn)
    fn = click.option("--seed", type=int, default=None, help="RNG seed.")(fn)
    return fn


def _load(config_path, mock_dir, seed, **overrides):
    try:
        return load_config(
            config_path,
            mock_dir=str(mock_dir) if mock_dir else None,
            seed=seed,
            **overrides,
        )
    except (ConfigError, ValueError, OSError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


def _providers(cfg):
    try:
        return build_providers(cfg)
    except FixtureMiss as exc:
        click.echo(f"fixture error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def main(verbose: bool) -> None:
    """Attributed question answering with atomic-fact verification."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.argument("question_text")
@click.option("--id", "question_id", default="q0", help="Question identifier.")
@_common
def answer(question_text, question_id, config_path, mock_dir, seed):
    """Generate a long-form answer for one question."""
    cfg = _load(config_path, mock_dir, seed)
    bundle = _providers(cfg)
    session = ChatSession(bundle.chat, RunCounters())
    try:
        x = generate_answer(Question(id=question_id, text=question_text), session)
    except EmptyGeneration as exc:
        click.echo(f"generation failed: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    except _PROVIDER_FATAL as exc:
        click.echo(f"provider error: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    click.echo(x.text)


@main.command(name="decompose")
@click.argument("answer_text")
@_common
def decompose_cmd(answer_text, config_path, mock_dir, seed):
    """Decompose an answer into clauses and atomic facts (JSON out)."""
    if not answer_text.strip():
        click.echo("input error: empty answer text", err=True)
        sys.exit(EXIT_INPUT)
    cfg = _load(config_path, mock_dir, seed)
    bundle = _providers(cfg)
    session = ChatSession(bundle.chat, RunCounters())
    from .models import LongFormAnswer

    try:
        d = decompose(LongFormAnswer(text=answer_text), session)
    except _PROVIDER_FATAL as exc:
        click.echo(f"provider error: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    click.echo(json.dumps(d.to_dict(), sort_keys=True, indent=2))


@main.command()
@click.argument("question_text")
@click.option("--id", "question_id", default="q0", help="Question identifier.")
@click.option("--no-cache", is_flag=True, help="Bypass the search cache.")
@_common
def run(question_text, question_id, no_cache, config_path, mock_dir, seed):
    """Run the full pipeline for one question; prints the run record."""
    cfg = _load(config_path, mock_dir, seed, no_cache=no_cache or None)
    bundle = _providers(cfg)
    try:
        result = run_pipeline(Question(id=question_id, text=question_text), bundle, cfg)
        record = record_for_result(result, bundle.nli)
    except (EmptyGeneration, *_PROVIDER_FATAL) as exc:
        click.echo(f"provider error: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    except FactAttrError as exc:
        click.echo(f"run failed: {exc}", err=True)
        sys.exit(EXIT_PROVIDER)
    click.echo(json.dumps(record, sort_keys=True))


@main.command(name="run-batch")
@click.argument("questions_file", type=click.Path(path_type=Path))
@click.argument("out_file", type=click.Path(path_type=Path))
@click.option("--no-cache", is_flag=True, help="Bypass the search cache.")
@click.option("--parallelism", type=int, default=None, help="Concurrent facts.")
@_common
def run_batch_cmd(questions_file, out_file, no_cache, parallelism,
                  config_path, mock_dir, seed):
    """Run every question in QUESTIONS_FILE (JSONL), writing run records."""
    if not questions_file.exists():
        click.echo(f"input error: {questions_file} not found", err=True)
        sys.exit(EXIT_INPUT)
    cfg = _load(config_path, mock_dir, seed,
                no_cache=no_cache or None, parallelism=parallelism)
    bundle = _providers(cfg)
    try:
        ok, failed = run_batch(questions_file, bundle, cfg, out_file)
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(f"{ok} succeeded, {failed} failed -> {out_file}")


@main.command()
@click.argument("run_file", type=click.Path(path_type=Path))
@click.argument("csv_file", type=click.Path(path_type=Path))
@click.option("--summary", "summary_path", type=click.Path(path_type=Path),
              default=None, help="Also write a usage-counters summary CSV.")
@click.option("--no-pres", is_flag=True,
              help="Report '-' instead of preservation scores.")
@_common
def evaluate(run_file, csv_file, summary_path, no_pres,
             config_path, mock_dir, seed):
    """Score the records in RUN_FILE and write per-sample metrics to CSV."""
    if not run_file.exists():
        click.echo(f"input error: {run_file} not found", err=True)
        sys.exit(EXIT_INPUT)
    cfg = _load(config_path, mock_dir, seed)
    bundle = _providers(cfg)
    rows, summary = evaluate_run(
        run_file, bundle.nli, csv_file,
        summary_path=summary_path, include_pres=not no_pres,
    )
    if not rows:
        click.echo("input error: no scorable records", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(f"{summary['samples']} samples -> {csv_file}")


@main.command(name="build-dataset")
@click.argument("out_dir", type=click.Path(path_type=Path))
@click.option("--entities", "entities_arg", default="",
              help="Comma-separated entity ids; default: all in the KG.")
@click.option("--split-ratio", type=float, default=0.8, show_default=True)
@_common
def build_dataset_cmd(out_dir, entities_arg, split_ratio,
                      config_path, mock_dir, seed):
    """Build an instruction-tuning dataset from knowledge-graph triples."""
    cfg = _load(config_path, mock_dir, seed)
    if not cfg.mock_dir:
        click.echo("config error: build-dataset requires --mock "
                   "(a fixture directory with kg.tsv)", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        suite = load_fixture_suite(cfg.mock_dir)
    except FixtureMiss as exc:
        click.echo(f"fixture error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    kg = TsvKgClient(suite.kg_path)
    ids = [e.strip() for e in entities_arg.split(",") if e.strip()] or kg.entities()
    if not ids:
        click.echo("input error: knowledge graph has no entities", err=True)
        sys.exit(EXIT_INPUT)
    session = ChatSession(suite.providers.chat, RunCounters())
    split = build_dataset(
        ids, kg, session, out_dir=out_dir,
        split_ratio=split_ratio, seed=cfg.seed,
    )
    click.echo(
        f"{len(split['train'])} train, {len(split['eval'])} eval -> {out_dir}"
    )


@main.command(name="entropy-check")
@click.argument("sets_file", type=click.Path(path_type=Path))
@_common
def entropy_check(sets_file, config_path, mock_dir, seed):
    """Compare support-set entropy bounds.

    SETS_FILE is JSON: {"atomic_facts": [...], "sub_questions": [...]}.
    """
    _load(config_path, mock_dir, seed)  # config validated even though unused
    if not sets_file.exists():
        click.echo(f"input error: {sets_file} not found", err=True)
        sys.exit(EXIT_INPUT)
    try:
        body = json.loads(sets_file.read_text("utf-8"))
        af = entropy_mod.SupportSet.of(
            body["atomic_facts"], entropy_mod.SupportKind.ATOMIC_FACTS
        )
        q = entropy_mod.SupportSet.of(
            body["sub_questions"], entropy_mod.SupportKind.SUB_QUESTIONS
        )
        check = entropy_mod.hypothesis_gap(af, q)
    except (json.JSONDecodeError, KeyError, ValueError, FactAttrError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(json.dumps(
        {
            "fact_bound": entropy_mod.support_entropy_bound(af),
            "question_bound": entropy_mod.support_entropy_bound(q),
            "gap": check.gap,
            "holds": check.holds,
            "premise_satisfied": check.premise_satisfied,
        },
        sort_keys=True,
    ))


if __name__ == "__main__":
    main()
