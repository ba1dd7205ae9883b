"""Command-line front door: index, search, eval, diff, fis-eval, mf-data.

Every subcommand is deterministic: the same files and flags produce
byte-identical output.  Errors print one greppable ``frank: error:`` line
to stderr; usage errors exit 1, data/format errors exit 2.

The environment variable ``FRANK_RESOLUTION`` overrides the inference
resolution of loaded configs and templates, for experimentation.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

import numpy as np

from .errors import FrankError, QueryError, RunFormatError, UsageError
from .evaluation import (diff_runs, evaluate_run, format_diff, format_report,
                         format_run, load_qrels, load_run, report_jsonl,
                         run_from_ranked)
from .fis import evaluate, fuzzify, rule_strengths
from .fisfile import load_fis_config, load_template
from .index import InvertedIndex, build_index, read_corpus_jsonl
from .ranker import DEFAULT_CUTOFF, score_baseline, score_fis
from .rules import print_rule


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors (argparse defaults to 2)."""

    def error(self, message):
        print(f"frank: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _resolution_override() -> int | None:
    raw = os.environ.get("FRANK_RESOLUTION")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"FRANK_RESOLUTION must be an integer, got {raw!r}")
    if value < 2:
        raise UsageError(f"FRANK_RESOLUTION must be >= 2, got {value}")
    return value


def cmd_index(args) -> int:
    index = build_index(read_corpus_jsonl(args.corpus))
    index.save(args.out)
    print(f"docs={index.total_docs} terms={len(index.terms)} "
          f"tokens={index.total_tokens}")
    return 0


def _read_queries_tsv(path: str) -> list[tuple[str, str]]:
    queries = []
    for number, raw in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        topic, sep, text = raw.partition("\t")
        if not sep or not topic.strip() or not text.strip():
            raise RunFormatError(
                "expected 'topic<TAB>query text'", line=number
            )
        queries.append((topic.strip(), text.strip()))
    if not queries:
        raise RunFormatError("no queries in batch file")
    return queries


def cmd_search(args) -> int:
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    if (args.query is None) == (args.queries is None):
        raise UsageError("exactly one of --query or --queries is required")
    index = InvertedIndex.load(args.index)
    if args.ranker == "fis":
        if args.template is None:
            raise UsageError("--template is required with --ranker fis")
        template = load_template(args.template)
        if (resolution := _resolution_override()) is not None:
            template = dataclasses.replace(template, resolution=resolution)

        def rank(topic, text):
            return score_fis(index, template, text, k=args.k, query_id=topic)
    else:
        def rank(topic, text):
            return score_baseline(index, text, k=args.k, query_id=topic)

    if args.query is not None:
        queries = [(args.topic, args.query)]
    else:
        queries = _read_queries_tsv(args.queries)
    run = run_from_ranked(
        [rank(topic, text) for topic, text in queries], args.tag
    )
    sys.stdout.write(format_run(run))
    return 0


def cmd_eval(args) -> int:
    run = load_run(args.run)
    report = evaluate_run(run, load_qrels(args.qrels))
    sys.stdout.write(format_report(report, run.tag))
    if args.jsonl:
        Path(args.jsonl).write_text(
            report_jsonl(report, run.tag), encoding="utf-8"
        )
    return 0


def cmd_diff(args) -> int:
    run_a = load_run(args.run_a)
    run_b = load_run(args.run_b)
    qrels = load_qrels(args.qrels)
    report_a = evaluate_run(run_a, qrels)
    report_b = evaluate_run(run_b, qrels)
    diff = diff_runs(report_a, report_b)
    sys.stdout.write(format_diff(report_a, diff, run_a.tag, run_b.tag))
    return 0


def _parse_assignments(pairs: list[str]) -> dict[str, float]:
    values: dict[str, float] = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep or not name:
            raise UsageError(f"--in takes name=value, got {pair!r}")
        try:
            values[name] = float(raw)
        except ValueError:
            raise UsageError(f"--in {name}: not a number: {raw!r}")
    return values


def cmd_fis_eval(args) -> int:
    config = load_fis_config(args.config)
    if (resolution := _resolution_override()) is not None:
        config = dataclasses.replace(config, resolution=resolution)
    inputs = _parse_assignments(args.inputs or [])
    names = {variable.name for variable in config.inputs}
    unknown = sorted(inputs.keys() - names)
    if unknown:
        raise UsageError(f"unknown variable name(s): {', '.join(unknown)}")
    missing = sorted(names - inputs.keys())
    if missing:
        raise UsageError(f"missing input value(s): {', '.join(missing)}")
    if args.verbose:
        for number, (rule, strength) in enumerate(
                zip(config.rules, rule_strengths(config, inputs)), start=1):
            print(f"rule {number} strength {strength:.6f}  {print_rule(rule)}")
    print(f"crisp {evaluate(config, inputs):.6f}")
    return 0


def cmd_mf_data(args) -> int:
    if args.samples < 2:
        raise UsageError(f"--samples must be >= 2, got {args.samples}")
    config = load_fis_config(args.config)
    variables = {v.name: v for v in config.inputs}
    variables[config.output.name] = config.output
    variable = variables.get(args.var)
    if variable is None:
        raise UsageError(
            f"unknown variable {args.var!r}; have "
            f"{', '.join(sorted(variables))}"
        )
    lo, hi = variable.universe
    grid = np.linspace(lo, hi, args.samples)
    labels = list(variable.sets)
    print("x," + ",".join(labels))
    columns = [variable.sets[label].sample(grid) for label in labels]
    for i, x in enumerate(grid):
        row = ",".join(f"{column[i]:.6f}" for column in columns)
        print(f"{x:.6f},{row}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frank",
                     description="Fuzzy-rule document ranking toolkit.")
    commands = parser.add_subparsers(dest="command", required=True,
                                     parser_class=_Parser)

    p = commands.add_parser("index", help="build an index from a JSONL corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_index)

    p = commands.add_parser("search", help="rank documents for queries")
    p.add_argument("--index", required=True)
    p.add_argument("--ranker", required=True, choices=("fis", "baseline"))
    p.add_argument("--template", help="template config (required for fis)")
    p.add_argument("--query", help="single query text")
    p.add_argument("--queries", help="batch TSV: topic<TAB>query text")
    p.add_argument("--topic", default="1", help="topic id for --query")
    p.add_argument("--k", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--tag", default="frank")
    p.set_defaults(func=cmd_search)

    p = commands.add_parser("eval", help="score a run file against qrels")
    p.add_argument("--run", required=True)
    p.add_argument("--qrels", required=True)
    p.add_argument("--jsonl", help="also write a JSON-lines report here")
    p.set_defaults(func=cmd_eval)

    p = commands.add_parser("diff", help="compare two runs against qrels")
    p.add_argument("--run-a", required=True)
    p.add_argument("--run-b", required=True)
    p.add_argument("--qrels", required=True)
    p.set_defaults(func=cmd_diff)

    p = commands.add_parser("fis-eval",
                            help="evaluate a config on crisp inputs")
    p.add_argument("--config", required=True)
    p.add_argument("--in", dest="inputs", action="append", metavar="NAME=VALUE")
    p.add_argument("--verbose", action="store_true",
                   help="also print per-rule firing strengths")
    p.set_defaults(func=cmd_fis_eval)

    p = commands.add_parser("mf-data",
                            help="emit membership curves as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--var", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.set_defaults(func=cmd_mf_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"frank: error: {exc}", file=sys.stderr)
        return 1
    except FrankError as exc:
        print(f"frank: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"frank: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
