"""Retrieval evaluation: qrels and run files, AP / P@10 / %no, reports.

File formats follow the TREC exchange conventions.  Qrels lines are
``topic_id 0 doc_id relevance`` (the second field is ignored, ``#``
comments allowed).  Run lines are ``topic_id Q0 doc_id rank score tag``
with scores printed to exactly 6 decimal places and lines ordered by
(topic ascending, rank ascending).

Relevance is binarized at judgment >= 1.  Topics present in the qrels but
with no relevant documents are excluded from averages, with a warning;
topics present in a run but absent from the qrels are an error.  Topics in
the qrels but absent from a run score 0 and stay in the averages.

Percentages in the plain-text report are rounded to 2 decimals with the
round-half-even behavior of Python float formatting.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

from .errors import EvalError, RunFormatError
from .ranker import RankedList


@dataclass(frozen=True)
class Qrels:
    """Relevance judgments keyed by (topic_id, doc_id)."""

    judgments: dict[tuple[str, str], int]

    def topics(self) -> list[str]:
        return sorted({topic for topic, _ in self.judgments})

    def relevant_docs(self, topic: str) -> set[str]:
        return {
            doc for (t, doc), judgment in self.judgments.items()
            if t == topic and judgment >= 1
        }


@dataclass(frozen=True)
class RunFile:
    """One system's ranked output: topic -> [(doc_id, rank, score)]."""

    tag: str
    topics: dict[str, list[tuple[str, int, float]]]

    def ranked_doc_ids(self, topic: str) -> list[str]:
        return [doc_id for doc_id, _, _ in self.topics.get(topic, [])]


@dataclass(frozen=True)
class TopicMetrics:
    ap: float
    p10: float
    no_rel_top10: bool


@dataclass(frozen=True)
class MetricsReport:
    per_topic: dict[str, TopicMetrics]
    mean_ap: float
    mean_p10: float
    pct_no: float

    @property
    def topic_count(self) -> int:
        return len(self.per_topic)


@dataclass(frozen=True)
class MetricsDiff:
    per_topic: dict[str, tuple[float, float]]
    delta_map: float
    delta_p10: float
    delta_pct_no: float


def parse_qrels(text: str) -> Qrels:
    judgments: dict[tuple[str, str], int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise RunFormatError(
                f"expected 'topic 0 doc relevance', got {len(fields)} fields",
                line=number,
            )
        topic, _, doc_id, relevance_text = fields
        try:
            relevance = int(relevance_text)
        except ValueError:
            raise RunFormatError(
                f"relevance must be an integer, got {relevance_text!r}",
                line=number,
            )
        if relevance < 0:
            raise RunFormatError(
                f"relevance must be >= 0, got {relevance}", line=number
            )
        if (topic, doc_id) in judgments:
            raise RunFormatError(
                f"duplicate judgment for topic {topic} doc {doc_id}",
                line=number,
            )
        judgments[(topic, doc_id)] = relevance
    return Qrels(judgments)


def load_qrels(path: str | Path) -> Qrels:
    return parse_qrels(Path(path).read_text(encoding="utf-8"))


def parse_run(text: str) -> RunFile:
    tag: str | None = None
    topics: dict[str, list[tuple[str, int, float]]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 6:
            raise RunFormatError(
                f"expected 'topic Q0 doc rank score tag', got "
                f"{len(fields)} fields", line=number,
            )
        topic, _, doc_id, rank_text, score_text, line_tag = fields
        try:
            rank = int(rank_text)
            score = float(score_text)
        except ValueError:
            raise RunFormatError(f"bad rank or score in {line!r}", line=number)
        if tag is None:
            tag = line_tag
        elif tag != line_tag:
            raise RunFormatError(
                f"conflicting run tags {tag!r} and {line_tag!r}", line=number
            )
        entries = topics.setdefault(topic, [])
        if rank != len(entries) + 1:
            raise RunFormatError(
                f"topic {topic}: rank {rank} out of order (expected "
                f"{len(entries) + 1})", line=number,
            )
        if entries and score > entries[-1][2]:
            raise RunFormatError(
                f"topic {topic}: score increases at rank {rank}", line=number
            )
        if any(doc_id == existing for existing, _, _ in entries):
            raise RunFormatError(
                f"topic {topic}: duplicate doc {doc_id}", line=number
            )
        entries.append((doc_id, rank, score))
    if tag is None:
        raise RunFormatError("empty run file")
    return RunFile(tag, topics)


def load_run(path: str | Path) -> RunFile:
    return parse_run(Path(path).read_text(encoding="utf-8"))


def format_run(run: RunFile) -> str:
    """Canonical run-file bytes: topics ascending, ranks ascending."""
    lines = []
    for topic in sorted(run.topics):
        for doc_id, rank, score in run.topics[topic]:
            lines.append(f"{topic} Q0 {doc_id} {rank} {score:.6f} {run.tag}")
    return "\n".join(lines) + "\n"


def run_from_ranked(ranked_lists: list[RankedList], tag: str) -> RunFile:
    topics: dict[str, list[tuple[str, int, float]]] = {}
    for ranked in ranked_lists:
        if ranked.query_id in topics:
            raise EvalError(f"duplicate topic {ranked.query_id} in run")
        topics[ranked.query_id] = [
            (entry.doc_id, entry.rank, entry.score) for entry in ranked.entries
        ]
    return RunFile(tag, topics)


def average_precision(ranked_doc_ids: list[str], relevant: set[str]) -> float:
    """Mean of precision at each relevant retrieved rank, over all relevant.

    The denominator counts every relevant document in the judgments,
    retrieved or not; relevance is binary.
    """
    if not relevant:
        raise EvalError("average precision needs at least one relevant doc")
    hits = 0
    precision_sum = 0.0
    for rank, doc_id in enumerate(ranked_doc_ids, start=1):
        if doc_id in relevant:
            hits += 1
            precision_sum += hits / rank
    return precision_sum / len(relevant)


def precision_at_10(ranked_doc_ids: list[str], relevant: set[str]) -> float:
    """Relevant fraction of the first 10 retrieved; the denominator stays
    10 even for shorter lists."""
    hits = sum(1 for doc_id in ranked_doc_ids[:10] if doc_id in relevant)
    return hits / 10.0


def evaluate_run(run: RunFile, qrels: Qrels) -> MetricsReport:
    """Score a run against qrels, per topic and averaged."""
    qrels_topics = set(qrels.topics())
    unknown = sorted(set(run.topics) - qrels_topics)
    if unknown:
        raise EvalError(
            f"run topic(s) absent from qrels: {', '.join(unknown)}"
        )
    per_topic: dict[str, TopicMetrics] = {}
    skipped = []
    for topic in sorted(qrels_topics):
        relevant = qrels.relevant_docs(topic)
        if not relevant:
            skipped.append(topic)
            continue
        ranked = run.ranked_doc_ids(topic)
        per_topic[topic] = TopicMetrics(
            ap=average_precision(ranked, relevant),
            p10=precision_at_10(ranked, relevant),
            no_rel_top10=not any(doc in relevant for doc in ranked[:10]),
        )
    if skipped:
        warnings.warn(
            f"topic(s) with no relevant documents excluded from averages: "
            f"{', '.join(skipped)}",
            stacklevel=2,
        )
    if not per_topic:
        raise EvalError("no topics with relevant documents to evaluate")
    count = len(per_topic)
    return MetricsReport(
        per_topic=per_topic,
        mean_ap=sum(m.ap for m in per_topic.values()) / count,
        mean_p10=sum(m.p10 for m in per_topic.values()) / count,
        pct_no=sum(m.no_rel_top10 for m in per_topic.values()) / count,
    )


def diff_runs(report_a: MetricsReport, report_b: MetricsReport) -> MetricsDiff:
    """Per-topic and aggregate metric deltas (b minus a)."""
    if set(report_a.per_topic) != set(report_b.per_topic):
        only_a = sorted(set(report_a.per_topic) - set(report_b.per_topic))
        only_b = sorted(set(report_b.per_topic) - set(report_a.per_topic))
        raise EvalError(
            f"topic sets differ (only in a: {only_a}, only in b: {only_b})"
        )
    per_topic = {
        topic: (
            report_b.per_topic[topic].ap - report_a.per_topic[topic].ap,
            report_b.per_topic[topic].p10 - report_a.per_topic[topic].p10,
        )
        for topic in sorted(report_a.per_topic)
    }
    return MetricsDiff(
        per_topic=per_topic,
        delta_map=report_b.mean_ap - report_a.mean_ap,
        delta_p10=report_b.mean_p10 - report_a.mean_p10,
        delta_pct_no=report_b.pct_no - report_a.pct_no,
    )


_HEADER = f"{'Tag':<16} {'Topic Set':<10} {'MAP':>8} {'P10':>8} {'%no':>8}"


def format_report(report: MetricsReport, tag: str,
                  topic_set: str = "all") -> str:
    """Aligned plain-text table with one aggregate row."""
    row = (
        f"{tag:<16} {topic_set:<10} {report.mean_ap:>8.4f} "
        f"{report.mean_p10:>8.4f} {report.pct_no * 100:>7.2f}%"
    )
    return f"{_HEADER}\n{row}\n"


def format_diff(report_a: MetricsReport, diff: MetricsDiff, tag_a: str,
                tag_b: str, topic_set: str = "all") -> str:
    """Baseline row in absolute terms, second row as signed deltas."""
    base = (
        f"{tag_a:<16} {topic_set:<10} {report_a.mean_ap:>8.4f} "
        f"{report_a.mean_p10:>8.4f} {report_a.pct_no * 100:>7.2f}%"
    )
    delta = (
        f"{tag_b:<16} {topic_set:<10} {diff.delta_map:>+8.4f} "
        f"{diff.delta_p10:>+8.4f} {diff.delta_pct_no * 100:>+7.2f}%"
    )
    return f"{_HEADER}\n{base}\n{delta}\n"


def report_jsonl(report: MetricsReport, tag: str,
                 topic_set: str = "all") -> str:
    """Machine-readable report: one line per topic plus an aggregate line."""
    lines = []
    for topic in sorted(report.per_topic):
        metrics = report.per_topic[topic]
        lines.append(json.dumps({
            "topic": topic,
            "ap": metrics.ap,
            "p10": metrics.p10,
            "no_rel_top10": metrics.no_rel_top10,
        }))
    lines.append(json.dumps({
        "tag": tag,
        "topic_set": topic_set,
        "topics": report.topic_count,
        "map": report.mean_ap,
        "p10": report.mean_p10,
        "pct_no": report.pct_no,
    }))
    return "\n".join(lines) + "\n"
