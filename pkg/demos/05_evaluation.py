"""Scoring runs against relevance judgments: AP, P@10, %no, and diffs.

Run:  python3 demos/05_evaluation.py
"""

from frank import (Qrels, RunFile, diff_runs, evaluate_run, format_diff,
                   format_report, format_run, parse_qrels)

# Judgments: topic, ignored column, document, graded relevance (>=1 counts).
qrels = parse_qrels("""
t1 0 doc-a 1
t1 0 doc-b 0
t1 0 doc-c 2
t2 0 doc-d 1
""")

# Two competing systems' rankings for the same topics.
system_a = RunFile("system-a", {
    "t1": [("doc-a", 1, 0.9), ("doc-b", 2, 0.7), ("doc-c", 3, 0.3)],
    "t2": [("doc-x", 1, 0.8), ("doc-d", 2, 0.6)],
})
system_b = RunFile("system-b", {
    "t1": [("doc-a", 1, 0.8), ("doc-c", 2, 0.6), ("doc-b", 3, 0.2)],
    "t2": [("doc-d", 1, 0.9)],
})

print("run file exchange format (6-decimal scores, sorted topics):")
print(format_run(system_a))

report_a = evaluate_run(system_a, qrels)
report_b = evaluate_run(system_b, qrels)

print("per-topic metrics for system-a:")
for topic, metrics in report_a.per_topic.items():
    flag = "no relevant in top 10" if metrics.no_rel_top10 else ""
    print(f"  {topic}: AP {metrics.ap:.4f}  P@10 {metrics.p10:.2f}  {flag}")
print()

print(format_report(report_a, "system-a"))
print(format_diff(report_a, diff_runs(report_a, report_b),
                  "system-a", "system-b"))
print("(second row is the signed delta of system-b over system-a)")
