"""Fuzzy-rule document ranking toolkit.

A retrieval library whose ranking function is a Mamdani fuzzy inference
system built from human-readable rules, alongside a conventional tf-idf
vector scorer and a TREC-style evaluation harness.
"""

from .errors import (ConfigError, CorpusError, EvalError, FrankError,
                     IndexFormatError, QueryError, RunFormatError, UsageError)
from .evaluation import (MetricsDiff, MetricsReport, Qrels, RunFile,
                         TopicMetrics, average_precision, diff_runs,
                         evaluate_run, format_diff, format_report, format_run,
                         load_qrels, load_run, parse_qrels, parse_run,
                         precision_at_10, report_jsonl, run_from_ranked)
from .fis import (AggregateSet, FisConfig, LinguisticVariable, aggregate,
                  default_variable, defuzzify, evaluate, fire_rule, fuzzify,
                  imply, rule_strengths)
from .fisfile import (format_fis_config, format_template, load_fis_config,
                      load_template, parse_fis_config, parse_template)
from .index import (DocEntry, Document, InvertedIndex, Posting,
                    QueryFeatures, build_index, extract_features, idf_norm,
                    idf_raw, read_corpus_jsonl, tf_norm, tokenize)
from .membership import MembershipFunction, eval_mf
from .ranker import (BaselineParams, FisTemplate, RankedEntry, RankedList,
                     default_template, instantiate_fis, score_baseline,
                     score_fis)
from .rules import (ParseError, RuleAst, RuleClause, RuleToken, parse_rule,
                    parse_rules_block, print_rule)

__version__ = "0.1.0"
