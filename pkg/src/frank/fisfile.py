"""Line-oriented text format for inference systems and ranking templates.

A config file is a sequence of sections::

    [variable NAME]     one per input variable
    universe LO HI
    set LABEL KIND P1 P2 ...
    [output NAME]       exactly one
    [system]            operator selections, optional
    [rules]             one rule per line, in the rule grammar

``KIND`` is one of ``trimf``, ``trapmf``, ``gaussmf``, ``sigmf``.  Blank
lines and ``#`` comments are ignored.  Unknown sections or keys fail with
the offending line number.

A template file uses the same format with input variables named exactly
``tf``, ``idf`` and ``overlap`` (which must share one prototype definition)
plus an optional ``[system]`` key ``overlap_weight_ratio``.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ConfigError
from .fis import (AGGREGATIONS, AND_METHODS, DEFAULT_RESOLUTION,
                  DEFUZZIFICATIONS, IMPLICATIONS, FisConfig,
                  LinguisticVariable)
from .membership import MembershipFunction
from .ranker import DEFAULT_OVERLAP_WEIGHT_RATIO, FisTemplate
from .rules import RuleAst, parse_rule, print_rule

_KIND_BY_KEYWORD = {
    "trimf": "triangular",
    "trapmf": "trapezoidal",
    "gaussmf": "gaussian",
    "sigmf": "sigmoid",
}
_KEYWORD_BY_KIND = {v: k for k, v in _KIND_BY_KEYWORD.items()}

_SYSTEM_CHOICES = {
    "and": AND_METHODS,
    "implication": IMPLICATIONS,
    "aggregation": AGGREGATIONS,
    "defuzzification": DEFUZZIFICATIONS,
}


class _VariableDraft:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.universe: tuple[float, float] | None = None
        self.sets: dict[str, MembershipFunction] = {}

    def build(self) -> LinguisticVariable:
        if self.universe is None:
            raise ConfigError(
                f"variable {self.name!r} has no universe", line=self.line
            )
        if not self.sets:
            raise ConfigError(
                f"variable {self.name!r} has no sets", line=self.line
            )
        return LinguisticVariable(self.name, self.universe, self.sets)


def _parse_floats(values: list[str], line: int) -> list[float]:
    try:
        return [float(v) for v in values]
    except ValueError as exc:
        raise ConfigError(str(exc), line=line)


def _parse_sections(text: str, allow_ratio: bool):
    inputs: list[_VariableDraft] = []
    output: _VariableDraft | None = None
    system: dict[str, object] = {}
    rules: list[RuleAst] = []
    current: _VariableDraft | None = None
    section: str | None = None

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError("unterminated section header", line=number)
            header = stripped[1:-1].split()
            if header and header[0] == "variable" and len(header) == 2:
                current = _VariableDraft(header[1], number)
                if any(v.name == header[1] for v in inputs):
                    raise ConfigError(
                        f"duplicate variable {header[1]!r}", line=number
                    )
                inputs.append(current)
                section = "variable"
            elif header and header[0] == "output" and len(header) == 2:
                if output is not None:
                    raise ConfigError("second [output] section", line=number)
                current = output = _VariableDraft(header[1], number)
                section = "variable"
            elif header == ["system"]:
                section = "system"
                current = None
            elif header == ["rules"]:
                section = "rules"
                current = None
            else:
                raise ConfigError(
                    f"unknown section {stripped!r}", line=number
                )
            continue

        if section == "rules":
            rules.append(parse_rule(raw, line=number))
            continue
        if section is None:
            raise ConfigError(
                f"content before any section: {stripped!r}", line=number
            )

        fields = stripped.split()
        key, values = fields[0], fields[1:]
        if section == "variable":
            assert current is not None
            if key == "universe":
                if len(values) != 2:
                    raise ConfigError("universe takes exactly 2 numbers",
                                      line=number)
                lo, hi = _parse_floats(values, number)
                current.universe = (lo, hi)
            elif key == "set":
                if len(values) < 2:
                    raise ConfigError("set takes a label, a kind, and "
                                      "parameters", line=number)
                label, keyword = values[0], values[1]
                kind = _KIND_BY_KEYWORD.get(keyword)
                if kind is None:
                    raise ConfigError(
                        f"unknown membership function {keyword!r}", line=number
                    )
                if label in current.sets:
                    raise ConfigError(
                        f"duplicate set {label!r} in variable "
                        f"{current.name!r}", line=number
                    )
                params = _parse_floats(values[2:], number)
                try:
                    current.sets[label] = MembershipFunction(kind, tuple(params))
                except ConfigError as exc:
                    raise ConfigError(str(exc), line=number)
            else:
                raise ConfigError(f"unknown key {key!r}", line=number)
        elif section == "system":
            if key in _SYSTEM_CHOICES:
                if len(values) != 1 or values[0] not in _SYSTEM_CHOICES[key]:
                    raise ConfigError(
                        f"{key} must be one of "
                        f"{', '.join(_SYSTEM_CHOICES[key])}", line=number
                    )
                system[key] = values[0]
            elif key == "resolution":
                if len(values) != 1 or not values[0].isdigit():
                    raise ConfigError("resolution takes a positive integer",
                                      line=number)
                system[key] = int(values[0])
            elif key == "overlap_weight_ratio" and allow_ratio:
                if len(values) != 1:
                    raise ConfigError("overlap_weight_ratio takes one number",
                                      line=number)
                (ratio,) = _parse_floats(values, number)
                if ratio <= 0:
                    raise ConfigError("overlap_weight_ratio must be positive",
                                      line=number)
                system[key] = ratio
            else:
                raise ConfigError(f"unknown key {key!r}", line=number)

    if output is None:
        raise ConfigError("missing [output] section")
    return inputs, output, system, rules


def parse_fis_config(text: str) -> FisConfig:
    """Parse a full inference-system definition from config text."""
    inputs, output, system, rules = _parse_sections(text, allow_ratio=False)
    return FisConfig(
        inputs=tuple(draft.build() for draft in inputs),
        output=output.build(),
        rules=tuple(rules),
        and_method=system.get("and", "prod"),
        implication=system.get("implication", "prod"),
        aggregation=system.get("aggregation", "sum"),
        defuzzification=system.get("defuzzification", "centroid"),
        resolution=system.get("resolution", DEFAULT_RESOLUTION),
    )


def parse_template(text: str) -> FisTemplate:
    """Parse a ranking template from config text.

    The placeholder variables ``tf``, ``idf`` and ``overlap`` must all be
    declared and must share one prototype (same universe, same sets):
    every instantiated input variable is a copy of that prototype.
    """
    inputs, output, system, rules = _parse_sections(text, allow_ratio=True)
    by_name = {draft.name: draft for draft in inputs}
    expected = {"tf", "idf", "overlap"}
    if set(by_name) != expected:
        raise ConfigError(
            "template requires input variables named exactly tf, idf, "
            f"overlap; got {sorted(by_name) or 'none'}"
        )
    variables = {name: draft.build() for name, draft in by_name.items()}
    prototype = variables["tf"]
    for name in ("idf", "overlap"):
        other = variables[name]
        if (other.universe != prototype.universe
                or other.sets != prototype.sets):
            raise ConfigError(
                f"placeholder variable {name!r} differs from 'tf'; all "
                "placeholders must share one prototype definition"
            )
    per_term: list[RuleAst] = []
    global_rules: list[RuleAst] = []
    for rule in rules:
        mentioned = {clause.variable for clause in rule.antecedent}
        if mentioned <= {"tf", "idf"}:
            per_term.append(rule)
        elif mentioned == {"overlap"}:
            global_rules.append(rule)
        else:
            raise ConfigError(
                f"template rule mixes placeholders {sorted(mentioned)}; "
                "a rule may use tf/idf or overlap, not both"
            )
    return FisTemplate(
        per_term_rules=tuple(per_term),
        global_rules=tuple(global_rules),
        variable_prototype=prototype,
        output=output.build(),
        and_method=system.get("and", "prod"),
        implication=system.get("implication", "prod"),
        aggregation=system.get("aggregation", "sum"),
        defuzzification=system.get("defuzzification", "centroid"),
        resolution=system.get("resolution", DEFAULT_RESOLUTION),
        overlap_weight_ratio=system.get(
            "overlap_weight_ratio", DEFAULT_OVERLAP_WEIGHT_RATIO
        ),
    )


def load_fis_config(path: str | Path) -> FisConfig:
    return parse_fis_config(Path(path).read_text(encoding="utf-8"))


def load_template(path: str | Path) -> FisTemplate:
    return parse_template(Path(path).read_text(encoding="utf-8"))


def _format_variable(header: str, variable: LinguisticVariable) -> list[str]:
    lo, hi = variable.universe
    lines = [f"[{header} {variable.name}]", f"universe {lo!r} {hi!r}"]
    for label, mf in variable.sets.items():
        params = " ".join(repr(p) for p in mf.params)
        lines.append(f"set {label} {_KEYWORD_BY_KIND[mf.kind]} {params}")
    return lines


def format_fis_config(config: FisConfig) -> str:
    """Canonical config text; ``parse_fis_config`` round-trips it."""
    lines: list[str] = []
    for variable in config.inputs:
        lines.extend(_format_variable("variable", variable))
    lines.extend(_format_variable("output", config.output))
    lines += [
        "[system]",
        f"and {config.and_method}",
        f"implication {config.implication}",
        f"aggregation {config.aggregation}",
        f"defuzzification {config.defuzzification}",
        f"resolution {config.resolution}",
        "[rules]",
    ]
    lines.extend(print_rule(rule) for rule in config.rules)
    return "\n".join(lines) + "\n"


def format_template(template: FisTemplate) -> str:
    """Canonical template text; ``parse_template`` round-trips it."""
    lines: list[str] = []
    for name in ("tf", "idf", "overlap"):
        lines.extend(
            _format_variable("variable", template.variable_prototype.renamed(name))
        )
    lines.extend(_format_variable("output", template.output))
    lines += [
        "[system]",
        f"and {template.and_method}",
        f"implication {template.implication}",
        f"aggregation {template.aggregation}",
        f"defuzzification {template.defuzzification}",
        f"resolution {template.resolution}",
        f"overlap_weight_ratio {template.overlap_weight_ratio!r}",
        "[rules]",
    ]
    lines.extend(print_rule(rule) for rule in template.per_term_rules)
    lines.extend(print_rule(rule) for rule in template.global_rules)
    return "\n".join(lines) + "\n"
