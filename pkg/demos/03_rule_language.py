"""The rule language: parsing, printing, and the errors it reports.

Run:  python3 demos/03_rule_language.py
"""

from frank import ParseError, parse_rule, parse_rules_block, print_rule

# Rules read the way you would say them.  The arrow may be "->" or the
# typographic "→"; "not" negates a set reference; "weight" is optional.
sources = [
    "if (overlap is high) -> (relevance is high)",
    "if (tf is high) and (idf is high) → (relevance is high)",
    "if (tf is not high) and (idf is not high) -> (relevance is not high)",
    "if (tf is high) -> (relevance is high) weight 0.25",
]

print("parsed and printed back in canonical form:")
for source in sources:
    ast = parse_rule(source)
    conjuncts = len(ast.antecedent)
    print(f"  {print_rule(ast)}")
    print(f"      ({conjuncts} conjunct{'s' if conjuncts > 1 else ''}, "
          f"weight {ast.weight})")
print()

# A whole block at once; comments and blank lines are skipped.
block = """
# reward matching terms
if (tf is high) and (idf is high) -> (relevance is high)

# penalize missing ones
if (tf is not high) and (idf is not high) -> (relevance is not high)
"""
rules = parse_rules_block(block)
print(f"block parse: {len(rules)} rules")
print()

# Errors carry a position and what was expected there.
broken = "if tf is high -> (relevance is high)"
try:
    parse_rule(broken)
except ParseError as error:
    line, column = error.position
    print(f"error for {broken!r}:")
    print(f"  {error}")
    print(f"  source:  {broken}")
    print("           " + " " * (column - 1) + "^ column " + str(column))
