"""The rule-based baseline: start patterns open spans, end patterns or the
next start close them.

Rules are cheap and fast but brittle: they anchor on surface cues like
"Q.No. 5" or a sentence-initial "What", so enumerator-free questions are
missed and option lines can fool them. That brittleness is the motivation
for the model-based tagger.
"""

from qx import default_ruleset, rule_extract
from qx.rules import RuleMode, RuleSet

text = ("Section-II. Each question carries 1 mark. "
        "Q.No. 5 2.928g of a substance occupies 2.44cm3. "
        "Express its density keeping significant figures in view. "
        "Q.No. 6 The density of a substance is 12 g/cm3 in CGS system. "
        "Find its value in SI units.")

ruleset = default_ruleset()
print(f"default ruleset: {len(ruleset.start_patterns)} start patterns, "
      f"{len(ruleset.end_patterns)} end pattern(s), mode {ruleset.mode.value}")
for span in rule_extract(text, ruleset):
    print(f"  words [{span.start_word}, {span.end_word}]: {span.text}")

# The other mode: close each span at the first end-pattern match instead of
# at the next start.
qmark = RuleSet.compile(
    start=[r"(?:^|(?<=[.?!]))\s*(?:What|Why|How|Find)\b"],
    end=[r"\?"],
    mode=RuleMode.START_TO_END_MATCH)
print("\nstart_to_end_match on an interrogative:")
for span in rule_extract("What is force? Note: irrelevant text.", qmark):
    print(f"  {span.text!r}")
