"""Entity-level scoring: whole questions, not tokens.

A predicted question counts only if it matches a gold question one-to-one
under the chosen criterion (exact indices, normalized text, or word IoU).
The report renders as a small comparison table; here the oracle tagger
(gold tags replayed) bounds the pipeline from above while the rule baseline
shows how far surface patterns get on enumerated exam sheets.
"""

from qx import (MatchCriterion, OracleTagger, RuleTagger, default_ruleset,
                evaluate, extract, render_table)
from qx.synthetic import multiquestion_corpus, oracle_table

corpus = multiquestion_corpus(20, seed=11)
gold = {e.id: list(e.spans) for e in corpus}
print(f"{len(corpus)} documents, {sum(len(s) for s in gold.values())} "
      f"gold questions")

oracle = OracleTagger(oracle_table(corpus))
rules = RuleTagger(default_ruleset())
oracle_pred = {e.id: extract(oracle, e.text, doc_id=e.id) for e in corpus}
rule_pred = {e.id: extract(rules, e.text, doc_id=e.id) for e in corpus}

for name, criterion in (("normalized text", MatchCriterion.exact_text()),
                        ("word IoU >= 0.5", MatchCriterion.iou(0.5))):
    print(f"\nmatch criterion: {name}")
    print(render_table([
        ("Rule Based Approach", evaluate(rule_pred, gold, criterion)),
        ("Oracle Tagger", evaluate(oracle_pred, gold, criterion)),
    ]))
