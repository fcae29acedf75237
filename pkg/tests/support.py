"""Shared test helpers: independent oracles and random-instance generators.

The matchers and generators here deliberately avoid the library's own code
paths wherever they act as oracles, so a bug cannot hide on both sides of a
comparison.
"""

from __future__ import annotations

import random

from qx.core import QuestionSpan
from qx.evaluation import MatchCriterion, spans_match


def optimal_match_count(pred: list[QuestionSpan], gold: list[QuestionSpan],
                        criterion: MatchCriterion) -> int:
    """Maximum one-to-one matching size, by exhaustive backtracking."""

    def best_from(gi: int, used: frozenset[int]) -> int:
        if gi == len(gold):
            return 0
        best = best_from(gi + 1, used)  # leave this gold unmatched
        for pi, p in enumerate(pred):
            if pi not in used and spans_match(p, gold[gi], criterion):
                best = max(best, 1 + best_from(gi + 1, used | {pi}))
        return best

    return best_from(0, frozenset())


_TEXT_POOL = (
    "what is force?",
    "find the value in si units.",
    "state the law of conservation of energy.",
    "calculate the instantaneous velocity.",
    "why does the body remain at rest?",
)


def random_span_list(rng: random.Random, max_spans: int = 4,
                     text_pool: tuple[str, ...] = _TEXT_POOL,
                     ) -> list[QuestionSpan]:
    """A sorted, non-overlapping span list with texts from a small pool
    (small on purpose, so text-equality matching sees duplicates)."""
    spans = []
    position = rng.randint(0, 3)
    for _ in range(rng.randint(0, max_spans)):
        length = rng.randint(1, 4)
        spans.append(QuestionSpan(position, position + length - 1,
                                  rng.choice(text_pool)))
        position += length + rng.randint(1, 3)
    return spans


def random_word_tags(rng: random.Random, n: int) -> list[str]:
    """An arbitrary (possibly ill-formed) word-level tag string list."""
    return [rng.choice(("B-Question", "I-Question", "O")) for _ in range(n)]


def random_alignment_ranges(rng: random.Random, n_words: int,
                            max_width: int = 3) -> list[tuple[int, int]]:
    ranges = []
    start = 0
    for _ in range(n_words):
        width = rng.randint(1, max_width)
        ranges.append((start, start + width))
        start += width
    return ranges
