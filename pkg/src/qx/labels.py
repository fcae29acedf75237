"""Conversions between word tags, subtoken tags, and question spans.

Projection (word -> subtoken) follows the training-side rule: every
continuation subtoken of a tagged word becomes I-Question, while the first
subtoken keeps the parent tag, so a B-word projects to B I I ... and the
span count survives the round trip. Collapse (subtoken -> word) reads back
the first subtoken's tag. Decoding turns a word-level sequence into spans,
optionally repairing ill-formed model output.
"""

from __future__ import annotations

import enum
from typing import Sequence

from .core import (BioTag, QuestionSpan, TagLevel, TagSequence,
                   span_from_words, span_list_violations)


class RepairPolicy(enum.Enum):
    """How to treat an I tag with no preceding B or I.

    ``STRICT`` rejects the sequence (gold data should be clean);
    ``IOB2_REPAIR`` promotes the orphan I to open a new span (model output
    must never crash the pipeline).
    """

    STRICT = "strict"
    IOB2_REPAIR = "iob2_repair"

    @classmethod
    def parse(cls, raw: str) -> "RepairPolicy":
        aliases = {"strict": cls.STRICT, "repair": cls.IOB2_REPAIR,
                   "iob2_repair": cls.IOB2_REPAIR}
        try:
            return aliases[raw]
        except KeyError:
            raise ValueError(f"unknown repair policy: {raw!r} "
                             f"(expected strict or repair)") from None


class MalformedTags(ValueError):
    """An ill-formed tag sequence rejected under the strict policy."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def project_tags(word_tags: TagSequence, alignment) -> TagSequence:
    """Spread word-level tags onto subtokens.

    First subtoken takes the parent tag; continuation subtokens take I when
    the parent is B or I, O when the parent is O.
    """
    _require(word_tags.level is TagLevel.WORD,
             f"project_tags needs word-level tags, got {word_tags.level.value}")
    _require(len(word_tags) == alignment.n_words,
             f"tag/alignment length mismatch: {len(word_tags)} word tags for "
             f"{alignment.n_words} aligned words")
    out: list[BioTag] = []
    for word_index, parent in enumerate(word_tags):
        width = len(alignment.subtokens_of(word_index))
        out.append(parent)
        continuation = BioTag.O if parent is BioTag.O else BioTag.I
        out.extend([continuation] * (width - 1))
    return TagSequence(tuple(out), TagLevel.SUBTOKEN)


def collapse_tags(subtoken_tags: TagSequence, alignment) -> TagSequence:
    """Reduce subtoken-level tags to word level: each word takes the tag of
    its first subtoken."""
    _require(subtoken_tags.level is TagLevel.SUBTOKEN,
             f"collapse_tags needs subtoken-level tags, got "
             f"{subtoken_tags.level.value}")
    _require(len(subtoken_tags) == alignment.n_subtokens,
             f"tag/alignment length mismatch: {len(subtoken_tags)} subtoken "
             f"tags for {alignment.n_subtokens} subtokens")
    return TagSequence(tuple(subtoken_tags[start] for start, _ in alignment.ranges),
                       TagLevel.WORD)


def decode_spans(tags: TagSequence, words: Sequence[str],
                 policy: RepairPolicy = RepairPolicy.IOB2_REPAIR,
                 ) -> list[QuestionSpan]:
    """Decode a word-level tag sequence into question spans.

    One span per maximal B(I)* run. Under ``STRICT``, an orphan I raises
    :class:`MalformedTags` naming its index; under ``IOB2_REPAIR`` it opens
    a new span.
    """
    _require(tags.level is TagLevel.WORD,
             f"decode_spans needs word-level tags, got {tags.level.value}")
    _require(len(tags) == len(words),
             f"tag/word length mismatch: {len(tags)} tags for {len(words)} words")
    spans: list[QuestionSpan] = []
    start: int | None = None
    prev = BioTag.O

    def close(end: int) -> None:
        nonlocal start
        if start is not None:
            spans.append(span_from_words(words, start, end))
            start = None

    for i, tag in enumerate(tags):
        if tag is BioTag.B:
            close(i - 1)
            start = i
        elif tag is BioTag.I:
            if prev is BioTag.O:
                if policy is RepairPolicy.STRICT:
                    raise MalformedTags(
                        i, f"I-Question at index {i} has no preceding "
                           f"B-Question or I-Question")
                close(i - 1)
                start = i
        else:
            close(i - 1)
        prev = tag
    close(len(tags) - 1)
    return spans


def encode_tags(spans: Sequence[QuestionSpan], n_words: int) -> TagSequence:
    """Encode spans as word-level tags: B at starts, I inside, O elsewhere."""
    problems = span_list_violations(spans)
    if problems:
        raise ValueError("cannot encode spans: " + "; ".join(problems))
    tags = [BioTag.O] * n_words
    for span in spans:
        if span.end_word >= n_words:
            raise ValueError(
                f"span ({span.start_word}, {span.end_word}) out of range "
                f"for {n_words} words")
        tags[span.start_word] = BioTag.B
        for i in range(span.start_word + 1, span.end_word + 1):
            tags[i] = BioTag.I
    return TagSequence(tuple(tags), TagLevel.WORD)
