"""Shared domain types for question extraction.

Everything here is an immutable value: tokens, BIO tags, tag sequences,
question spans, and annotated examples. Construction enforces the hard
per-value invariants (offset ordering, closed tag set); list-level
consistency of an example is checked by :func:`validate_example`, which
reports violations as data rather than raising, because malformed examples
are legitimate inputs to a validator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence


class BioTag(enum.Enum):
    """The three-valued BIO label set for question tagging."""

    B = "B-Question"
    I = "I-Question"
    O = "O"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, raw: str) -> "BioTag":
        """Parse a serialized tag, rejecting anything outside the three forms."""
        for tag in cls:
            if tag.value == raw:
                return tag
        raise ValueError(f"not a BIO tag: {raw!r} (expected one of "
                         f"{[t.value for t in cls]})")


class TagLevel(enum.Enum):
    WORD = "word"
    SUBTOKEN = "subtoken"


class Source(enum.Enum):
    """Provenance of an annotated example."""

    MANUAL = "manual"
    AUGMENTED = "augmented"
    OCR = "ocr"


@dataclass(frozen=True, slots=True)
class Token:
    """A word- or subword-level unit with character offsets into source text.

    For word tokens, ``text`` is the exact source slice. For subword tokens,
    ``text`` is the vocabulary piece (continuation prefix and unknown marker
    included), while the offsets still point at the surface characters the
    piece covers.
    """

    text: str
    char_start: int
    char_end: int
    word_index: int

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("token text must be non-empty")
        if self.char_start < 0 or self.char_start >= self.char_end:
            raise ValueError(
                f"bad token offsets: [{self.char_start}, {self.char_end})")
        if self.word_index < 0:
            raise ValueError(f"word_index must be >= 0, got {self.word_index}")

    def to_dict(self) -> dict:
        return {"text": self.text, "char_start": self.char_start,
                "char_end": self.char_end, "word_index": self.word_index}

    @classmethod
    def from_dict(cls, d: dict) -> "Token":
        return cls(d["text"], d["char_start"], d["char_end"], d["word_index"])


@dataclass(frozen=True, slots=True)
class TagSequence:
    """A sequence of BIO tags at word or subtoken granularity.

    Well-formedness (every I preceded by B or I) is a checkable predicate,
    not a construction invariant: model output may violate it and is repaired
    downstream.
    """

    tags: tuple[BioTag, ...]
    level: TagLevel

    def __post_init__(self) -> None:
        if not isinstance(self.tags, tuple):
            object.__setattr__(self, "tags", tuple(self.tags))
        for tag in self.tags:
            if not isinstance(tag, BioTag):
                raise ValueError(f"not a BioTag: {tag!r}")

    def __len__(self) -> int:
        return len(self.tags)

    def __iter__(self) -> Iterator[BioTag]:
        return iter(self.tags)

    def __getitem__(self, i: int) -> BioTag:
        return self.tags[i]

    def is_well_formed(self) -> bool:
        """True iff every I tag is preceded by a B or I tag (IOB2)."""
        prev = BioTag.O
        for tag in self.tags:
            if tag is BioTag.I and prev is BioTag.O:
                return False
            prev = tag
        return True

    def to_strings(self) -> list[str]:
        return [tag.value for tag in self.tags]

    @classmethod
    def from_strings(cls, raw: Sequence[str], level: TagLevel) -> "TagSequence":
        return cls(tuple(BioTag.parse(r) for r in raw), level)

    def to_dict(self) -> dict:
        return {"level": self.level.value, "tags": self.to_strings()}

    @classmethod
    def from_dict(cls, d: dict) -> "TagSequence":
        return cls.from_strings(d["tags"], TagLevel(d["level"]))


@dataclass(frozen=True, slots=True)
class QuestionSpan:
    """A contiguous word range (inclusive ends) holding one question.

    ``text`` is the single-space join of the span's words; whitespace inside
    the source is normalized away so the same question compares equal across
    documents.
    """

    start_word: int
    end_word: int
    text: str

    def __post_init__(self) -> None:
        if self.start_word < 0:
            raise ValueError(f"start_word must be >= 0, got {self.start_word}")
        if self.end_word < self.start_word:
            raise ValueError(
                f"end_word {self.end_word} < start_word {self.start_word}")
        if not self.text:
            raise ValueError("span text must be non-empty")

    @property
    def n_words(self) -> int:
        return self.end_word - self.start_word + 1

    def to_dict(self) -> dict:
        return {"start_word": self.start_word, "end_word": self.end_word,
                "text": self.text}

    @classmethod
    def from_dict(cls, d: dict) -> "QuestionSpan":
        return cls(d["start_word"], d["end_word"], d["text"])


def span_from_words(words: Sequence[str], start_word: int,
                    end_word: int) -> QuestionSpan:
    """Build a span over ``words`` with its text reconstructed by joining."""
    if not 0 <= start_word <= end_word < len(words):
        raise ValueError(
            f"span ({start_word}, {end_word}) out of range for {len(words)} words")
    return QuestionSpan(start_word, end_word,
                        " ".join(words[start_word:end_word + 1]))


@dataclass(frozen=True, slots=True)
class AnnotatedExample:
    """Source text plus gold question spans; the unit of datasets.

    List-level invariants (sorted, non-overlapping, text-consistent spans)
    are deliberately not enforced at construction so that broken data can be
    represented and reported; use :func:`validate_example`.
    """

    id: str
    text: str
    spans: tuple[QuestionSpan, ...]
    source: Source = Source.MANUAL

    def __post_init__(self) -> None:
        if not isinstance(self.spans, tuple):
            object.__setattr__(self, "spans", tuple(self.spans))
        if not self.id:
            raise ValueError("example id must be non-empty")

    def words(self) -> list[str]:
        """Whitespace words of the text (maximal non-whitespace runs)."""
        return self.text.split()

    def to_dict(self) -> dict:
        return {"id": self.id, "text": self.text,
                "spans": [s.to_dict() for s in self.spans],
                "source": self.source.value}

    @classmethod
    def from_dict(cls, d: dict) -> "AnnotatedExample":
        return cls(d["id"], d["text"],
                   tuple(QuestionSpan.from_dict(s) for s in d["spans"]),
                   Source(d["source"]))


def span_list_violations(spans: Sequence[QuestionSpan]) -> list[str]:
    """Violations of the span-list invariant: sorted by start, non-overlapping."""
    problems = []
    for prev, cur in zip(spans, spans[1:]):
        if cur.start_word < prev.start_word:
            problems.append(
                f"spans out of order: ({cur.start_word}, {cur.end_word}) "
                f"starts before ({prev.start_word}, {prev.end_word})")
        elif cur.start_word <= prev.end_word:
            problems.append(
                f"spans overlap: ({prev.start_word}, {prev.end_word}) and "
                f"({cur.start_word}, {cur.end_word})")
    return problems


def validate_example(example: AnnotatedExample) -> list[str]:
    """Check every example invariant; return one description per violation.

    An empty list means the example is internally consistent: spans sorted
    and non-overlapping, in range for the text's words, and each span's text
    equal to the join of its words.
    """
    problems = span_list_violations(example.spans)
    words = example.words()
    for span in example.spans:
        if span.end_word >= len(words):
            problems.append(
                f"span ({span.start_word}, {span.end_word}) out of range: "
                f"text has {len(words)} words")
            continue
        expected = " ".join(words[span.start_word:span.end_word + 1])
        if span.text != expected:
            problems.append(
                f"span ({span.start_word}, {span.end_word}) text mismatch: "
                f"span says {span.text!r}, text words say {expected!r}")
    return problems
