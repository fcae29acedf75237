"""Rule-based question extraction over raw text.

A ruleset is an ordered list of start patterns, optional end patterns, and a
mode. Matches are found on raw character offsets (patterns compiled with
re.MULTILINE so ``^`` anchors at line starts), then snapped outward to word
boundaries so the resulting spans are word-indexed like everything else.

In ``start_to_next_start`` mode each start match opens a span that runs to
the word before the next start match (or to the end of the text). In
``start_to_end_match`` mode the span ends at the first end-pattern match at
or after the start; with no end match, or an end match beyond the next start,
the span is capped just before the next start so spans never overlap.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .core import QuestionSpan, Token, span_from_words
from .tokenize import word_tokenize

_FLAGS = re.MULTILINE


class RuleMode(enum.Enum):
    START_TO_NEXT_START = "start_to_next_start"
    START_TO_END_MATCH = "start_to_end_match"

    @classmethod
    def parse(cls, raw: str) -> "RuleMode":
        for mode in cls:
            if mode.value == raw:
                return mode
        raise ValueError(f"unknown mode: {raw!r} (expected "
                         f"{[m.value for m in cls]})")


class RulesetError(ValueError):
    """A ruleset file problem, pointing at the offending line."""


@dataclass(frozen=True, slots=True)
class RuleSet:
    """Compiled start/end patterns plus the span-closing mode.

    Pattern order is significant: when two start matches begin at the same
    offset, the earlier pattern in the list wins.
    """

    start_patterns: tuple[re.Pattern, ...]
    end_patterns: tuple[re.Pattern, ...]
    mode: RuleMode = RuleMode.START_TO_NEXT_START

    def __post_init__(self) -> None:
        if not self.start_patterns:
            raise RulesetError("no start patterns")
        if self.mode is RuleMode.START_TO_END_MATCH and not self.end_patterns:
            raise RulesetError("mode start_to_end_match needs an end pattern")

    @classmethod
    def compile(cls, start: list[str], end: list[str] | None = None,
                mode: RuleMode = RuleMode.START_TO_NEXT_START) -> "RuleSet":
        return cls(tuple(re.compile(p, _FLAGS) for p in start),
                   tuple(re.compile(p, _FLAGS) for p in (end or [])),
                   mode)


def load_ruleset(path: str | Path) -> RuleSet:
    """Parse a ruleset file.

    Format: UTF-8 text with ``start: <pattern>``, ``end: <pattern>`` and
    ``mode: <name>`` lines; ``#`` starts a comment; order is significant.
    """
    path = Path(path)
    starts: list[re.Pattern] = []
    ends: list[re.Pattern] = []
    mode = RuleMode.START_TO_NEXT_START
    saw_mode = False
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(),
                                  start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition(":")
        key, value = key.strip(), value.strip()
        if not sep or key not in ("start", "end", "mode"):
            raise RulesetError(f"{path}:{lineno}: expected 'start:', 'end:' "
                               f"or 'mode:' line, got {stripped!r}")
        if key == "mode":
            if saw_mode:
                raise RulesetError(f"{path}:{lineno}: duplicate mode line")
            try:
                mode = RuleMode.parse(value)
            except ValueError as exc:
                raise RulesetError(f"{path}:{lineno}: {exc}") from None
            saw_mode = True
            continue
        try:
            pattern = re.compile(value, _FLAGS)
        except re.error as exc:
            raise RulesetError(
                f"{path}:{lineno}: bad pattern at position {exc.pos}: "
                f"{exc.msg}") from None
        (starts if key == "start" else ends).append(pattern)
    if not starts:
        raise RulesetError(f"{path}: no start patterns")
    return RuleSet(tuple(starts), tuple(ends), mode)


def default_ruleset() -> RuleSet:
    """The bundled ruleset: enumerator and interrogative starts, '?' end."""
    with resources.as_file(resources.files("qx.data") / "default.rules") as p:
        return load_ruleset(p)


def _word_at_or_after(words: list[Token], pos: int) -> int:
    """Index of the word containing char ``pos``, or the next word; len(words)
    if pos is past the last word."""
    for w in words:
        if w.char_end > pos:
            return w.word_index
    return len(words)


def _word_at_or_before(words: list[Token], end_pos: int) -> int:
    """Index of the last word starting before char ``end_pos``; -1 if none."""
    result = -1
    for w in words:
        if w.char_start < end_pos:
            result = w.word_index
        else:
            break
    return result


def rule_extract(text: str, ruleset: RuleSet) -> list[QuestionSpan]:
    """Extract question spans by matching the ruleset over raw text."""
    words = word_tokenize(text)
    if not words:
        return []

    matches: list[tuple[int, int, re.Match]] = []
    for order, pattern in enumerate(ruleset.start_patterns):
        matches.extend((m.start(), order, m) for m in pattern.finditer(text))
    matches.sort(key=lambda t: (t[0], t[1]))

    anchors: list[int] = []
    for pos, _, _ in matches:
        word = _word_at_or_after(words, pos)
        if word >= len(words):
            continue
        if not anchors or word > anchors[-1]:
            anchors.append(word)
    if not anchors:
        return []

    word_texts = [w.text for w in words]
    spans: list[QuestionSpan] = []
    for k, start_word in enumerate(anchors):
        next_start = anchors[k + 1] if k + 1 < len(anchors) else len(words)
        cap = next_start - 1
        end_word = cap
        if ruleset.mode is RuleMode.START_TO_END_MATCH:
            start_char = words[start_word].char_start
            closer = None
            for pattern in ruleset.end_patterns:
                m = pattern.search(text, start_char)
                if m and (closer is None or m.end() < closer):
                    closer = m.end()
            if closer is not None:
                end_word = min(_word_at_or_before(words, closer), cap)
        if end_word < start_word:
            continue
        spans.append(span_from_words(word_texts, start_word, end_word))
    return spans
