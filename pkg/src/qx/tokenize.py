"""Word and subword tokenization with word-to-subtoken alignment.

Word tokens are maximal runs of non-whitespace characters; punctuation stays
attached to its word. Subword tokenization is greedy longest-match against a
vocabulary, WordPiece-style: continuation pieces carry a marker prefix and a
word with no valid segmentation falls back to the unknown token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

from .core import Token

_WORD_RE = re.compile(r"\S+")


def word_tokenize(text: str) -> list[Token]:
    """Split text into word tokens with exact character offsets."""
    return [Token(m.group(), m.start(), m.end(), i)
            for i, m in enumerate(_WORD_RE.finditer(text))]


class VocabularyError(ValueError):
    """Raised when a vocabulary file or entry set is invalid."""


@dataclass(frozen=True, slots=True)
class Vocabulary:
    """An ordered set of subword entries plus tokenizer conventions.

    ``lowercase`` folds words before matching (for vocabularies built from
    uncased models); it is off by default because casing in OCR text carries
    signal.
    """

    entries: tuple[str, ...]
    continuation_prefix: str = "##"
    unknown_token: str = "[UNK]"
    lowercase: bool = False
    _index: frozenset[str] = field(init=False, repr=False, compare=False)
    _max_len: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise VocabularyError("vocabulary has no entries")
        for i, entry in enumerate(self.entries):
            if entry == "":
                raise VocabularyError(f"empty vocabulary entry at index {i}")
        if self.unknown_token not in self.entries:
            raise VocabularyError(
                f"unknown token {self.unknown_token!r} missing from entries")
        object.__setattr__(self, "_index", frozenset(self.entries))
        object.__setattr__(self, "_max_len", max(len(e) for e in self.entries))

    def __contains__(self, piece: str) -> bool:
        return piece in self._index

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_file(cls, path: str | Path, **kwargs) -> "Vocabulary":
        """Load one entry per line (UTF-8, line number = id).

        A single trailing blank line is tolerated; blank lines elsewhere are
        invalid entries and rejected with their line number.
        """
        lines = Path(path).read_text(encoding="utf-8").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        for lineno, entry in enumerate(lines, start=1):
            if entry == "":
                raise VocabularyError(f"{path}:{lineno}: empty vocabulary entry")
        return cls(tuple(lines), **kwargs)


def subword_tokenize(word: str, vocab: Vocabulary) -> list[str]:
    """Greedily segment a word into vocabulary pieces.

    Each piece is the longest vocabulary match at its position; pieces after
    the first carry the continuation prefix. If any position has no match
    (or case folding changes the word's length, which would break offset
    arithmetic), the whole word maps to the unknown token.
    """
    if not word:
        raise ValueError("cannot subword-tokenize an empty word")
    if vocab.lowercase:
        folded = word.lower()
        if len(folded) != len(word):
            return [vocab.unknown_token]
        word = folded
    prefix = vocab.continuation_prefix
    pieces: list[str] = []
    start = 0
    while start < len(word):
        lead = prefix if start > 0 else ""
        budget = vocab._max_len - len(lead)
        end = min(len(word), start + max(budget, 1))
        piece = None
        while end > start:
            candidate = lead + word[start:end]
            if candidate in vocab:
                piece = candidate
                break
            end -= 1
        if piece is None:
            return [vocab.unknown_token]
        pieces.append(piece)
        start = end
    return pieces


@dataclass(frozen=True, slots=True)
class Alignment:
    """Per-word contiguous ranges of subtoken indices, half-open.

    Ranges partition the subtoken list: non-empty, in order, contiguous, and
    starting at zero.
    """

    ranges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.ranges, tuple):
            object.__setattr__(self, "ranges",
                               tuple(tuple(r) for r in self.ranges))
        expected_start = 0
        for i, (start, end) in enumerate(self.ranges):
            if start != expected_start:
                raise ValueError(
                    f"alignment range {i} starts at {start}, expected "
                    f"{expected_start} (ranges must be contiguous)")
            if end <= start:
                raise ValueError(f"alignment range {i} is empty: [{start}, {end})")
            expected_start = end

    @property
    def n_words(self) -> int:
        return len(self.ranges)

    @property
    def n_subtokens(self) -> int:
        return self.ranges[-1][1] if self.ranges else 0

    def subtokens_of(self, word_index: int) -> range:
        start, end = self.ranges[word_index]
        return range(start, end)


class TokenizedText(NamedTuple):
    """Result of full tokenization: words, subword pieces, and their link."""

    words: list[Token]
    subtokens: list[Token]
    alignment: Alignment


def tokenize_full(text: str, vocab: Vocabulary) -> TokenizedText:
    """Tokenize text into words and aligned subword pieces.

    Subtoken ``Token``s carry the parent's word index and character offsets
    computed from piece lengths within the word; an unknown-token piece spans
    the whole word.
    """
    words = word_tokenize(text)
    subtokens: list[Token] = []
    ranges: list[tuple[int, int]] = []
    prefix = vocab.continuation_prefix
    for word in words:
        pieces = subword_tokenize(word.text, vocab)
        first = len(subtokens)
        if pieces == [vocab.unknown_token] and word.text != vocab.unknown_token:
            subtokens.append(Token(vocab.unknown_token, word.char_start,
                                   word.char_end, word.word_index))
        else:
            pos = word.char_start
            for k, piece in enumerate(pieces):
                surface = len(piece) - (len(prefix) if k > 0 else 0)
                subtokens.append(Token(piece, pos, pos + surface,
                                       word.word_index))
                pos += surface
        ranges.append((first, len(subtokens)))
    return TokenizedText(words, subtokens, Alignment(tuple(ranges)))


def pieces_of(subtokens: Iterable[Token]) -> list[str]:
    """Vocabulary piece strings of subword tokens, in order."""
    return [t.text for t in subtokens]
