"""One tagging interface for rule-based, remote-model, and oracle extractors.

Every tagger turns a document into a word-level tag sequence; ``extract``
is the single pipeline entry point: word-tokenize, tag, decode spans. The
remote tagger speaks the /v1/tag protocol at subtoken level, windowing
inputs that exceed the model's sequence limit and collapsing the returned
subtoken tags back to words; rule and oracle taggers work in-process, so the
whole pipeline can be exercised and scored without a model.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Mapping, Protocol, Sequence

from .core import (BioTag, QuestionSpan, TagLevel, TagSequence, Token)
from .labels import RepairPolicy, collapse_tags, decode_spans, encode_tags
from .protocol import post_tag
from .rules import RuleSet, rule_extract
from .tokenize import Vocabulary, tokenize_full, word_tokenize

DEFAULT_MAX_LEN = 512
DEFAULT_STRIDE = 128


class TaggerError(Exception):
    """A tagging failure outside the remote protocol errors."""


class Tagger(Protocol):
    def tag_document(self, doc_id: str, text: str, words: Sequence[Token],
                     vocab: Vocabulary | None) -> TagSequence: ...


class RuleTagger:
    """Adapter running the rule baseline through the tagging interface."""

    def __init__(self, ruleset: RuleSet):
        self.ruleset = ruleset

    def tag_document(self, doc_id: str, text: str, words: Sequence[Token],
                     vocab: Vocabulary | None) -> TagSequence:
        spans = rule_extract(text, self.ruleset)
        return encode_tags(spans, len(words))


class OracleTagger:
    """Test double returning stored word-level tags per document id."""

    def __init__(self, table: Mapping[str, TagSequence | Sequence[str]]):
        self.table: dict[str, TagSequence] = {}
        for doc_id, tags in table.items():
            if not isinstance(tags, TagSequence):
                tags = TagSequence.from_strings(tags, TagLevel.WORD)
            self.table[doc_id] = tags

    @classmethod
    def from_file(cls, path: str | Path) -> "OracleTagger":
        """Load a JSON object mapping document id to a list of tag strings."""
        table = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(table)

    def tag_document(self, doc_id: str, text: str, words: Sequence[Token],
                     vocab: Vocabulary | None) -> TagSequence:
        if doc_id not in self.table:
            raise TaggerError(f"oracle has no tags for document {doc_id!r}")
        tags = self.table[doc_id]
        if len(tags) != len(words):
            raise TaggerError(
                f"oracle tags for {doc_id!r} have length {len(tags)}, "
                f"document has {len(words)} words")
        return tags


def chunk_long_input(subtokens: Sequence, max_len: int,
                     stride: int) -> list[tuple[int, int]]:
    """Split a subtoken sequence into overlapping half-open index windows.

    Consecutive windows start ``stride`` apart and are ``max_len`` wide (the
    last one is clipped), so every position is covered and interior positions
    appear in more than one window.
    """
    if not 0 < stride < max_len:
        raise ValueError(f"need 0 < stride < max_len, got stride={stride}, "
                         f"max_len={max_len}")
    n = len(subtokens)
    if n <= max_len:
        return [(0, n)]
    windows = []
    start = 0
    while True:
        windows.append((start, min(start + max_len, n)))
        if start + max_len >= n:
            return windows
        start += stride


def merge_window_tags(windows: Sequence[tuple[int, int]],
                      window_tags: Sequence[Sequence[BioTag]],
                      total: int) -> TagSequence:
    """Merge per-window subtoken tags into one sequence.

    An overlapped position takes its tag from the window where it sits
    farthest from a window edge; ties go to the earlier window.
    """
    if len(windows) != len(window_tags):
        raise ValueError(f"{len(windows)} windows but {len(window_tags)} "
                         f"tag sequences")
    merged: list[BioTag | None] = [None] * total
    best = [-1] * total
    for (start, end), tags in zip(windows, window_tags):
        if len(tags) != end - start:
            raise ValueError(f"window [{start}, {end}) expects {end - start} "
                             f"tags, got {len(tags)}")
        for pos in range(start, end):
            distance = min(pos - start, end - pos)
            if distance > best[pos]:
                best[pos] = distance
                merged[pos] = tags[pos - start]
    if any(tag is None for tag in merged):
        raise ValueError("windows do not cover every position")
    return TagSequence(tuple(merged), TagLevel.SUBTOKEN)


class RemoteTagger:
    """Client of a /v1/tag model server.

    Sends subword pieces, receives subtoken tags, and collapses them to word
    level. Inputs longer than ``max_len`` subtokens are windowed before
    sending (the server is entitled to reject over-long requests) and merged
    afterwards. Windows of one document fan out over ``parallel`` concurrent
    requests, correlated by per-window request ids.
    """

    def __init__(self, endpoint: str, timeout_ms: int = 10_000,
                 max_len: int = DEFAULT_MAX_LEN, stride: int = DEFAULT_STRIDE,
                 parallel: int = 4):
        if timeout_ms <= 0:
            raise ValueError(f"timeout must be positive, got {timeout_ms}")
        if parallel < 1:
            raise ValueError(f"parallel must be >= 1, got {parallel}")
        self.endpoint = endpoint
        self.timeout_s = timeout_ms / 1000
        self.max_len = max_len
        self.stride = stride
        self.parallel = parallel

    def tag_document(self, doc_id: str, text: str, words: Sequence[Token],
                     vocab: Vocabulary | None) -> TagSequence:
        if vocab is None:
            raise TaggerError("remote tagging needs a vocabulary")
        tokenized = tokenize_full(text, vocab)
        if not tokenized.words:
            return TagSequence((), TagLevel.WORD)
        pieces = [t.text for t in tokenized.subtokens]
        windows = chunk_long_input(pieces, self.max_len, self.stride)

        def fetch(k: int) -> list[BioTag]:
            start, end = windows[k]
            request_id = doc_id if len(windows) == 1 else f"{doc_id}#{k}"
            return post_tag(self.endpoint, request_id, pieces[start:end],
                            self.timeout_s)

        if len(windows) == 1:
            window_tags = [fetch(0)]
        else:
            workers = min(self.parallel, len(windows))
            with ThreadPoolExecutor(max_workers=workers) as pool:
                window_tags = list(pool.map(fetch, range(len(windows))))
        subtoken_tags = merge_window_tags(windows, window_tags, len(pieces))
        return collapse_tags(subtoken_tags, tokenized.alignment)


def tag(tagger: Tagger, text: str, vocab: Vocabulary | None = None,
        doc_id: str = "doc") -> TagSequence:
    """Tag a document's words with whichever tagger is plugged in."""
    words = word_tokenize(text)
    tags = tagger.tag_document(doc_id, text, words, vocab)
    if len(tags) != len(words):
        raise TaggerError(f"tagger returned {len(tags)} tags for "
                          f"{len(words)} words (document {doc_id!r})")
    return tags


def extract(tagger: Tagger, text: str, vocab: Vocabulary | None = None,
            policy: RepairPolicy = RepairPolicy.IOB2_REPAIR,
            doc_id: str = "doc") -> list[QuestionSpan]:
    """The pipeline entry point: word-tokenize, tag, decode question spans."""
    words = word_tokenize(text)
    tags = tagger.tag_document(doc_id, text, words, vocab)
    return decode_spans(tags, [w.text for w in words], policy)


def extract_batch(tagger: Tagger, docs: Sequence[tuple[str, str]],
                  vocab: Vocabulary | None = None,
                  policy: RepairPolicy = RepairPolicy.IOB2_REPAIR,
                  parallel: int = 4) -> list[tuple[str, list[QuestionSpan]]]:
    """Extract from (doc_id, text) pairs, fanning out over a thread pool.

    Results keep input order regardless of completion order.
    """
    if parallel < 1:
        raise ValueError(f"parallel must be >= 1, got {parallel}")
    if not docs:
        return []

    def run(pair: tuple[str, str]) -> tuple[str, list[QuestionSpan]]:
        doc_id, text = pair
        return doc_id, extract(tagger, text, vocab, policy, doc_id)

    if parallel == 1 or len(docs) == 1:
        return [run(pair) for pair in docs]
    with ThreadPoolExecutor(max_workers=min(parallel, len(docs))) as pool:
        return list(pool.map(run, docs))
