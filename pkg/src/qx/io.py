"""Dataset and OCR ingestion: file formats and reading-order reconstruction.

The OCR side linearizes positioned words into text: words are clustered
into lines (two words share a line when the vertical center of one falls
inside the other's y-extent, taken transitively), lines are ordered by page
and top edge, and words within a line left to right. Multi-column layouts
will interleave; that is a documented limitation, not a bug to patch here.

The dataset side reads and writes two formats:

- JSONL: one object per line with ``id``, ``text``, ``spans`` (character
  offsets, which must land on word boundaries) and ``source``.
- CoNLL-style: one ``token<TAB>tag`` line per word, blank line between
  documents, with ``# id:`` / ``# source:`` comment lines carrying metadata
  so conversion loses nothing but original whitespace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import (AnnotatedExample, BioTag, QuestionSpan, Source, TagLevel,
                   TagSequence, span_from_words)
from .labels import MalformedTags, RepairPolicy, decode_spans, encode_tags
from .tokenize import word_tokenize

FORMATS = ("jsonl", "conll")


class DatasetError(ValueError):
    """A dataset file problem, with file/line context in the message."""


@dataclass(frozen=True, slots=True)
class OcrWord:
    """One OCR word with its pixel bounding box."""

    text: str
    bbox: tuple[float, float, float, float]
    page: int = 0

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("OCR word text must be non-empty")
        if not isinstance(self.bbox, tuple):
            object.__setattr__(self, "bbox", tuple(self.bbox))
        x0, y0, x1, y1 = self.bbox
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"bad bbox ordering: {self.bbox}")
        if self.page < 0:
            raise ValueError(f"page must be >= 0, got {self.page}")

    @property
    def y_center(self) -> float:
        return (self.bbox[1] + self.bbox[3]) / 2


def _same_line(a: OcrWord, b: OcrWord) -> bool:
    return (b.bbox[1] <= a.y_center <= b.bbox[3]
            or a.bbox[1] <= b.y_center <= a.bbox[3])


def ocr_to_text(words: Sequence[OcrWord]) -> tuple[str, list[tuple[int, int]]]:
    """Linearize OCR words into text plus per-word character offsets.

    Returns the text and a provenance list parallel to the input: the i-th
    entry is the [start, end) character range of input word i in the text.
    """
    if not words:
        return "", []

    parent = list(range(len(words)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_page: dict[int, list[int]] = {}
    for i, w in enumerate(words):
        by_page.setdefault(w.page, []).append(i)
    for page_words in by_page.values():
        page_words.sort(key=lambda i: (words[i].bbox[1], words[i].bbox[0]))
        for a_pos, i in enumerate(page_words):
            for j in page_words[a_pos + 1:]:
                if words[j].bbox[1] > words[i].bbox[3]:
                    break
                if _same_line(words[i], words[j]):
                    parent[find(i)] = find(j)

    lines: dict[int, list[int]] = {}
    for i in range(len(words)):
        lines.setdefault(find(i), []).append(i)
    ordered_lines = sorted(
        lines.values(),
        key=lambda idxs: (words[idxs[0]].page,
                          min(words[i].bbox[1] for i in idxs),
                          min(words[i].bbox[0] for i in idxs)))

    provenance: list[tuple[int, int]] = [(0, 0)] * len(words)
    parts: list[str] = []
    pos = 0
    for line_no, idxs in enumerate(ordered_lines):
        if line_no:
            parts.append("\n")
            pos += 1
        idxs.sort(key=lambda i: (words[i].bbox[0], words[i].bbox[1], i))
        for k, i in enumerate(idxs):
            if k:
                parts.append(" ")
                pos += 1
            provenance[i] = (pos, pos + len(words[i].text))
            parts.append(words[i].text)
            pos += len(words[i].text)
    return "".join(parts), provenance


def read_ocr_json(path: str | Path) -> list[OcrWord]:
    """Read the OCR JSON schema: {"pages": [{"words": [{"text", "bbox"}]}]}."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "pages" not in doc:
        raise DatasetError(f"{path}: expected an object with a 'pages' list")
    words: list[OcrWord] = []
    for p, page in enumerate(doc["pages"]):
        for k, w in enumerate(page.get("words", [])):
            try:
                words.append(OcrWord(w["text"], tuple(w["bbox"]), p))
            except (KeyError, TypeError, ValueError) as exc:
                raise DatasetError(
                    f"{path}: page {p} word {k}: {exc}") from None
    return words


def _to_char_spans(example: AnnotatedExample) -> list[dict]:
    tokens = word_tokenize(example.text)
    spans = []
    for span in example.spans:
        if span.end_word >= len(tokens):
            raise DatasetError(
                f"example {example.id!r}: span ({span.start_word}, "
                f"{span.end_word}) out of range for {len(tokens)} words")
        spans.append({"char_start": tokens[span.start_word].char_start,
                      "char_end": tokens[span.end_word].char_end})
    return spans


def _from_char_spans(record_id: str, text: str,
                     raw_spans: list[dict], where: str) -> list[QuestionSpan]:
    tokens = word_tokenize(text)
    start_of = {t.char_start: t.word_index for t in tokens}
    end_of = {t.char_end: t.word_index for t in tokens}
    word_texts = [t.text for t in tokens]
    spans = []
    for raw in raw_spans:
        cs, ce = raw["char_start"], raw["char_end"]
        if cs not in start_of or ce not in end_of:
            raise DatasetError(
                f"{where}: record {record_id!r}: char span [{cs}, {ce}) does "
                f"not align to word boundaries")
        spans.append(span_from_words(word_texts, start_of[cs], end_of[ce]))
    return spans


def _read_jsonl(path: Path) -> list[AnnotatedExample]:
    examples = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{where}: not valid JSON: {exc}") from None
            try:
                record_id = record["id"]
                text = record["text"]
                spans = _from_char_spans(record_id, text, record["spans"],
                                         where)
                source = Source(record.get("source", "manual"))
            except KeyError as exc:
                raise DatasetError(f"{where}: missing field {exc}") from None
            except ValueError as exc:
                raise DatasetError(f"{where}: {exc}") from None
            examples.append(AnnotatedExample(record_id, text, tuple(spans),
                                             source))
    return examples


def _write_jsonl(examples: Sequence[AnnotatedExample], path: Path) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for example in examples:
            record = {"id": example.id, "text": example.text,
                      "spans": _to_char_spans(example),
                      "source": example.source.value}
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def _read_conll(path: Path) -> list[AnnotatedExample]:
    examples: list[AnnotatedExample] = []
    tokens: list[str] = []
    tags: list[BioTag] = []
    token_lines: list[int] = []
    meta: dict[str, str] = {}

    def finish() -> None:
        nonlocal tokens, tags, token_lines, meta
        if not tokens:
            meta = {}
            return
        doc_id = meta.get("id", f"doc-{len(examples)}")
        try:
            source = Source(meta.get("source", "manual"))
        except ValueError as exc:
            raise DatasetError(f"{path}:{token_lines[0]}: {exc}") from None
        seq = TagSequence(tuple(tags), TagLevel.WORD)
        try:
            spans = decode_spans(seq, tokens, RepairPolicy.STRICT)
        except MalformedTags as exc:
            raise DatasetError(
                f"{path}:{token_lines[exc.index]}: ill-formed tags in "
                f"document {doc_id!r}: {exc}") from None
        examples.append(AnnotatedExample(doc_id, " ".join(tokens),
                                         tuple(spans), source))
        tokens, tags, token_lines, meta = [], [], [], {}

    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                finish()
                continue
            if line.startswith("#"):
                key, sep, value = line.lstrip("# ").partition(":")
                if sep and key.strip() in ("id", "source"):
                    meta[key.strip()] = value.strip()
                continue
            token, sep, tag = line.partition("\t")
            if not sep or not token:
                raise DatasetError(
                    f"{path}:{lineno}: expected token<TAB>tag, got {line!r}")
            try:
                tags.append(BioTag.parse(tag))
            except ValueError as exc:
                raise DatasetError(f"{path}:{lineno}: {exc}") from None
            tokens.append(token)
            token_lines.append(lineno)
    finish()
    return examples


def _write_conll(examples: Sequence[AnnotatedExample], path: Path) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for n, example in enumerate(examples):
            words = example.words()
            try:
                tags = encode_tags(example.spans, len(words))
            except ValueError as exc:
                raise DatasetError(
                    f"example {example.id!r}: {exc}") from None
            if n:
                fh.write("\n")
            fh.write(f"# id: {example.id}\n")
            fh.write(f"# source: {example.source.value}\n")
            for word, tag in zip(words, tags):
                fh.write(f"{word}\t{tag.value}\n")


def read_dataset(path: str | Path, fmt: str) -> list[AnnotatedExample]:
    """Read a dataset file in the given format ("jsonl" or "conll")."""
    path = Path(path)
    if fmt == "jsonl":
        return _read_jsonl(path)
    if fmt == "conll":
        return _read_conll(path)
    raise ValueError(f"unknown dataset format: {fmt!r} (expected {FORMATS})")


def write_dataset(examples: Sequence[AnnotatedExample], path: str | Path,
                  fmt: str) -> None:
    """Write a dataset file in the given format ("jsonl" or "conll")."""
    path = Path(path)
    if fmt == "jsonl":
        _write_jsonl(examples, path)
    elif fmt == "conll":
        _write_conll(examples, path)
    else:
        raise ValueError(f"unknown dataset format: {fmt!r} (expected {FORMATS})")
