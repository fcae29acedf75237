"""Label set, CoNLL-style dataset reading, and word-to-subtoken projection.

This is the server-side twin of the toolkit's label handling; it is written
against the same file format and projection rule but shares no code with the
client, so the wire protocol and dataset files are the only coupling.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

LABELS = ("B-Question", "I-Question", "O")
LABEL_TO_ID = {label: i for i, label in enumerate(LABELS)}
B, I, O = LABELS


class LabelError(ValueError):
    """A tag outside the three-class set, or an unreadable dataset."""


@dataclass(frozen=True)
class Sentence:
    """One training document: words with word-level tags."""

    doc_id: str
    words: tuple[str, ...]
    tags: tuple[str, ...]


def read_conll(path: str | Path) -> list[Sentence]:
    """Read token<TAB>tag lines, blank line between documents.

    ``#``-prefixed comment lines may carry ``id:`` metadata and are otherwise
    ignored. Tags must belong to the three-class set.
    """
    path = Path(path)
    sentences: list[Sentence] = []
    words: list[str] = []
    tags: list[str] = []
    doc_id: str | None = None

    def finish() -> None:
        nonlocal words, tags, doc_id
        if words:
            sentences.append(Sentence(doc_id or f"doc-{len(sentences)}",
                                      tuple(words), tuple(tags)))
        words, tags, doc_id = [], [], None

    for lineno, line in enumerate(path.read_text(encoding="utf-8")
                                  .splitlines(), start=1):
        if not line.strip():
            finish()
            continue
        if line.startswith("#"):
            key, sep, value = line.lstrip("# ").partition(":")
            if sep and key.strip() == "id":
                doc_id = value.strip()
            continue
        word, sep, tag = line.partition("\t")
        if not sep or not word:
            raise LabelError(f"{path}:{lineno}: expected token<TAB>tag, "
                             f"got {line!r}")
        if tag not in LABEL_TO_ID:
            raise LabelError(f"{path}:{lineno}: unknown tag {tag!r}; "
                             f"expected one of {list(LABELS)}")
        words.append(word)
        tags.append(tag)
    finish()
    return sentences


def project_to_subtokens(word_tags: list[str],
                         pieces_per_word: list[list[str]]) -> list[str]:
    """Spread word tags onto subword pieces.

    The first piece keeps the word's tag; continuation pieces replicate it,
    except that a B-Question word continues as I-Question so each question
    still begins exactly once.
    """
    if len(word_tags) != len(pieces_per_word):
        raise LabelError(f"{len(word_tags)} tags for "
                         f"{len(pieces_per_word)} words")
    out: list[str] = []
    for tag, pieces in zip(word_tags, pieces_per_word):
        if tag not in LABEL_TO_ID:
            raise LabelError(f"unknown tag {tag!r}")
        if not pieces:
            raise LabelError("word with no pieces")
        out.append(tag)
        continuation = O if tag == O else I
        out.extend([continuation] * (len(pieces) - 1))
    return out
