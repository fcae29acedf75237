"""Subword vocabulary for the model: build from data, save/load, encode.

Greedy longest-match segmentation with "##" continuation pieces and a
whole-word [UNK] fallback, mirroring the tokenizer convention the client
uses. The special tokens sit at the front of the file so their ids are
stable.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

PAD, UNK, MASK = "[PAD]", "[UNK]", "[MASK]"
SPECIALS = (PAD, UNK, MASK)
CONTINUATION = "##"


class WordVocab:
    def __init__(self, pieces: Sequence[str]):
        for special in SPECIALS:
            if special not in pieces:
                raise ValueError(f"vocabulary is missing {special}")
        self.pieces = list(pieces)
        self.piece_to_id = {p: i for i, p in enumerate(self.pieces)}
        if len(self.piece_to_id) != len(self.pieces):
            raise ValueError("duplicate vocabulary entries")
        self._max_len = max(len(p) for p in self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    @property
    def pad_id(self) -> int:
        return self.piece_to_id[PAD]

    @property
    def unk_id(self) -> int:
        return self.piece_to_id[UNK]

    @property
    def mask_id(self) -> int:
        return self.piece_to_id[MASK]

    @classmethod
    def build(cls, words: Iterable[str]) -> "WordVocab":
        """Whole-word vocabulary over a corpus, specials first."""
        seen = sorted(set(words))
        return cls(list(SPECIALS) + seen)

    @classmethod
    def load(cls, path: str | Path) -> "WordVocab":
        lines = Path(path).read_text(encoding="utf-8").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        return cls(lines)

    def save(self, path: str | Path) -> None:
        Path(path).write_text("\n".join(self.pieces) + "\n", encoding="utf-8")

    def split_word(self, word: str) -> list[str]:
        """Greedy longest-match pieces of a word, or [UNK]."""
        pieces: list[str] = []
        start = 0
        while start < len(word):
            lead = CONTINUATION if start > 0 else ""
            end = min(len(word), start + max(self._max_len - len(lead), 1))
            found = None
            while end > start:
                candidate = lead + word[start:end]
                if candidate in self.piece_to_id:
                    found = candidate
                    break
                end -= 1
            if found is None:
                return [UNK]
            pieces.append(found)
            start = end
        return pieces if pieces else [UNK]

    def encode_pieces(self, pieces: Sequence[str]) -> list[int]:
        """Ids for already-segmented pieces; unknown pieces map to [UNK]."""
        return [self.piece_to_id.get(p, self.unk_id) for p in pieces]
