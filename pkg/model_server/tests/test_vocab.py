from __future__ import annotations

import pytest

from model_server.vocab import SPECIALS, WordVocab


def test_build_puts_specials_first():
    vocab = WordVocab.build(["force", "What", "force"])
    assert tuple(vocab.pieces[:3]) == SPECIALS
    assert vocab.pieces[3:] == ["What", "force"]


def test_save_load_round_trip(tmp_path):
    vocab = WordVocab.build(["What", "is", "force?"])
    path = tmp_path / "vocab.txt"
    vocab.save(path)
    assert WordVocab.load(path).pieces == vocab.pieces


def test_split_word_greedy():
    vocab = WordVocab(list(SPECIALS) + ["force", "##s", "##?"])
    assert vocab.split_word("force") == ["force"]
    assert vocab.split_word("forces") == ["force", "##s"]
    assert vocab.split_word("force?") == ["force", "##?"]
    assert vocab.split_word("unknownword") == ["[UNK]"]


def test_encode_pieces_maps_unknown():
    vocab = WordVocab.build(["force"])
    ids = vocab.encode_pieces(["force", "gravity"])
    assert ids[0] == vocab.piece_to_id["force"]
    assert ids[1] == vocab.unk_id


def test_missing_special_rejected():
    with pytest.raises(ValueError, match="UNK"):
        WordVocab(["[PAD]", "[MASK]", "word"])


def test_duplicate_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        WordVocab(list(SPECIALS) + ["x", "x"])
