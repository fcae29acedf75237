from __future__ import annotations

import pytest

from qx.core import TagLevel, TagSequence
from qx.tokenize import Vocabulary

WORKED_TEXT = "Answer the following. What is force?"
WORKED_TAGS = ["O", "O", "O", "B-Question", "I-Question", "I-Question"]


@pytest.fixture
def worked_tags() -> TagSequence:
    return TagSequence.from_strings(WORKED_TAGS, TagLevel.WORD)


@pytest.fixture
def fixture_vocab() -> Vocabulary:
    return Vocabulary((
        "[UNK]", "Answer", "the", "following", "What", "is", "force",
        "Express", "Find", "its", "density", "value", "a", "of",
        "##s", "##.", "##?", "##,", ".", "?", ",",
    ))
