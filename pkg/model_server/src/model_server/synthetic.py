"""Tiny synthetic overfit corpora, emitted in the CoNLL dataset format.

The sentences are deliberately short and lexically simple: the point of an
overfit corpus is to verify that the training loop, label projection, and
serving path work, not to challenge the model. Question and noise templates
share no vocabulary so every token has one consistent gold tag.
"""

from __future__ import annotations

import random
from pathlib import Path

QUESTIONS = (
    "What is force?",
    "What is density?",
    "What is momentum?",
    "Find its value.",
    "Express its density.",
    "Calculate the velocity.",
    "What will be its range?",
)
NOISE = (
    "Answer as directed.",
    "Marks may vary.",
    "Attempt all parts.",
)


def overfit_documents(n: int, seed: int,
                      rich: bool = False) -> list[tuple[str, list[tuple[str, str]]]]:
    """(doc_id, [(word, tag), ...]) exam-style documents.

    The default shape is short (one question, light noise): with
    mean-reduced cross-entropy each token's gradient share shrinks with
    document length, and the overfit recipe's tiny learning rate leaves no
    headroom to waste. ``rich`` documents are longer and multi-sentence,
    which is what masked-LM pretraining wants: more context per masked
    token.
    """
    rng = random.Random(seed)
    docs = []
    for i in range(n):
        rows: list[tuple[str, str]] = []

        def add(sentence: str, is_question: bool) -> None:
            words = sentence.split()
            for k, word in enumerate(words):
                if not is_question:
                    tag = "O"
                elif k == 0:
                    tag = "B-Question"
                else:
                    tag = "I-Question"
                rows.append((word, tag))

        if rich:
            if rng.random() < 0.7:
                add(rng.choice(NOISE), False)
            for _ in range(rng.choice((1, 1, 2))):
                add(rng.choice(QUESTIONS), True)
                if rng.random() < 0.5:
                    add(rng.choice(NOISE), False)
        else:
            if rng.random() < 0.5:
                add(rng.choice(NOISE), False)
            add(rng.choice(QUESTIONS), True)
            if rng.random() < 0.3:
                add(rng.choice(NOISE), False)
        docs.append((f"synth-{i:03d}", rows))
    return docs


def write_conll(docs: list[tuple[str, list[tuple[str, str]]]],
                path: str | Path) -> None:
    lines: list[str] = []
    for n, (doc_id, rows) in enumerate(docs):
        if n:
            lines.append("")
        lines.append(f"# id: {doc_id}")
        lines.extend(f"{word}\t{tag}" for word, tag in rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_overfit_corpus(train_path: str | Path, pretrain_path: str | Path,
                         n_train: int = 50, n_unlabeled: int = 400,
                         seed: int = 19) -> None:
    """The standard overfit setup: a small labeled set plus a larger
    unlabeled pool for task-adaptive pretraining. The pool mixes
    same-distribution documents (context for masked-LM) with the labeled
    texts themselves, oversampled and unlabeled."""
    train_docs = overfit_documents(n_train, seed)
    extra = overfit_documents(n_unlabeled, seed + 1000)
    write_conll(train_docs, train_path)
    write_conll(extra + train_docs * 3, pretrain_path)
