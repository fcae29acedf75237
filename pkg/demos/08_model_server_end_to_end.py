"""End to end with the real model: pretrain, fine-tune, serve, extract.

Requires the model_server package (torch + transformers) and takes a few
minutes on CPU: a compact BERT is masked-LM pretrained on synthetic exam
text, fine-tuned as a token classifier (SGD, 2e-5, 20 epochs), served at
/v1/tag, and then driven by the toolkit's remote tagger and scored.
"""

import tempfile
import time
from pathlib import Path

from model_server.labels import read_conll
from model_server.server import TagModel, TagServer
from model_server.synthetic import write_overfit_corpus
from model_server.train import PretrainConfig, TrainingConfig, pretrain, train

from qx import (AnnotatedExample, MatchCriterion, QuestionSpan, RemoteTagger,
                Vocabulary, evaluate, extract, render_table)
from qx.core import Source

workdir = Path(tempfile.mkdtemp(prefix="qx-e2e-"))
train_conll = workdir / "train.conll"
pretrain_conll = workdir / "pretrain.conll"
write_overfit_corpus(train_conll, pretrain_conll, n_train=50, seed=19)

started = time.time()
print("pretraining the local base (masked LM)...")
pretrain(pretrain_conll, workdir / "encoder", PretrainConfig())
print(f"  done in {time.time() - started:.0f}s")

started = time.time()
print("fine-tuning per the fixed recipe (SGD, 2e-5, 20 epochs)...")
log = train(train_conll, workdir / "checkpoint",
            TrainingConfig(epochs=20, batch_size=1, seed=7, dropout=0.0),
            pretrained_dir=workdir / "encoder")
print(f"  train token accuracy {log['train_token_accuracy']:.3f} "
      f"in {time.time() - started:.0f}s")

# gold spans for scoring, reconstructed from the CoNLL tags
documents = []
for sentence in read_conll(train_conll):
    words = list(sentence.words)
    spans = []
    start = None
    for i, tag in enumerate(list(sentence.tags) + ["O"]):
        if tag == "B-Question":
            if start is not None:
                spans.append(QuestionSpan(start, i - 1,
                                          " ".join(words[start:i])))
            start = i
        elif tag == "O" and start is not None:
            spans.append(QuestionSpan(start, i - 1, " ".join(words[start:i])))
            start = None
    documents.append(AnnotatedExample(sentence.doc_id, " ".join(words),
                                      tuple(spans), Source.MANUAL))

vocab = Vocabulary.from_file(workdir / "checkpoint" / "vocab.txt")
with TagServer(TagModel.load(workdir / "checkpoint")) as server:
    print(f"serving at {server.endpoint}/v1/tag")
    tagger = RemoteTagger(server.endpoint)
    predictions = {d.id: extract(tagger, d.text, vocab, doc_id=d.id)
                   for d in documents}

gold = {d.id: list(d.spans) for d in documents}
print()
print(render_table([
    ("BERT (local, served)", evaluate(predictions, gold,
                                      MatchCriterion.exact_text())),
]))
