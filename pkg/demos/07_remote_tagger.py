"""The wire protocol: tag over HTTP, window long inputs.

The neural tagger lives behind POST /v1/tag: the client sends subword
pieces, the server answers one tag per piece with the request id echoed.
This demo runs an in-process stub server so the full remote path (tokenize,
send, validate, collapse, decode) is visible without a trained model.
"""

from qx import RemoteTagger, Vocabulary, extract
from qx.core import TagLevel, TagSequence
from qx.labels import project_tags
from qx.protocol import StubTagServer, run_conformance
from qx.tagger import chunk_long_input
from qx.tokenize import tokenize_full

vocab = Vocabulary(("[UNK]", "Answer", "the", "following", "What", "is",
                    "force", "##.", "##?"))
text = "Answer the following. What is force?"
gold = TagSequence.from_strings(
    ["O", "O", "O", "B-Question", "I-Question", "I-Question"], TagLevel.WORD)

# The stub replays projected gold tags for this document's pieces.
tokenized = tokenize_full(text, vocab)
answers = {tuple(t.text for t in tokenized.subtokens):
           project_tags(gold, tokenized.alignment).to_strings()}


def stub_tags(request_id, tokens):
    return answers.get(tuple(tokens), ["O"] * len(tokens))


with StubTagServer(stub_tags) as server:
    print("stub server at", server.endpoint)
    tagger = RemoteTagger(server.endpoint)
    print("extracted:", extract(tagger, text, vocab, doc_id="demo"))

    checks = run_conformance(server.endpoint)
    print("\nconformance:")
    for check in checks:
        print(f"  [{'PASS' if check.passed else 'FAIL'}] {check.name}")

# Inputs longer than the model's limit are windowed with overlap; merged
# positions take the tag from whichever window they sit deepest inside.
windows = chunk_long_input(range(12), max_len=8, stride=4)
print("\n12 pieces, window 8, stride 4 ->", windows)
