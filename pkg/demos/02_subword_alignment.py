"""Subword tokenization and tag projection.

Transformer models consume vocabulary pieces, not words. Greedy
longest-match segmentation splits each word; the alignment remembers which
pieces belong to which word so tags can travel in both directions:
projection spreads word tags onto pieces for training, collapse reads the
first piece's tag back per word for decoding.
"""

from qx import Vocabulary, collapse_tags, project_tags, subword_tokenize, tokenize_full
from qx.core import TagLevel, TagSequence

vocab = Vocabulary((
    "[UNK]", "Answer", "the", "following", "What", "is", "force",
    "##s", "##.", "##?",
))

for word in ("force", "forces", "force?", "Ω≈ç"):
    print(f"{word!r:10} -> {subword_tokenize(word, vocab)}")

text = "Answer the following. What is force?"
words, subtokens, alignment = tokenize_full(text, vocab)
print("\npieces:   ", [t.text for t in subtokens])
print("alignment:", alignment.ranges)

word_tags = TagSequence.from_strings(
    ["O", "O", "O", "B-Question", "I-Question", "I-Question"], TagLevel.WORD)
projected = project_tags(word_tags, alignment)
print("projected:", projected.to_strings())

# A B-word's continuation pieces become I, so the span still begins once;
# collapsing recovers the original word tags exactly.
assert collapse_tags(projected, alignment) == word_tags
print("collapse(project(tags)) == tags: True")
