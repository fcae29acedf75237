"""The core idea in one sentence: tag words, decode spans.

A student query often arrives wrapped in instructions or other noise. Tag
every word with B-Question / I-Question / O and the question falls out as
the maximal B(I)* run.
"""

from qx import OracleTagger, decode_spans, encode_tags, extract, word_tokenize
from qx.core import TagLevel, TagSequence

text = "Answer the following. What is force?"
words = [t.text for t in word_tokenize(text)]
print("text: ", text)
print("words:", words)

# Gold word-level tags for this sentence: the first three words are noise.
tags = TagSequence.from_strings(
    ["O", "O", "O", "B-Question", "I-Question", "I-Question"], TagLevel.WORD)
print("tags: ", " ".join(t.value for t in tags))

spans = decode_spans(tags, words)
print("decoded spans:", spans)

# encode_tags inverts decode_spans: spans -> tags.
assert encode_tags(spans, len(words)) == tags
print("encode(decode(tags)) == tags: True")

# The same flow through the pluggable tagging interface: an oracle tagger
# replays stored tags, which isolates the pipeline from model quality.
oracle = OracleTagger({"demo": tags})
print("extract():", extract(oracle, text, doc_id="demo"))
