"""Dataset augmentation: a few hundred annotated texts become tens of
thousands.

Each output wraps a base example in question-free noise and/or splices in
question spans borrowed verbatim from other examples. Spans are re-indexed
so every output validates, and no question text is ever invented. The same
seed always reproduces the same corpus byte for byte.
"""

from collections import Counter

from qx import AugmentConfig, augment, validate_example, verify_augmented
from qx.synthetic import base_corpus, noise_pool

base = base_corpus(300, seed=7)
print(f"base corpus: {len(base)} examples, "
      f"{sum(len(e.spans) for e in base)} question spans")

cfg = AugmentConfig(target_count=2000, seed=42)
out = augment(base, noise_pool(), cfg)
print(f"augmented:   {len(out)} examples "
      f"(probabilities: prepend {cfg.p_prepend_noise}, "
      f"append {cfg.p_append_noise}, insert {cfg.p_insert_question})")

spans_per_example = Counter(len(e.spans) for e in out)
print("questions per example:", dict(sorted(spans_per_example.items())))

bad = [e.id for e in out if validate_example(e) or not verify_augmented(e, base)]
print("invalid or unverified outputs:", bad or "none")

again = augment(base, noise_pool(), cfg)
print("deterministic given the seed:", out == again)

print("\nsample:")
sample = out[1]
print(" ", sample.text[:120], "...")
for span in sample.spans:
    print(f"   span [{span.start_word}, {span.end_word}]: {span.text[:60]}")
