"""Dataset expansion: wrap gold questions in noise and splice questions
across examples.

Each output example starts from a base example (chosen by shuffled
round-robin, so a run over the whole corpus uses every base example a
balanced number of times and a run of exactly the base size uses each one
once). The example is then optionally prefixed/suffixed with a question-free
noise snippet and optionally has whole question spans from other base
examples spliced in between its own spans. Gold spans are re-indexed so the
output always validates, and question text is never invented: every output
span is a verbatim copy of some base span.

The whole procedure is driven by one sequential seeded random stream, so a
given (base, noise, config) triple always yields a byte-identical corpus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import AnnotatedExample, QuestionSpan, Source, validate_example
from .tokenize import word_tokenize

_TERMINAL = (".", "!", ":", ";")


@dataclass(frozen=True, slots=True)
class AugmentConfig:
    """Knobs for one augmentation run.

    The probabilities and insertion count are configuration, not doctrine:
    the technique's description leaves their distribution open.
    """

    target_count: int
    p_prepend_noise: float = 0.5
    p_append_noise: float = 0.5
    p_insert_question: float = 0.3
    max_inserted_questions: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.target_count <= 0:
            raise ValueError(f"target_count must be positive, got "
                             f"{self.target_count}")
        for name in ("p_prepend_noise", "p_append_noise", "p_insert_question"):
            p = getattr(self, name)
            if not 0 <= p <= 1:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if self.max_inserted_questions < 0:
            raise ValueError(f"max_inserted_questions must be >= 0, got "
                             f"{self.max_inserted_questions}")


@dataclass(frozen=True, slots=True)
class NoisePool:
    """Question-free snippets used as prepended/appended noise."""

    snippets: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.snippets, tuple):
            object.__setattr__(self, "snippets", tuple(self.snippets))
        for i, snippet in enumerate(self.snippets):
            if not snippet.strip():
                raise ValueError(f"blank noise snippet at index {i}")
            if "?" in snippet:
                raise ValueError(
                    f"noise snippet at index {i} contains '?'; noise must be "
                    f"question-free: {snippet!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> "NoisePool":
        """Load one snippet per line, skipping blank lines."""
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls(tuple(line.strip() for line in lines if line.strip()))


def _normalize_snippet(snippet: str) -> str:
    text = " ".join(snippet.split())
    if not text.endswith(_TERMINAL):
        text += "."
    return text


@dataclass(slots=True)
class _Segment:
    text: str
    words: list[str]
    is_span: bool


def _segments_of(example: AnnotatedExample) -> list[_Segment]:
    tokens = word_tokenize(example.text)

    def slice_segment(start: int, end: int, is_span: bool) -> _Segment:
        text = example.text[tokens[start].char_start:tokens[end - 1].char_end]
        return _Segment(text, [t.text for t in tokens[start:end]], is_span)

    segments: list[_Segment] = []
    cursor = 0
    for span in example.spans:
        if span.start_word > cursor:
            segments.append(slice_segment(cursor, span.start_word, False))
        segments.append(slice_segment(span.start_word, span.end_word + 1, True))
        cursor = span.end_word + 1
    if cursor < len(tokens):
        segments.append(slice_segment(cursor, len(tokens), False))
    return segments


def _assemble(segments: Sequence[_Segment], new_id: str) -> AnnotatedExample:
    texts: list[str] = []
    spans: list[QuestionSpan] = []
    pos = 0
    for seg in segments:
        if seg.is_span:
            spans.append(QuestionSpan(pos, pos + len(seg.words) - 1,
                                      " ".join(seg.words)))
        texts.append(seg.text)
        pos += len(seg.words)
    return AnnotatedExample(new_id, " ".join(texts), tuple(spans),
                            Source.AUGMENTED)


def augment(base: Sequence[AnnotatedExample], noise: NoisePool,
            cfg: AugmentConfig) -> list[AnnotatedExample]:
    """Generate exactly ``cfg.target_count`` augmented examples.

    Raises if the base is empty or invalid, or if noise is required
    (a noise probability is positive) but the pool is empty.
    """
    if not base:
        raise ValueError("base dataset is empty")
    for example in base:
        problems = validate_example(example)
        if problems:
            raise ValueError(f"base example {example.id!r} is invalid: "
                             + "; ".join(problems))
    needs_noise = cfg.p_prepend_noise > 0 or cfg.p_append_noise > 0
    if needs_noise and not noise.snippets:
        raise ValueError("noise pool is empty but a noise probability is "
                         "positive")
    gold_texts = {span.text for ex in base for span in ex.spans}
    for snippet in noise.snippets:
        if _normalize_snippet(snippet) in gold_texts:
            raise ValueError(f"noise snippet duplicates a gold question: "
                             f"{snippet!r}")

    rng = random.Random(cfg.seed)
    order: list[int] = []
    while len(order) < cfg.target_count:
        chunk = list(range(len(base)))
        rng.shuffle(chunk)
        order.extend(chunk)
    del order[cfg.target_count:]

    donor_indices = [i for i, ex in enumerate(base) if ex.spans]
    out: list[AnnotatedExample] = []
    for n, base_index in enumerate(order):
        example = base[base_index]
        new_id = f"aug-{n:05d}"
        prepend = rng.random() < cfg.p_prepend_noise
        append = rng.random() < cfg.p_append_noise
        insert = rng.random() < cfg.p_insert_question
        donors = [i for i in donor_indices if i != base_index]
        insert = insert and cfg.max_inserted_questions > 0 and bool(donors)
        if not (prepend or append or insert):
            out.append(AnnotatedExample(new_id, example.text, example.spans,
                                        Source.AUGMENTED))
            continue

        segments = _segments_of(example)
        if insert:
            for _ in range(rng.randint(1, cfg.max_inserted_questions)):
                donor = base[rng.choice(donors)]
                span = donor.spans[rng.randrange(len(donor.spans))]
                slot = rng.randint(0, len(segments))
                segments.insert(slot, _Segment(span.text, span.text.split(),
                                               True))
        if prepend:
            text = _normalize_snippet(rng.choice(noise.snippets))
            segments.insert(0, _Segment(text, text.split(), False))
        if append:
            text = _normalize_snippet(rng.choice(noise.snippets))
            segments.append(_Segment(text, text.split(), False))
        out.append(_assemble(segments, new_id))
    return out


def verify_augmented(example: AnnotatedExample,
                     base: Sequence[AnnotatedExample]) -> bool:
    """True iff every span text of ``example`` is a verbatim span text of
    some base example (augmentation never invents question content)."""
    gold_texts = {span.text for ex in base for span in ex.spans}
    return all(span.text in gold_texts for span in example.spans)
