"""Deterministic synthetic corpora for tests, demos, and benchmarks.

Real student-query datasets are proprietary, so the toolkit bundles
generators instead: a base corpus of exam-style texts with gold question
spans, a question-free noise pool, and a harder multi-question corpus whose
documents mix enumerated questions ("Q.No. 5 ...", "Question 2 ..."),
sub-part questions ("(i) How much ..."), plain interrogatives, option-line
noise, and section headers. Gold spans cover the question text itself, not
the enumerator that introduces it.

Everything is driven by explicit seeds: the same call always returns the
same corpus.
"""

from __future__ import annotations

import random

from .augment import NoisePool
from .core import AnnotatedExample, QuestionSpan, Source

_CONCEPTS = ("force", "velocity", "acceleration", "density", "momentum",
             "pressure", "work", "energy", "power", "charge")
_OBJECTS = ("particle", "body", "cylinder", "sphere", "hemisphere", "pillar",
            "substance", "wire", "block", "projectile")
_SHAPES = ("cylindrical pillar", "sphere", "hemisphere", "cone", "cube")
_NUMBERS = ("2.928", "2.44", "9.8", "45", "12", "0.5", "0.125", "7", "1.4",
            "3.5", "2.5", "22", "0.4", "9", "55", "78.57", "112.3", "123.2")
_UNITS = ("m", "cm", "m/s", "kg", "g", "N", "J", "s", "m2", "cm3")

_QUESTION_TEMPLATES = (
    "What is {concept}?",
    "What will be its {quantity}?",
    "What is the ratio of the volumes of two {object}s of radius {num} cm each?",
    "Why does the {object} remain at rest?",
    "How much cloth material will be required to cover {num} domes each of radius {num} metres?",
    "Find the {quantity} of the {object} if its height is {num} {unit}.",
    "Find its value in SI units using the dimensional method.",
    "Calculate the instantaneous {quantity} at t = {num} s.",
    "Express its {quantity} keeping significant figures in view.",
    "State the law of conservation of {concept}.",
    "Write the formula to find the volume of a {shape}.",
    "{num}g of a substance occupies {num}cm3. Express its density keeping significant figures in view.",
    "The density of a substance is {num} g/cm3 in CGS system. Find its value in SI units.",
    "The displacement of a {object} moving along the x-axis is given by x = {num}t + {num}t2. Calculate the instantaneous velocity at t = {num} s.",
    "A body is projected at an angle of {num} degrees with a velocity of {num} m/s. What will be its horizontal range?",
    "A student plotted the variation of magnetic field with distance from a straight wire. Find the relationship between the two.",
)
_QUANTITIES = ("density", "volume", "horizontal range", "velocity",
               "acceleration", "displacement", "lateral surface area")

NOISE_SNIPPETS = (
    "Answer the following.",
    "Section-II.",
    "Case study-based questions are compulsory.",
    "Attempt any 4 sub parts from each question.",
    "Each question carries 1 mark.",
    "Each question carries 2 marks.",
    "The teacher narrated the facts of the monument to the students.",
    "It was a part of their educational trip.",
    "The teacher had interest in history as well.",
    "There are 2 pillars which are cylindrical in shape.",
    "Also 2 domes at the corners which are hemispherical.",
    "Flag hoisting ceremony takes place near these domes.",
    "Students of a secondary school have been allotted a rectangular plot of land.",
    "Saplings are planted on the boundary at a distance of 1 m from each other.",
    "There is a triangular grassy lawn in the plot as shown in the figure.",
    "Note: marks will be awarded for correct steps.",
    "See the figure given below.",
    "Refer to the textbook for similar problems.",
    "The graph below shows the variation of magnetic field with distance.",
    "Considering A as origin, answer the sub parts.",
    "Take pi = 22/7 wherever required.",
    "Use g = 9.8 m/s2 unless stated otherwise.",
    "Marks are indicated against each sub part.",
    "All symbols carry their usual meanings.",
    "Rough work must be done in the space provided.",
)

_OPTION_LINES = (
    "(a) 75 m2 (b) 78.57 m2 (c) 87.47 m2 (d) 25.8 m2",
    "(a) 112.3 cm2 (b) 123.2 m2 (c) 90 m2 (d) 345.2 cm2",
    "(a) 85.9 m3 (b) 80 m3 (c) 98 m3 (d) 89.83 m3",
    "(a) 1 : 1 (b) 1 : 8 (c) 8 : 1 (d) 1 : 16",
)


def _fill(template: str, rng: random.Random) -> str:
    out = template
    while "{" in out:
        out = out.replace("{concept}", rng.choice(_CONCEPTS), 1)
        out = out.replace("{object}", rng.choice(_OBJECTS), 1)
        out = out.replace("{shape}", rng.choice(_SHAPES), 1)
        out = out.replace("{quantity}", rng.choice(_QUANTITIES), 1)
        out = out.replace("{unit}", rng.choice(_UNITS), 1)
        if "{num}" in out:
            out = out.replace("{num}", rng.choice(_NUMBERS), 1)
    return out


def question_sentence(rng: random.Random) -> str:
    return _fill(rng.choice(_QUESTION_TEMPLATES), rng)


def noise_sentence(rng: random.Random) -> str:
    return rng.choice(NOISE_SNIPPETS)


def noise_pool() -> NoisePool:
    """The bundled question-free noise snippets."""
    return NoisePool(NOISE_SNIPPETS)


def _build_example(example_id: str, parts: list[tuple[str, bool]],
                   source: Source) -> AnnotatedExample:
    words: list[str] = []
    spans: list[QuestionSpan] = []
    for text, is_question in parts:
        part_words = text.split()
        if is_question:
            spans.append(QuestionSpan(len(words),
                                      len(words) + len(part_words) - 1,
                                      " ".join(part_words)))
        words.extend(part_words)
    return AnnotatedExample(example_id, " ".join(words), tuple(spans), source)


def base_corpus(n: int = 300, seed: int = 7) -> list[AnnotatedExample]:
    """A corpus of short annotated texts: questions wrapped in light noise."""
    rng = random.Random(seed)
    examples = []
    for i in range(n):
        parts: list[tuple[str, bool]] = []
        if rng.random() < 0.6:
            parts.append((noise_sentence(rng), False))
        for _ in range(rng.choice((1, 1, 1, 2, 2, 3))):
            parts.append((question_sentence(rng), True))
            if rng.random() < 0.4:
                parts.append((noise_sentence(rng), False))
        examples.append(_build_example(f"base-{i:03d}", parts, Source.MANUAL))
    return examples


def multiquestion_corpus(n_docs: int = 20, seed: int = 11,
                         ) -> list[AnnotatedExample]:
    """Documents shaped like scanned exam sheets: enumerated and plain
    questions interleaved with headers and option-line noise."""
    rng = random.Random(seed)
    docs = []
    for d in range(n_docs):
        parts: list[tuple[str, bool]] = []
        parts.append((noise_sentence(rng), False))
        if rng.random() < 0.5:
            parts.append((noise_sentence(rng), False))
        number = rng.randint(1, 5)
        for q in range(rng.randint(3, 5)):
            style = rng.random()
            body = question_sentence(rng)
            if style < 0.4:
                parts.append((f"Q.No. {number}", False))
            elif style < 0.6:
                parts.append((f"Question {number}", False))
            elif style < 0.75:
                parts.append((f"({'ivx'[q % 3]})", False))
            parts.append((body, True))
            number += 1
            if rng.random() < 0.4:
                parts.append((rng.choice(_OPTION_LINES), False))
        docs.append(_build_example(f"exam-{d:02d}", parts, Source.OCR))
    return docs


def oracle_table(examples: list[AnnotatedExample]) -> dict[str, list[str]]:
    """Word-level gold tags per document id, as serialized tag strings."""
    from .labels import encode_tags

    table = {}
    for example in examples:
        tags = encode_tags(example.spans, len(example.words()))
        table[example.id] = tags.to_strings()
    return table
