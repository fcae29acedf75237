from __future__ import annotations

import pytest

from qx.augment import AugmentConfig, NoisePool, augment, verify_augmented
from qx.core import (AnnotatedExample, QuestionSpan, Source,
                     validate_example)
from qx.labels import encode_tags
from qx.rules import default_ruleset, rule_extract
from qx.synthetic import base_corpus, noise_pool


def example(example_id: str, parts: list[tuple[str, bool]]) -> AnnotatedExample:
    words: list[str] = []
    spans = []
    for text, is_question in parts:
        ws = text.split()
        if is_question:
            spans.append(QuestionSpan(len(words), len(words) + len(ws) - 1,
                                      " ".join(ws)))
        words.extend(ws)
    return AnnotatedExample(example_id, " ".join(words), tuple(spans))


@pytest.fixture
def tiny_base() -> list[AnnotatedExample]:
    return [
        example("b0", [("What is force?", True)]),
        example("b1", [("Intro text here.", False),
                       ("Find its value in SI units.", True)]),
        example("b2", [("State the law of conservation of energy.", True),
                       ("Marks as indicated.", False)]),
    ]


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            AugmentConfig(target_count=0)
        with pytest.raises(ValueError):
            AugmentConfig(target_count=1, p_prepend_noise=1.5)
        with pytest.raises(ValueError):
            AugmentConfig(target_count=1, max_inserted_questions=-1)


class TestNoisePool:
    def test_rejects_questions(self):
        with pytest.raises(ValueError, match="question-free"):
            NoisePool(("Is this noise?",))

    def test_rejects_blank(self):
        with pytest.raises(ValueError, match="blank"):
            NoisePool(("ok.", "   "))

    def test_from_file_skips_blank_lines(self, tmp_path):
        path = tmp_path / "noise.txt"
        path.write_text("one.\n\ntwo.\n", encoding="utf-8")
        assert NoisePool.from_file(path).snippets == ("one.", "two.")


class TestAugment:
    def test_paper_style_prepend(self, tiny_base):
        # Force the prepend path: p_prepend 1, everything else 0.
        noise = NoisePool(("Answer the following.",))
        cfg = AugmentConfig(target_count=3, p_prepend_noise=1.0,
                            p_append_noise=0.0, p_insert_question=0.0,
                            seed=1)
        out = augment([tiny_base[0]], noise, cfg)
        assert len(out) == 3
        for ex in out:
            assert ex.text == "Answer the following. What is force?"
            assert ex.spans == (QuestionSpan(3, 5, "What is force?"),)
            tags = encode_tags(ex.spans, len(ex.words()))
            assert tags.to_strings() == ["O", "O", "O", "B-Question",
                                         "I-Question", "I-Question"]
            assert ex.source is Source.AUGMENTED

    def test_noop_is_a_permutation_of_base(self, tiny_base):
        cfg = AugmentConfig(target_count=len(tiny_base), p_prepend_noise=0.0,
                            p_append_noise=0.0, p_insert_question=0.0, seed=9)
        out = augment(tiny_base, NoisePool(("unused.",)), cfg)
        assert sorted(ex.text for ex in out) == sorted(ex.text
                                                       for ex in tiny_base)
        by_text = {ex.text: ex for ex in tiny_base}
        for ex in out:
            assert ex.spans == by_text[ex.text].spans
            assert ex.source is Source.AUGMENTED

    def test_count_exactness_and_determinism(self, tiny_base):
        cfg = AugmentConfig(target_count=200, seed=42)
        first = augment(tiny_base, noise_pool(), cfg)
        second = augment(tiny_base, noise_pool(), cfg)
        assert len(first) == 200
        assert first == second

    def test_insertion_borrows_verbatim_spans(self, tiny_base):
        cfg = AugmentConfig(target_count=50, p_prepend_noise=0.0,
                            p_append_noise=0.0, p_insert_question=1.0,
                            max_inserted_questions=2, seed=5)
        out = augment(tiny_base, NoisePool(("unused.",)), cfg)
        base_texts = {s.text for ex in tiny_base for s in ex.spans}
        total_spans = 0
        for ex in out:
            assert validate_example(ex) == []
            assert {s.text for s in ex.spans} <= base_texts
            total_spans += len(ex.spans)
        assert total_spans > len(out)  # insertions actually happened

    def test_all_outputs_valid_and_verified_across_seeds(self, tiny_base):
        for seed in range(8):
            cfg = AugmentConfig(target_count=60, seed=seed)
            out = augment(tiny_base, noise_pool(), cfg)
            for ex in out:
                assert validate_example(ex) == []
                assert verify_augmented(ex, tiny_base)

    def test_empty_base_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            augment([], noise_pool(), AugmentConfig(target_count=1))

    def test_noise_needed_but_pool_empty(self, tiny_base):
        with pytest.raises(ValueError, match="noise pool is empty"):
            augment(tiny_base, NoisePool(()),
                    AugmentConfig(target_count=1, p_prepend_noise=0.5))

    def test_invalid_base_rejected(self):
        broken = AnnotatedExample("bad", "only two words",
                                  (QuestionSpan(0, 9, "only two words etc"),))
        with pytest.raises(ValueError, match="bad"):
            augment([broken], noise_pool(), AugmentConfig(target_count=1))

    def test_noise_snippet_duplicating_gold_rejected(self, tiny_base):
        pool = NoisePool(("What is force.",))  # same words modulo the mark
        cfg = AugmentConfig(target_count=1, seed=0)
        out = augment(tiny_base, pool, cfg)  # different text: fine
        assert len(out) == 1
        dup = NoisePool(("State the law of conservation of energy.",))
        with pytest.raises(ValueError, match="duplicates a gold question"):
            augment(tiny_base, dup, cfg)

    def test_noise_regions_stay_question_free(self, tiny_base):
        cfg = AugmentConfig(target_count=80, p_insert_question=0.5, seed=13)
        out = augment(tiny_base, noise_pool(), cfg)
        gold_texts = {s.text for ex in tiny_base for s in ex.spans}
        ruleset = default_ruleset()
        for ex in out:
            words = ex.words()
            in_span = set()
            for span in ex.spans:
                in_span.update(range(span.start_word, span.end_word + 1))
            # no gold question text hides outside the annotated spans
            for predicted in rule_extract(ex.text, ruleset):
                outside = [w for w in range(predicted.start_word,
                                            predicted.end_word + 1)
                           if w not in in_span]
                if outside:
                    chunk = " ".join(words[w] for w in outside)
                    assert chunk not in gold_texts


class TestVerifyAugmented:
    def test_base_example_verifies_against_itself(self, tiny_base):
        for ex in tiny_base:
            assert verify_augmented(ex, tiny_base)

    def test_edited_span_fails(self, tiny_base):
        edited = AnnotatedExample(
            "x", "What is gravity?",
            (QuestionSpan(0, 2, "What is gravity?"),))
        assert not verify_augmented(edited, tiny_base)

    def test_augment_outputs_verify(self):
        base = base_corpus(30, seed=2)
        out = augment(base, noise_pool(),
                      AugmentConfig(target_count=100, seed=3))
        assert all(verify_augmented(ex, base) for ex in out)
