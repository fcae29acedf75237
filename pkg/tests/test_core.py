from __future__ import annotations

import pytest

from qx.core import (AnnotatedExample, BioTag, QuestionSpan, Source, TagLevel,
                     TagSequence, Token, span_from_words, validate_example)


class TestBioTag:
    def test_serialized_forms(self):
        assert BioTag.B.value == "B-Question"
        assert BioTag.I.value == "I-Question"
        assert BioTag.O.value == "O"
        assert len(BioTag) == 3

    def test_parse_round_trip(self):
        for tag in BioTag:
            assert BioTag.parse(str(tag)) is tag

    @pytest.mark.parametrize("bad", ["B", "I", "b-question", "B-Answer",
                                     "O ", "", "Other"])
    def test_parse_rejects_everything_else(self, bad):
        with pytest.raises(ValueError):
            BioTag.parse(bad)


class TestToken:
    def test_valid(self):
        t = Token("force?", 8, 14, 2)
        assert t.text == "force?"

    def test_dict_round_trip(self):
        t = Token("force?", 8, 14, 2)
        assert Token.from_dict(t.to_dict()) == t

    @pytest.mark.parametrize("kwargs", [
        dict(text="", char_start=0, char_end=1, word_index=0),
        dict(text="a", char_start=2, char_end=2, word_index=0),
        dict(text="a", char_start=3, char_end=2, word_index=0),
        dict(text="a", char_start=-1, char_end=2, word_index=0),
        dict(text="a", char_start=0, char_end=1, word_index=-1),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            Token(**kwargs)


class TestTagSequence:
    def test_well_formed(self, worked_tags):
        assert worked_tags.is_well_formed()
        assert TagSequence((), TagLevel.WORD).is_well_formed()

    def test_orphan_inside_is_ill_formed(self):
        seq = TagSequence.from_strings(["O", "I-Question"], TagLevel.WORD)
        assert not seq.is_well_formed()
        leading = TagSequence.from_strings(["I-Question"], TagLevel.WORD)
        assert not leading.is_well_formed()

    def test_string_round_trip(self, worked_tags):
        strings = worked_tags.to_strings()
        assert TagSequence.from_strings(strings, TagLevel.WORD) == worked_tags

    def test_dict_round_trip(self, worked_tags):
        assert TagSequence.from_dict(worked_tags.to_dict()) == worked_tags


class TestQuestionSpan:
    def test_dict_round_trip(self):
        span = QuestionSpan(3, 5, "What is force?")
        assert QuestionSpan.from_dict(span.to_dict()) == span

    def test_rejects_reversed(self):
        with pytest.raises(ValueError):
            QuestionSpan(5, 3, "x")

    def test_span_from_words(self):
        words = "Answer the following. What is force?".split()
        span = span_from_words(words, 3, 5)
        assert span.text == "What is force?"
        with pytest.raises(ValueError):
            span_from_words(words, 4, 6)


class TestAnnotatedExample:
    def make(self, spans) -> AnnotatedExample:
        return AnnotatedExample("ex-1", "Answer the following. What is force?",
                                tuple(spans), Source.MANUAL)

    def test_worked_example_is_valid(self):
        example = self.make([QuestionSpan(3, 5, "What is force?")])
        assert validate_example(example) == []

    def test_overlap_is_one_violation(self):
        example = self.make([QuestionSpan(0, 2, "Answer the following."),
                             QuestionSpan(2, 4, "following. What is")])
        problems = validate_example(example)
        assert len(problems) == 1
        assert "overlap" in problems[0]

    def test_text_mismatch_names_the_rule(self):
        example = self.make([QuestionSpan(3, 5, "What is gravity?")])
        problems = validate_example(example)
        assert len(problems) == 1
        assert "mismatch" in problems[0]

    def test_out_of_range_span(self):
        example = self.make([QuestionSpan(5, 9, "force? and then some")])
        assert any("out of range" in p for p in validate_example(example))

    def test_unsorted_spans(self):
        example = self.make([QuestionSpan(3, 5, "What is force?"),
                             QuestionSpan(0, 1, "Answer the")])
        assert any("out of order" in p for p in validate_example(example))

    def test_dict_round_trip(self):
        example = self.make([QuestionSpan(3, 5, "What is force?")])
        assert AnnotatedExample.from_dict(example.to_dict()) == example

    def test_source_round_trip(self):
        for source in Source:
            example = AnnotatedExample("e", "hi there", (), source)
            assert AnnotatedExample.from_dict(example.to_dict()) == example
