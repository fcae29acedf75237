from __future__ import annotations

import json
import random

import pytest

from qx.core import QuestionSpan
from qx.evaluation import (DocCounts, EvalReport, MatchCriterion, evaluate,
                           match_spans, render_table, span_iou)

from support import optimal_match_count, random_span_list


def q(start, end, text="what is force?"):
    return QuestionSpan(start, end, text)


class TestMatchCriterion:
    def test_parse(self):
        assert MatchCriterion.parse("exact") == MatchCriterion.exact_span()
        assert MatchCriterion.parse("text") == MatchCriterion.exact_text()
        assert MatchCriterion.parse("iou:0.5") == MatchCriterion.iou(0.5)

    @pytest.mark.parametrize("bad", ["", "fuzzy", "iou:0", "iou:1.5"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            MatchCriterion.parse(bad)


class TestMatchSpans:
    def test_identity_matches_everything(self):
        spans = [q(0, 2, "a b c"), q(5, 6, "f g")]
        pairs = match_spans(spans, spans, MatchCriterion.exact_span())
        assert pairs == {(0, 0), (1, 1)}

    def test_iou_example(self):
        # overlap 3 words, union 4 words -> 0.75 >= 0.5
        assert span_iou(q(3, 5), q(3, 6)) == pytest.approx(0.75)
        pairs = match_spans([q(3, 5)], [q(3, 6)], MatchCriterion.iou(0.5))
        assert pairs == {(0, 0)}

    def test_disjoint_never_matches(self):
        for criterion in (MatchCriterion.exact_span(),
                          MatchCriterion.iou(0.1)):
            assert match_spans([q(0, 1, "x y")], [q(3, 5, "a b c")],
                               criterion) == set()

    def test_text_matching_ignores_case_and_spacing(self):
        pred = [q(10, 12, "WHAT  IS   FORCE?")]
        gold = [q(0, 2, "what is force?")]
        pairs = match_spans(pred, gold, MatchCriterion.exact_text())
        assert pairs == {(0, 0)}

    def test_one_to_one_under_duplicates(self):
        pred = [q(0, 1, "what is"), q(4, 5, "what is")]
        gold = [q(0, 1, "what is")]
        pairs = match_spans(pred, gold, MatchCriterion.exact_text())
        assert pairs == {(0, 0)}  # larger overlap wins the tie


class TestEvaluate:
    def test_perfect(self):
        docs = {"d": [q(0, 1), q(3, 4), q(6, 8)]}
        report = evaluate(docs, docs, MatchCriterion.exact_span())
        assert report.precision == 1.0 and report.recall == 1.0
        assert report.true_positives == 3

    @pytest.mark.parametrize("criterion", [
        MatchCriterion.exact_span(), MatchCriterion.exact_text(),
        MatchCriterion.iou(0.5), MatchCriterion.iou(1.0)])
    def test_symmetric_perfection_under_every_criterion(self, criterion):
        rng = random.Random(77)
        for _ in range(50):
            spans = random_span_list(rng, max_spans=4)
            report = evaluate({"d": spans}, {"d": spans}, criterion)
            assert report.precision == 1.0 and report.recall == 1.0

    def test_formula_example(self):
        # 3 gold questions, 4 predictions of which 2 are correct.
        gold = {"d": [q(0, 1, "q one"), q(3, 4, "q two"), q(6, 7, "q three")]}
        pred = {"d": [q(0, 1, "q one"), q(3, 4, "q two"),
                      q(9, 10, "noise x"), q(12, 13, "noise y")]}
        report = evaluate(pred, gold, MatchCriterion.exact_span())
        assert report.precision == pytest.approx(0.5)
        assert report.recall == pytest.approx(2 / 3, abs=1e-3)

    def test_zero_denominator_conventions(self):
        empty_pred = evaluate({"d": []}, {"d": [q(0, 1)]},
                              MatchCriterion.exact_span())
        assert empty_pred.precision == 0.0 and empty_pred.recall == 0.0
        both_empty = evaluate({"d": []}, {"d": []},
                              MatchCriterion.exact_span())
        assert both_empty.precision == 1.0 and both_empty.recall == 1.0
        empty_gold = evaluate({"d": [q(0, 1)]}, {"d": []},
                              MatchCriterion.exact_span())
        assert empty_gold.precision == 0.0 and empty_gold.recall == 0.0

    def test_key_mismatch_rejected(self):
        with pytest.raises(ValueError, match="key mismatch"):
            evaluate({"a": []}, {"b": []}, MatchCriterion.exact_span())

    def test_micro_average_pools_documents(self):
        gold = {"d1": [q(0, 1)], "d2": [q(0, 1), q(3, 4)]}
        pred = {"d1": [q(0, 1)], "d2": []}
        report = evaluate(pred, gold, MatchCriterion.exact_span())
        assert report.true_positives == 1
        assert report.predicted_total == 1 and report.gold_total == 3
        assert report.recall == pytest.approx(1 / 3)
        assert [d.doc_id for d in report.per_document] == ["d1", "d2"]

    def test_report_json_round_trip(self):
        report = EvalReport.from_counts([DocCounts("d", 1, 2, 3)])
        payload = json.loads(json.dumps(report.to_dict()))
        assert payload["true_positives"] == 1
        assert payload["precision"] == pytest.approx(0.5)


class TestGreedyVsBruteForce:
    def test_equal_on_exact_criteria(self):
        rng = random.Random(31)
        for _ in range(500):
            pred = random_span_list(rng)
            gold = random_span_list(rng)
            for criterion in (MatchCriterion.exact_span(),
                              MatchCriterion.exact_text()):
                greedy = len(match_spans(pred, gold, criterion))
                assert greedy == optimal_match_count(pred, gold, criterion)

    def test_bounded_by_optimal_under_iou(self):
        rng = random.Random(32)
        for _ in range(300):
            pred = random_span_list(rng)
            gold = random_span_list(rng)
            criterion = MatchCriterion.iou(rng.choice((0.3, 0.5, 0.8)))
            greedy = len(match_spans(pred, gold, criterion))
            assert greedy <= optimal_match_count(pred, gold, criterion)

    def test_monotonicity(self):
        rng = random.Random(33)
        criterion = MatchCriterion.exact_span()
        for _ in range(200):
            pred = random_span_list(rng)
            gold = random_span_list(rng)
            report = evaluate({"d": pred}, {"d": gold}, criterion)
            # an unmatched extra prediction far to the right
            extra = pred + [q(1000, 1001, "unmatched noise")]
            worse = evaluate({"d": extra}, {"d": gold}, criterion)
            assert worse.precision <= report.precision
            extra_gold = gold + [q(1000, 1001, "unmatched gold")]
            worse = evaluate({"d": pred}, {"d": extra_gold}, criterion)
            assert worse.recall <= report.recall


class TestRenderTable:
    def test_columns_and_percentages(self):
        report = EvalReport.from_counts([DocCounts("d", 2, 4, 3)])
        table = render_table([("Rule Based Approach", report)])
        lines = table.splitlines()
        assert lines[0].split() == ["S.No.", "Model", "Precision", "Recall"]
        assert "Rule Based Approach" in lines[2]
        assert "50" in lines[2] and "66.7" in lines[2]

    def test_perfect_prints_round_hundred(self):
        report = EvalReport.from_counts([DocCounts("d", 3, 3, 3)])
        table = render_table([("Oracle", report)])
        assert "100" in table
