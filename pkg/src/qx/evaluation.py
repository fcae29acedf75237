"""Entity-level precision/recall over predicted vs gold question spans.

A predicted question counts as correct when it matches a gold question
one-to-one under the chosen criterion. Precision is correct / predicted,
recall is correct / gold, pooled over all documents (micro-average), so a
corpus gets single numbers the way benchmark tables report them.

Matching is greedy in gold order with ties broken by larger word overlap and
then smaller predicted start. For the exact criteria greedy matching equals
the optimal assignment; under IoU it may undercount relative to optimal,
which the test suite checks against a brute-force matcher.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import QuestionSpan


@dataclass(frozen=True, slots=True)
class MatchCriterion:
    """When does a predicted span count as the same question as a gold span.

    - ``exact_span``: identical word indices.
    - ``exact_text_normalized``: whitespace-collapsed, case-folded text
      equality (the default: what a question *says* is what matters, and it
      tolerates index shifts between differently linearized copies).
    - ``iou``: word-overlap / word-union at or above a threshold in (0, 1].
    """

    kind: str
    iou_threshold: float | None = None

    _KINDS = ("exact_span", "exact_text_normalized", "iou")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown criterion kind: {self.kind!r}")
        if self.kind == "iou":
            if self.iou_threshold is None or not 0 < self.iou_threshold <= 1:
                raise ValueError(
                    f"iou threshold must be in (0, 1], got {self.iou_threshold}")
        elif self.iou_threshold is not None:
            raise ValueError(f"{self.kind} takes no threshold")

    @classmethod
    def exact_span(cls) -> "MatchCriterion":
        return cls("exact_span")

    @classmethod
    def exact_text(cls) -> "MatchCriterion":
        return cls("exact_text_normalized")

    @classmethod
    def iou(cls, threshold: float) -> "MatchCriterion":
        return cls("iou", threshold)

    @classmethod
    def parse(cls, raw: str) -> "MatchCriterion":
        """Parse a command-line form: ``exact``, ``text`` or ``iou:<t>``."""
        if raw == "exact":
            return cls.exact_span()
        if raw == "text":
            return cls.exact_text()
        if raw.startswith("iou:"):
            return cls.iou(float(raw.split(":", 1)[1]))
        raise ValueError(f"unknown match criterion: {raw!r} "
                         f"(expected exact, text, or iou:<threshold>)")


def _normalize_text(text: str) -> str:
    return " ".join(text.split()).casefold()


def word_overlap(a: QuestionSpan, b: QuestionSpan) -> int:
    """Number of word positions the two spans share."""
    lo = max(a.start_word, b.start_word)
    hi = min(a.end_word, b.end_word)
    return max(0, hi - lo + 1)


def span_iou(a: QuestionSpan, b: QuestionSpan) -> float:
    """Word-level intersection over union of two spans."""
    inter = word_overlap(a, b)
    union = a.n_words + b.n_words - inter
    return inter / union


def spans_match(pred: QuestionSpan, gold: QuestionSpan,
                criterion: MatchCriterion) -> bool:
    if criterion.kind == "exact_span":
        return (pred.start_word, pred.end_word) == (gold.start_word,
                                                    gold.end_word)
    if criterion.kind == "exact_text_normalized":
        return _normalize_text(pred.text) == _normalize_text(gold.text)
    return span_iou(pred, gold) >= criterion.iou_threshold


def match_spans(pred: Sequence[QuestionSpan], gold: Sequence[QuestionSpan],
                criterion: MatchCriterion) -> set[tuple[int, int]]:
    """Greedy one-to-one matching; returns (pred_index, gold_index) pairs."""
    pairs: set[tuple[int, int]] = set()
    used: set[int] = set()
    for gi, g in enumerate(gold):
        best: int | None = None
        best_key: tuple[int, int] | None = None
        for pi, p in enumerate(pred):
            if pi in used or not spans_match(p, g, criterion):
                continue
            key = (-word_overlap(p, g), p.start_word)
            if best_key is None or key < best_key:
                best, best_key = pi, key
        if best is not None:
            used.add(best)
            pairs.add((best, gi))
    return pairs


@dataclass(frozen=True, slots=True)
class DocCounts:
    doc_id: str
    true_positives: int
    predicted: int
    gold: int

    def to_dict(self) -> dict:
        return {"doc_id": self.doc_id, "true_positives": self.true_positives,
                "predicted": self.predicted, "gold": self.gold}


@dataclass(frozen=True, slots=True)
class EvalReport:
    """Pooled match counts and the derived precision/recall fractions."""

    true_positives: int
    predicted_total: int
    gold_total: int
    precision: float
    recall: float
    per_document: tuple[DocCounts, ...]

    @classmethod
    def from_counts(cls, per_document: Sequence[DocCounts]) -> "EvalReport":
        tp = sum(d.true_positives for d in per_document)
        pred = sum(d.predicted for d in per_document)
        gold = sum(d.gold for d in per_document)
        # Zero-denominator convention: perfect when nothing was there to
        # find or predict, zero when one side is empty and the other is not.
        precision = tp / pred if pred else (1.0 if gold == 0 else 0.0)
        recall = tp / gold if gold else (1.0 if pred == 0 else 0.0)
        return cls(tp, pred, gold, precision, recall, tuple(per_document))

    def to_dict(self) -> dict:
        return {
            "true_positives": self.true_positives,
            "predicted_total": self.predicted_total,
            "gold_total": self.gold_total,
            "precision": self.precision,
            "recall": self.recall,
            "per_document": [d.to_dict() for d in self.per_document],
        }


def evaluate(pred_per_doc: Mapping[str, Sequence[QuestionSpan]],
             gold_per_doc: Mapping[str, Sequence[QuestionSpan]],
             criterion: MatchCriterion | None = None) -> EvalReport:
    """Score predictions against gold, pooled over documents.

    Both mappings must cover the same document ids.
    """
    criterion = criterion or MatchCriterion.exact_text()
    missing = set(gold_per_doc) - set(pred_per_doc)
    extra = set(pred_per_doc) - set(gold_per_doc)
    if missing or extra:
        raise ValueError(
            f"document key mismatch: missing from predictions "
            f"{sorted(missing)}, not in gold {sorted(extra)}")
    docs = []
    for doc_id in sorted(gold_per_doc):
        pred, gold = pred_per_doc[doc_id], gold_per_doc[doc_id]
        pairs = match_spans(pred, gold, criterion)
        docs.append(DocCounts(doc_id, len(pairs), len(pred), len(gold)))
    return EvalReport.from_counts(docs)


def _percent(fraction: float) -> str:
    value = round(fraction * 100, 1)
    return f"{value:g}"


def render_table(rows: Sequence[tuple[str, EvalReport]]) -> str:
    """Render reports as a plain-text accuracy comparison table.

    Columns: S.No., Model, Precision, Recall (percentages).
    """
    header = ("S.No.", "Model", "Precision", "Recall")
    cells = [header]
    for n, (model, report) in enumerate(rows, start=1):
        cells.append((str(n), model, _percent(report.precision),
                      _percent(report.recall)))
    widths = [max(len(row[c]) for row in cells) for c in range(4)]
    lines = []
    for i, row in enumerate(cells):
        lines.append("  ".join(cell.ljust(widths[c])
                               for c, cell in enumerate(row)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * widths[c] for c in range(4)))
    return "\n".join(lines)
