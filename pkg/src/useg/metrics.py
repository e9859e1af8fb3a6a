"""Segmentation scoring: boundary precision/recall/F1 plus tag accuracy.

The positive class is B-Seg at non-initial positions.  Position 0 is
excluded from P/R/F1 by default because the decoder forces it, so
counting it would hand out free true positives; ``include_first``
restores the naive count.  Accuracy is tag accuracy over all positions,
position 0 included, in both modes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .corpus import SegTag, Turn
from .errors import EvaluationError

__all__ = ["Metrics", "f_score", "evaluate", "report", "report_rows"]

FORMATS = ("table", "tsv", "json")


def f_score(precision: float, recall: float) -> float:
    """Harmonic mean 2PR/(P+R); zero when both inputs are zero."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    accuracy: float
    tp: int
    fp: int
    fn: int
    n_tokens: int
    n_correct_tokens: int

    def __post_init__(self) -> None:
        assert abs(self.f1 - f_score(self.precision, self.recall)) < 1e-12
        if self.precision > 0 and self.recall > 0:
            low = min(self.precision, self.recall)
            high = max(self.precision, self.recall)
            assert low - 1e-12 <= self.f1 <= high + 1e-12
        if self.n_tokens:
            assert abs(self.accuracy
                       - self.n_correct_tokens / self.n_tokens) < 1e-12

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int,
                    n_tokens: int, n_correct_tokens: int) -> "Metrics":
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        return cls(
            precision=precision,
            recall=recall,
            f1=f_score(precision, recall),
            accuracy=n_correct_tokens / n_tokens if n_tokens else 0.0,
            tp=tp, fp=fp, fn=fn,
            n_tokens=n_tokens, n_correct_tokens=n_correct_tokens,
        )


def evaluate(gold: Sequence[Turn], predicted: Sequence[Turn],
             include_first: bool = False) -> Metrics:
    """Score aligned turn lists (same order, same token counts)."""
    if len(gold) != len(predicted):
        raise EvaluationError(
            f"gold has {len(gold)} turns, predictions have {len(predicted)}"
        )
    if not gold:
        raise EvaluationError("nothing to evaluate: no turns")
    tp = fp = fn = n_tokens = n_correct = 0
    for g_turn, p_turn in zip(gold, predicted):
        if g_turn.tags is None:
            raise EvaluationError(f"turn {g_turn.turn_id}: gold is untagged")
        if p_turn.tags is None:
            raise EvaluationError(
                f"turn {p_turn.turn_id}: prediction is untagged"
            )
        if len(g_turn.tokens) != len(p_turn.tokens):
            raise EvaluationError(
                f"turn {g_turn.turn_id}: gold has {len(g_turn.tokens)} "
                f"tokens, prediction has {len(p_turn.tokens)}"
            )
        for position, (g, p) in enumerate(zip(g_turn.tags, p_turn.tags)):
            n_tokens += 1
            if g is p:
                n_correct += 1
            if position == 0 and not include_first:
                continue
            if p is SegTag.BSEG and g is SegTag.BSEG:
                tp += 1
            elif p is SegTag.BSEG and g is SegTag.ISEG:
                fp += 1
            elif p is SegTag.ISEG and g is SegTag.BSEG:
                fn += 1
    return Metrics.from_counts(tp, fp, fn, n_tokens, n_correct)


def _pct(value: float) -> str:
    return f"{100 * value:.2f}"


def _row_values(metrics: Metrics) -> list[str]:
    return [_pct(metrics.precision), _pct(metrics.recall),
            _pct(metrics.f1), _pct(metrics.accuracy)]


def _json_payload(label: str, metrics: Metrics) -> dict:
    return {
        "label": label,
        "precision": metrics.precision,
        "recall": metrics.recall,
        "f1": metrics.f1,
        "accuracy": metrics.accuracy,
        "counts": {
            "tp": metrics.tp,
            "fp": metrics.fp,
            "fn": metrics.fn,
            "n_tokens": metrics.n_tokens,
            "n_correct_tokens": metrics.n_correct_tokens,
        },
    }


def report_rows(rows: Sequence[tuple[str, Metrics]], fmt: str) -> str:
    """Render labelled metric rows with P/R/F1/Acc columns."""
    if fmt not in FORMATS:
        raise EvaluationError(
            f"unknown report format {fmt!r} (expected one of "
            f"{', '.join(FORMATS)})"
        )
    headers = ["P", "R", "F1", "Acc"]
    if fmt == "json":
        return json.dumps(
            [_json_payload(label, m) for label, m in rows], indent=2
        )
    if fmt == "tsv":
        lines = ["\t".join(["label"] + headers)]
        lines.extend(
            "\t".join([label] + _row_values(m)) for label, m in rows
        )
        return "\n".join(lines)
    width = max([len("label")] + [len(label) for label, _ in rows])
    lines = [" ".join([" " * width] + [f"{h:>7}" for h in headers])]
    for label, metrics in rows:
        cells = [f"{v:>7}" for v in _row_values(metrics)]
        lines.append(" ".join([f"{label:<{width}}"] + cells))
    return "\n".join(lines)


def report(metrics: Metrics, fmt: str, label: str = "overall") -> str:
    """Single-row report; JSON collapses to one object."""
    if fmt == "json":
        return json.dumps(_json_payload(label, metrics), indent=2)
    return report_rows([(label, metrics)], fmt)
