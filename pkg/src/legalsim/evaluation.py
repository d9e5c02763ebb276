"""Accuracy, macro-F1, prediction-source diagnostics and threshold sweeps."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .labeling import PredictionSet
from .scoring import SimilarityRecord

CLASSES = (0, 1)
SOURCES = ("Q", "S")
OUTCOMES = ("R", "W")

SWEEP_DIRECTIONS = ("ge", "lt")


class EvaluationError(Exception):
    """Predictions reference a candidate the gold labels or scores lack."""


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    macro_f1: float
    per_class: dict[int, ClassMetrics]
    n: int


def classification_report(preds: Sequence[int], golds: Sequence[int]) -> EvalReport:
    """Binary accuracy and per-class precision/recall/F1 with macro average.

    Any zero denominator makes the affected quantity 0 (and hence F1 0).
    """
    if len(preds) != len(golds):
        raise ValueError("preds and golds must have equal length")
    if not preds:
        raise ValueError("cannot evaluate zero candidates")
    for value in (*preds, *golds):
        if value not in CLASSES:
            raise ValueError(f"labels must be 0 or 1, got {value!r}")
    n = len(preds)
    correct = sum(1 for p, g in zip(preds, golds) if p == g)

    per_class = {}
    f1_values = []
    for cls in CLASSES:
        tp = sum(1 for p, g in zip(preds, golds) if p == cls and g == cls)
        fp = sum(1 for p, g in zip(preds, golds) if p == cls and g != cls)
        fn = sum(1 for p, g in zip(preds, golds) if p != cls and g == cls)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[cls] = ClassMetrics(precision, recall, f1)
        f1_values.append(f1)

    return EvalReport(
        accuracy=correct / n,
        macro_f1=sum(f1_values) / len(f1_values),
        per_class=per_class,
        n=n,
    )


def evaluate(preds: PredictionSet, golds: Mapping[str, int]) -> EvalReport:
    """Candidate-level evaluation of a prediction set against gold labels."""
    flat = preds.flat()
    pred_list = []
    gold_list = []
    for candidate_id, label in flat.items():
        if candidate_id not in golds:
            raise EvaluationError(f"no gold label for candidate {candidate_id!r}")
        pred_list.append(label)
        gold_list.append(golds[candidate_id])
    return classification_report(pred_list, gold_list)


@dataclass(frozen=True)
class DistributionTable:
    """Counts of predictions by dominant score source (Q or S) and outcome.

    A candidate falls in row Q when its question-answer score outranked its
    answer-summary score, row S otherwise; column R when the prediction
    matched the gold label, W otherwise.
    """

    counts: dict[tuple[str, str], int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def distribution_table(
    scores: Sequence[SimilarityRecord],
    preds: PredictionSet,
    golds: Mapping[str, int],
) -> DistributionTable:
    by_candidate = {record.candidate_id: record for record in scores}
    counts = {(source, outcome): 0 for source in SOURCES for outcome in OUTCOMES}
    for candidate_id, label in preds.flat().items():
        record = by_candidate.get(candidate_id)
        if record is None:
            raise EvaluationError(f"no similarity record for candidate {candidate_id!r}")
        if candidate_id not in golds:
            raise EvaluationError(f"no gold label for candidate {candidate_id!r}")
        outcome = "R" if label == golds[candidate_id] else "W"
        counts[(record.higher_source, outcome)] += 1
    return DistributionTable(counts)


@dataclass(frozen=True)
class ThresholdSweep:
    grid: tuple[float, ...]
    scores: dict[float, float]
    best_threshold: float
    best_f1: float


def sweep_threshold(
    scored_items: Sequence[tuple[float, int]],
    grid: Sequence[float],
    direction: str = "ge",
) -> ThresholdSweep:
    """Macro-F1 of thresholded scores over a grid of cutoffs.

    ``direction`` chooses the binarization: ``"ge"`` labels score >= t as 1,
    ``"lt"`` labels score < t as 1. The best threshold is the smallest grid
    value attaining the maximum macro-F1.
    """
    if direction not in SWEEP_DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}, expected one of {SWEEP_DIRECTIONS}")
    if len(grid) == 0:
        raise ValueError("threshold grid must not be empty")
    if len(scored_items) == 0:
        raise ValueError("cannot sweep with no scored items")
    golds = [gold for _, gold in scored_items]
    results: dict[float, float] = {}
    for threshold in grid:
        threshold = float(threshold)
        if direction == "ge":
            preds = [1 if score >= threshold else 0 for score, _ in scored_items]
        else:
            preds = [1 if score < threshold else 0 for score, _ in scored_items]
        results[threshold] = classification_report(preds, golds).macro_f1
    best_f1 = max(results.values())
    best_threshold = min(t for t, f1 in results.items() if f1 == best_f1)
    return ThresholdSweep(
        grid=tuple(float(t) for t in grid),
        scores=results,
        best_threshold=best_threshold,
        best_f1=best_f1,
    )


def report_to_dict(report: EvalReport) -> dict:
    return {
        "accuracy": report.accuracy,
        "macro_f1": report.macro_f1,
        "n": report.n,
        "per_class": {
            str(cls): {"precision": m.precision, "recall": m.recall, "f1": m.f1}
            for cls, m in report.per_class.items()
        },
    }


def report_to_json(report: EvalReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def report_to_text(report: EvalReport) -> str:
    lines = [
        f"candidates  {report.n}",
        f"accuracy    {report.accuracy:.4f}",
        f"macro_f1    {report.macro_f1:.4f}",
        "",
        f"{'class':<6}{'precision':>10}{'recall':>8}{'f1':>8}",
    ]
    for cls in CLASSES:
        m = report.per_class[cls]
        lines.append(f"{cls:<6}{m.precision:>10.4f}{m.recall:>8.4f}{m.f1:>8.4f}")
    return "\n".join(lines)


def distribution_to_dict(table: DistributionTable) -> dict:
    return {f"{source},{outcome}": count for (source, outcome), count in table.counts.items()}


def distribution_to_json(table: DistributionTable) -> str:
    return json.dumps(distribution_to_dict(table), indent=2)


def distribution_to_text(table: DistributionTable) -> str:
    lines = [f"{'higher score':<14}{'outcome':<9}{'count':>6}"]
    for source in SOURCES:
        for outcome in OUTCOMES:
            lines.append(f"{source:<14}{outcome:<9}{table.counts[(source, outcome)]:>6}")
    lines.append(f"{'total':<23}{table.total:>6}")
    return "\n".join(lines)


def sweep_to_dict(sweep: ThresholdSweep) -> dict:
    return {
        "grid": list(sweep.grid),
        "macro_f1": {repr(t): f1 for t, f1 in sweep.scores.items()},
        "best_threshold": sweep.best_threshold,
        "best_f1": sweep.best_f1,
    }


def sweep_to_text(sweep: ThresholdSweep) -> str:
    lines = [f"{'threshold':>12}  {'macro_f1':>8}"]
    for threshold in sweep.grid:
        lines.append(f"{threshold:>12.6g}  {sweep.scores[threshold]:>8.4f}")
    lines.append(f"best: threshold={sweep.best_threshold:.6g} macro_f1={sweep.best_f1:.4f}")
    return "\n".join(lines)
