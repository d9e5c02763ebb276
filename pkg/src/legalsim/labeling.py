"""Second-best-replacement labeling of per-group scores.

Each question group gets exactly one positive label. The leader by combined
score wins unless replacement is enabled and the runner-up is within the
threshold, in which case the runner-up is labeled positive instead. The
similarity variant replaces when the gap is <= epsilon; the distance variant
replaces when the gap is strictly < delta.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .scoring import SimilarityRecord

MODES = ("similarity", "distance")

PREDICTION_CSV_COLUMNS = ("question_id", "candidate_id", "label")


@dataclass(frozen=True)
class LabelingRule:
    mode: str = "similarity"
    replacement_enabled: bool = True
    epsilon: float = 0.0005
    delta: float = 0.8

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        if self.epsilon < 0 or self.delta < 0:
            raise ValueError("epsilon and delta must be >= 0")


@dataclass
class PredictionSet:
    """Binary labels keyed by question id, then candidate id."""

    labels: dict[str, dict[str, int]] = field(default_factory=dict)

    def set_group(self, question_id: str, group_labels: dict[str, int]) -> None:
        self.labels[question_id] = dict(group_labels)

    def flat(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for group in self.labels.values():
            out.update(group)
        return out

    def validate(self) -> None:
        """Check the one-positive-per-group invariant."""
        for question_id, group in self.labels.items():
            positives = sum(group.values())
            if positives != 1:
                raise ValueError(
                    f"group {question_id!r} has {positives} positive labels, expected 1"
                )


def _ranked_by_similarity(scores: Sequence[SimilarityRecord]) -> list[SimilarityRecord]:
    # exact ties broken by smallest candidate_id
    return sorted(scores, key=lambda r: (-r.combined, r.candidate_id))


def _ranked_by_distance(scores: Sequence[SimilarityRecord]) -> list[SimilarityRecord]:
    return sorted(scores, key=lambda r: (r.combined, r.candidate_id))


def label_by_similarity(
    scores: Sequence[SimilarityRecord], rule: LabelingRule
) -> dict[str, int]:
    """Label one group of similarity scores; returns candidate_id -> 0/1."""
    if not scores:
        raise ValueError("cannot label an empty group")
    if rule.mode != "similarity":
        raise ValueError(f"rule mode is {rule.mode!r}, expected 'similarity'")
    ranked = _ranked_by_similarity(scores)
    winner = ranked[0]
    if (
        rule.replacement_enabled
        and len(ranked) >= 2
        and abs(ranked[0].combined - ranked[1].combined) <= rule.epsilon
    ):
        winner = ranked[1]
    labels = {record.candidate_id: 0 for record in scores}
    labels[winner.candidate_id] = 1
    return labels


def label_by_distance(
    scores: Sequence[SimilarityRecord], rule: LabelingRule
) -> dict[str, int]:
    """Label one group of distance scores; returns candidate_id -> 0/1."""
    if not scores:
        raise ValueError("cannot label an empty group")
    if rule.mode != "distance":
        raise ValueError(f"rule mode is {rule.mode!r}, expected 'distance'")
    ranked = _ranked_by_distance(scores)
    winner = ranked[0]
    if (
        rule.replacement_enabled
        and len(ranked) >= 2
        and ranked[1].combined - ranked[0].combined < rule.delta
    ):
        winner = ranked[1]
    labels = {record.candidate_id: 0 for record in scores}
    labels[winner.candidate_id] = 1
    return labels


def label_group(scores: Sequence[SimilarityRecord], rule: LabelingRule) -> dict[str, int]:
    if rule.mode == "similarity":
        return label_by_similarity(scores, rule)
    return label_by_distance(scores, rule)


def label_all(
    groups: Iterable[Sequence[SimilarityRecord]], rule: LabelingRule
) -> PredictionSet:
    """Apply the labeling rule to every score group."""
    predictions = PredictionSet()
    for scores in groups:
        if not scores:
            raise ValueError("cannot label an empty group")
        predictions.set_group(scores[0].question_id, label_group(scores, rule))
    return predictions


def write_predictions_csv(path: str | Path, predictions: PredictionSet) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(PREDICTION_CSV_COLUMNS)
        for question_id, group in predictions.labels.items():
            for candidate_id, label in group.items():
                writer.writerow([question_id, candidate_id, label])


def read_predictions_csv(path: str | Path) -> PredictionSet:
    predictions = PredictionSet()
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            label = int(row["label"])
            if label not in (0, 1):
                raise ValueError(f"label must be 0 or 1, got {row['label']!r}")
            predictions.labels.setdefault(row["question_id"], {})[row["candidate_id"]] = label
    return predictions
