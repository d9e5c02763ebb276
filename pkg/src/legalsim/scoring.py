"""Vector metrics, per-candidate scoring and sigmoid-mean calibration."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import QaRecord, summary_id
from .summarizer import SummaryRecord

METRICS = ("cosine", "euclidean", "manhattan")
DISTANCE_METRICS = ("euclidean", "manhattan")

SCORE_CSV_COLUMNS = (
    "question_id",
    "candidate_id",
    "metric",
    "qa_score",
    "as_score",
    "combined",
    "higher_source",
)


class ScoringError(Exception):
    """A required vector is missing or inputs are inconsistent."""


def is_distance_metric(metric: str) -> bool:
    return metric in DISTANCE_METRICS


def similarity(u: np.ndarray, v: np.ndarray, metric: str) -> float:
    """Cosine similarity or euclidean/manhattan distance between two vectors.

    Cosine with a zero-norm operand is defined as 0.0 rather than an error,
    since all-out-of-vocabulary pooled sentences produce zero vectors.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"vectors must be 1-d of equal dim, got {u.shape} and {v.shape}")
    if metric == "cosine":
        nu = float(np.linalg.norm(u))
        nv = float(np.linalg.norm(v))
        if nu == 0.0 or nv == 0.0:
            return 0.0
        return float(u @ v) / (nu * nv)
    if metric == "euclidean":
        return float(np.linalg.norm(u - v))
    return float(np.abs(u - v).sum())


@dataclass(frozen=True)
class SimilarityRecord:
    """Question-answer and answer-summary scores for one candidate.

    ``higher_source`` is ``"Q"`` when the question-answer score strictly
    outranks the answer-summary score under the metric's orientation
    (greater similarity, or smaller distance), ``"S"`` otherwise.
    """

    question_id: str
    candidate_id: str
    qa_score: float
    as_score: float
    combined: float
    metric: str
    higher_source: str


def score_candidates(
    group: QaRecord,
    vectors: Mapping[str, np.ndarray],
    summary: SummaryRecord,
    metric: str,
) -> list[SimilarityRecord]:
    """Score every candidate of one question against the question and summary.

    ``vectors`` maps text ids (question id, candidate ids, summary id) to
    vectors; a missing id raises :class:`ScoringError` naming it. The
    combined score is the mean of the two scores.
    """
    sid = summary_id(summary.question_id or group.question_id)
    needed = [group.question_id, sid] + [c.candidate_id for c in group.candidates]
    for text_id in needed:
        if text_id not in vectors:
            raise ScoringError(f"no vector for id {text_id!r}")

    question_vec = vectors[group.question_id]
    summary_vec = vectors[sid]
    distance = is_distance_metric(metric)
    records = []
    for cand in group.candidates:
        answer_vec = vectors[cand.candidate_id]
        qa = similarity(question_vec, answer_vec, metric)
        asim = similarity(answer_vec, summary_vec, metric)
        q_outranks = qa < asim if distance else qa > asim
        records.append(
            SimilarityRecord(
                question_id=group.question_id,
                candidate_id=cand.candidate_id,
                qa_score=qa,
                as_score=asim,
                combined=(qa + asim) / 2.0,
                metric=metric,
                higher_source="Q" if q_outranks else "S",
            )
        )
    return records


def calibrate_sigmoid_mean(scores: Sequence[float] | np.ndarray) -> np.ndarray:
    """Mean-centered logistic squashing: sigmoid(x - mean(x)) elementwise.

    Strictly monotone, so the ranking of the inputs is preserved; a constant
    input maps to all 0.5.
    """
    x = np.asarray(scores, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot calibrate an empty score vector")
    if not np.all(np.isfinite(x)):
        raise ValueError("scores must be finite")
    centered = x - x.mean()
    return 0.5 * (1.0 + np.tanh(0.5 * centered))


@dataclass(frozen=True)
class CalibrationResult:
    """Raw scores, their mean, and the calibrated probabilities."""

    scores: np.ndarray
    mean: float
    probabilities: np.ndarray

    @classmethod
    def from_scores(cls, scores: Sequence[float] | np.ndarray) -> "CalibrationResult":
        x = np.asarray(scores, dtype=np.float64)
        return cls(scores=x, mean=float(x.mean()), probabilities=calibrate_sigmoid_mean(x))


def write_scores_csv(path: str | Path, records: Sequence[SimilarityRecord]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SCORE_CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.question_id,
                    r.candidate_id,
                    r.metric,
                    repr(r.qa_score),
                    repr(r.as_score),
                    repr(r.combined),
                    r.higher_source,
                ]
            )


def read_scores_csv(path: str | Path) -> list[SimilarityRecord]:
    records = []
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            records.append(
                SimilarityRecord(
                    question_id=row["question_id"],
                    candidate_id=row["candidate_id"],
                    qa_score=float(row["qa_score"]),
                    as_score=float(row["as_score"]),
                    combined=float(row["combined"]),
                    metric=row["metric"],
                    higher_source=row["higher_source"],
                )
            )
    return records
