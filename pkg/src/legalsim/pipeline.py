"""Orchestration shared by the CLI and the demo scripts.

Covers the on-disk summary cache, training-corpus assembly, pooled and
external vector tables, and the score-label-evaluate run for one system.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Dataset, gold_labels, summary_id
from .embeddings import pool_tokens
from .evaluation import EvalReport, evaluate
from .labeling import LabelingRule, PredictionSet, label_all
from .scoring import SimilarityRecord, score_candidates
from .summarizer import SummaryRecord, SummarySpec, summarize_segmentwise
from .textproc import tokenize

LOGGER = logging.getLogger(__name__)

SYSTEMS = (
    "word2vec-cosine",
    "glove-cosine",
    "transformer-cosine",
    "transformer-euclidean",
    "transformer-manhattan",
)


class PipelineError(Exception):
    """A pipeline stage is missing its inputs or received inconsistent ones."""


def family_for(system: str) -> str:
    """Embedding family a system runs on: word2vec, glove or transformer."""
    _check_system(system)
    return system.rsplit("-", 1)[0]


def metric_for(system: str) -> str:
    _check_system(system)
    return system.rsplit("-", 1)[1]


def default_rule(system: str) -> LabelingRule:
    """Labeling rule a system uses unless overridden.

    Cosine systems label by similarity; the transformer-cosine system runs
    plain argmax (no replacement) while the trained-embedding systems replace
    within epsilon. Distance systems replace within delta.
    """
    metric = metric_for(system)
    if metric == "cosine":
        return LabelingRule(mode="similarity", replacement_enabled=system != "transformer-cosine")
    return LabelingRule(mode="distance", replacement_enabled=True)


def _check_system(system: str) -> None:
    if system not in SYSTEMS:
        raise PipelineError(f"unknown system {system!r}, expected one of {SYSTEMS}")


def summarize_dataset(dataset: Dataset, spec: SummarySpec, backend) -> dict[str, SummaryRecord]:
    """Two-level summary of every question's explanation text."""
    records: dict[str, SummaryRecord] = {}
    for record in dataset.records:
        if not record.explanation_text.strip():
            LOGGER.warning("question %s has no explanation text; summary left empty", record.question_id)
            records[record.question_id] = SummaryRecord(
                record.question_id, "", "", getattr(backend, "name", "custom")
            )
            continue
        records[record.question_id] = summarize_segmentwise(
            record.explanation_text, spec, backend, question_id=record.question_id
        )
    return records


def write_summaries(directory: str | Path, records: Mapping[str, SummaryRecord]) -> int:
    """Persist one JSON file per question; on failure no partial set remains."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        for question_id in records:
            record = records[question_id]
            path = directory / f"{question_id}.json"
            payload = {
                "question_id": record.question_id,
                "level1_summary": record.level1_summary,
                "final_summary": record.final_summary,
                "backend": record.backend,
            }
            path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
            written.append(path)
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return len(written)


def read_summaries(directory: str | Path) -> dict[str, SummaryRecord]:
    directory = Path(directory)
    if not directory.is_dir():
        raise PipelineError(f"summaries directory {directory} does not exist; run prepare first")
    records: dict[str, SummaryRecord] = {}
    for path in sorted(directory.glob("*.json")):
        payload = json.loads(path.read_text(encoding="utf-8"))
        record = SummaryRecord(
            question_id=payload["question_id"],
            level1_summary=payload["level1_summary"],
            final_summary=payload["final_summary"],
            backend=payload["backend"],
        )
        records[record.question_id] = record
    return records


def _summary_for(summaries: Mapping[str, SummaryRecord], question_id: str) -> SummaryRecord:
    record = summaries.get(question_id)
    if record is None:
        raise PipelineError(
            f"no cached summary for question {question_id!r}; run prepare for this split"
        )
    return record


def training_token_lists(
    pairs: Sequence[tuple[Dataset, Mapping[str, SummaryRecord]]],
) -> list[list[str]]:
    """Token lists feeding the embedding trainers.

    One list per question text, per candidate answer text and per final
    summary, across all given (dataset, summaries) pairs. Empty token lists
    are dropped.
    """
    lists: list[list[str]] = []
    for dataset, summaries in pairs:
        for record in dataset.records:
            lists.append(tokenize(record.question_text))
            for cand in record.candidates:
                lists.append(tokenize(cand.answer_text))
            lists.append(tokenize(_summary_for(summaries, record.question_id).final_summary))
    return [tokens for tokens in lists if tokens]


def pooled_vector_table(
    dataset: Dataset,
    summaries: Mapping[str, SummaryRecord],
    token_vectors: Mapping[str, np.ndarray],
    dim: int,
) -> dict[str, np.ndarray]:
    """Mean-pooled vector for every question, candidate and summary text."""
    table: dict[str, np.ndarray] = {}
    for record in dataset.records:
        table[record.question_id] = pool_tokens(
            tokenize(record.question_text), token_vectors, dim
        ).values
        for cand in record.candidates:
            table[cand.candidate_id] = pool_tokens(
                tokenize(cand.answer_text), token_vectors, dim
            ).values
        summary = _summary_for(summaries, record.question_id)
        table[summary_id(record.question_id)] = pool_tokens(
            tokenize(summary.final_summary), token_vectors, dim
        ).values
    return table


def score_groups(
    dataset: Dataset,
    vectors: Mapping[str, np.ndarray],
    summaries: Mapping[str, SummaryRecord],
    metric: str,
) -> list[list[SimilarityRecord]]:
    """Per-question similarity records for the whole split."""
    return [
        score_candidates(record, vectors, _summary_for(summaries, record.question_id), metric)
        for record in dataset.records
    ]


def run_prediction(
    dataset: Dataset,
    vectors: Mapping[str, np.ndarray],
    summaries: Mapping[str, SummaryRecord],
    metric: str,
    rule: LabelingRule,
) -> tuple[PredictionSet, list[SimilarityRecord]]:
    """Score and label every group; returns predictions and flat scores."""
    groups = score_groups(dataset, vectors, summaries, metric)
    predictions = label_all(groups, rule)
    flat = [record for group in groups for record in group]
    return predictions, flat


def evaluate_predictions(dataset: Dataset, predictions: PredictionSet) -> EvalReport | None:
    """EvalReport when the dataset carries gold labels, else None."""
    golds = gold_labels(dataset)
    if not golds:
        return None
    return evaluate(predictions, golds)
