"""Scoring candidates and picking one answer per question.

Each candidate gets two scores under a chosen metric: question-to-answer
and answer-to-summary. Their mean is the combined score. The labeling rule
ranks candidates by combined score and normally takes the leader, but when
the runner-up is close it takes the runner-up instead: for similarity
metrics when the gap is at most epsilon (default 0.0005), for distance
metrics when the gap is below delta (default 0.8).
"""

from __future__ import annotations

import numpy as np

from legalsim import (
    AnswerCandidate,
    LabelingRule,
    QaRecord,
    SimilarityRecord,
    SummaryRecord,
    calibrate_sigmoid_mean,
    label_group,
    score_candidates,
    similarity,
)


def toy_group() -> tuple[QaRecord, dict[str, np.ndarray], SummaryRecord]:
    record = QaRecord(
        question_id="q0001",
        question_text="is the seller liable",
        explanation_text="(explanation omitted; vectors below stand in for its summary)",
        candidates=(
            AnswerCandidate("q0001_a01", "q0001", "yes fully liable"),
            AnswerCandidate("q0001_a02", "q0001", "only for foreseeable loss"),
            AnswerCandidate("q0001_a03", "q0001", "not liable at all"),
        ),
    )
    vectors = {
        "q0001": np.array([1.0, 0.2]),
        "q0001_summary": np.array([0.8, 0.6]),
        "q0001_a01": np.array([0.9, 0.4]),
        "q0001_a02": np.array([0.3, 1.0]),
        "q0001_a03": np.array([-0.7, 0.1]),
    }
    summary = SummaryRecord("q0001", "ignored", "ignored", "demo")
    return record, vectors, summary


def main() -> None:
    record, vectors, summary = toy_group()

    print("pairwise metrics on two vectors:")
    u, v = vectors["q0001"], vectors["q0001_a01"]
    for metric in ("cosine", "euclidean", "manhattan"):
        print(f"  {metric:10s} {similarity(u, v, metric):+.4f}")
    print()

    scores = score_candidates(record, vectors, summary, metric="cosine")
    print("candidate scores (cosine):")
    for rec in scores:
        print(f"  {rec.candidate_id}: qa={rec.qa_score:+.4f} as={rec.as_score:+.4f} "
              f"combined={rec.combined:+.4f} higher={rec.higher_source}")

    rule = LabelingRule(mode="similarity", epsilon=0.0005, delta=0.8,
                        replacement_enabled=True)
    labels = label_group(scores, rule)
    print("labels with the default similarity rule:", labels, "\n")

    # When the top two are nearly tied the rule flips to the runner-up.
    # Here a01 leads a02 by less than epsilon, so a02 gets the label.
    near_tie = [
        SimilarityRecord("q0002", "q0002_a01", 0.9001, 0.9001, 0.9001, "cosine", "S"),
        SimilarityRecord("q0002", "q0002_a02", 0.9000, 0.9000, 0.9000, "cosine", "S"),
        SimilarityRecord("q0002", "q0002_a03", 0.1000, 0.1000, 0.1000, "cosine", "S"),
    ]
    with_repl = label_group(near_tie, rule)
    without = label_group(near_tie, LabelingRule(mode="similarity", epsilon=0.0005,
                                                 delta=0.8, replacement_enabled=False))
    print("near-tie group, replacement on: ", with_repl)
    print("near-tie group, replacement off:", without, "\n")

    # Combined scores can be squashed to (0, 1) for threshold sweeps without
    # changing their order: a centered sigmoid.
    combined = [rec.combined for rec in scores]
    calibrated = calibrate_sigmoid_mean(combined)
    print("calibrated scores:", np.round(calibrated, 4))
    print("order preserved:", list(np.argsort(combined)) == list(np.argsort(calibrated)))


if __name__ == "__main__":
    main()
