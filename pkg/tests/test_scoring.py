"""Similarity metrics, candidate scoring, and sigmoid-mean calibration."""

from __future__ import annotations

import math

import numpy as np
import pytest

from legalsim.corpus import AnswerCandidate, QaRecord
from legalsim.scoring import (
    CalibrationResult,
    ScoringError,
    calibrate_sigmoid_mean,
    read_scores_csv,
    score_candidates,
    similarity,
    write_scores_csv,
)
from legalsim.summarizer import SummaryRecord


def oracle_cosine(u, v) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def oracle_euclidean(u, v) -> float:
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(u, v)))


def oracle_manhattan(u, v) -> float:
    return sum(abs(a - b) for a, b in zip(u, v))


def test_metrics_match_scalar_oracles():
    gen = np.random.default_rng(41)
    for _ in range(60):
        dim = int(gen.integers(1, 12))
        u = gen.normal(0, 2, dim)
        v = gen.normal(0, 2, dim)
        assert similarity(u, v, "cosine") == pytest.approx(oracle_cosine(u, v), rel=1e-12)
        assert similarity(u, v, "euclidean") == pytest.approx(oracle_euclidean(u, v), rel=1e-12)
        assert similarity(u, v, "manhattan") == pytest.approx(oracle_manhattan(u, v), rel=1e-12)


def test_cosine_zero_vector_is_zero():
    assert similarity(np.zeros(4), np.ones(4), "cosine") == 0.0
    assert similarity(np.ones(4), np.zeros(4), "cosine") == 0.0


def test_metric_validation():
    with pytest.raises(ValueError):
        similarity(np.ones(3), np.ones(3), "dot")
    with pytest.raises(ValueError):
        similarity(np.ones(3), np.ones(4), "cosine")


def make_group(n_candidates: int = 3) -> QaRecord:
    qid = "q0001"
    candidates = tuple(
        AnswerCandidate(
            candidate_id=f"{qid}_a{m:02d}",
            question_id=qid,
            answer_text=f"answer {m}",
            gold_label=None,
        )
        for m in range(1, n_candidates + 1)
    )
    return QaRecord(
        question_id=qid,
        question_text="the question",
        explanation_text="the explanation",
        candidates=candidates,
        analysis_text=None,
        complete_analysis_text=None,
    )


def make_vectors(group, gen) -> dict[str, np.ndarray]:
    table = {group.question_id: gen.normal(0, 1, 4), "q0001_summary": gen.normal(0, 1, 4)}
    for cand in group.candidates:
        table[cand.candidate_id] = gen.normal(0, 1, 4)
    return table


def test_score_candidates_combined_is_mean():
    gen = np.random.default_rng(5)
    group = make_group(4)
    vectors = make_vectors(group, gen)
    summary = SummaryRecord("q0001", "lvl1", "final", "extractive_fallback")
    records = score_candidates(group, vectors, summary, "cosine")
    assert [r.candidate_id for r in records] == [c.candidate_id for c in group.candidates]
    for record in records:
        qa = oracle_cosine(vectors[group.question_id], vectors[record.candidate_id])
        asim = oracle_cosine(vectors[record.candidate_id], vectors["q0001_summary"])
        assert record.qa_score == pytest.approx(qa, rel=1e-12)
        assert record.as_score == pytest.approx(asim, rel=1e-12)
        assert record.combined == pytest.approx((qa + asim) / 2.0, rel=1e-12)
        assert record.metric == "cosine"


def test_higher_source_orientation():
    group = make_group(1)
    vectors = {
        "q0001": np.array([1.0, 0.0]),
        "q0001_a01": np.array([1.0, 0.0]),
        "q0001_summary": np.array([0.0, 1.0]),
    }
    summary = SummaryRecord("q0001", "", "", "extractive_fallback")
    # cosine: qa=1 > as=0, question side wins
    rec = score_candidates(group, vectors, summary, "cosine")[0]
    assert rec.higher_source == "Q"
    # euclidean: qa=0 < as, smaller distance wins, still the question side
    rec = score_candidates(group, vectors, summary, "euclidean")[0]
    assert rec.higher_source == "Q"
    # exact tie goes to the summary side
    vectors["q0001_summary"] = vectors["q0001"]
    rec = score_candidates(group, vectors, summary, "cosine")[0]
    assert rec.higher_source == "S"


def test_score_candidates_missing_vector_names_id():
    gen = np.random.default_rng(6)
    group = make_group(2)
    vectors = make_vectors(group, gen)
    del vectors["q0001_a02"]
    summary = SummaryRecord("q0001", "", "", "extractive_fallback")
    with pytest.raises(ScoringError) as exc:
        score_candidates(group, vectors, summary, "cosine")
    assert "q0001_a02" in str(exc.value)


def test_calibration_constant_input_gives_half():
    out = calibrate_sigmoid_mean([3.7, 3.7, 3.7, 3.7])
    np.testing.assert_allclose(out, np.full(4, 0.5), rtol=0, atol=1e-15)


def test_calibration_matches_direct_formula():
    gen = np.random.default_rng(8)
    for _ in range(30):
        x = gen.normal(0, 3, int(gen.integers(1, 20)))
        out = calibrate_sigmoid_mean(x)
        centered = x - x.mean()
        direct = 1.0 / (1.0 + np.exp(-centered))
        np.testing.assert_allclose(out, direct, rtol=1e-12)


def test_calibration_preserves_ranking():
    gen = np.random.default_rng(9)
    for _ in range(20):
        x = gen.normal(0, 10, 50)
        out = calibrate_sigmoid_mean(x)
        np.testing.assert_array_equal(np.argsort(x), np.argsort(out))


def test_calibration_rejects_bad_input():
    with pytest.raises(ValueError):
        calibrate_sigmoid_mean([])
    with pytest.raises(ValueError):
        calibrate_sigmoid_mean([1.0, float("nan")])


def test_calibration_result_container():
    result = CalibrationResult.from_scores([1.0, 2.0, 3.0])
    assert result.mean == pytest.approx(2.0)
    assert result.probabilities[1] == pytest.approx(0.5)


def test_scores_csv_round_trip(tmp_path):
    gen = np.random.default_rng(10)
    group = make_group(3)
    vectors = make_vectors(group, gen)
    summary = SummaryRecord("q0001", "", "", "extractive_fallback")
    records = score_candidates(group, vectors, summary, "manhattan")
    path = tmp_path / "scores.csv"
    write_scores_csv(path, records)
    again = read_scores_csv(path)
    assert again == records
