"""Orchestration: summary cache, pooled vectors, prediction runs."""

from __future__ import annotations

import json

import numpy as np
import pytest

from legalsim.corpus import gold_labels, load_split, strip_labels, summary_id
from legalsim.pipeline import (
    SYSTEMS,
    PipelineError,
    default_rule,
    evaluate_predictions,
    family_for,
    metric_for,
    pooled_vector_table,
    read_summaries,
    run_prediction,
    score_groups,
    summarize_dataset,
    training_token_lists,
    write_summaries,
)
from legalsim.summarizer import ExtractiveBackend, SummarySpec
from legalsim.textproc import tokenize

from conftest import make_rows, write_jsonl


def test_system_registry():
    assert family_for("word2vec-cosine") == "word2vec"
    assert family_for("transformer-manhattan") == "transformer"
    assert metric_for("glove-cosine") == "cosine"
    assert metric_for("transformer-euclidean") == "euclidean"
    with pytest.raises(PipelineError):
        family_for("bert-dot")


def test_default_rules_per_system():
    # cosine systems replace on near ties, except the transformer argmax
    rule = default_rule("word2vec-cosine")
    assert (rule.mode, rule.replacement_enabled, rule.epsilon) == ("similarity", True, 0.0005)
    rule = default_rule("glove-cosine")
    assert rule.replacement_enabled
    rule = default_rule("transformer-cosine")
    assert (rule.mode, rule.replacement_enabled) == ("similarity", False)
    for system in ("transformer-euclidean", "transformer-manhattan"):
        rule = default_rule(system)
        assert (rule.mode, rule.replacement_enabled, rule.delta) == ("distance", True, 0.8)


@pytest.fixture
def small_setup(tmp_path, rng):
    rows = make_rows(rng, n_questions=4, explanation_sentences=8)
    dataset = load_split(write_jsonl(tmp_path / "d.jsonl", rows), "jsonl", "train")
    spec = SummarySpec(level1_segment_tokens=60, level2_segment_tokens=25)
    summaries = summarize_dataset(dataset, spec, ExtractiveBackend(0.4))
    return dataset, spec, summaries


def test_summarize_dataset_covers_every_question(small_setup):
    dataset, _, summaries = small_setup
    assert set(summaries) == {r.question_id for r in dataset.records}
    for record in summaries.values():
        assert record.final_summary
        assert record.backend == "extractive_fallback"


def test_summary_cache_round_trip(tmp_path, small_setup):
    dataset, _, summaries = small_setup
    directory = tmp_path / "cache"
    count = write_summaries(directory, summaries)
    assert count == len(summaries)
    files = sorted(directory.glob("*.json"))
    assert len(files) == len(summaries)
    payload = json.loads(files[0].read_text())
    assert set(payload) == {"question_id", "level1_summary", "final_summary", "backend"}
    again = read_summaries(directory)
    assert again == summaries


def test_read_summaries_missing_directory(tmp_path):
    with pytest.raises(PipelineError) as exc:
        read_summaries(tmp_path / "nope")
    assert "prepare" in str(exc.value)


def test_training_token_lists_cover_all_texts(small_setup):
    dataset, _, summaries = small_setup
    lists = training_token_lists([(dataset, summaries)])
    # one list per question, per candidate, per summary, empties dropped
    n_candidates = sum(len(r.candidates) for r in dataset.records)
    assert len(lists) == len(dataset.records) * 2 + n_candidates
    assert all(lists)
    joined = {" ".join(tokens) for tokens in lists}
    assert " ".join(tokenize(dataset.records[0].question_text)) in joined


def test_pooled_vector_table_ids_and_values(small_setup):
    dataset, _, summaries = small_setup
    token_vectors = {}
    gen = np.random.default_rng(3)
    for tokens in training_token_lists([(dataset, summaries)]):
        for token in tokens:
            token_vectors.setdefault(token, gen.normal(0, 1, 4))
    table = pooled_vector_table(dataset, summaries, token_vectors, dim=4)
    for record in dataset.records:
        assert record.question_id in table
        assert summary_id(record.question_id) in table
        for cand in record.candidates:
            assert cand.candidate_id in table
        expected = np.mean(
            [token_vectors[t] for t in tokenize(record.question_text)], axis=0
        )
        np.testing.assert_allclose(table[record.question_id], expected, rtol=1e-12)


def test_run_prediction_and_evaluation(small_setup):
    dataset, _, summaries = small_setup
    gen = np.random.default_rng(5)
    token_vectors = {}
    for tokens in training_token_lists([(dataset, summaries)]):
        for token in tokens:
            token_vectors.setdefault(token, gen.normal(0, 1, 5))
    vectors = pooled_vector_table(dataset, summaries, token_vectors, dim=5)

    rule = default_rule("word2vec-cosine")
    predictions, scores = run_prediction(dataset, vectors, summaries, "cosine", rule)
    predictions.validate()
    assert len(scores) == dataset.candidate_count
    assert {r.candidate_id for r in scores} == set(gold_labels(dataset))

    report = evaluate_predictions(dataset, predictions)
    assert report is not None
    assert 0.0 <= report.macro_f1 <= 1.0
    assert report.n == dataset.candidate_count

    # unlabeled data: no report
    assert evaluate_predictions(strip_labels(dataset), predictions) is None


def test_score_groups_order(small_setup):
    dataset, _, summaries = small_setup
    gen = np.random.default_rng(6)
    token_vectors = {}
    for tokens in training_token_lists([(dataset, summaries)]):
        for token in tokens:
            token_vectors.setdefault(token, gen.normal(0, 1, 3))
    vectors = pooled_vector_table(dataset, summaries, token_vectors, dim=3)
    groups = score_groups(dataset, vectors, summaries, "manhattan")
    assert [g[0].question_id for g in groups] == [r.question_id for r in dataset.records]
    assert all(r.metric == "manhattan" for g in groups for r in g)


def test_blank_explanation_gets_empty_summary(tmp_path):
    rows = [
        {"question": "What here?", "answer": "this", "explanation": "   ", "label": 1},
        {"question": "What here?", "answer": "that", "explanation": "   ", "label": 0},
    ]
    dataset = load_split(write_jsonl(tmp_path / "d.jsonl", rows), "jsonl", "train")
    summaries = summarize_dataset(dataset, SummarySpec(), ExtractiveBackend())
    record = summaries["q0001"]
    assert record.final_summary == ""


def test_write_summaries_cleans_up_after_failure(tmp_path, small_setup):
    dataset, _, summaries = small_setup
    bad = dict(summaries)
    # an unwritable record triggers the cleanup path
    bad["q9999"] = object()
    directory = tmp_path / "cache"
    with pytest.raises(Exception):
        write_summaries(directory, bad)
    assert not list(directory.glob("*.json"))
