"""Embedding matrix container, text file I/O, and sentence pooling."""

from __future__ import annotations

import numpy as np
import pytest

from legalsim.embeddings import (
    EmbeddingFormatError,
    EmbeddingMatrix,
    TrainConfig,
    load_external_embeddings,
    pool_sentence,
    pool_tokens,
    save_embeddings,
)
from legalsim.textproc import build_vocab


def test_word2vec_default_config():
    cfg = TrainConfig.word2vec_defaults(seed=9)
    assert (cfg.dim, cfg.window, cfg.epochs) == (5, 7, 15)
    assert cfg.learning_rate == 0.025
    assert cfg.negatives == 5
    assert cfg.seed == 9


def test_glove_default_config():
    cfg = TrainConfig.glove_defaults()
    assert (cfg.dim, cfg.window, cfg.epochs) == (5, 10, 30)
    assert cfg.learning_rate == 0.05
    assert cfg.x_max == 100.0
    assert cfg.alpha == 0.75


def test_config_validation():
    for kwargs in (
        {"dim": 0},
        {"window": 0},
        {"epochs": 0},
        {"learning_rate": 0.0},
        {"learning_rate": -1.0},
        {"negatives": -1},
        {"x_max": 0.0},
        {"alpha": -0.1},
    ):
        with pytest.raises(ValueError):
            TrainConfig(**kwargs)


def test_matrix_validation():
    good = np.zeros((3, 5))
    EmbeddingMatrix(dim=5, vectors=good, source="word2vec")
    with pytest.raises(ValueError):
        EmbeddingMatrix(dim=4, vectors=good, source="word2vec")
    with pytest.raises(ValueError):
        EmbeddingMatrix(dim=5, vectors=good, source="fasttext")
    bad = good.copy()
    bad[1, 2] = np.nan
    with pytest.raises(ValueError):
        EmbeddingMatrix(dim=5, vectors=bad, source="glove")


def test_save_load_round_trip_exact(tmp_path, rng):
    n, dim = 17, 5
    vectors = np.array(
        [[rng.uniform(-2, 2) for _ in range(dim)] for _ in range(n)], dtype=np.float64
    )
    ids = [f"tok{i}" for i in range(n)]
    path = tmp_path / "emb.txt"
    save_embeddings(path, ids, vectors)

    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header == f"{n} {dim}"

    mapping = load_external_embeddings(path)
    assert list(mapping) == ids
    for i, tok in enumerate(ids):
        # repr round-trip must be bit exact
        assert mapping[tok].tolist() == vectors[i].tolist()


def test_save_rejects_ids_with_spaces(tmp_path):
    with pytest.raises(ValueError):
        save_embeddings(tmp_path / "e.txt", ["a b"], np.zeros((1, 3)))


def test_load_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    assert load_external_embeddings(path) == {}


def test_load_error_line_numbers(tmp_path):
    path = tmp_path / "bad_header.txt"
    path.write_text("not a header\n")
    with pytest.raises(EmbeddingFormatError) as exc:
        load_external_embeddings(path)
    assert exc.value.line_number == 1

    path = tmp_path / "bad_dim.txt"
    path.write_text("2 3\nid1 0.0 1.0 2.0\nid2 0.0 1.0\n")
    with pytest.raises(EmbeddingFormatError) as exc:
        load_external_embeddings(path)
    assert exc.value.line_number == 3

    path = tmp_path / "bad_value.txt"
    path.write_text("1 2\nid1 0.0 abc\n")
    with pytest.raises(EmbeddingFormatError) as exc:
        load_external_embeddings(path)
    assert exc.value.line_number == 2

    path = tmp_path / "dup.txt"
    path.write_text("2 2\nid1 0.0 1.0\nid1 2.0 3.0\n")
    with pytest.raises(EmbeddingFormatError) as exc:
        load_external_embeddings(path)
    assert exc.value.line_number == 3

    path = tmp_path / "nonfinite.txt"
    path.write_text("1 2\nid1 0.0 inf\n")
    with pytest.raises(EmbeddingFormatError) as exc:
        load_external_embeddings(path)
    assert exc.value.line_number == 2


def test_load_truncated_file(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("5 2\nid1 0.0 1.0\nid2 2.0 3.0\nid3 4.0 5.0\n")
    with pytest.raises(EmbeddingFormatError) as exc:
        load_external_embeddings(path)
    assert exc.value.line_number == 5
    assert "5" in str(exc.value) and "3" in str(exc.value)


def test_pool_sentence_mean_and_coverage():
    vocab = build_vocab([["alpha", "beta", "gamma"]])
    vectors = np.arange(9, dtype=np.float64).reshape(3, 3)
    matrix = EmbeddingMatrix(dim=3, vectors=vectors, source="word2vec")

    pooled = pool_sentence(["alpha", "gamma", "nope"], matrix, vocab)
    ia, ig = vocab.index("alpha"), vocab.index("gamma")
    np.testing.assert_allclose(pooled.values, (vectors[ia] + vectors[ig]) / 2.0)
    assert pooled.coverage == pytest.approx(2 / 3)

    empty = pool_sentence(["nope", "nada"], matrix, vocab)
    np.testing.assert_array_equal(empty.values, np.zeros(3))
    assert empty.coverage == 0.0

    nothing = pool_sentence([], matrix, vocab)
    np.testing.assert_array_equal(nothing.values, np.zeros(3))
    assert nothing.coverage == 0.0


def test_pool_tokens_with_plain_mapping():
    mapping = {"a": np.array([1.0, 3.0]), "b": np.array([3.0, 5.0])}
    pooled = pool_tokens(["a", "b", "c"], mapping, dim=2)
    np.testing.assert_allclose(pooled.values, [2.0, 4.0])
    assert pooled.coverage == pytest.approx(2 / 3)
    empty = pool_tokens([], mapping, dim=2)
    np.testing.assert_array_equal(empty.values, np.zeros(2))
