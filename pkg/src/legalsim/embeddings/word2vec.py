"""Skip-gram with negative sampling, trained by plain SGD.

The pair objective for a center vector c, a true context vector o and
negative context vectors n_1..n_k is

    L = -log sigma(c.o) - sum_k log sigma(-c.n_k)

with analytic gradients

    dL/dc   = (sigma(c.o) - 1) o + sum_k sigma(c.n_k) n_k
    dL/do   = (sigma(c.o) - 1) c
    dL/dn_k = sigma(c.n_k) c
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from ..textproc import Vocabulary, unigram_distribution
from .vectors import EmbeddingMatrix, TrainConfig

LR_FLOOR_FACTOR = 1e-4
NEGATIVE_POWER = 0.75


def _sigmoid(x: float) -> float:
    # tanh form is stable for large |x|
    return 0.5 * (1.0 + math.tanh(0.5 * x))


def _softplus(x: float) -> float:
    # log(1 + e^x) without overflow
    return float(np.logaddexp(0.0, x))


class SgnsGradients(NamedTuple):
    loss: float
    center: np.ndarray
    context: np.ndarray
    negatives: np.ndarray


def sgns_pair_objective(
    center: np.ndarray,
    context: np.ndarray,
    negatives: Sequence[np.ndarray] | np.ndarray,
) -> SgnsGradients:
    """Loss and analytic gradients for one (center, context, negatives) pair."""
    center = np.asarray(center, dtype=np.float64)
    context = np.asarray(context, dtype=np.float64)
    neg = np.atleast_2d(np.asarray(negatives, dtype=np.float64))
    if center.shape != context.shape or center.ndim != 1:
        raise ValueError("center and context must be 1-d vectors of equal dim")
    if neg.shape[1] != center.shape[0]:
        raise ValueError(
            f"negative vectors have dim {neg.shape[1]}, expected {center.shape[0]}"
        )

    pos_score = float(center @ context)
    neg_scores = neg @ center
    loss = _softplus(-pos_score) + float(np.logaddexp(0.0, neg_scores).sum())

    pos_sig = _sigmoid(pos_score)
    neg_sig = 0.5 * (1.0 + np.tanh(0.5 * neg_scores))
    grad_center = (pos_sig - 1.0) * context + neg_sig @ neg
    grad_context = (pos_sig - 1.0) * center
    grad_negatives = neg_sig[:, None] * center[None, :]
    return SgnsGradients(loss, grad_center, grad_context, grad_negatives)


class Word2VecTrainer:
    """Single-threaded, seed-deterministic SGNS trainer.

    One epoch visits every (center, context) pair whose positions in the
    original token sequence are at most ``config.window`` apart; negatives
    are drawn per pair from the unigram^0.75 distribution. The learning rate
    decays linearly over all updates down to a small floor.
    """

    def __init__(self, vocab: Vocabulary, config: TrainConfig):
        self.vocab = vocab
        self.config = config
        self.epoch_losses: list[float] = []
        self._rng = np.random.default_rng(config.seed)
        bound = 0.5 / config.dim
        shape = (len(vocab), config.dim)
        self.center_vectors = self._rng.uniform(-bound, bound, shape)
        self.context_vectors = self._rng.uniform(-bound, bound, shape)
        self._neg_cumulative = np.cumsum(unigram_distribution(vocab, NEGATIVE_POWER))

    def _sample_negatives(self, k: int) -> np.ndarray:
        draws = self._rng.random(k)
        return np.searchsorted(self._neg_cumulative, draws, side="right")

    def fit(self, corpus: list[list[str]]) -> EmbeddingMatrix:
        if not any(corpus):
            raise ValueError("cannot train word2vec on an empty corpus")
        docs = [
            [self.vocab.index(token) for token in tokens]
            for tokens in corpus
            if tokens
        ]
        window = self.config.window
        pairs_per_epoch = 0
        for ids in docs:
            for pos, center in enumerate(ids):
                if center is None:
                    continue
                lo = max(0, pos - window)
                hi = min(len(ids), pos + window + 1)
                pairs_per_epoch += sum(
                    1 for other in range(lo, hi) if other != pos and ids[other] is not None
                )
        total_updates = max(1, self.config.epochs * pairs_per_epoch)
        lr0 = self.config.learning_rate
        lr_floor = lr0 * LR_FLOOR_FACTOR
        k = self.config.negatives
        done = 0

        for _ in range(self.config.epochs):
            loss_sum = 0.0
            pair_count = 0
            for ids in docs:
                for pos, center in enumerate(ids):
                    if center is None:
                        continue
                    lo = max(0, pos - window)
                    hi = min(len(ids), pos + window + 1)
                    for other in range(lo, hi):
                        context = ids[other]
                        if other == pos or context is None:
                            continue
                        lr = max(lr_floor, lr0 * (1.0 - done / total_updates))
                        done += 1

                        neg_ids = self._sample_negatives(k)
                        center_vec = self.center_vectors[center].copy()
                        context_vec = self.context_vectors[context]
                        neg_vecs = self.context_vectors[neg_ids]

                        pos_score = float(center_vec @ context_vec)
                        neg_scores = neg_vecs @ center_vec
                        loss_sum += _softplus(-pos_score) + float(
                            np.logaddexp(0.0, neg_scores).sum()
                        )
                        pair_count += 1

                        pos_sig = _sigmoid(pos_score)
                        neg_sig = 0.5 * (1.0 + np.tanh(0.5 * neg_scores))
                        self.center_vectors[center] -= lr * (
                            (pos_sig - 1.0) * context_vec + neg_sig @ neg_vecs
                        )
                        self.context_vectors[context] -= lr * (pos_sig - 1.0) * center_vec
                        # repeated negative ids must each apply their update
                        np.subtract.at(
                            self.context_vectors,
                            neg_ids,
                            lr * neg_sig[:, None] * center_vec[None, :],
                        )
            self.epoch_losses.append(loss_sum / pair_count if pair_count else 0.0)

        return EmbeddingMatrix(
            dim=self.config.dim, vectors=self.center_vectors.copy(), source="word2vec"
        )


def train_word2vec(
    corpus: list[list[str]], vocab: Vocabulary, config: TrainConfig | None = None
) -> EmbeddingMatrix:
    """Train token vectors with SGNS; deterministic for a given config.seed."""
    trainer = Word2VecTrainer(vocab, config or TrainConfig.word2vec_defaults())
    return trainer.fit(corpus)
