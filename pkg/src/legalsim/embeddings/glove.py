"""GloVe embeddings fit to log co-occurrence counts with AdaGrad.

Each directed table entry (i, j) with weight x contributes

    loss = f(x) * (w_i . c_j + b_i + d_j - log x)^2
    f(x) = min(1, (x / x_max)^alpha)

where w/c are word and context vectors and b/d their biases. The final
vector for token i is w_i + c_i.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..textproc import CooccurrenceTable
from .vectors import EmbeddingMatrix, TrainConfig


class GloveGradients(NamedTuple):
    loss: float
    word_vec: np.ndarray
    context_vec: np.ndarray
    word_bias: float
    context_bias: float


def glove_weight(count: float, x_max: float, alpha: float) -> float:
    """Weighting function f: (count/x_max)^alpha, capped at 1."""
    if count >= x_max:
        return 1.0
    return (count / x_max) ** alpha


def glove_term_objective(
    word_vec: np.ndarray,
    context_vec: np.ndarray,
    word_bias: float,
    context_bias: float,
    count: float,
    x_max: float = 100.0,
    alpha: float = 0.75,
) -> GloveGradients:
    """One weighted squared-error term and its analytic gradients."""
    if count <= 0:
        raise ValueError(f"co-occurrence count must be > 0, got {count}")
    word_vec = np.asarray(word_vec, dtype=np.float64)
    context_vec = np.asarray(context_vec, dtype=np.float64)
    if word_vec.shape != context_vec.shape or word_vec.ndim != 1:
        raise ValueError("word and context vectors must be 1-d of equal dim")

    weight = glove_weight(count, x_max, alpha)
    residual = float(word_vec @ context_vec) + word_bias + context_bias - math.log(count)
    loss = weight * residual * residual
    common = 2.0 * weight * residual
    return GloveGradients(
        loss=loss,
        word_vec=common * context_vec,
        context_vec=common * word_vec,
        word_bias=common,
        context_bias=common,
    )


def _directed_entries(cooc: CooccurrenceTable) -> list[tuple[int, int, float]]:
    # the table stores each unordered pair once; training sees both directions
    entries = []
    for (i, j), weight in sorted(cooc.entries.items()):
        entries.append((i, j, weight))
        if i != j:
            entries.append((j, i, weight))
    return entries


class GloveTrainer:
    """AdaGrad GloVe trainer, deterministic for a given config.seed.

    ``initial_loss`` and ``final_loss`` hold the exact total objective before
    the first and after the last epoch; ``epoch_losses`` holds the running
    per-epoch sums accumulated during updates.
    """

    def __init__(self, config: TrainConfig):
        self.config = config
        self.epoch_losses: list[float] = []
        self.initial_loss: float | None = None
        self.final_loss: float | None = None
        self._params = None

    def _objective(self, entries) -> float:
        word, context, word_bias, context_bias = self._params
        total = 0.0
        for i, j, x in entries:
            weight = glove_weight(x, self.config.x_max, self.config.alpha)
            residual = float(word[i] @ context[j]) + word_bias[i] + context_bias[j] - math.log(x)
            total += weight * residual * residual
        return total

    def fit(self, cooc: CooccurrenceTable) -> EmbeddingMatrix:
        if not cooc.entries:
            raise ValueError("cannot train GloVe on an empty co-occurrence table")
        config = self.config
        rng = np.random.default_rng(config.seed)
        size, dim = cooc.size, config.dim
        bound = 0.5 / dim
        word = rng.uniform(-bound, bound, (size, dim))
        context = rng.uniform(-bound, bound, (size, dim))
        word_bias = rng.uniform(-bound, bound, size)
        context_bias = rng.uniform(-bound, bound, size)
        # AdaGrad accumulators start at 1 so the first step size equals lr
        acc_word = np.ones((size, dim))
        acc_context = np.ones((size, dim))
        acc_word_bias = np.ones(size)
        acc_context_bias = np.ones(size)
        self._params = (word, context, word_bias, context_bias)

        entries = _directed_entries(cooc)
        rows = np.array([e[0] for e in entries])
        cols = np.array([e[1] for e in entries])
        counts = np.array([e[2] for e in entries])
        log_counts = np.log(counts)
        weights = np.minimum(1.0, (counts / config.x_max) ** config.alpha)

        self.initial_loss = self._objective(entries)
        lr = config.learning_rate
        for _ in range(config.epochs):
            loss_sum = 0.0
            for idx in rng.permutation(len(entries)):
                i, j = rows[idx], cols[idx]
                w_i = word[i].copy()
                c_j = context[j]
                residual = float(w_i @ c_j) + word_bias[i] + context_bias[j] - log_counts[idx]
                weight = weights[idx]
                loss_sum += weight * residual * residual
                common = 2.0 * weight * residual

                grad_w = common * c_j
                grad_c = common * w_i
                word[i] -= lr * grad_w / np.sqrt(acc_word[i])
                acc_word[i] += grad_w * grad_w
                context[j] -= lr * grad_c / np.sqrt(acc_context[j])
                acc_context[j] += grad_c * grad_c
                word_bias[i] -= lr * common / math.sqrt(acc_word_bias[i])
                acc_word_bias[i] += common * common
                context_bias[j] -= lr * common / math.sqrt(acc_context_bias[j])
                acc_context_bias[j] += common * common
            self.epoch_losses.append(loss_sum)
        self.final_loss = self._objective(entries)

        return EmbeddingMatrix(dim=dim, vectors=word + context, source="glove")


def train_glove(cooc: CooccurrenceTable, config: TrainConfig | None = None) -> EmbeddingMatrix:
    """Train GloVe vectors on a co-occurrence table; deterministic given seed."""
    trainer = GloveTrainer(config or TrainConfig.glove_defaults())
    return trainer.fit(cooc)
