"""Training the two small embedding families from scratch.

Both trainers run on plain token lists and are deterministic for a fixed
seed. The skip-gram family optimizes a sampled log-sigmoid objective with
negative sampling; the count-based family factorizes a windowed
co-occurrence table under a weighted least-squares objective with
per-parameter adaptive steps. Defaults are intentionally tiny
(5 dimensions) so everything trains in seconds on a laptop.
"""

from __future__ import annotations

import random
import tempfile
from pathlib import Path

import numpy as np

from legalsim import (
    TrainConfig,
    build_vocab,
    count_cooccurrence,
    load_external_embeddings,
    save_embeddings,
    train_glove,
    train_word2vec,
)

WORDS = ["court", "judge", "ruling", "appeal", "contract", "clause",
         "breach", "damages", "buyer", "seller", "notice", "defect"]


def toy_corpus(rng: random.Random, sentences: int = 300) -> list[list[str]]:
    # Skewed sampling gives the corpus a realistic frequency profile.
    weights = [1.0 / (i + 1) for i in range(len(WORDS))]
    corpus = []
    for _ in range(sentences):
        n = rng.randint(4, 12)
        corpus.append(rng.choices(WORDS, weights=weights, k=n))
    return corpus


def neighbors(token: str, matrix, vocab, k: int = 3) -> list[str]:
    vectors = matrix.vectors
    target = vectors[vocab.index(token)]
    norms = np.linalg.norm(vectors, axis=1) * np.linalg.norm(target)
    sims = vectors @ target / np.where(norms == 0, 1, norms)
    order = np.argsort(-sims)
    picks = [vocab.index_to_token[i] for i in order if vocab.index_to_token[i] != token]
    return picks[:k]


def main() -> None:
    rng = random.Random(11)
    corpus = toy_corpus(rng)
    vocab = build_vocab(corpus, min_count=1)
    print(f"corpus: {len(corpus)} sentences, vocabulary: {len(vocab)} tokens")
    print("most frequent:", list(vocab.index_to_token[:5]), "\n")

    # Skip-gram with negative sampling. epoch_losses is the running mean
    # objective per epoch; it should trend downward.
    w2v_config = TrainConfig.word2vec_defaults(seed=3)
    sgns = train_word2vec(corpus, vocab, w2v_config)
    print(f"skip-gram: dim={sgns.dim}, source={sgns.source!r}")
    print(f"  neighbors of 'court': {neighbors('court', sgns, vocab)}")

    # The count-based family trains on a co-occurrence table instead of raw
    # text. Pairs within the window contribute 1/distance.
    cooc = count_cooccurrence(corpus, vocab, window=10, weighting="inverse_distance")
    glove_config = TrainConfig.glove_defaults(seed=3)
    glove = train_glove(cooc, glove_config)
    print(f"count-based: dim={glove.dim}, source={glove.source!r}")
    print(f"  neighbors of 'court': {neighbors('court', glove, vocab)}\n")

    # Token vectors round-trip through the shared text format bit-exactly.
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "vectors.txt"
        save_embeddings(path, vocab.index_to_token, sgns.vectors)
        table = load_external_embeddings(path)
        exact = all(
            np.array_equal(table[tok], sgns.vectors[i])
            for i, tok in enumerate(vocab.index_to_token)
        )
        print(f"saved {len(table)} vectors; reload bit-exact: {exact}")


if __name__ == "__main__":
    main()
