"""Embedding containers, sentence pooling and the text vector-file format.

The on-disk format is plain text: a header line ``<count> <dim>`` followed by
one ``<id> <v1> ... <v_dim>`` line per entry, space separated, UTF-8 ids with
no spaces. Trained token vectors and externally computed text vectors share
this format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from ..textproc import Vocabulary

SOURCES = ("word2vec", "glove", "external")


class EmbeddingFormatError(Exception):
    """Vector file violates the format; carries the offending line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters shared by the two embedding trainers."""

    dim: int = 5
    window: int = 7
    epochs: int = 15
    learning_rate: float = 0.025
    negatives: int = 5
    x_max: float = 100.0
    alpha: float = 0.75
    seed: int = 0

    def __post_init__(self):
        if min(self.dim, self.window, self.epochs, self.negatives) < 1:
            raise ValueError("dim, window, epochs and negatives must all be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must be in (0, 1]")
        if self.x_max <= 0:
            raise ValueError("x_max must be > 0")

    @classmethod
    def word2vec_defaults(cls, seed: int = 0) -> "TrainConfig":
        return cls(dim=5, window=7, epochs=15, learning_rate=0.025, negatives=5, seed=seed)

    @classmethod
    def glove_defaults(cls, seed: int = 0) -> "TrainConfig":
        return cls(dim=5, window=10, epochs=30, learning_rate=0.05, seed=seed)


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Dense token vectors, one row per vocabulary index."""

    dim: int
    vectors: np.ndarray
    source: str

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        vectors = np.asarray(self.vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[1] != self.dim:
            raise ValueError(f"vectors must have shape (n, {self.dim})")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("embedding matrix contains non-finite entries")
        object.__setattr__(self, "vectors", vectors)

    @property
    def size(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class SentenceVector:
    """Pooled text vector plus the fraction of tokens that were in vocabulary."""

    values: np.ndarray
    coverage: float


def pool_sentence(tokens: list[str], matrix: EmbeddingMatrix, vocab: Vocabulary) -> SentenceVector:
    """Mean of the vectors of in-vocabulary tokens.

    Out-of-vocabulary tokens are skipped; with no in-vocabulary token the
    result is the zero vector with coverage 0.
    """
    if matrix.size != len(vocab):
        raise ValueError(
            f"matrix has {matrix.size} rows but vocabulary has {len(vocab)} tokens"
        )
    indices = [vocab.index(token) for token in tokens]
    hits = [i for i in indices if i is not None]
    if not hits:
        return SentenceVector(values=np.zeros(matrix.dim), coverage=0.0)
    values = matrix.vectors[hits].mean(axis=0)
    return SentenceVector(values=values, coverage=len(hits) / len(tokens))


def pool_tokens(tokens: list[str], mapping: Mapping[str, np.ndarray], dim: int) -> SentenceVector:
    """pool_sentence over a plain id-to-vector mapping (loaded vector files)."""
    hits = [mapping[token] for token in tokens if token in mapping]
    if not hits:
        return SentenceVector(values=np.zeros(dim), coverage=0.0)
    values = np.mean(np.asarray(hits, dtype=np.float64), axis=0)
    return SentenceVector(values=values, coverage=len(hits) / len(tokens))


def save_embeddings(path: str | Path, ids: Iterable[str], vectors: np.ndarray) -> None:
    """Write vectors in the text format, one line per id, header first."""
    vectors = np.asarray(vectors, dtype=np.float64)
    ids = list(ids)
    if vectors.ndim != 2 or len(ids) != vectors.shape[0]:
        raise ValueError("ids and vector rows must correspond one to one")
    for entry_id in ids:
        if " " in entry_id or not entry_id:
            raise ValueError(f"invalid id {entry_id!r}: ids must be non-empty and space-free")
    with Path(path).open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"{len(ids)} {vectors.shape[1]}\n")
        for entry_id, row in zip(ids, vectors):
            handle.write(entry_id + " " + " ".join(repr(float(v)) for v in row) + "\n")


def load_external_embeddings(path: str | Path) -> dict[str, np.ndarray]:
    """Load a vector file into an id-to-vector map.

    An empty file yields an empty map. Raises :class:`EmbeddingFormatError`
    (with a line number) on malformed headers, non-numeric fields, dimension
    mismatches, duplicate ids, non-finite values, or truncation relative to
    the declared count.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        return {}

    header = lines[0].split()
    if len(header) != 2:
        raise EmbeddingFormatError(1, f"header must be '<count> <dim>', got {lines[0]!r}")
    try:
        count, dim = int(header[0]), int(header[1])
    except ValueError:
        raise EmbeddingFormatError(1, f"non-integer header fields in {lines[0]!r}") from None
    if count < 0 or dim < 1:
        raise EmbeddingFormatError(1, f"invalid header values {lines[0]!r}")

    result: dict[str, np.ndarray] = {}
    for offset, line in enumerate(lines[1:], start=2):
        fields = line.split(" ")
        if len(fields) != dim + 1:
            raise EmbeddingFormatError(
                offset, f"expected id plus {dim} values, got {len(fields)} fields"
            )
        entry_id = fields[0]
        if entry_id in result:
            raise EmbeddingFormatError(offset, f"duplicate id {entry_id!r}")
        try:
            values = np.array([float(v) for v in fields[1:]], dtype=np.float64)
        except ValueError:
            raise EmbeddingFormatError(offset, "non-numeric vector field") from None
        if not np.all(np.isfinite(values)):
            raise EmbeddingFormatError(offset, f"non-finite value for id {entry_id!r}")
        result[entry_id] = values

    if len(result) != count:
        raise EmbeddingFormatError(
            len(lines) + 1,
            f"header declares {count} vectors but file has {len(result)}",
        )
    return result
