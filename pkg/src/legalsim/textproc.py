"""Tokenization, vocabulary construction and co-occurrence counting.

Tokens are lowercased maximal runs of alphanumeric characters (Unicode-aware,
underscore excluded). Window distances are always measured in positions of
the original token sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

WEIGHTINGS = ("inverse_distance", "uniform")


class EmptyVocabularyError(Exception):
    """No token met the min_count threshold."""


def tokenize(text: str) -> list[str]:
    """Split text into lowercased alphanumeric runs, in order of appearance."""
    return _TOKEN_RE.findall(text.lower())


def token_spans(text: str) -> list[tuple[int, int]]:
    """(start, end) character offsets of each token in the original text."""
    return [match.span() for match in _TOKEN_RE.finditer(text)]


@dataclass(frozen=True)
class Vocabulary:
    """Token/index bijection with per-token corpus frequencies."""

    token_to_index: dict[str, int]
    index_to_token: tuple[str, ...]
    frequency: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.index_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_index

    def index(self, token: str) -> int | None:
        return self.token_to_index.get(token)


@dataclass(frozen=True)
class CooccurrenceTable:
    """Symmetric co-occurrence weights, stored once per unordered index pair.

    ``entries[(i, j)]`` with i <= j holds the accumulated weight; the implied
    matrix is symmetric (X_ij = X_ji).
    """

    entries: dict[tuple[int, int], float]
    size: int

    def total_mass(self) -> float:
        return float(sum(self.entries.values()))


def build_vocab(corpus: list[list[str]], min_count: int = 1) -> Vocabulary:
    """Build a vocabulary of tokens occurring at least ``min_count`` times.

    Indices are assigned by descending frequency, ties broken by token text,
    so identical corpora always produce identical vocabularies.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts: dict[str, int] = {}
    for tokens in corpus:
        for token in tokens:
            counts[token] = counts.get(token, 0) + 1
    kept = [(token, count) for token, count in counts.items() if count >= min_count]
    if not kept:
        raise EmptyVocabularyError(
            f"no token reaches min_count={min_count} (corpus has {len(counts)} distinct tokens)"
        )
    kept.sort(key=lambda item: (-item[1], item[0]))
    index_to_token = tuple(token for token, _ in kept)
    frequency = tuple(count for _, count in kept)
    token_to_index = {token: i for i, token in enumerate(index_to_token)}
    return Vocabulary(token_to_index, index_to_token, frequency)


def count_cooccurrence(
    corpus: list[list[str]],
    vocab: Vocabulary,
    window: int,
    weighting: str = "inverse_distance",
) -> CooccurrenceTable:
    """Accumulate windowed co-occurrence weights over the corpus.

    Every pair of in-vocabulary tokens at positions (p, q) with
    0 < q - p <= window contributes once: 1/(q-p) under inverse_distance
    weighting, 1 under uniform. Out-of-vocabulary tokens keep their position
    but never pair.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if weighting not in WEIGHTINGS:
        raise ValueError(f"unknown weighting {weighting!r}, expected one of {WEIGHTINGS}")
    entries: dict[tuple[int, int], float] = {}
    for tokens in corpus:
        ids = [vocab.index(token) for token in tokens]
        for pos, left in enumerate(ids):
            if left is None:
                continue
            limit = min(len(ids), pos + window + 1)
            for other in range(pos + 1, limit):
                right = ids[other]
                if right is None:
                    continue
                weight = 1.0 / (other - pos) if weighting == "inverse_distance" else 1.0
                key = (left, right) if left <= right else (right, left)
                entries[key] = entries.get(key, 0.0) + weight
    return CooccurrenceTable(entries=entries, size=len(vocab))


def save_vocab(vocab: Vocabulary, path: str | Path) -> None:
    """Write one ``token<TAB>frequency`` line per token, in index order."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as handle:
        for token, count in zip(vocab.index_to_token, vocab.frequency):
            handle.write(f"{token}\t{count}\n")


def load_vocab(path: str | Path) -> Vocabulary:
    tokens: list[str] = []
    freqs: list[int] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                token, raw_count = line.split("\t")
                count = int(raw_count)
            except ValueError:
                raise ValueError(f"{path}: line {line_number}: expected 'token<TAB>count'") from None
            tokens.append(token)
            freqs.append(count)
    if not tokens:
        raise EmptyVocabularyError(f"{path}: empty vocabulary file")
    return Vocabulary(
        token_to_index={token: i for i, token in enumerate(tokens)},
        index_to_token=tuple(tokens),
        frequency=tuple(freqs),
    )


def unigram_distribution(vocab: Vocabulary, power: float = 0.75) -> np.ndarray:
    """Frequency^power sampling distribution used for negative sampling."""
    weights = np.asarray(vocab.frequency, dtype=np.float64) ** power
    return weights / weights.sum()
