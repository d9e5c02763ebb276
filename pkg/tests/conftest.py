"""Shared helpers for the test suite: synthetic datasets and tiny corpora."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

WORDS = (
    "court law contract party breach damages claim duty tort right remedy "
    "appeal judge evidence statute clause liability notice consent waiver"
).split()


def make_sentence(rng: random.Random, n_tokens: int) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(n_tokens)) + "."


def make_rows(
    rng: random.Random,
    n_questions: int,
    n_answers: int = 4,
    labeled: bool = True,
    explanation_sentences: int = 6,
) -> list[dict]:
    """Candidate-level rows for ``n_questions`` synthetic questions."""
    rows = []
    for _ in range(n_questions):
        question = make_sentence(rng, 12)
        explanation = " ".join(make_sentence(rng, 15) for _ in range(explanation_sentences))
        gold = rng.randrange(n_answers)
        for a in range(n_answers):
            row = {
                "question": question,
                "answer": make_sentence(rng, 8),
                "explanation": explanation,
            }
            if labeled:
                row["label"] = 1 if a == gold else 0
            rows.append(row)
    return rows


def write_jsonl(path: Path, rows: list[dict]) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return path


def write_csv(path: Path, rows: list[dict]) -> Path:
    import csv

    columns = ["question", "answer", "explanation", "label", "analysis", "complete_analysis"]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in columns})
    return path


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo one verdict line per acceptance criterion at the end of the run."""
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)


@pytest.fixture
def tiny_rows(rng) -> list[dict]:
    return make_rows(rng, n_questions=4)


@pytest.fixture
def tiny_dataset(tmp_path, tiny_rows):
    from legalsim.corpus import load_split

    path = write_jsonl(tmp_path / "train.jsonl", tiny_rows)
    return load_split(path, "jsonl", "train")
