"""Dataset and summary reading plus the shared text-id scheme.

The consumer of the exported vectors addresses texts by deterministic ids:
``q0001`` for the first distinct (question, explanation) pair in file order,
``q0001_a01`` for its first answer candidate, and ``q0001_summary`` for the
cached summary. This module restates that contract over the raw files so the
exporter stays decoupled from the consumer's code.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

REQUIRED_FIELDS = ("question", "answer", "explanation")
SUMMARY_SUFFIX = "_summary"


class ExportError(Exception):
    """Unreadable inputs or inconsistent ids."""


@dataclass(frozen=True)
class TextUnit:
    """One exportable text with its stable id."""

    text_id: str
    text: str


def question_id(ordinal: int) -> str:
    return f"q{ordinal:04d}"


def candidate_id(qid: str, ordinal: int) -> str:
    return f"{qid}_a{ordinal:02d}"


def summary_id(qid: str) -> str:
    return qid + SUMMARY_SUFFIX


def _iter_rows(path: Path, fmt: str):
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for number, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ExportError(f"{path}:{number}: invalid JSON: {exc}") from None
                if not isinstance(row, dict):
                    raise ExportError(f"{path}:{number}: expected a JSON object")
                yield number, row
    elif fmt == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                return
            missing = [f for f in REQUIRED_FIELDS if f not in reader.fieldnames]
            if missing:
                raise ExportError(f"{path}: missing required columns {missing}")
            for number, row in enumerate(reader, start=2):
                yield number, row
    else:
        raise ExportError(f"unknown dataset format {fmt!r}, expected jsonl or csv")


def read_question_groups(path: str | Path, fmt: str = "jsonl") -> list[tuple[str, str, list[str]]]:
    """Group candidate rows into (question_id, question_text, answer_texts).

    Rows sharing the exact (question, explanation) pair belong to one group;
    groups and candidates keep file order. An empty file yields no groups.
    """
    path = Path(path)
    if not path.is_file():
        raise ExportError(f"dataset file {path} does not exist")
    order: list[tuple[str, str]] = []
    answers: dict[tuple[str, str], list[str]] = {}
    for number, row in _iter_rows(path, fmt):
        try:
            question = str(row["question"])
            answer = str(row["answer"])
            explanation = str(row["explanation"])
        except KeyError as exc:
            raise ExportError(f"{path}:{number}: missing field {exc.args[0]!r}") from None
        key = (question, explanation)
        if key not in answers:
            answers[key] = []
            order.append(key)
        answers[key].append(answer)
    return [
        (question_id(i + 1), key[0], answers[key]) for i, key in enumerate(order)
    ]


def read_summary_text(directory: str | Path, qid: str) -> str:
    """Final summary for one question from the consumer's summary cache."""
    path = Path(directory) / f"{qid}.json"
    if not path.is_file():
        raise ExportError(
            f"no summary file {path}; run the consumer's prepare step for this split first"
        )
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return str(payload["final_summary"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ExportError(f"unreadable summary file {path}: {exc}") from None


def collect_text_units(
    dataset_path: str | Path, summaries_dir: str | Path, fmt: str = "jsonl"
) -> list[TextUnit]:
    """Every exportable text: questions, answer candidates, summaries.

    Raises :class:`ExportError` when two texts would share an id.
    """
    units: list[TextUnit] = []
    seen: set[str] = set()

    def add(text_id: str, text: str) -> None:
        if text_id in seen:
            raise ExportError(f"id collision on {text_id!r}")
        seen.add(text_id)
        units.append(TextUnit(text_id, text))

    for qid, question_text, answer_texts in read_question_groups(dataset_path, fmt):
        add(qid, question_text)
        for m, answer_text in enumerate(answer_texts, start=1):
            add(candidate_id(qid, m), answer_text)
        add(summary_id(qid), read_summary_text(summaries_dir, qid))
    return units
