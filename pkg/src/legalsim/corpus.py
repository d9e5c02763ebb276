"""Loading, validation and question-centric grouping of legal MCQ data.

Input files carry one candidate answer per row (JSONL or CSV) with columns
``question``, ``answer``, ``explanation`` and, for labeled splits, ``label``.
Rows that share the exact same question and explanation text belong to the
same question; the loader groups them and assigns deterministic ids.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace
from pathlib import Path

SPLITS = ("train", "dev", "test")
FORMATS = ("jsonl", "csv")

CSV_COLUMNS = ("question", "answer", "explanation", "label", "analysis", "complete_analysis")

SUMMARY_ID_SUFFIX = "_summary"


class CorpusError(Exception):
    """Base error for dataset loading problems."""


class ParseError(CorpusError):
    """A row could not be parsed; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(CorpusError):
    """A parsed row violates the split's schema."""


class EmptyDatasetError(CorpusError):
    """The file contains no data rows."""


@dataclass(frozen=True)
class AnswerCandidate:
    """One proposed answer to a question, optionally carrying its gold label."""

    candidate_id: str
    question_id: str
    answer_text: str
    gold_label: int | None = None


@dataclass(frozen=True)
class QaRecord:
    """A question with its explanation text and its ordered candidate answers."""

    question_id: str
    question_text: str
    explanation_text: str
    candidates: tuple[AnswerCandidate, ...]
    analysis_text: str | None = None
    complete_analysis_text: str | None = None


@dataclass(frozen=True)
class Dataset:
    split_name: str
    records: tuple[QaRecord, ...]
    candidate_count: int


def question_id(ordinal: int) -> str:
    """Deterministic question id for the n-th distinct question (1-based)."""
    return f"q{ordinal:04d}"


def candidate_id(qid: str, ordinal: int) -> str:
    """Deterministic candidate id for the n-th candidate of a question (1-based)."""
    return f"{qid}_a{ordinal:02d}"


def summary_id(qid: str) -> str:
    """Id under which a question's summary vector is stored."""
    return qid + SUMMARY_ID_SUFFIX


def _parse_label(raw, line_number: int) -> int | None:
    if raw is None or raw == "":
        return None
    if isinstance(raw, bool) or (isinstance(raw, float) and not raw.is_integer()):
        raise ParseError(line_number, f"label must be 0 or 1, got {raw!r}")
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ParseError(line_number, f"label must be 0 or 1, got {raw!r}") from None
    if value not in (0, 1):
        raise ParseError(line_number, f"label must be 0 or 1, got {raw!r}")
    return value


def _optional_text(row: dict, key: str) -> str | None:
    value = row.get(key)
    if value is None or value == "":
        return None
    return str(value)


def _iter_jsonl_rows(path: Path):
    with path.open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(line_number, f"invalid JSON: {exc.msg}") from None
            if not isinstance(row, dict):
                raise ParseError(line_number, "row is not a JSON object")
            yield line_number, row


def _iter_csv_rows(path: Path):
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            return
        missing = {"question", "answer", "explanation"} - set(reader.fieldnames)
        if missing:
            raise ParseError(1, f"missing required columns: {sorted(missing)}")
        for row in reader:
            # DictReader puts overflow cells under None when a row is too wide.
            if None in row:
                raise ParseError(reader.line_num, "row has more cells than the header")
            yield reader.line_num, row


def _group_rows(rows: list[tuple[int, dict]], split: str) -> tuple[QaRecord, ...]:
    groups: dict[tuple[str, str], dict] = {}
    for line_number, row in rows:
        question = row.get("question")
        answer = row.get("answer")
        if not question or not str(question).strip():
            raise ParseError(line_number, "question text is empty or missing")
        if answer is None or not str(answer).strip():
            raise ParseError(line_number, "answer text is empty or missing")
        explanation = str(row.get("explanation") or "")
        label = _parse_label(row.get("label"), line_number)
        if split in ("train", "dev") and label is None:
            raise ValidationError(
                f"line {line_number}: {split} rows must carry a 0/1 label"
            )

        key = (str(question), explanation)
        group = groups.get(key)
        if group is None:
            group = {
                "question": str(question),
                "explanation": explanation,
                "answers": [],
                "analysis": _optional_text(row, "analysis"),
                "complete_analysis": _optional_text(row, "complete_analysis"),
            }
            groups[key] = group
        group["answers"].append((str(answer), label))
        if group["analysis"] is None:
            group["analysis"] = _optional_text(row, "analysis")
        if group["complete_analysis"] is None:
            group["complete_analysis"] = _optional_text(row, "complete_analysis")

    records = []
    for q_ordinal, group in enumerate(groups.values(), start=1):
        qid = question_id(q_ordinal)
        candidates = tuple(
            AnswerCandidate(
                candidate_id=candidate_id(qid, a_ordinal),
                question_id=qid,
                answer_text=answer,
                gold_label=label,
            )
            for a_ordinal, (answer, label) in enumerate(group["answers"], start=1)
        )
        records.append(
            QaRecord(
                question_id=qid,
                question_text=group["question"],
                explanation_text=group["explanation"],
                candidates=candidates,
                analysis_text=group["analysis"],
                complete_analysis_text=group["complete_analysis"],
            )
        )
    return tuple(records)


def load_split(path: str | Path, fmt: str = "jsonl", split: str = "train") -> Dataset:
    """Load one dataset split, validate its rows and group them by question.

    Raises :class:`ParseError` on malformed rows (with the line number),
    :class:`ValidationError` when a train/dev row lacks a label, and
    :class:`EmptyDatasetError` when the file has no data rows.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    if split not in SPLITS:
        raise ValueError(f"unknown split {split!r}, expected one of {SPLITS}")
    path = Path(path)
    iterator = _iter_jsonl_rows(path) if fmt == "jsonl" else _iter_csv_rows(path)
    rows = list(iterator)
    if not rows:
        raise EmptyDatasetError(f"{path}: no data rows")
    records = _group_rows(rows, split)
    count = sum(len(record.candidates) for record in records)
    return Dataset(split_name=split, records=records, candidate_count=count)


def group_by_question(dataset: Dataset) -> list[QaRecord]:
    """Question-centric view of the dataset.

    The loader already partitions candidates by exact (question text,
    explanation text) equality, so this simply exposes that partition.
    """
    return list(dataset.records)


def _candidate_rows(dataset: Dataset):
    for record in dataset.records:
        for cand in record.candidates:
            yield record, cand


def save_split(dataset: Dataset, path: str | Path, fmt: str = "jsonl") -> None:
    """Serialize a dataset back to one candidate row per line."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    path = Path(path)
    if fmt == "jsonl":
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            for record, cand in _candidate_rows(dataset):
                row = {
                    "question": record.question_text,
                    "answer": cand.answer_text,
                    "explanation": record.explanation_text,
                }
                if cand.gold_label is not None:
                    row["label"] = cand.gold_label
                if record.analysis_text is not None:
                    row["analysis"] = record.analysis_text
                if record.complete_analysis_text is not None:
                    row["complete_analysis"] = record.complete_analysis_text
                handle.write(json.dumps(row, ensure_ascii=False) + "\n")
    else:
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            for record, cand in _candidate_rows(dataset):
                writer.writerow(
                    {
                        "question": record.question_text,
                        "answer": cand.answer_text,
                        "explanation": record.explanation_text,
                        "label": "" if cand.gold_label is None else cand.gold_label,
                        "analysis": record.analysis_text or "",
                        "complete_analysis": record.complete_analysis_text or "",
                    }
                )


def gold_labels(dataset: Dataset) -> dict[str, int]:
    """Map candidate_id to gold label for every labeled candidate."""
    golds = {}
    for _, cand in _candidate_rows(dataset):
        if cand.gold_label is not None:
            golds[cand.candidate_id] = cand.gold_label
    return golds


def strip_labels(dataset: Dataset) -> Dataset:
    """Copy of the dataset with every gold label removed (test-split shape)."""
    records = tuple(
        replace(
            record,
            candidates=tuple(replace(c, gold_label=None) for c in record.candidates),
        )
        for record in dataset.records
    )
    return Dataset(dataset.split_name, records, dataset.candidate_count)
