"""Fixtures: a tiny offline BERT checkpoint and synthetic inputs."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "court", "law", "contract", "party", "breach", "damages", "claim",
    "duty", "right", "remedy", "judge", "evidence", "statute", "the", "a",
]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory) -> Path:
    """A small randomly initialized encoder saved as a local checkpoint."""
    import torch
    from transformers import BertConfig, BertModel, BertTokenizer

    directory = tmp_path_factory.mktemp("tiny-model")
    vocab_file = directory / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB), encoding="utf-8")
    tokenizer = BertTokenizer(vocab_file=str(vocab_file), model_max_length=32)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=8,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=16,
        max_position_embeddings=32,
    )
    torch.manual_seed(0)
    model = BertModel(config)
    tokenizer.save_pretrained(directory)
    model.save_pretrained(directory)
    return directory


def write_dataset(path: Path, groups: list[tuple[str, str, list[str]]]) -> Path:
    """Write candidate-level JSONL rows for (question, explanation, answers) groups."""
    with open(path, "w", encoding="utf-8") as fh:
        for question, explanation, answers in groups:
            for answer in answers:
                fh.write(
                    json.dumps(
                        {"question": question, "answer": answer, "explanation": explanation}
                    )
                    + "\n"
                )
    return path


def write_summaries(directory: Path, summaries: dict[str, str]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    for qid, text in summaries.items():
        payload = {
            "question_id": qid,
            "level1_summary": text,
            "final_summary": text,
            "backend": "extractive_fallback",
        }
        (directory / f"{qid}.json").write_text(json.dumps(payload), encoding="utf-8")
    return directory


@pytest.fixture
def small_inputs(tmp_path):
    groups = [
        ("does the court allow a claim", "the court weighed the evidence", ["yes the law", "no remedy"]),
        ("is the contract valid", "a breach voids the duty", ["the statute says", "the judge says", "no"]),
    ]
    dataset = write_dataset(tmp_path / "dev.jsonl", groups)
    summaries = write_summaries(
        tmp_path / "summaries",
        {"q0001": "court evidence claim", "q0002": "breach duty contract"},
    )
    return dataset, summaries
