"""Batch transformer inference and embedding-file output.

Vectors are pooled from the final hidden layer, either as an attention-masked
mean over token states (default) or as the first token's state. The output
file follows the shared plain-text format: a ``<count> <dim>`` header, then
one ``<id> <v1> ... <v_dim>`` line per text. A JSON manifest written next to
the output records the model, pooling, dim, and exported ids.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .records import ExportError, TextUnit, collect_text_units

POOLINGS = ("mean", "first")


@dataclass(frozen=True)
class ExportManifest:
    model: str
    dataset: str
    pooling: str
    dim: int
    ids: tuple[str, ...]

    def to_dict(self) -> dict:
        payload = dataclasses.asdict(self)
        payload["ids"] = list(self.ids)
        payload["count"] = len(self.ids)
        return payload


def manifest_path(out: str | Path) -> Path:
    return Path(out).with_suffix(".manifest.json")


def load_backbone(model_id: str):
    """Tokenizer and encoder for a model id or local checkpoint directory."""
    import torch
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except Exception as exc:
        raise ExportError(f"cannot load model {model_id!r}: {exc}") from exc
    model.eval()
    torch.set_grad_enabled(False)
    return tokenizer, model


def _max_length(tokenizer, model) -> int:
    limit = getattr(model.config, "max_position_embeddings", None)
    tokenizer_limit = getattr(tokenizer, "model_max_length", None)
    candidates = [
        v for v in (limit, tokenizer_limit) if isinstance(v, int) and 0 < v < 1_000_000
    ]
    return min(candidates) if candidates else 512


def embed_texts(texts, tokenizer, model, pooling: str = "mean", batch_size: int = 16) -> np.ndarray:
    """Pooled final-layer vectors, one row per text, float64."""
    import torch

    if pooling not in POOLINGS:
        raise ExportError(f"unknown pooling {pooling!r}, expected one of {POOLINGS}")
    if batch_size < 1:
        raise ExportError("batch size must be >= 1")
    dim = int(model.config.hidden_size)
    if not texts:
        return np.zeros((0, dim), dtype=np.float64)

    max_length = _max_length(tokenizer, model)
    rows = []
    for start in range(0, len(texts), batch_size):
        batch = list(texts[start : start + batch_size])
        encoded = tokenizer(
            batch,
            padding=True,
            truncation=True,
            max_length=max_length,
            return_tensors="pt",
        )
        output = model(**encoded)
        hidden = output.last_hidden_state
        if pooling == "first":
            pooled = hidden[:, 0, :]
        else:
            mask = encoded["attention_mask"].unsqueeze(-1).to(hidden.dtype)
            pooled = (hidden * mask).sum(dim=1) / mask.sum(dim=1).clamp(min=1.0)
        rows.append(pooled.to(torch.float64).cpu().numpy())
    return np.concatenate(rows, axis=0)


def write_embedding_file(path: str | Path, units, vectors: np.ndarray) -> None:
    """Atomic write of the shared embedding-file format."""
    path = Path(path)
    if len(units) != vectors.shape[0]:
        raise ExportError(f"{len(units)} ids for {vectors.shape[0]} vectors")
    dim = vectors.shape[1]
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(f"{len(units)} {dim}\n")
            for unit, row in zip(units, vectors):
                if " " in unit.text_id or not unit.text_id:
                    raise ExportError(f"id {unit.text_id!r} is empty or holds a space")
                values = " ".join(repr(float(v)) for v in row)
                fh.write(f"{unit.text_id} {values}\n")
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def export_embeddings(
    dataset_path: str | Path,
    summaries_dir: str | Path,
    model_id: str,
    out: str | Path,
    pooling: str = "mean",
    fmt: str = "jsonl",
    batch_size: int = 16,
) -> ExportManifest:
    """Embed every question, candidate, and summary; write vectors + manifest."""
    if pooling not in POOLINGS:
        raise ExportError(f"unknown pooling {pooling!r}, expected one of {POOLINGS}")
    units = collect_text_units(dataset_path, summaries_dir, fmt)
    tokenizer, model = load_backbone(model_id)
    vectors = embed_texts([u.text for u in units], tokenizer, model, pooling, batch_size)
    if not np.isfinite(vectors).all():
        raise ExportError("model produced non-finite embedding values")
    write_embedding_file(out, units, vectors)
    manifest = ExportManifest(
        model=str(model_id),
        dataset=str(dataset_path),
        pooling=pooling,
        dim=int(vectors.shape[1]),
        ids=tuple(u.text_id for u in units),
    )
    manifest_file = manifest_path(out)
    manifest_file.write_text(json.dumps(manifest.to_dict(), indent=2), encoding="utf-8")
    return manifest
