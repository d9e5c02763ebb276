"""Pretrained-transformer embedding exporter for the answer-selection pipeline."""

from __future__ import annotations

from .exporter import (
    ExportManifest,
    POOLINGS,
    embed_texts,
    export_embeddings,
    load_backbone,
    manifest_path,
    write_embedding_file,
)
from .records import (
    ExportError,
    TextUnit,
    candidate_id,
    collect_text_units,
    question_id,
    read_question_groups,
    read_summary_text,
    summary_id,
)

__version__ = "0.1.0"

__all__ = [
    "ExportError",
    "ExportManifest",
    "POOLINGS",
    "TextUnit",
    "candidate_id",
    "collect_text_units",
    "embed_texts",
    "export_embeddings",
    "load_backbone",
    "manifest_path",
    "question_id",
    "read_question_groups",
    "read_summary_text",
    "summary_id",
    "write_embedding_file",
]
