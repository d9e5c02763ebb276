"""Two-level segment-wise summarization with pluggable backends.

Long texts are chunked to a token budget, each chunk is summarized, and the
chunk summaries are joined with spaces; the joined output is re-chunked at a
smaller budget and summarized again. The shipped fallback backend is a
deterministic extractive scorer; an external abstractive model can be plugged
in through a line-oriented subprocess protocol.
"""

from __future__ import annotations

import json
import math
import re
import subprocess
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .textproc import token_spans, tokenize

_SENTENCE_BOUNDARY = re.compile(r"(?<=[.!?])\s+")

FALLBACK_BACKEND = "extractive_fallback"
EXTERNAL_BACKEND = "external"


class SummarizerBackendError(Exception):
    """A backend failed; the message names the chunk that broke."""


@dataclass(frozen=True)
class SummarySpec:
    """Chunk budgets and joiner for the two summarization passes."""

    level1_segment_tokens: int = 1000
    level2_segment_tokens: int = 300
    joiner: str = " "
    per_segment_output_ratio: float = 0.3

    def __post_init__(self):
        if self.level1_segment_tokens < 1 or self.level2_segment_tokens < 1:
            raise ValueError("segment sizes must be >= 1")
        if self.level2_segment_tokens > self.level1_segment_tokens:
            raise ValueError("level2 segment size must not exceed level1")
        if not 0 < self.per_segment_output_ratio <= 1:
            raise ValueError("per_segment_output_ratio must be in (0, 1]")


@dataclass(frozen=True)
class SummaryRecord:
    question_id: str
    level1_summary: str
    final_summary: str
    backend: str


def segment(text: str, max_tokens: int) -> list[str]:
    """Split a text into consecutive chunks of at most ``max_tokens`` tokens.

    Chunks are slices of the original text running from the first to the last
    token of each group, so punctuation and casing inside a chunk survive.
    Every chunk except possibly the last holds exactly ``max_tokens`` tokens.
    """
    if max_tokens < 1:
        raise ValueError("max_tokens must be >= 1")
    spans = token_spans(text)
    if not spans:
        return []
    chunks = []
    for start in range(0, len(spans), max_tokens):
        group = spans[start : start + max_tokens]
        chunks.append(text[group[0][0] : group[-1][1]])
    return chunks


def extractive_summarize(text: str, ratio: float) -> str:
    """Keep the ceil(ratio * n) highest-scoring sentences, in document order.

    Sentences end at '.', '?' or '!' followed by whitespace. A sentence's
    score is the mean weight of its tokens, where a token's weight is its
    frequency in the whole input divided by the maximum token frequency.
    Ties keep the earlier sentence.
    """
    if not 0 < ratio <= 1:
        raise ValueError("ratio must be in (0, 1]")
    sentences = [part for part in _SENTENCE_BOUNDARY.split(text) if part.strip()]
    if not sentences:
        return text

    counts = Counter(tokenize(text))
    max_count = max(counts.values()) if counts else 1

    def score(sentence: str) -> float:
        tokens = tokenize(sentence)
        if not tokens:
            return 0.0
        return sum(counts[token] / max_count for token in tokens) / len(tokens)

    scores = [score(sentence) for sentence in sentences]
    keep = math.ceil(ratio * len(sentences))
    ranked = sorted(range(len(sentences)), key=lambda i: (-scores[i], i))[:keep]
    return " ".join(sentences[i] for i in sorted(ranked))


class ExtractiveBackend:
    """Deterministic offline backend wrapping :func:`extractive_summarize`."""

    name = FALLBACK_BACKEND

    def __init__(self, ratio: float = 0.3):
        if not 0 < ratio <= 1:
            raise ValueError("ratio must be in (0, 1]")
        self.ratio = ratio

    def summarize_many(self, texts: Sequence[str]) -> list[str]:
        return [extractive_summarize(text, self.ratio) for text in texts]


class ExternalSummarizer:
    """Backend driving a subprocess over the JSONL request/response protocol.

    The whole batch is written to the child's stdin as lines of
    ``{"id": ..., "text": ...}``; the child must answer with one
    ``{"id": ..., "summary": ...}`` line per request, in any order.
    """

    name = EXTERNAL_BACKEND

    def __init__(self, command: Sequence[str]):
        if not command:
            raise ValueError("command must not be empty")
        self.command = list(command)

    def summarize_many(self, texts: Sequence[str]) -> list[str]:
        requests = "".join(
            json.dumps({"id": str(i), "text": text}, ensure_ascii=False) + "\n"
            for i, text in enumerate(texts)
        )
        proc = subprocess.run(
            self.command,
            input=requests.encode("utf-8"),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        if proc.returncode != 0:
            detail = proc.stderr.decode("utf-8", "replace").strip()
            raise SummarizerBackendError(
                f"external summarizer exited with {proc.returncode}: {detail}"
            )
        responses: dict[str, str] = {}
        for raw in proc.stdout.decode("utf-8").splitlines():
            if not raw.strip():
                continue
            try:
                row = json.loads(raw)
                responses[str(row["id"])] = str(row["summary"])
            except (json.JSONDecodeError, KeyError, TypeError):
                raise SummarizerBackendError(
                    f"malformed external summarizer response line: {raw!r}"
                ) from None
        missing = [str(i) for i in range(len(texts)) if str(i) not in responses]
        if missing:
            raise SummarizerBackendError(
                f"external summarizer returned no summary for ids {missing}"
            )
        return [responses[str(i)] for i in range(len(texts))]


Backend = Callable[[str], str]


def _run_backend(backend, chunks: list[str], level: int) -> list[str]:
    if hasattr(backend, "summarize_many"):
        try:
            outputs = backend.summarize_many(chunks)
        except SummarizerBackendError as exc:
            raise SummarizerBackendError(f"level {level}: {exc}") from exc
        if len(outputs) != len(chunks):
            raise SummarizerBackendError(
                f"level {level}: backend returned {len(outputs)} summaries for {len(chunks)} chunks"
            )
        return [str(out) for out in outputs]
    outputs = []
    for index, chunk in enumerate(chunks):
        try:
            outputs.append(str(backend(chunk)))
        except Exception as exc:
            raise SummarizerBackendError(
                f"level {level}: backend failed on chunk {index} of {len(chunks)}: {exc}"
            ) from exc
    return outputs


def _backend_name(backend) -> str:
    return getattr(backend, "name", None) or getattr(backend, "__name__", "custom")


def summarize_segmentwise(
    text: str, spec: SummarySpec, backend, question_id: str = ""
) -> SummaryRecord:
    """Run the two summarization passes over one text.

    ``backend`` is either an object with ``summarize_many(texts)`` or a plain
    per-chunk callable. Pass 1 chunks at ``level1_segment_tokens`` and joins
    the chunk summaries with the joiner; pass 2 re-chunks that output at
    ``level2_segment_tokens`` and joins again.
    """
    chunks = segment(text, spec.level1_segment_tokens)
    if not chunks and text.strip():
        # visible text without alphanumeric tokens still gets summarized whole
        chunks = [text]
    if not chunks:
        return SummaryRecord(question_id, "", "", _backend_name(backend))

    level1 = spec.joiner.join(_run_backend(backend, chunks, level=1))
    chunks2 = segment(level1, spec.level2_segment_tokens)
    if not chunks2 and level1.strip():
        chunks2 = [level1]
    final = spec.joiner.join(_run_backend(backend, chunks2, level=2)) if chunks2 else ""
    return SummaryRecord(question_id, level1, final, _backend_name(backend))
