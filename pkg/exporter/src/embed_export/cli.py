"""Command line front end for the embedding exporter.

Exit codes: 0 success, 1 export/runtime failure (including model load
failures), 2 bad command line flags.
"""

from __future__ import annotations

import argparse
import sys

from .exporter import POOLINGS, export_embeddings, manifest_path
from .records import ExportError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embed-export", description=__doc__)
    parser.add_argument("--dataset", required=True, help="candidate-level dataset file")
    parser.add_argument("--summaries", required=True, help="directory of cached summary JSON files")
    parser.add_argument("--model", required=True, help="model id or local checkpoint directory")
    parser.add_argument("--out", required=True, help="embedding file to write")
    parser.add_argument("--pooling", choices=POOLINGS, default="mean")
    parser.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    parser.add_argument("--batch-size", type=int, default=16)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = export_embeddings(
            dataset_path=args.dataset,
            summaries_dir=args.summaries,
            model_id=args.model,
            out=args.out,
            pooling=args.pooling,
            fmt=args.format,
            batch_size=args.batch_size,
        )
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"exported {len(manifest.ids)} vectors of dim {manifest.dim} -> {args.out}")
    print(f"manifest -> {manifest_path(args.out)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
