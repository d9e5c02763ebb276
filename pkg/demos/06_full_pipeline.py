"""End-to-end run through the command line interface.

The CLI wires the library stages together behind five subcommands:

  prepare           summarize every explanation and cache the summaries
  train-embeddings  train both embedding families on the prepared corpus
  predict           score, label, and (on labeled splits) evaluate a system
  evaluate          re-score an existing predictions file
  sweep             macro-F1 of the replacement margin over a grid

Everything below runs in-process against a temporary workspace; the same
invocations work verbatim from a shell via the installed `legalsim` script.
"""

from __future__ import annotations

import json
import random
import tempfile
from pathlib import Path

from legalsim.cli import main as cli

WORDS = ["court", "claim", "contract", "notice", "breach", "damages",
         "buyer", "seller", "appeal", "liable", "defect", "remedy"]


def make_rows(rng: random.Random, n_questions: int) -> list[dict]:
    rows = []
    for _ in range(n_questions):
        question = " ".join(rng.choices(WORDS, k=8))
        explanation = ". ".join(" ".join(rng.choices(WORDS, k=10)) for _ in range(6)) + "."
        gold = rng.randrange(4)
        for j in range(4):
            rows.append({
                "question": question,
                "answer": " ".join(rng.choices(WORDS, k=6)),
                "explanation": explanation,
                "label": int(j == gold),
            })
    return rows


def write_split(path: Path, rows: list[dict]) -> None:
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")


def run(args: list[str]) -> None:
    print(f"$ legalsim {' '.join(args)}")
    code = cli(args)
    print(f"  -> exit {code}\n")
    assert code == 0


def main() -> None:
    rng = random.Random(21)
    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)
        write_split(work / "train.jsonl", make_rows(rng, 12))
        write_split(work / "dev.jsonl", make_rows(rng, 6))
        out = work / "out"

        base = ["--train-file", str(work / "train.jsonl"),
                "--dev-file", str(work / "dev.jsonl"),
                "--summaries-dir", str(work / "summaries"),
                "--embeddings-dir", str(work / "emb"),
                "--output-dir", str(out),
                "--seed", "7"]

        run(["prepare", *base])
        run(["train-embeddings", *base])
        run(["predict", *base, "--system", "word2vec-cosine", "--split", "dev"])
        run(["evaluate", *base, "--split", "dev",
             "--predictions", str(out / "predictions_word2vec-cosine_dev.csv")])
        run(["sweep", *base, "--system", "word2vec-cosine", "--split", "dev",
             "--grid", "0.0001,0.0005,0.001,0.005,0.01"])

        report = json.loads((out / "report_word2vec-cosine_dev.json").read_text())
        print("dev report:")
        print(f"  system    {report['system']}")
        print(f"  accuracy  {report['accuracy']:.4f}")
        print(f"  macro_f1  {report['macro_f1']:.4f}")
        print(f"  distribution {report['distribution']}")

        produced = sorted(p.name for p in out.iterdir())
        print("\nartifacts:", *produced, sep="\n  ")


if __name__ == "__main__":
    main()
