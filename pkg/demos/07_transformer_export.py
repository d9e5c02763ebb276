"""Plugging externally exported transformer vectors into the pipeline.

The companion `embed-export` package embeds every question, candidate and
cached summary with a transformer encoder and writes the shared vector file
format. The consumer never loads the transformer itself: it reads the file,
so the transformer systems stay usable on machines without a GPU stack.

To keep this demo offline it builds a tiny randomly initialized encoder
instead of downloading a pretrained checkpoint; with a real model id such as
a 1536-dimensional sentence encoder the flow is identical.
"""

from __future__ import annotations

import json
import random
import tempfile
from pathlib import Path

from embed_export.cli import main as export_cli
from legalsim.cli import main as legalsim_cli

from importlib import import_module

WORDS = ["court", "claim", "contract", "notice", "breach", "damages",
         "buyer", "seller", "appeal", "liable", "defect", "remedy"]


def tiny_encoder(directory: Path) -> None:
    torch = import_module("torch")
    transformers = import_module("transformers")
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", *WORDS]
    (directory / "vocab.txt").write_text("\n".join(vocab), encoding="utf-8")
    tokenizer = transformers.BertTokenizer(
        vocab_file=str(directory / "vocab.txt"), model_max_length=32
    )
    config = transformers.BertConfig(
        vocab_size=len(vocab), hidden_size=8, num_hidden_layers=1,
        num_attention_heads=2, intermediate_size=16, max_position_embeddings=32,
    )
    torch.manual_seed(0)
    tokenizer.save_pretrained(directory)
    transformers.BertModel(config).save_pretrained(directory)


def make_rows(rng: random.Random, n_questions: int) -> list[dict]:
    rows = []
    for _ in range(n_questions):
        question = " ".join(rng.choices(WORDS, k=8))
        explanation = ". ".join(" ".join(rng.choices(WORDS, k=10)) for _ in range(5)) + "."
        gold = rng.randrange(4)
        for j in range(4):
            rows.append({
                "question": question,
                "answer": " ".join(rng.choices(WORDS, k=6)),
                "explanation": explanation,
                "label": int(j == gold),
            })
    return rows


def main() -> None:
    rng = random.Random(33)
    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)
        dev = work / "dev.jsonl"
        dev.write_text(
            "".join(json.dumps(r) + "\n" for r in make_rows(rng, 5)), encoding="utf-8"
        )
        model_dir = work / "tiny-model"
        model_dir.mkdir()
        tiny_encoder(model_dir)

        base = ["--dev-file", str(dev),
                "--summaries-dir", str(work / "summaries"),
                "--embeddings-dir", str(work / "emb"),
                "--output-dir", str(work / "out")]

        # 1. The consumer prepares its summaries as usual.
        assert legalsim_cli(["prepare", *base, "--split", "dev"]) == 0

        # 2. The exporter embeds the texts and writes the vector file the
        #    transformer systems look for: transformer_<split>.txt.
        (work / "emb").mkdir(exist_ok=True)
        code = export_cli([
            "--dataset", str(dev),
            "--summaries", str(work / "summaries" / "dev"),
            "--model", str(model_dir),
            "--out", str(work / "emb" / "transformer_dev.txt"),
            "--pooling", "mean",
        ])
        assert code == 0

        # 3. Prediction consumes the exported vectors directly.
        assert legalsim_cli([
            "predict", *base, "--system", "transformer-cosine", "--split", "dev",
        ]) == 0

        # The default rule for transformer-cosine keeps the ranking leader
        # (no second-best replacement); output names record that.
        report = json.loads(
            (work / "out" / "report_transformer-cosine_dev_noreplacement.json").read_text()
        )
        print("\ntransformer-cosine on the toy dev split:")
        print(f"  accuracy {report['accuracy']:.4f}, macro_f1 {report['macro_f1']:.4f}")
        manifest = json.loads(
            (work / "emb" / "transformer_dev.manifest.json").read_text()
        )
        print(f"  exported ids: {manifest['count']}, dim: {manifest['dim']}")


if __name__ == "__main__":
    main()
