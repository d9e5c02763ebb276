"""Command line front end.

Subcommands: prepare, train-embeddings, predict, evaluate, sweep.
Exit codes: 0 success, 1 validation/usage error, 2 runtime error.
Configuration comes from a JSON file (--config); flags override file values.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import pipeline
from .corpus import (
    SPLITS,
    CorpusError,
    Dataset,
    EmptyDatasetError,
    gold_labels,
    load_split,
)
from .embeddings import (
    EmbeddingFormatError,
    GloveTrainer,
    TrainConfig,
    Word2VecTrainer,
    load_external_embeddings,
    save_embeddings,
)
from .evaluation import (
    EvaluationError,
    ThresholdSweep,
    classification_report,
    distribution_table,
    distribution_to_dict,
    distribution_to_text,
    evaluate,
    report_to_dict,
    report_to_text,
    sweep_to_dict,
    sweep_to_text,
)
from .labeling import LabelingRule, label_group, read_predictions_csv, write_predictions_csv
from .pipeline import PipelineError
from .scoring import ScoringError, write_scores_csv
from .summarizer import ExternalSummarizer, ExtractiveBackend, SummarizerBackendError, SummarySpec
from .textproc import EmptyVocabularyError, build_vocab, count_cooccurrence, save_vocab

LOGGER = logging.getLogger("legalsim")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

PATH_KEYS = ("train", "dev", "test", "summaries_dir", "embeddings_dir", "output_dir")
CONFIG_KEYS = {
    "paths",
    "format",
    "system",
    "seed",
    "rule",
    "train_config",
    "summary_spec",
    "summarizer_command",
}
FAMILY_KEYS = ("word2vec", "glove")


class UsageError(Exception):
    """Bad flags, bad config, or missing required inputs."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    paths: dict[str, str] = field(default_factory=dict)
    fmt: str = "jsonl"
    system: str = "word2vec-cosine"
    seed: int = 42
    rule_overrides: dict = field(default_factory=dict)
    train_overrides: dict = field(default_factory=dict)
    summary_spec: SummarySpec = field(default_factory=SummarySpec)
    summarizer_command: list[str] | None = None

    def split_path(self, split: str) -> Path:
        raw = self.paths.get(split)
        if not raw:
            raise UsageError(f"no {split!r} path configured (config paths.{split} or --{split}-file)")
        path = Path(raw)
        if not path.is_file():
            raise UsageError(f"{split} file {path} does not exist")
        return path

    def directory(self, key: str, must_exist: bool = False) -> Path:
        raw = self.paths.get(key)
        if not raw:
            flag = "--" + key.replace("_", "-")
            raise UsageError(f"no {key!r} path configured (config paths.{key} or {flag})")
        path = Path(raw)
        if must_exist and not path.is_dir():
            raise UsageError(f"directory {path} does not exist")
        return path

    def configured_splits(self) -> list[str]:
        return [split for split in SPLITS if self.paths.get(split)]


def _build_summary_spec(raw: dict) -> SummarySpec:
    allowed = {f.name for f in dataclasses.fields(SummarySpec)}
    unknown = set(raw) - allowed
    if unknown:
        raise UsageError(f"unknown summary_spec keys: {sorted(unknown)}")
    try:
        return SummarySpec(**raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid summary_spec: {exc}") from None


def load_config_file(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"config file {path} does not exist")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    unknown = set(raw) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")

    config = RunConfig()
    paths = raw.get("paths", {})
    if not isinstance(paths, dict) or set(paths) - set(PATH_KEYS):
        raise UsageError(f"config paths must be an object with keys from {PATH_KEYS}")
    config.paths = {k: str(v) for k, v in paths.items() if v}
    config.fmt = raw.get("format", config.fmt)
    config.system = raw.get("system", config.system)
    config.seed = int(raw.get("seed", config.seed))
    config.rule_overrides = dict(raw.get("rule", {}))
    config.train_overrides = dict(raw.get("train_config", {}))
    config.summary_spec = _build_summary_spec(raw.get("summary_spec", {}))
    command = raw.get("summarizer_command")
    if command is not None:
        if isinstance(command, str):
            command = shlex.split(command)
        if not isinstance(command, list) or not all(isinstance(c, str) for c in command):
            raise UsageError("summarizer_command must be a string or list of strings")
        config.summarizer_command = command
    return config


def apply_flag_overrides(config: RunConfig, args: argparse.Namespace) -> None:
    for split in SPLITS:
        value = getattr(args, f"{split}_file", None)
        if value:
            config.paths[split] = value
    for key in ("summaries_dir", "embeddings_dir", "output_dir"):
        value = getattr(args, key, None)
        if value:
            config.paths[key] = value
    if getattr(args, "format", None):
        config.fmt = args.format
    if getattr(args, "system", None):
        config.system = args.system
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if getattr(args, "epsilon", None) is not None:
        config.rule_overrides["epsilon"] = args.epsilon
    if getattr(args, "delta", None) is not None:
        config.rule_overrides["delta"] = args.delta
    if getattr(args, "replacement", None):
        config.rule_overrides["replacement_enabled"] = args.replacement == "on"
    if getattr(args, "summarizer_cmd", None):
        config.summarizer_command = shlex.split(args.summarizer_cmd)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config_file(args.config) if args.config else RunConfig()
    apply_flag_overrides(config, args)
    if config.fmt not in ("jsonl", "csv"):
        raise UsageError(f"format must be jsonl or csv, got {config.fmt!r}")
    if config.system not in pipeline.SYSTEMS:
        raise UsageError(f"unknown system {config.system!r}, expected one of {pipeline.SYSTEMS}")
    return config


def resolve_rule(config: RunConfig) -> LabelingRule:
    """Default rule for the system, overlaid with config/flag overrides."""
    base = pipeline.default_rule(config.system)
    allowed = {f.name for f in dataclasses.fields(LabelingRule)}
    unknown = set(config.rule_overrides) - allowed
    if unknown:
        raise UsageError(f"unknown rule keys: {sorted(unknown)}")
    merged = {**dataclasses.asdict(base), **config.rule_overrides}
    try:
        rule = LabelingRule(**merged)
    except ValueError as exc:
        raise UsageError(f"invalid rule: {exc}") from None
    if rule.mode != base.mode:
        raise UsageError(
            f"system {config.system} uses metric {pipeline.metric_for(config.system)!r} "
            f"which requires rule mode {base.mode!r}, got {rule.mode!r}"
        )
    return rule


def family_train_config(config: RunConfig, family: str) -> TrainConfig:
    """Family defaults overlaid with shared then per-family overrides."""
    base = TrainConfig.word2vec_defaults() if family == "word2vec" else TrainConfig.glove_defaults()
    merged = dataclasses.asdict(base)
    shared = {k: v for k, v in config.train_overrides.items() if k not in FAMILY_KEYS}
    per_family = config.train_overrides.get(family, {})
    allowed = set(merged)
    unknown = (set(shared) | set(per_family)) - allowed
    if unknown:
        raise UsageError(f"unknown train_config keys: {sorted(unknown)}")
    merged.update(shared)
    merged.update(per_family)
    merged["seed"] = config.seed
    try:
        return TrainConfig(**merged)
    except ValueError as exc:
        raise UsageError(f"invalid train_config: {exc}") from None


def _summaries_dir(config: RunConfig, split: str) -> Path:
    return config.directory("summaries_dir") / split


def _read_summaries_checked(config: RunConfig, split: str) -> dict:
    directory = _summaries_dir(config, split)
    if not directory.is_dir():
        raise UsageError(f"summaries directory {directory} does not exist; run prepare first")
    return pipeline.read_summaries(directory)


def _embedding_file(config: RunConfig, split: str) -> Path:
    family = pipeline.family_for(config.system)
    directory = config.directory("embeddings_dir")
    if family == "transformer":
        return directory / f"transformer_{split}.txt"
    return directory / f"{family}.txt"


def _output_names(config: RunConfig, split: str, rule: LabelingRule) -> tuple[Path, Path, Path]:
    out = config.directory("output_dir")
    suffix = "" if rule.replacement_enabled else "_noreplacement"
    stem = f"{config.system}_{split}{suffix}"
    return (
        out / f"predictions_{stem}.csv",
        out / f"scores_{stem}.csv",
        out / f"report_{stem}.json",
    )


def _summarizer_backend(config: RunConfig):
    if config.summarizer_command:
        return ExternalSummarizer(config.summarizer_command)
    return ExtractiveBackend(config.summary_spec.per_segment_output_ratio)


def cmd_prepare(config: RunConfig, args: argparse.Namespace) -> int:
    splits = config.configured_splits() if args.split == "all" else [args.split]
    if not splits:
        raise UsageError("no dataset paths configured; set paths.train/dev/test")
    backend = _summarizer_backend(config)
    for split in splits:
        path = config.split_path(split)
        try:
            dataset = load_split(path, config.fmt, split)
        except EmptyDatasetError:
            LOGGER.warning("%s: empty dataset, nothing to summarize", path)
            print(f"{split}: 0 summaries (empty dataset)")
            continue
        records = pipeline.summarize_dataset(dataset, config.summary_spec, backend)
        count = pipeline.write_summaries(_summaries_dir(config, split), records)
        print(f"{split}: {count} summaries -> {_summaries_dir(config, split)}")
    return EXIT_OK


def _load_training_pairs(config: RunConfig) -> list[tuple[Dataset, dict]]:
    pairs = []
    for split in config.configured_splits():
        dataset = load_split(config.split_path(split), config.fmt, split)
        summaries = _read_summaries_checked(config, split)
        pairs.append((dataset, summaries))
    if not pairs:
        raise UsageError("no dataset paths configured; set paths.train/dev/test")
    return pairs


def cmd_train_embeddings(config: RunConfig, args: argparse.Namespace) -> int:
    directory = config.directory("embeddings_dir")
    directory.mkdir(parents=True, exist_ok=True)
    pairs = _load_training_pairs(config)
    corpus_lists = pipeline.training_token_lists(pairs)
    vocab = build_vocab(corpus_lists, min_count=1)
    save_vocab(vocab, directory / "vocab.txt")
    print(f"vocabulary: {len(vocab)} tokens -> {directory / 'vocab.txt'}")

    families = ("word2vec", "glove") if args.which == "both" else (args.which,)
    for family in families:
        train_config = family_train_config(config, family)
        if family == "word2vec":
            matrix = Word2VecTrainer(vocab, train_config).fit(corpus_lists)
        else:
            cooc = count_cooccurrence(corpus_lists, vocab, train_config.window)
            matrix = GloveTrainer(train_config).fit(cooc)
        out = directory / f"{family}.txt"
        save_embeddings(out, vocab.index_to_token, matrix.vectors)
        print(
            f"{family}: dim={train_config.dim} window={train_config.window} "
            f"epochs={train_config.epochs} lr={train_config.learning_rate} seed={config.seed} -> {out}"
        )
    return EXIT_OK


def _vector_table(config: RunConfig, split: str, dataset: Dataset, summaries: dict):
    embedding_file = _embedding_file(config, split)
    family = pipeline.family_for(config.system)
    if not embedding_file.is_file():
        if family == "transformer":
            raise UsageError(
                f"embedding file {embedding_file} does not exist; run the exporter "
                f"to produce transformer vectors for the {split} split"
            )
        raise UsageError(
            f"embedding file {embedding_file} does not exist; run train-embeddings first"
        )
    mapping = load_external_embeddings(embedding_file)
    if not mapping:
        raise UsageError(f"embedding file {embedding_file} holds no vectors")
    if family == "transformer":
        return mapping
    dim = len(next(iter(mapping.values())))
    return pipeline.pooled_vector_table(dataset, summaries, mapping, dim)


def cmd_predict(config: RunConfig, args: argparse.Namespace) -> int:
    split = args.split
    rule = resolve_rule(config)
    dataset = load_split(config.split_path(split), config.fmt, split)
    summaries = _read_summaries_checked(config, split)
    vectors = _vector_table(config, split, dataset, summaries)
    metric = pipeline.metric_for(config.system)

    predictions, flat_scores = pipeline.run_prediction(dataset, vectors, summaries, metric, rule)
    predictions.validate()

    predictions_path, scores_path, report_path = _output_names(config, split, rule)
    predictions_path.parent.mkdir(parents=True, exist_ok=True)
    write_predictions_csv(predictions_path, predictions)
    write_scores_csv(scores_path, flat_scores)
    print(f"predictions -> {predictions_path}")
    print(f"scores      -> {scores_path}")

    report = pipeline.evaluate_predictions(dataset, predictions)
    if report is None:
        print("no gold labels in this split; skipping evaluation")
        return EXIT_OK
    golds = gold_labels(dataset)
    table = distribution_table(flat_scores, predictions, golds)
    payload = {
        "system": config.system,
        "split": split,
        "metric": metric,
        "rule": dataclasses.asdict(rule),
        "seed": config.seed,
        **report_to_dict(report),
        "distribution": distribution_to_dict(table),
    }
    report_path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    print(f"report      -> {report_path}")
    print()
    print(report_to_text(report))
    print()
    print(distribution_to_text(table))
    return EXIT_OK


def cmd_evaluate(config: RunConfig, args: argparse.Namespace) -> int:
    predictions_path = Path(args.predictions)
    if not predictions_path.is_file():
        raise UsageError(f"predictions file {predictions_path} does not exist")
    dataset = load_split(config.split_path(args.split), config.fmt, args.split)
    golds = gold_labels(dataset)
    if not golds:
        raise UsageError(f"split {args.split!r} carries no gold labels")
    predictions = read_predictions_csv(predictions_path)
    report = evaluate(predictions, golds)
    if args.json:
        print(json.dumps(report_to_dict(report), indent=2))
    else:
        print(report_to_text(report))
    return EXIT_OK


def _parse_grid(raw: str) -> list[float]:
    values = [part for part in raw.replace(",", " ").split() if part]
    if not values:
        raise UsageError("grid must contain at least one threshold")
    try:
        return [float(v) for v in values]
    except ValueError as exc:
        raise UsageError(f"invalid grid value: {exc}") from None


def cmd_sweep(config: RunConfig, args: argparse.Namespace) -> int:
    grid = _parse_grid(args.grid)
    rule = resolve_rule(config)
    param = args.param or ("epsilon" if rule.mode == "similarity" else "delta")
    if param == "epsilon" and rule.mode != "similarity":
        raise UsageError("epsilon can only be swept for similarity-mode systems")
    if param == "delta" and rule.mode != "distance":
        raise UsageError("delta can only be swept for distance-mode systems")
    if any(value < 0 for value in grid):
        raise UsageError("thresholds must be >= 0")

    splits = [s.strip() for s in args.split.split(",") if s.strip()]
    for split in splits:
        if split not in SPLITS:
            raise UsageError(f"unknown split {split!r}")
    metric = pipeline.metric_for(config.system)

    per_split = []
    for split in splits:
        dataset = load_split(config.split_path(split), config.fmt, split)
        golds = gold_labels(dataset)
        if not golds:
            raise UsageError(f"split {split!r} carries no gold labels; cannot sweep")
        summaries = _read_summaries_checked(config, split)
        vectors = _vector_table(config, split, dataset, summaries)
        groups = pipeline.score_groups(dataset, vectors, summaries, metric)
        per_split.append((groups, golds))

    results: dict[float, float] = {}
    for threshold in grid:
        candidate_rule = dataclasses.replace(rule, **{param: float(threshold)})
        preds: list[int] = []
        gold_list: list[int] = []
        for groups, golds in per_split:
            for group in groups:
                labels = label_group(group, candidate_rule)
                for candidate_id, label in labels.items():
                    preds.append(label)
                    gold_list.append(golds[candidate_id])
        results[float(threshold)] = classification_report(preds, gold_list).macro_f1

    best_f1 = max(results.values())
    best_threshold = min(t for t, f1 in results.items() if f1 == best_f1)
    sweep = ThresholdSweep(
        grid=tuple(float(t) for t in grid),
        scores=results,
        best_threshold=best_threshold,
        best_f1=best_f1,
    )
    print(f"system {config.system}, sweeping {param} on {'+'.join(splits)}")
    print(sweep_to_text(sweep))
    out_dir = config.paths.get("output_dir")
    if out_dir:
        out = Path(out_dir) / f"sweep_{config.system}_{param}.json"
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps({"param": param, **sweep_to_dict(sweep)}, indent=2), encoding="utf-8")
        print(f"sweep report -> {out}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="legalsim", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON run configuration file")
    common.add_argument("--format", choices=("jsonl", "csv"), help="dataset file format")
    common.add_argument("--system", choices=pipeline.SYSTEMS, help="scoring system")
    common.add_argument("--seed", type=int, help="seed for embedding training")
    common.add_argument("--train-file", help="path to the train split")
    common.add_argument("--dev-file", help="path to the dev split")
    common.add_argument("--test-file", help="path to the test split")
    common.add_argument("--summaries-dir", help="directory holding cached summaries")
    common.add_argument("--embeddings-dir", help="directory holding vector files")
    common.add_argument("--output-dir", help="directory for predictions and reports")
    common.add_argument("--epsilon", type=float, help="similarity replacement threshold")
    common.add_argument("--delta", type=float, help="distance replacement threshold")
    common.add_argument(
        "--replacement", choices=("on", "off"), help="enable or disable second-best replacement"
    )
    common.add_argument("--summarizer-cmd", help="external summarizer command line")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("prepare", parents=[common], help="summarize explanations to disk")
    p.add_argument("--split", choices=SPLITS + ("all",), default="all")

    p = sub.add_parser("train-embeddings", parents=[common], help="train token vectors")
    p.add_argument("--which", choices=("word2vec", "glove", "both"), default="both")

    p = sub.add_parser("predict", parents=[common], help="score, label and evaluate a split")
    p.add_argument("--split", choices=SPLITS, default="dev")

    p = sub.add_parser("evaluate", parents=[common], help="evaluate a predictions CSV")
    p.add_argument("--split", choices=SPLITS, default="dev")
    p.add_argument("--predictions", required=True, help="predictions CSV to evaluate")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("sweep", parents=[common], help="grid search the replacement threshold")
    p.add_argument("--split", default="dev", help="split name or comma list, e.g. train,dev")
    p.add_argument("--param", choices=("epsilon", "delta"))
    p.add_argument("--grid", required=True, help="comma separated thresholds")

    return parser


COMMANDS = {
    "prepare": cmd_prepare,
    "train-embeddings": cmd_train_embeddings,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = resolve_config(args)
        return COMMANDS[args.command](config, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        CorpusError,
        PipelineError,
        ScoringError,
        EvaluationError,
        SummarizerBackendError,
        EmbeddingFormatError,
        EmptyVocabularyError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
