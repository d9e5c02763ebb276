"""Unsupervised answer selection for legal multiple-choice questions.

The package scores each answer candidate by embedding-space similarity
between the question text and a two-level summary of the accompanying
explanation, then picks exactly one candidate per question with a
second-best replacement rule.
"""

from __future__ import annotations

from .corpus import (
    AnswerCandidate,
    CorpusError,
    Dataset,
    EmptyDatasetError,
    ParseError,
    QaRecord,
    ValidationError,
    candidate_id,
    gold_labels,
    group_by_question,
    load_split,
    question_id,
    save_split,
    strip_labels,
    summary_id,
)
from .embeddings import (
    EmbeddingFormatError,
    EmbeddingMatrix,
    GloveTrainer,
    SentenceVector,
    TrainConfig,
    Word2VecTrainer,
    glove_term_objective,
    glove_weight,
    load_external_embeddings,
    pool_sentence,
    pool_tokens,
    save_embeddings,
    sgns_pair_objective,
    train_glove,
    train_word2vec,
)
from .evaluation import (
    DistributionTable,
    EvalReport,
    EvaluationError,
    ThresholdSweep,
    classification_report,
    distribution_table,
    evaluate,
    sweep_threshold,
)
from .labeling import (
    LabelingRule,
    PredictionSet,
    label_all,
    label_group,
    read_predictions_csv,
    write_predictions_csv,
)
from .pipeline import SYSTEMS, PipelineError, default_rule, run_prediction, summarize_dataset
from .scoring import (
    CalibrationResult,
    ScoringError,
    SimilarityRecord,
    calibrate_sigmoid_mean,
    score_candidates,
    similarity,
)
from .summarizer import (
    ExternalSummarizer,
    ExtractiveBackend,
    SummarizerBackendError,
    SummaryRecord,
    SummarySpec,
    extractive_summarize,
    segment,
    summarize_segmentwise,
)
from .textproc import (
    CooccurrenceTable,
    EmptyVocabularyError,
    Vocabulary,
    build_vocab,
    count_cooccurrence,
    tokenize,
    unigram_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "AnswerCandidate",
    "CalibrationResult",
    "CooccurrenceTable",
    "CorpusError",
    "Dataset",
    "DistributionTable",
    "EmbeddingFormatError",
    "EmbeddingMatrix",
    "EmptyDatasetError",
    "EmptyVocabularyError",
    "EvalReport",
    "EvaluationError",
    "ExternalSummarizer",
    "ExtractiveBackend",
    "GloveTrainer",
    "LabelingRule",
    "ParseError",
    "PipelineError",
    "PredictionSet",
    "QaRecord",
    "SYSTEMS",
    "ScoringError",
    "SentenceVector",
    "SimilarityRecord",
    "SummarizerBackendError",
    "SummaryRecord",
    "SummarySpec",
    "ThresholdSweep",
    "TrainConfig",
    "ValidationError",
    "Vocabulary",
    "Word2VecTrainer",
    "build_vocab",
    "calibrate_sigmoid_mean",
    "candidate_id",
    "classification_report",
    "count_cooccurrence",
    "default_rule",
    "distribution_table",
    "evaluate",
    "extractive_summarize",
    "glove_term_objective",
    "glove_weight",
    "gold_labels",
    "group_by_question",
    "label_all",
    "label_group",
    "load_external_embeddings",
    "load_split",
    "pool_sentence",
    "pool_tokens",
    "question_id",
    "read_predictions_csv",
    "run_prediction",
    "save_embeddings",
    "save_split",
    "score_candidates",
    "segment",
    "sgns_pair_objective",
    "similarity",
    "strip_labels",
    "summarize_dataset",
    "summarize_segmentwise",
    "summary_id",
    "tokenize",
    "train_glove",
    "train_word2vec",
    "unigram_distribution",
    "write_predictions_csv",
]
