"""Word embedding training, pooling and the shared vector-file format."""

from .glove import GloveGradients, GloveTrainer, glove_term_objective, glove_weight, train_glove
from .vectors import (
    EmbeddingFormatError,
    EmbeddingMatrix,
    SentenceVector,
    TrainConfig,
    load_external_embeddings,
    pool_sentence,
    pool_tokens,
    save_embeddings,
)
from .word2vec import SgnsGradients, Word2VecTrainer, sgns_pair_objective, train_word2vec

__all__ = [
    "EmbeddingFormatError",
    "EmbeddingMatrix",
    "GloveGradients",
    "GloveTrainer",
    "SentenceVector",
    "SgnsGradients",
    "TrainConfig",
    "Word2VecTrainer",
    "glove_term_objective",
    "glove_weight",
    "load_external_embeddings",
    "pool_sentence",
    "pool_tokens",
    "save_embeddings",
    "sgns_pair_objective",
    "train_glove",
    "train_word2vec",
]
