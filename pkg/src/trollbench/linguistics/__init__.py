"""Preprocessing substrate: analysis pipeline, sentiment, lexicons, embeddings."""

from .analysis import (
    AnalyzedText,
    AnnotationSidecar,
    Analyzer,
    FrameAnnotation,
    Token,
    analyze,
    lemmatize,
    pos_tag,
)
from .embeddings import EmbeddingTable, embed_average
from .lexicons import LEXICON_NAMES, Lexicon, lexicon_hit, load_lexicons
from .sentiment import SentimentScores, load_valence_lexicon, sentiment

__all__ = [
    "AnalyzedText",
    "AnnotationSidecar",
    "Analyzer",
    "EmbeddingTable",
    "FrameAnnotation",
    "LEXICON_NAMES",
    "Lexicon",
    "SentimentScores",
    "Token",
    "analyze",
    "embed_average",
    "lemmatize",
    "lexicon_hit",
    "load_lexicons",
    "load_valence_lexicon",
    "pos_tag",
    "sentiment",
]
