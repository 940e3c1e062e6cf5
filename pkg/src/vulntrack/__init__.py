"""vulntrack: index security reports, tune keyword embeddings, track
topics and their trends."""

from .embeddings import EmbeddingTable, EpochLoss, GloveConfig, fine_tune
from .engine import EngineConfig, TrackingEngine
from .errors import VulnTrackError
from .index import CooccurrenceTable, InvertedIndex, Posting
from .pipeline import (
    CorrectionMap,
    KeywordDictionary,
    KeywordEntry,
    TextPipeline,
    Token,
    tokenize,
)
from .store import CorpusStats, Document, DocumentStore
from .topics import ExpansionCandidate, RankedResult, Topic, TopicTracker
from .trends import SpikeConfig, TrendSeries, bucket_counts, detect_spikes

__version__ = "0.1.0"

__all__ = [
    "CooccurrenceTable",
    "CorpusStats",
    "CorrectionMap",
    "Document",
    "DocumentStore",
    "EmbeddingTable",
    "EngineConfig",
    "EpochLoss",
    "ExpansionCandidate",
    "GloveConfig",
    "InvertedIndex",
    "KeywordDictionary",
    "KeywordEntry",
    "Posting",
    "RankedResult",
    "SpikeConfig",
    "TextPipeline",
    "Token",
    "Topic",
    "TopicTracker",
    "TrackingEngine",
    "TrendSeries",
    "VulnTrackError",
    "bucket_counts",
    "detect_spikes",
    "fine_tune",
    "tokenize",
]
