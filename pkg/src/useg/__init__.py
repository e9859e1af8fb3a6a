"""Utterance segmentation for Egyptian Arabic dialogue turns.

The pipeline normalizes Arabic text, splits leading conjunction waws,
transliterates to Buckwalter, and tags each token B-Seg or I-Seg with a
linear SVM decoded greedily left to right.  Everything is importable
here; the ``useg`` executable (:mod:`useg.cli`) wraps the same calls.
"""

from .arabic import (
    TransliterationTable, default_table, from_buckwalter, normalize,
    to_buckwalter,
)
from .corpus import (
    CorpusSplit, CorpusStats, Dialogue, Genre, Medium, SegTag, Speaker,
    Token, Turn, corpus_stats, format_corpus, load_corpus, save_corpus,
    spans_to_tags, split_corpus, tags_to_spans,
)
from .errors import (
    CorpusFormatError, EvaluationError, ModelFormatError,
    ModelMismatchError, TransliterationError, UsegError,
)
from .features import (
    Alphabet, FeatureTemplate, FeatureVector, build_alphabet, extract,
    feature_strings,
)
from .metrics import Metrics, evaluate, f_score, report, report_rows
from .pos import (
    LexiconPosProvider, PosInfo, PosProvider, TagMapping,
    gold_pos_from_corpus,
)
from .segmenter import (
    Segmentation, SegmenterPipeline, preprocess, segment, tag_turn,
    train_pipeline, turn_pos_infos,
)
from .svm import (
    LinearModel, TrainConfig, load_model, predict, save_model, score,
    train,
)
from .wawanizer import WawLexicon, load_lexicon, split_waw, wawanize_turn

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "UsegError", "TransliterationError", "CorpusFormatError",
    "ModelFormatError", "ModelMismatchError", "EvaluationError",
    # arabic
    "normalize", "to_buckwalter", "from_buckwalter",
    "TransliterationTable", "default_table",
    # wawanizer
    "WawLexicon", "load_lexicon", "split_waw", "wawanize_turn",
    # pos
    "PosInfo", "PosProvider", "LexiconPosProvider", "TagMapping",
    "gold_pos_from_corpus",
    # corpus
    "SegTag", "Speaker", "Genre", "Medium", "Token", "Turn", "Dialogue",
    "CorpusSplit", "CorpusStats", "load_corpus", "save_corpus",
    "format_corpus", "split_corpus", "corpus_stats", "tags_to_spans",
    "spans_to_tags",
    # features
    "FeatureTemplate", "Alphabet", "FeatureVector", "feature_strings",
    "extract", "build_alphabet",
    # svm
    "TrainConfig", "LinearModel", "train", "score", "predict",
    "save_model", "load_model",
    # segmenter
    "SegmenterPipeline", "Segmentation", "preprocess", "tag_turn",
    "segment", "train_pipeline", "turn_pos_infos",
    # metrics
    "Metrics", "f_score", "evaluate", "report", "report_rows",
]
