"""nameline: find, classify and order excerpts describing entity name changes."""

from .textseg import Document, Sentence, SegmenterConfig, Token, TokenKind, analyze
from .excerpt import Excerpt, extract_candidates, generalize
from .features import FeatureIndex, FeatureVector, build_index, ordered_pairs, vectorize
from .svm import Model, TrainConfig, classify, decision, load_model, save_model, train_smo
from .training import (
    CorpusArticle,
    CVReport,
    Dataset,
    LabeledExcerpt,
    build_datasets,
    cross_validate,
    load_corpus,
    train_model_set,
)
from .pipeline import (
    ModelSet,
    Timeline,
    TimelineEntry,
    build_timeline,
    classify_excerpt,
    first_year,
    load_model_set,
    save_model_set,
)

__version__ = "0.1.0"
