"""Unsupervised extractive summarization: MMR, LSA, and PLSA selectors with
an evaluation harness (precision/recall/F1 and ROUGE-1)."""

__version__ = "0.1.0"

from .corpus import (
    CorpusError,
    Document,
    EmptyDocumentError,
    GoldenSummary,
    SegmentationRules,
    Sentence,
    Token,
    TokenizerConfig,
    load_corpus,
    load_golden,
    load_stopwords,
    make_document,
    read_corpus,
    save_corpus,
    segment_sentences,
    tokenize,
)
from .linalg import SvdConvergenceError, SvdFactorization, svd, truncate
from .lsa import (
    FoldedQuery,
    LsaConfig,
    fold_query,
    gong_liu_select,
    murray_select,
    query_lsa_select,
    steinberger_jezek_select,
)
from .metrics import (
    AggregateReport,
    EvalReport,
    aggregate,
    precision_recall_f1,
    rouge_n,
)
from .mmr import MmrConfig, mmr_summarize
from .plsa import PlsaModel, plsa_fit, plsa_rank, plsa_summarize
from .summary import SummaryResult, target_length
from .vectorizer import (
    TermSentenceMatrix,
    TermVector,
    Vocabulary,
    build_matrix,
    cosine,
    document_vector,
    query_vector,
)

__all__ = [
    "__version__",
    "CorpusError",
    "Document",
    "EmptyDocumentError",
    "GoldenSummary",
    "SegmentationRules",
    "Sentence",
    "Token",
    "TokenizerConfig",
    "load_corpus",
    "load_golden",
    "load_stopwords",
    "make_document",
    "read_corpus",
    "save_corpus",
    "segment_sentences",
    "tokenize",
    "SvdConvergenceError",
    "SvdFactorization",
    "svd",
    "truncate",
    "FoldedQuery",
    "LsaConfig",
    "fold_query",
    "gong_liu_select",
    "murray_select",
    "query_lsa_select",
    "steinberger_jezek_select",
    "AggregateReport",
    "EvalReport",
    "aggregate",
    "precision_recall_f1",
    "rouge_n",
    "MmrConfig",
    "mmr_summarize",
    "PlsaModel",
    "plsa_fit",
    "plsa_rank",
    "plsa_summarize",
    "SummaryResult",
    "target_length",
    "TermSentenceMatrix",
    "TermVector",
    "Vocabulary",
    "build_matrix",
    "cosine",
    "document_vector",
    "query_vector",
]
