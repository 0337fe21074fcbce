"""Weighted term-by-sentence matrices and the vector operations on them.

Builds the t x s matrix whose rows are the document's unique normalized terms
and whose columns are sentences, under one of four cell weighting schemes.
Also provides cosine similarity, the whole-document pseudo-vector, and query
vectors aligned to a matrix's vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import Document, TokenizerConfig, tokenize

WEIGHTINGS = ("raw", "binary", "tf_idf", "log_entropy")


class EmptyVocabularyError(ValueError):
    """Raised when a document yields no tokens at all."""


@dataclass(frozen=True)
class Vocabulary:
    """Unique normalized terms in deterministic (lexicographic) row order."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def index_of(self, term: str) -> int | None:
        return self.index.get(term)


@dataclass(eq=False)
class TermSentenceMatrix:
    """The weighted term-by-sentence matrix plus its raw count backing.

    ``raw_counts[i, j]`` is the number of occurrences of term i in sentence j;
    ``values`` applies the configured weighting on top of those counts.
    """

    vocab: Vocabulary
    values: np.ndarray      # float64, t x s
    raw_counts: np.ndarray  # int64, t x s
    weighting: str

    @property
    def n_terms(self) -> int:
        return self.values.shape[0]

    @property
    def n_sentences(self) -> int:
        return self.values.shape[1]


@dataclass(eq=False)
class TermVector:
    """A length-t weight vector aligned to a matrix's vocabulary."""

    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


def _entropy_factor(counts: np.ndarray) -> np.ndarray:
    """Per-term global weight 1 + sum_j p_ij ln(p_ij) / ln(s), in [0, 1].

    Defined as 1 for single-sentence matrices (the 0/0 limit: a one-column
    distribution carries no entropy).
    """
    s = counts.shape[1]
    if s == 1:
        return np.ones(counts.shape[0])
    totals = counts.sum(axis=1, keepdims=True).astype(np.float64)
    p = counts / totals
    plogp = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    return 1.0 + plogp.sum(axis=1) / np.log(s)


def _idf(counts: np.ndarray) -> np.ndarray:
    """Per-term ln(s / df); natural log, no smoothing (df >= 1 by construction)."""
    s = counts.shape[1]
    df = np.count_nonzero(counts, axis=1)
    return np.log(s / df)


def _apply_weighting(counts: np.ndarray, weighting: str) -> np.ndarray:
    c = counts.astype(np.float64)
    if weighting == "raw":
        return c
    if weighting == "binary":
        return (c > 0).astype(np.float64)
    if weighting == "tf_idf":
        return c * _idf(counts)[:, None]
    if weighting == "log_entropy":
        return np.log1p(c) * _entropy_factor(counts)[:, None]
    raise ValueError(f"unknown weighting {weighting!r}; expected one of {WEIGHTINGS}")


def build_matrix(doc: Document, weighting: str = "raw") -> TermSentenceMatrix:
    """Build the weighted term-by-sentence matrix for one document.

    Vocabulary rows are the sorted unique normalized terms of the document;
    columns follow sentence order.  Raises :class:`EmptyVocabularyError` when
    no sentence survives tokenization with at least one term.
    """
    if weighting not in WEIGHTINGS:
        raise ValueError(f"unknown weighting {weighting!r}; expected one of {WEIGHTINGS}")
    per_sentence = [[tok.normalized for tok in s.tokens] for s in doc.sentences]
    terms = sorted({term for toks in per_sentence for term in toks})
    if not terms:
        raise EmptyVocabularyError(f"document {doc.id!r} has no surviving tokens")
    vocab = Vocabulary(terms=tuple(terms))
    counts = np.zeros((len(terms), len(per_sentence)), dtype=np.int64)
    for j, toks in enumerate(per_sentence):
        for term in toks:
            counts[vocab.index[term], j] += 1
    return TermSentenceMatrix(
        vocab=vocab,
        values=_apply_weighting(counts, weighting),
        raw_counts=counts,
        weighting=weighting,
    )


def _cosine_raw(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def cosine(u: TermVector, v: TermVector) -> float:
    """Cosine similarity in [-1, 1]; 0 when either vector has zero norm."""
    if len(u.values) != len(v.values):
        raise ValueError(
            f"dimension mismatch: {len(u.values)} vs {len(v.values)}"
        )
    return _cosine_raw(u.values, v.values)


def column_cosines(m: TermSentenceMatrix, q: np.ndarray) -> np.ndarray:
    """Cosine of every sentence column against a query-side vector."""
    norms = np.linalg.norm(m.values, axis=0)
    qn = float(np.linalg.norm(q))
    out = np.zeros(m.n_sentences)
    if qn == 0.0:
        return out
    nz = norms > 0
    out[nz] = (m.values[:, nz].T @ q) / (norms[nz] * qn)
    return out


def pairwise_cosines(m: TermSentenceMatrix) -> np.ndarray:
    """s x s matrix of cosines between sentence columns; zero columns give 0."""
    norms = np.linalg.norm(m.values, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    unit = m.values / safe
    sim = unit.T @ unit
    zero = norms == 0
    sim[zero, :] = 0.0
    sim[:, zero] = 0.0
    return sim


def document_vector(m: TermSentenceMatrix) -> TermVector:
    """The whole document as one pseudo-sentence: per-term sum over columns."""
    return TermVector(values=m.values.sum(axis=1))


def query_vector(
    query: str,
    m: TermSentenceMatrix,
    tokenizer: TokenizerConfig = TokenizerConfig(),
) -> TermVector:
    """Vectorize a query against a matrix's vocabulary and weighting.

    The query text runs through the same normalization pipeline as the corpus.
    Out-of-vocabulary tokens are dropped; an all-OOV query yields the zero
    vector, which callers must treat as degenerate.
    """
    counts = np.zeros(m.n_terms, dtype=np.int64)
    for tok in tokenize(query, tokenizer):
        idx = m.vocab.index_of(tok.normalized)
        if idx is not None:
            counts[idx] += 1
    c = counts.astype(np.float64)
    if m.weighting == "raw":
        values = c
    elif m.weighting == "binary":
        values = (c > 0).astype(np.float64)
    elif m.weighting == "tf_idf":
        values = c * _idf(m.raw_counts)
    else:  # log_entropy
        values = np.log1p(c) * _entropy_factor(m.raw_counts)
    return TermVector(values=values)


def matrix_to_tsv(m: TermSentenceMatrix) -> str:
    """Render the weighted matrix as TSV: sentence-index header, term rows."""
    header = "term\t" + "\t".join(str(j) for j in range(m.n_sentences))
    lines = [header]
    for i, term in enumerate(m.vocab.terms):
        cells = "\t".join(format(x, ".10g") for x in m.values[i])
        lines.append(f"{term}\t{cells}")
    return "\n".join(lines) + "\n"
