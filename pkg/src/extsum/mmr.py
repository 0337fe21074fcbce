"""Greedy Maximal Marginal Relevance sentence selection.

Iteratively picks the unselected sentence maximizing

    lambda * Sim1(sentence, query) - (1 - lambda) * Sim2(sentence, selected)

where Sim1 is cosine to the query vector and Sim2 is, by default, the maximum
cosine to any already-selected sentence (0 before the first pick).  Generic
mode substitutes the whole-document vector for the query.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .summary import SummaryResult
from .vectorizer import (
    TermSentenceMatrix,
    TermVector,
    column_cosines,
    document_vector,
    pairwise_cosines,
)

MODES = ("query_based", "generic")
REDUNDANCY_MODES = ("max_over_selected", "centroid_of_selected")


class DegenerateQueryError(ValueError):
    """Query vector has zero norm, so relevance is identically zero."""


@dataclass(frozen=True)
class MmrConfig:
    lambda_: float
    mode: str = "query_based"
    redundancy: str = "max_over_selected"
    target_len: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.lambda_ <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.lambda_}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.redundancy not in REDUNDANCY_MODES:
            raise ValueError(
                f"redundancy must be one of {REDUNDANCY_MODES}, got {self.redundancy!r}"
            )
        if self.target_len < 1:
            raise ValueError(f"target_len must be >= 1, got {self.target_len}")


def mmr_summarize(
    m: TermSentenceMatrix,
    q: TermVector | None,
    cfg: MmrConfig,
    doc_id: str = "",
) -> SummaryResult:
    """Run the greedy selection loop over a document's matrix.

    In generic mode ``q`` may be omitted; if given it must equal the document
    vector.  Ties break toward the lowest sentence index; ``selected`` records
    selection order with each sentence's winning score.
    """
    docvec = document_vector(m)
    if cfg.mode == "generic":
        if q is None:
            q = docvec
        elif not np.array_equal(q.values, docvec.values):
            raise ValueError("generic mode requires q to equal the document vector")
    elif q is None:
        raise ValueError("query_based mode requires a query vector")
    if len(q.values) != m.n_terms:
        raise ValueError(
            f"query vector length {len(q.values)} does not match vocabulary size {m.n_terms}"
        )
    if cfg.mode == "query_based" and float(np.linalg.norm(q.values)) == 0.0:
        raise DegenerateQueryError(
            "query has zero weight in this vocabulary; relevance term vanishes"
        )

    s = m.n_sentences
    relevance = column_cosines(m, q.values)
    pair = pairwise_cosines(m)
    lam = cfg.lambda_
    limit = min(cfg.target_len, s)

    selected: list[tuple[int, float]] = []
    chosen: list[int] = []
    remaining = np.ones(s, dtype=bool)
    for _ in range(limit):
        if not chosen:
            redundancy = np.zeros(s)
        elif cfg.redundancy == "max_over_selected":
            redundancy = pair[:, chosen].max(axis=1)
        else:
            centroid = m.values[:, chosen].mean(axis=1)
            redundancy = column_cosines(m, centroid)
        scores = lam * relevance - (1.0 - lam) * redundancy
        scores[~remaining] = -np.inf
        pick = int(np.argmax(scores))  # first occurrence wins exact ties
        selected.append((pick, float(scores[pick])))
        chosen.append(pick)
        remaining[pick] = False

    params = (
        f"lambda={cfg.lambda_:g},mode={cfg.mode},redundancy={cfg.redundancy},"
        f"target_len={cfg.target_len}"
    )
    return SummaryResult(
        doc_id=doc_id, selected=tuple(selected), method="mmr", params=params
    )
