"""LSA sentence selection over an SVD factorization.

Three generic selectors — one-best-per-concept, singular-value-weighted
sentence lengths, and proportional per-concept quotas — plus query-based
selection through latent-space folding of the query vector.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import SvdFactorization, rank_tolerance
from .summary import SummaryResult
from .vectorizer import TermVector, _cosine_raw

SELECTORS = ("gong_liu", "steinberger_jezek", "murray")
LENGTH_VARIANTS = ("squared", "literal")


class DegenerateQueryError(ValueError):
    """Folded query is the zero vector; every cosine would be 0."""


class SingularScaleError(ValueError):
    """A retained singular value sits at or below the rank tolerance."""


class LengthVariantError(ValueError):
    """The literal length formula hit a negative radicand."""


@dataclass(frozen=True)
class LsaConfig:
    selector: str = "gong_liu"
    n_dims: int = 1
    target_len: int = 1
    length_variant: str = "squared"

    def __post_init__(self) -> None:
        if self.selector not in SELECTORS:
            raise ValueError(f"selector must be one of {SELECTORS}, got {self.selector!r}")
        if self.length_variant not in LENGTH_VARIANTS:
            raise ValueError(
                f"length_variant must be one of {LENGTH_VARIANTS}, got {self.length_variant!r}"
            )
        if self.target_len < 1:
            raise ValueError(f"target_len must be >= 1, got {self.target_len}")


@dataclass(eq=False)
class FoldedQuery:
    """A query projected into the latent space; length equals the fold rank."""

    values: np.ndarray


def gong_liu_select(
    f: SvdFactorization, target_len: int, doc_id: str = ""
) -> SummaryResult:
    """Take the best unselected sentence from each concept row in turn.

    Rows of vt are visited cyclically (wrapping when there are fewer concepts
    than requested sentences), selecting each row's highest-valued sentence
    not yet chosen.  Ties break to the lowest sentence index.
    """
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    n_concepts, s = f.vt.shape
    limit = min(target_len, s)
    remaining = np.ones(s, dtype=bool)
    selected: list[tuple[int, float]] = []
    row = 0
    while len(selected) < limit:
        scores = np.where(remaining, f.vt[row % n_concepts], -np.inf)
        pick = int(np.argmax(scores))
        selected.append((pick, float(f.vt[row % n_concepts, pick])))
        remaining[pick] = False
        row += 1
    return SummaryResult(
        doc_id=doc_id,
        selected=tuple(selected),
        method="lsa_gong_liu",
        params=f"target_len={target_len}",
    )


def sentence_lengths(
    f: SvdFactorization, n_dims: int, variant: str = "squared"
) -> np.ndarray:
    """Singular-value-weighted sentence lengths over the leading n_dims concepts.

    squared (default): sqrt(sum_j v_ij^2 sigma_j^2); literal: sqrt(sum_j v_ij
    sigma_j), rejecting negative radicands.
    """
    if not 1 <= n_dims <= f.rank:
        raise ValueError(f"n_dims={n_dims} outside valid range [1, {f.rank}]")
    v = f.vt[:n_dims].T  # s x n
    sig = f.sigma[:n_dims]
    if variant == "squared":
        return np.sqrt((v**2 * sig**2).sum(axis=1))
    if variant == "literal":
        radicand = (v * sig).sum(axis=1)
        if (radicand < 0).any():
            raise LengthVariantError(
                "literal length formula produced a negative radicand; "
                "use the squared variant"
            )
        return np.sqrt(radicand)
    raise ValueError(f"unknown length variant {variant!r}")


def steinberger_jezek_select(
    f: SvdFactorization, cfg: LsaConfig, doc_id: str = ""
) -> SummaryResult:
    """Select the longest sentences by latent-space length, longest first."""
    lengths = sentence_lengths(f, cfg.n_dims, cfg.length_variant)
    limit = min(cfg.target_len, len(lengths))
    order = np.argsort(-lengths, kind="stable")[:limit]
    selected = tuple((int(i), float(lengths[i])) for i in order)
    return SummaryResult(
        doc_id=doc_id,
        selected=selected,
        method="lsa_steinberger",
        params=f"n_dims={cfg.n_dims},length_variant={cfg.length_variant},"
        f"target_len={cfg.target_len}",
    )


def concept_quotas(sigma: np.ndarray, target_len: int) -> np.ndarray:
    """Apportion target_len seats across concepts proportionally to sigma.

    Largest-remainder rule: floors first, leftover seats by descending
    fractional remainder, remainder ties to the earliest concept.
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    total = sigma.sum()
    if total <= 0:
        quotas = np.zeros(len(sigma), dtype=np.int64)
        quotas[0] = target_len
        return quotas
    raw = target_len * sigma / total
    quotas = np.floor(raw).astype(np.int64)
    remainders = raw - quotas
    leftover = target_len - int(quotas.sum())
    order = sorted(range(len(sigma)), key=lambda i: (-remainders[i], i))
    for i in order[:leftover]:
        quotas[i] += 1
    return quotas


def murray_select(
    f: SvdFactorization, target_len: int, doc_id: str = ""
) -> SummaryResult:
    """Take each concept's quota of best sentences; quotas follow sigma shares."""
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    n_concepts, s = f.vt.shape
    limit = min(target_len, s)
    quotas = concept_quotas(f.sigma, limit)
    remaining = np.ones(s, dtype=bool)
    selected: list[tuple[int, float]] = []

    def take_from(row: int, count: int) -> None:
        for _ in range(count):
            if len(selected) >= limit or not remaining.any():
                return
            scores = np.where(remaining, f.vt[row], -np.inf)
            pick = int(np.argmax(scores))
            selected.append((pick, float(f.vt[row, pick])))
            remaining[pick] = False

    for row in range(n_concepts):
        take_from(row, int(quotas[row]))
    row = 0
    while len(selected) < limit:  # leftover seats continue down the concepts
        take_from(row % n_concepts, 1)
        row += 1
    return SummaryResult(
        doc_id=doc_id,
        selected=tuple(selected),
        method="lsa_murray",
        params=f"target_len={target_len}",
    )


def fold_query(q: TermVector, f: SvdFactorization) -> FoldedQuery:
    """Project a query into the latent space: qhat = q^T U_r Sigma_r^{-1}.

    Folding happens at the factorization's numerical rank r so the inverse is
    well-scaled; a retained singular value at or below the rank tolerance
    raises :class:`SingularScaleError`.
    """
    r = f.rank
    t = f.u.shape[0]
    s = f.vt.shape[1]
    if len(q.values) != t:
        raise ValueError(
            f"query vector length {len(q.values)} does not match term count {t}"
        )
    tol = rank_tolerance((t, s), float(f.sigma[0]) if f.n_components else 0.0)
    if r < 1 or (f.sigma[:r] <= tol).any():
        raise SingularScaleError(
            "factorization retains singular values at or below the rank "
            "tolerance; inversion would explode"
        )
    return FoldedQuery(values=(q.values @ f.u[:, :r]) / f.sigma[:r])


def query_lsa_select(
    f: SvdFactorization,
    fq: FoldedQuery,
    target_len: int,
    threshold: float | None = None,
    doc_id: str = "",
) -> SummaryResult:
    """Rank sentences by latent-space cosine to the folded query.

    Sentence j is represented by row j of V scaled component-wise by sigma
    (mirroring the Sigma^{-1} weighting on the query side).  When a threshold
    is given, sentences below it are excluded even inside the top-k.
    """
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    r = len(fq.values)
    if r > f.n_components:
        raise ValueError("folded query is longer than the factorization rank")
    if float(np.linalg.norm(fq.values)) == 0.0:
        raise DegenerateQueryError("folded query is the zero vector")
    reps = f.vt[:r].T * f.sigma[:r]  # s x r
    sims = np.array([_cosine_raw(fq.values, reps[j]) for j in range(reps.shape[0])])
    order = np.argsort(-sims, kind="stable")
    if threshold is not None:
        order = [j for j in order if sims[j] >= threshold]
    limit = min(target_len, len(order))
    selected = tuple((int(j), float(sims[j])) for j in list(order)[:limit])
    if not selected:
        warnings.warn(
            f"no sentence reached the similarity threshold {threshold}; "
            "summary is empty",
            stacklevel=2,
        )
    return SummaryResult(
        doc_id=doc_id,
        selected=selected,
        method="lsa_query",
        params=f"target_len={target_len},threshold={threshold}",
    )
