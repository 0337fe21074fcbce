"""Probabilistic latent-topic model over sentences, fitted by EM.

Sentences play the document role: the aspect model decomposes the joint
sentence/word distribution as P(d, w) = sum_z P(z) P(d|z) P(w|z), fitted by
alternating the posterior computation and the expected-count updates until
the log-likelihood stops improving.  Sentence importance is the marginal
R(d) = sum_z P(d|z) P(z) = P(d).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._kernels import plsa_step
from .summary import SummaryResult
from .vectorizer import TermSentenceMatrix

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 200

# Relative slack on the EM ascent guard; likelihood may never drop more than
# this below its previous value.
_MONOTONE_SLACK = 1e-9


class EmptyModelError(ValueError):
    """Count matrix has no positive entries; nothing to fit."""


class EmAscentError(RuntimeError):
    """Log-likelihood decreased between iterations, which EM forbids."""


@dataclass(eq=False)
class PlsaModel:
    k: int
    p_w_given_z: np.ndarray  # k x t, rows sum to 1
    p_d_given_z: np.ndarray  # k x s, rows sum to 1
    p_z: np.ndarray          # length k, sums to 1
    log_likelihood: float
    iterations: int
    seed: int
    trace: tuple[float, ...]  # per-iteration log-likelihood, initial params first


def _init_params(
    k: int, t: int, s: int, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    p_z = rng.random(k)
    p_z /= p_z.sum()
    p_d_z = rng.random((k, s))
    p_d_z /= p_d_z.sum(axis=1, keepdims=True)
    p_w_z = rng.random((k, t))
    p_w_z /= p_w_z.sum(axis=1, keepdims=True)
    return p_z, p_d_z, p_w_z


def _normalized(acc: np.ndarray, previous: np.ndarray) -> np.ndarray:
    """Row-normalize expected counts; dead rows keep their previous values."""
    sums = acc.sum(axis=1, keepdims=True)
    dead = sums[:, 0] == 0.0
    out = acc / np.where(sums > 0, sums, 1.0)
    if dead.any():
        out[dead] = previous[dead]
    return out


def plsa_fit(
    m: TermSentenceMatrix,
    k: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> PlsaModel:
    """Fit a k-topic model to a matrix's raw counts.

    Deterministic for a fixed seed.  Stops when the relative log-likelihood
    improvement falls below ``tol`` or after ``max_iter`` iterations.  The
    recorded trace is checked for the EM ascent property on every fit.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    counts = m.raw_counts.astype(np.float64)
    if counts.sum() == 0:
        raise EmptyModelError("count matrix is all zeros")
    positive_pairs = int(np.count_nonzero(counts))
    if k > positive_pairs:
        warnings.warn(
            f"k={k} exceeds the {positive_pairs} positive (sentence, word) "
            "pairs; the model is over-parameterized",
            stacklevel=2,
        )

    t, s = counts.shape
    p_z, p_d_z, p_w_z = _init_params(k, t, s, seed)
    p_z, p_d_z, p_w_z, trace, iterations = _run_em(
        counts, p_z, p_d_z, p_w_z, tol, max_iter
    )
    return PlsaModel(
        k=k,
        p_w_given_z=p_w_z,
        p_d_given_z=p_d_z,
        p_z=p_z,
        log_likelihood=trace[-1],
        iterations=iterations,
        seed=seed,
        trace=tuple(trace),
    )


def _run_em(
    counts: np.ndarray,
    p_z: np.ndarray,
    p_d_z: np.ndarray,
    p_w_z: np.ndarray,
    tol: float,
    max_iter: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[float], int]:
    """EM loop from explicit starting parameters; returns the fitted
    parameters, the per-iteration log-likelihood trace (starting values
    first, final parameters last), and the update count."""
    k = p_z.shape[0]
    t, s = counts.shape
    nz = np.zeros(k)
    nd = np.zeros((k, s))
    nw = np.zeros((k, t))

    trace: list[float] = []
    iterations = 0
    for _ in range(max_iter):
        ll = float(plsa_step(counts, p_z, p_d_z, p_w_z, nz, nd, nw))
        _check_ascent(trace, ll)
        trace.append(ll)
        total = nz.sum()
        p_w_z = _normalized(nw, p_w_z)
        p_d_z = _normalized(nd, p_d_z)
        p_z = nz / total if total > 0 else p_z
        iterations += 1
        if len(trace) >= 2 and abs(trace[-1] - trace[-2]) < tol * abs(trace[-2]):
            break

    final_ll = float(plsa_step(counts, p_z, p_d_z, p_w_z, nz, nd, nw))
    _check_ascent(trace, final_ll)
    trace.append(final_ll)
    return p_z, p_d_z, p_w_z, trace, iterations


def _check_ascent(trace: list[float], ll: float) -> None:
    if trace and ll < trace[-1] - _MONOTONE_SLACK * abs(trace[-1]):
        raise EmAscentError(
            f"log-likelihood fell from {trace[-1]!r} to {ll!r}"
        )


def plsa_rank(model: PlsaModel) -> np.ndarray:
    """Per-sentence importance R(d) = sum_z P(d|z) P(z); sums to 1."""
    return model.p_z @ model.p_d_given_z


def summarize_from_model(
    model: PlsaModel, target_len: int, doc_id: str = ""
) -> SummaryResult:
    """Top sentences of a fitted model by importance, highest first."""
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    scores = plsa_rank(model)
    limit = min(target_len, len(scores))
    order = np.argsort(-scores, kind="stable")[:limit]
    selected = tuple((int(i), float(scores[i])) for i in order)
    return SummaryResult(
        doc_id=doc_id,
        selected=selected,
        method="plsa",
        params=f"k={model.k},seed={model.seed},target_len={target_len}",
    )


def plsa_summarize(
    m: TermSentenceMatrix,
    k: int,
    target_len: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    doc_id: str = "",
) -> SummaryResult:
    """Fit, rank, and return the top sentences by importance, highest first."""
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    model = plsa_fit(m, k, seed, tol, max_iter)
    return summarize_from_model(model, target_len, doc_id=doc_id)
