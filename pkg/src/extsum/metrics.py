"""Summary scoring: precision/recall/F1 over sentence sets and ROUGE-n.

Set metrics match system and golden summaries by sentence index.  ROUGE-n
counts clipped n-gram co-occurrences of a candidate token sequence against
one or more reference sequences.  Zero denominators yield 0, never NaN.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .corpus import GoldenSummary
from .summary import SummaryResult


@dataclass(frozen=True)
class EvalReport:
    doc_id: str
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    rouge_1: float
    method: str


@dataclass(frozen=True)
class AggregateReport:
    """Corpus-level roll-up: macro means plus pooled-count micro metrics."""

    n_docs: int
    macro_precision: float
    macro_recall: float
    macro_f1: float
    macro_rouge_1: float
    micro_precision: float
    micro_recall: float
    micro_f1: float
    tp: int
    fp: int
    fn: int


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def _prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    precision = _safe_div(tp, tp + fp)
    recall = _safe_div(tp, tp + fn)
    f1 = _safe_div(2 * precision * recall, precision + recall)
    return precision, recall, f1


def precision_recall_f1(
    system: SummaryResult, golden: GoldenSummary, rouge_1: float = 0.0
) -> EvalReport:
    """Score one system summary against one golden summary by sentence index."""
    if system.doc_id != golden.doc_id:
        raise ValueError(
            f"cannot pair summary for {system.doc_id!r} with golden for "
            f"{golden.doc_id!r}"
        )
    sys_set = set(system.indices)
    gold_set = set(golden.selected_indices)
    tp = len(sys_set & gold_set)
    fp = len(sys_set - gold_set)
    fn = len(gold_set - sys_set)
    precision, recall, f1 = _prf(tp, fp, fn)
    return EvalReport(
        doc_id=system.doc_id,
        tp=tp,
        fp=fp,
        fn=fn,
        precision=precision,
        recall=recall,
        f1=f1,
        rouge_1=rouge_1,
        method=system.method,
    )


def rouge_n(
    candidate: Sequence[str],
    references: Sequence[Sequence[str]],
    n: int = 1,
) -> float:
    """Clipped n-gram recall of a candidate against reference sequences.

    numerator: over all references, sum per distinct n-gram of
    min(candidate count, reference count); denominator: total n-gram count
    over all references.  Returns 0 when the references hold no n-grams.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not references:
        raise ValueError("reference set is empty")
    cand_counts = _ngram_counts(candidate, n)
    matched = 0
    total = 0
    for ref in references:
        ref_counts = _ngram_counts(ref, n)
        total += sum(ref_counts.values())
        for gram, count in ref_counts.items():
            matched += min(cand_counts.get(gram, 0), count)
    return _safe_div(matched, total)


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def aggregate(reports: Sequence[EvalReport]) -> AggregateReport:
    """Macro-average the per-document metrics; micro metrics pool the counts."""
    if not reports:
        raise ValueError("cannot aggregate an empty report list")
    n = len(reports)
    tp = sum(r.tp for r in reports)
    fp = sum(r.fp for r in reports)
    fn = sum(r.fn for r in reports)
    micro_p, micro_r, micro_f = _prf(tp, fp, fn)
    return AggregateReport(
        n_docs=n,
        macro_precision=sum(r.precision for r in reports) / n,
        macro_recall=sum(r.recall for r in reports) / n,
        macro_f1=sum(r.f1 for r in reports) / n,
        macro_rouge_1=sum(r.rouge_1 for r in reports) / n,
        micro_precision=micro_p,
        micro_recall=micro_r,
        micro_f1=micro_f,
        tp=tp,
        fp=fp,
        fn=fn,
    )
