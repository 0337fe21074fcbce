"""Deterministic synthetic corpus with query-correlated golden summaries.

The bundled test corpus: each document mixes a handful of document-specific
"signal" words into roughly 30% of its sentences, the per-document query asks
for those words, and the golden summaries select exactly the signal-bearing
sentences.  Everything derives from one seed, so regenerating the corpus is
byte-stable.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .corpus import Document, GoldenSummary, make_document

DEFAULT_SEED = 947
DEFAULT_N_DOCS = 20

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"


def _word(rng: np.random.Generator, syllables: int) -> str:
    return "".join(
        _CONSONANTS[rng.integers(len(_CONSONANTS))] + _VOWELS[rng.integers(len(_VOWELS))]
        for _ in range(syllables)
    )


def _word_pool(rng: np.random.Generator, count: int, syllables: int) -> list[str]:
    pool: list[str] = []
    seen: set[str] = set()
    while len(pool) < count:
        w = _word(rng, syllables)
        if w not in seen:
            seen.add(w)
            pool.append(w)
    return pool


def build_corpus(
    n_docs: int = DEFAULT_N_DOCS, seed: int = DEFAULT_SEED
) -> tuple[list[Document], list[GoldenSummary]]:
    """Generate documents plus generic and query-based golden summaries."""
    rng = np.random.default_rng(seed)
    filler = _word_pool(rng, 40, 2)
    docs: list[Document] = []
    goldens: list[GoldenSummary] = []
    for d in range(n_docs):
        signal = _word_pool(rng, 4, 3)
        n_sent = int(rng.integers(15, 26))
        n_relevant = math.ceil(0.3 * n_sent)
        relevant = set(
            int(i) for i in rng.choice(n_sent, size=n_relevant, replace=False)
        )
        sentences: list[str] = []
        for i in range(n_sent):
            words: list[str] = []
            if i in relevant:
                picks = rng.choice(4, size=int(rng.integers(2, 4)), replace=False)
                words.extend(signal[int(p)] for p in picks)
            elif rng.random() < 0.25:
                # distractor: one stray signal word in an off-topic sentence
                words.append(signal[int(rng.integers(4))])
            n_filler = int(rng.integers(5, 9))
            words.extend(
                filler[int(j)] for j in rng.integers(0, len(filler), size=n_filler)
            )
            order = rng.permutation(len(words))
            text = " ".join(words[int(j)] for j in order).capitalize() + "."
            sentences.append(text)
        doc_id = f"doc{d:02d}"
        query = " ".join(signal[:3])
        docs.append(
            make_document(
                doc_id, sentences, title=f"Synthetic document {d}", query=query
            )
        )
        for mode in ("generic", "query_based"):
            goldens.append(
                GoldenSummary(
                    doc_id=doc_id,
                    selected_indices=frozenset(relevant),
                    mode=mode,
                    annotator="synthetic",
                )
            )
    return docs, goldens


def write_corpus_files(
    out_dir: str | Path,
    n_docs: int = DEFAULT_N_DOCS,
    seed: int = DEFAULT_SEED,
) -> tuple[Path, Path]:
    """Write corpus.jsonl and golden.jsonl under out_dir; returns their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    docs, goldens = build_corpus(n_docs, seed)
    corpus_path = out_dir / "corpus.jsonl"
    golden_path = out_dir / "golden.jsonl"
    with corpus_path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            record = {
                "id": doc.id,
                "title": doc.title,
                "query": doc.query,
                "sentences": [s.raw for s in doc.sentences],
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    with golden_path.open("w", encoding="utf-8") as fh:
        for g in goldens:
            record = {
                "doc_id": g.doc_id,
                "mode": g.mode,
                "selected": sorted(g.selected_indices),
                "annotator": g.annotator,
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return corpus_path, golden_path
