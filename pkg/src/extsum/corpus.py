"""Corpus loading, sentence segmentation, and tokenization.

Documents are sequences of sentences; sentences carry both their raw text and
their normalized tokens.  Everything downstream (matrices, selectors, metrics)
consumes this sentence/token model, so all text normalization policy lives
here and nowhere else.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "CorpusError",
    "EmptyDocumentError",
    "Token",
    "Sentence",
    "Document",
    "GoldenSummary",
    "TokenizerConfig",
    "SegmentationRules",
    "normalize_token",
    "tokenize",
    "split_sentences",
    "segment_sentences",
    "make_document",
    "load_corpus",
    "save_corpus",
    "load_text_document",
    "read_corpus",
    "load_golden",
    "load_stopwords",
]

# Default sentence terminators: Latin full stop / bang / question mark plus the
# Arabic question mark and full stop used in Persian text.
SENTENCE_TERMINATORS = ".!?؟۔"

# Arabic-presentation letters folded to their Persian forms under the "fa"
# normalizer profile.
_FA_CHAR_MAP = str.maketrans({"ي": "ی", "ك": "ک"})

_WORD_RE = re.compile(r"\w+", re.UNICODE)


class CorpusError(Exception):
    """Malformed or inconsistent corpus input."""


class EmptyDocumentError(CorpusError):
    """Raised when a document has no usable text."""


@dataclass(frozen=True)
class Token:
    """A single word occurrence: raw surface form plus its normalized form."""

    surface: str
    normalized: str


@dataclass(frozen=True)
class Sentence:
    """One sentence of a document; the unit all selectors pick from."""

    index: int
    raw: str
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Document:
    id: str
    title: str | None
    sentences: tuple[Sentence, ...]
    query: str | None = None


@dataclass(frozen=True)
class GoldenSummary:
    """A human reference summary: a set of selected sentence ordinals."""

    doc_id: str
    selected_indices: frozenset[int]
    mode: str  # "generic" | "query_based"
    annotator: str | None = None


@dataclass(frozen=True)
class TokenizerConfig:
    """Normalization policy applied to every sentence and query.

    stopwords entries must already be in normalized form (see
    :func:`load_stopwords`).  ``profile="fa"`` additionally unifies the Arabic
    letters ya/kaf with their Persian forms.
    """

    stopwords: frozenset[str] = frozenset()
    min_len: int = 1
    profile: str = "none"


@dataclass(frozen=True)
class SegmentationRules:
    """Terminator characters and abbreviation exceptions for the segmenter."""

    terminators: str = SENTENCE_TERMINATORS
    abbreviations: frozenset[str] = frozenset()


def normalize_token(text: str, profile: str = "none") -> str:
    """Case-fold and strip punctuation/whitespace from a raw token."""
    folded = text.casefold()
    if profile == "fa":
        folded = folded.translate(_FA_CHAR_MAP)
    return "".join(
        ch
        for ch in folded
        if not unicodedata.category(ch).startswith("P") and not ch.isspace()
    )


def tokenize(text: str, config: TokenizerConfig = TokenizerConfig()) -> tuple[Token, ...]:
    """Split one sentence's text into normalized tokens, order preserved.

    Tokens that normalize to the empty string, fall below ``min_len``, or sit
    in the stopword list are dropped.  A sentence may legitimately yield zero
    tokens; downstream code must tolerate all-zero matrix columns.
    """
    out: list[Token] = []
    for match in _WORD_RE.finditer(text):
        surface = match.group()
        norm = normalize_token(surface, config.profile)
        if not norm or len(norm) < config.min_len or norm in config.stopwords:
            continue
        out.append(Token(surface=surface, normalized=norm))
    return tuple(out)


def split_sentences(text: str, rules: SegmentationRules = SegmentationRules()) -> list[str]:
    """Split raw text into sentence strings on terminator characters.

    A terminator run ends a sentence only when followed by whitespace or end
    of text, and only when the word it terminates is not a listed
    abbreviation.  Each returned piece keeps its terminator; only surrounding
    whitespace is dropped, so the concatenation of pieces equals the input
    modulo whitespace.
    """
    pieces: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in rules.terminators:
            j = i
            while j + 1 < n and text[j + 1] in rules.terminators:
                j += 1
            at_end = j + 1 >= n
            if at_end or text[j + 1].isspace():
                tail = text[start : j + 1]
                words = tail.split()
                ending_word = words[-1] if words else ""
                if ending_word not in rules.abbreviations:
                    piece = tail.strip()
                    if piece:
                        pieces.append(piece)
                    start = j + 1
            i = j + 1
        else:
            i += 1
    last = text[start:].strip()
    if last:
        pieces.append(last)
    return pieces


def segment_sentences(
    raw_text: str,
    rules: SegmentationRules = SegmentationRules(),
    tokenizer: TokenizerConfig = TokenizerConfig(),
) -> tuple[Sentence, ...]:
    """Segment raw text into :class:`Sentence` objects with contiguous indices."""
    if not raw_text or not raw_text.strip():
        raise EmptyDocumentError("document text is empty or whitespace-only")
    pieces = split_sentences(raw_text, rules)
    return tuple(
        Sentence(index=i, raw=piece, tokens=tokenize(piece, tokenizer))
        for i, piece in enumerate(pieces)
    )


def make_document(
    doc_id: str,
    sentence_texts: list[str],
    *,
    title: str | None = None,
    query: str | None = None,
    tokenizer: TokenizerConfig = TokenizerConfig(),
) -> Document:
    """Build a Document from already-segmented sentence strings."""
    sentences = tuple(
        Sentence(index=i, raw=raw, tokens=tokenize(raw, tokenizer))
        for i, raw in enumerate(sentence_texts)
    )
    return Document(id=doc_id, title=title, sentences=sentences, query=query)


def load_corpus(
    path: str | Path, tokenizer: TokenizerConfig = TokenizerConfig()
) -> list[Document]:
    """Load a JSON Lines corpus: one document object per line.

    Expected record shape::

        {"id": str, "title": str|null, "query": str|null, "sentences": [str, ...]}

    Raises :class:`CorpusError` naming the offending line for malformed
    records and naming the id for duplicates.
    """
    path = Path(path)
    docs: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}: line {lineno}: malformed record: {exc}") from exc
            doc = _document_from_record(record, lineno, path, tokenizer)
            if doc.id in seen:
                raise CorpusError(f"{path}: line {lineno}: duplicate document id {doc.id!r}")
            seen.add(doc.id)
            docs.append(doc)
    return docs


def _document_from_record(
    record: object, lineno: int, path: Path, tokenizer: TokenizerConfig
) -> Document:
    where = f"{path}: line {lineno}"
    if not isinstance(record, dict):
        raise CorpusError(f"{where}: record is not a JSON object")
    doc_id = record.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusError(f"{where}: missing or invalid 'id'")
    sentences = record.get("sentences")
    if not isinstance(sentences, list) or not sentences:
        raise CorpusError(f"{where}: 'sentences' must be a non-empty list")
    for i, raw in enumerate(sentences):
        if not isinstance(raw, str) or not raw.strip():
            raise CorpusError(f"{where}: sentence {i} is empty or not a string")
    title = record.get("title")
    query = record.get("query")
    if title is not None and not isinstance(title, str):
        raise CorpusError(f"{where}: 'title' must be a string or null")
    if query is not None and not isinstance(query, str):
        raise CorpusError(f"{where}: 'query' must be a string or null")
    return make_document(doc_id, sentences, title=title, query=query, tokenizer=tokenizer)


def save_corpus(docs: list[Document], path: str | Path) -> None:
    """Write documents back out as JSON Lines (inverse of :func:`load_corpus`)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            record = {
                "id": doc.id,
                "title": doc.title,
                "query": doc.query,
                "sentences": [s.raw for s in doc.sentences],
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_text_document(
    path: str | Path,
    doc_id: str | None = None,
    rules: SegmentationRules = SegmentationRules(),
    tokenizer: TokenizerConfig = TokenizerConfig(),
) -> Document:
    """Load a plain UTF-8 text file as one document via the segmenter."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        sentences = segment_sentences(text, rules, tokenizer)
    except EmptyDocumentError as exc:
        raise EmptyDocumentError(f"{path}: {exc}") from exc
    return Document(id=doc_id or path.stem, title=None, sentences=sentences, query=None)


def read_corpus(
    path: str | Path,
    rules: SegmentationRules = SegmentationRules(),
    tokenizer: TokenizerConfig = TokenizerConfig(),
) -> list[Document]:
    """Load a corpus from a JSONL file, a single text file, or a directory.

    Directories are read as one document per ``*.txt`` file in sorted order.
    """
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.txt"))
        if not files:
            raise CorpusError(f"{path}: directory contains no *.txt files")
        return [load_text_document(p, rules=rules, tokenizer=tokenizer) for p in files]
    if not path.exists():
        raise CorpusError(f"{path}: no such file")
    if path.suffix.lower() in {".jsonl", ".json"}:
        return load_corpus(path, tokenizer)
    return [load_text_document(path, rules=rules, tokenizer=tokenizer)]


def load_golden(path: str | Path, corpus: list[Document]) -> list[GoldenSummary]:
    """Load golden summaries and validate them against a loaded corpus.

    Record shape::

        {"doc_id": str, "mode": "generic"|"query_based", "selected": [int, ...],
         "annotator": str|null}

    Unknown doc ids and out-of-range sentence indices are fatal, with the
    offending line reported.
    """
    path = Path(path)
    sizes = {doc.id: len(doc.sentences) for doc in corpus}
    goldens: list[GoldenSummary] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}: line {lineno}"
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{where}: malformed record: {exc}") from exc
            if not isinstance(record, dict):
                raise CorpusError(f"{where}: record is not a JSON object")
            doc_id = record.get("doc_id")
            if doc_id not in sizes:
                raise CorpusError(f"{where}: unknown doc_id {doc_id!r}")
            mode = record.get("mode")
            if mode not in ("generic", "query_based"):
                raise CorpusError(f"{where}: invalid mode {mode!r}")
            selected = record.get("selected")
            if not isinstance(selected, list) or not selected:
                raise CorpusError(f"{where}: 'selected' must be a non-empty list")
            for idx in selected:
                if not isinstance(idx, int) or not 0 <= idx < sizes[doc_id]:
                    raise CorpusError(
                        f"{where}: sentence index {idx!r} out of range for "
                        f"{doc_id!r} ({sizes[doc_id]} sentences)"
                    )
            annotator = record.get("annotator")
            goldens.append(
                GoldenSummary(
                    doc_id=doc_id,
                    selected_indices=frozenset(selected),
                    mode=mode,
                    annotator=annotator,
                )
            )
    return goldens


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file: one normalized token per line; blank lines ignored."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip()
        if word:
            words.add(word)
    return frozenset(words)
