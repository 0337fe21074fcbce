"""Command-line front end: summarize, eval, sweep, and compare.

Machine-readable JSON Lines go to --out (or stdout when --out is absent);
the human-readable table goes to the other stream.  Every output starts with
a reproducibility header carrying the full effective configuration, and
repeated runs with the same configuration are byte-identical.

Exit codes: 0 success, 1 usage error, 2 input/format error, 3 numeric
failure, 4 completed with skipped documents.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .corpus import (
    CorpusError,
    Document,
    GoldenSummary,
    TokenizerConfig,
    load_golden,
    load_stopwords,
    read_corpus,
)
from .linalg import NonFiniteInputError, SvdConvergenceError, svd
from .lsa import (
    DegenerateQueryError as LsaDegenerateQueryError,
    LengthVariantError,
    LsaConfig,
    SingularScaleError,
    fold_query,
    gong_liu_select,
    murray_select,
    query_lsa_select,
    steinberger_jezek_select,
)
from .metrics import EvalReport, aggregate, precision_recall_f1, rouge_n
from .mmr import DegenerateQueryError, MmrConfig, mmr_summarize
from .plsa import EmAscentError, EmptyModelError, plsa_fit, summarize_from_model
from .summary import SummaryResult, target_length
from .vectorizer import (
    EmptyVocabularyError,
    build_matrix,
    matrix_to_tsv,
    query_vector,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_SKIPS = 4

METHODS = ("mmr", "lsa_gong_liu", "lsa_steinberger", "lsa_murray", "lsa_query", "plsa")

_IMPLIED_MODE = {
    "lsa_gong_liu": "generic",
    "lsa_steinberger": "generic",
    "lsa_murray": "generic",
    "lsa_query": "query_based",
    "plsa": "generic",
}

_REDUNDANCY_MAP = {"max": "max_over_selected", "centroid": "centroid_of_selected"}

# Per-document conditions that skip the document instead of aborting the run.
_DEGENERATE_ERRORS = (
    EmptyVocabularyError,
    DegenerateQueryError,
    LsaDegenerateQueryError,
    SingularScaleError,
    LengthVariantError,
    EmptyModelError,
    ValueError,
)

_NUMERIC_ERRORS = (SvdConvergenceError, EmAscentError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit-code ownership in main()
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    corpus: str
    golden: str | None
    method: str | None
    mode: str
    mode_explicit: bool
    compression: float
    weighting: str
    lambda_: float
    n_dims: int | None
    k: int
    seed: int
    tol: float
    max_iter: int
    redundancy: str
    length_variant: str
    threshold: float | None
    query: str | None
    stopwords: str | None
    min_len: int
    profile: str
    dump_matrix: str | None
    trace: bool
    out: str | None
    summaries: str | None = None
    param: str | None = None
    values: str | None = None
    methods: str | None = None


_DEFAULTS = {
    "golden": None,
    "method": None,
    "mode": None,
    "compression": 0.30,
    "weighting": "raw",
    "lambda_": 1.0,
    "n_dims": None,
    "k": 3,
    "seed": 0,
    "tol": 1e-6,
    "max_iter": 200,
    "redundancy": "max",
    "length_variant": "squared",
    "threshold": None,
    "query": None,
    "stopwords": None,
    "min_len": 1,
    "profile": "none",
    "dump_matrix": None,
    "trace": False,
    "out": None,
    "summaries": None,
    "param": None,
    "values": None,
    "methods": None,
}

_CONFIG_TYPES = {
    "corpus": str,
    "golden": str,
    "method": str,
    "mode": str,
    "compression": float,
    "weighting": str,
    "lambda_": float,
    "n_dims": int,
    "k": int,
    "seed": int,
    "tol": float,
    "max_iter": int,
    "redundancy": str,
    "length_variant": str,
    "threshold": float,
    "query": str,
    "stopwords": str,
    "min_len": int,
    "profile": str,
    "dump_matrix": str,
    "trace": bool,
    "out": str,
    "summaries": str,
    "param": str,
    "values": str,
    "methods": str,
}


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--corpus", help="corpus path: .jsonl, .txt, or a directory of .txt")
    common.add_argument("--golden", help="golden summaries (JSON Lines)")
    common.add_argument("--method", choices=METHODS)
    common.add_argument("--mode", choices=("generic", "query_based"))
    common.add_argument("--compression", type=float, help="summary size as a fraction of sentences (default 0.30)")
    common.add_argument("--weighting", choices=("raw", "binary", "tf_idf", "log_entropy"))
    common.add_argument("--lambda", dest="lambda_", type=float, help="relevance/redundancy trade-off in [0,1]")
    common.add_argument("--n-dims", type=int, help="latent dimensions for the length-based selector")
    common.add_argument("--k", type=int, help="topic count for plsa")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--max-iter", type=int)
    common.add_argument("--redundancy", choices=("max", "centroid"))
    common.add_argument("--length-variant", choices=("squared", "literal"))
    common.add_argument("--threshold", type=float, help="minimum latent cosine for lsa_query")
    common.add_argument("--query", help="global query overriding per-document queries")
    common.add_argument("--stopwords", help="stopword file, one normalized token per line")
    common.add_argument("--min-len", type=int, help="minimum token length kept (default 1)")
    common.add_argument("--profile", choices=("none", "fa"), help="normalizer profile")
    common.add_argument("--dump-matrix", help="write the weighted matrices as TSV")
    common.add_argument("--trace", action="store_true", default=None, help="emit per-iteration log-likelihood lines to stderr")
    common.add_argument("--out", help="write JSON Lines output here instead of stdout")
    common.add_argument("--config", help="key=value file mirroring the flags; flags win")

    parser = _Parser(prog="extsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("summarize", parents=[common], help="summarize every document")
    p_eval = sub.add_parser("eval", parents=[common], help="score summaries against goldens")
    p_eval.add_argument("--summaries", help="summarize output to score (otherwise runs --method)")
    p_sweep = sub.add_parser("sweep", parents=[common], help="evaluate across parameter values")
    p_sweep.add_argument("--param", choices=("lambda", "k", "n_dims"))
    p_sweep.add_argument("--values", help="comma-separated parameter values")
    p_compare = sub.add_parser("compare", parents=[common], help="evaluate several methods side by side")
    p_compare.add_argument("--methods", help="comma-separated method specs, e.g. mmr:lambda=1.0")
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for sep in ("=", ":"):
            if sep in stripped:
                key, _, raw = stripped.partition(sep)
                break
        else:
            raise UsageError(f"config line {lineno}: expected key=value, got {stripped!r}")
        key = key.strip().lower().replace("-", "_")
        if key == "lambda":
            key = "lambda_"
        if key not in _CONFIG_TYPES:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        values[key] = raw.strip()
    return values


def _coerce(key: str, raw: str):
    typ = _CONFIG_TYPES[key]
    if typ is bool:
        return raw.strip().lower() in {"1", "true", "yes", "on"}
    try:
        return typ(raw)
    except ValueError as exc:
        raise UsageError(f"config value for {key!r}: {exc}") from exc


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = _load_config_file(args.config)

    def pick(key: str):
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            return cli_val
        if key in file_values:
            return _coerce(key, file_values[key])
        return _DEFAULTS.get(key)

    corpus = pick("corpus")
    if not corpus:
        raise UsageError("--corpus is required")
    method = pick("method")
    explicit_mode = pick("mode")
    mode = _resolve_mode(method, explicit_mode)
    compression = pick("compression")
    if not 0.0 < compression <= 1.0:
        raise UsageError(f"--compression must be in (0, 1], got {compression}")
    lambda_ = pick("lambda_")
    if not 0.0 <= lambda_ <= 1.0:
        raise UsageError(f"--lambda must be in [0, 1], got {lambda_}")
    return RunConfig(
        command=args.command,
        corpus=corpus,
        golden=pick("golden"),
        method=method,
        mode=mode,
        mode_explicit=explicit_mode is not None,
        compression=compression,
        weighting=pick("weighting") or "raw",
        lambda_=lambda_,
        n_dims=pick("n_dims"),
        k=pick("k"),
        seed=pick("seed"),
        tol=pick("tol"),
        max_iter=pick("max_iter"),
        redundancy=pick("redundancy"),
        length_variant=pick("length_variant"),
        threshold=pick("threshold"),
        query=pick("query"),
        stopwords=pick("stopwords"),
        min_len=pick("min_len"),
        profile=pick("profile") or "none",
        dump_matrix=pick("dump_matrix"),
        trace=bool(pick("trace")),
        out=pick("out"),
        summaries=pick("summaries"),
        param=pick("param"),
        values=pick("values"),
        methods=pick("methods"),
    )


def _resolve_mode(method: str | None, explicit: str | None) -> str:
    implied = _IMPLIED_MODE.get(method) if method else None
    if implied and explicit and explicit != implied:
        raise UsageError(f"method {method} requires mode {implied}, not {explicit}")
    return explicit or implied or "generic"


def _tokenizer_from(rc: RunConfig) -> TokenizerConfig:
    stopwords = load_stopwords(rc.stopwords) if rc.stopwords else frozenset()
    return TokenizerConfig(stopwords=stopwords, min_len=rc.min_len, profile=rc.profile)


def _require_queries(docs: list[Document], rc: RunConfig) -> None:
    if rc.mode != "query_based" or rc.query:
        return
    missing = [d.id for d in docs if not d.query]
    if missing:
        raise UsageError(
            "query_based mode needs a query for every document; missing for: "
            + ", ".join(missing)
        )


def summarize_document(
    doc: Document, rc: RunConfig, tokenizer: TokenizerConfig
) -> SummaryResult:
    """Run the configured method on one document; degenerate inputs raise."""
    m = build_matrix(doc, rc.weighting)
    limit = target_length(rc.compression, len(doc.sentences))

    if rc.method == "mmr":
        q = None
        if rc.mode == "query_based":
            q = query_vector(rc.query or doc.query or "", m, tokenizer)
        cfg = MmrConfig(
            lambda_=rc.lambda_,
            mode=rc.mode,
            redundancy=_REDUNDANCY_MAP[rc.redundancy],
            target_len=limit,
        )
        return mmr_summarize(m, q, cfg, doc_id=doc.id)

    if rc.method == "plsa":
        model = plsa_fit(m, rc.k, rc.seed, rc.tol, rc.max_iter)
        if rc.trace:
            print(f"# {doc.id}", file=sys.stderr)
            for i, ll in enumerate(model.trace):
                print(f"{i},{ll!r}", file=sys.stderr)
        return summarize_from_model(model, limit, doc_id=doc.id)

    f = svd(m.values)
    if rc.method == "lsa_gong_liu":
        return gong_liu_select(f, limit, doc_id=doc.id)
    if rc.method == "lsa_steinberger":
        n_dims = rc.n_dims if rc.n_dims is not None else f.rank
        cfg = LsaConfig(
            selector="steinberger_jezek",
            n_dims=n_dims,
            target_len=limit,
            length_variant=rc.length_variant,
        )
        return steinberger_jezek_select(f, cfg, doc_id=doc.id)
    if rc.method == "lsa_murray":
        return murray_select(f, limit, doc_id=doc.id)
    if rc.method == "lsa_query":
        q = query_vector(rc.query or doc.query or "", m, tokenizer)
        fq = fold_query(q, f)
        return query_lsa_select(f, fq, limit, rc.threshold, doc_id=doc.id)
    raise UsageError(f"--method is required (one of {', '.join(METHODS)})")


def _run_summaries(
    docs: list[Document], rc: RunConfig, tokenizer: TokenizerConfig
) -> tuple[list[SummaryResult], list[tuple[str, str]], list[str]]:
    """Summarize all documents; returns (results, skips, matrix dump sections)."""
    results: list[SummaryResult] = []
    skips: list[tuple[str, str]] = []
    dumps: list[str] = []
    for doc in docs:
        try:
            if rc.dump_matrix:
                dumps.append(f"# document: {doc.id}\n" + matrix_to_tsv(build_matrix(doc, rc.weighting)))
            results.append(summarize_document(doc, rc, tokenizer))
        except _DEGENERATE_ERRORS as exc:
            skips.append((doc.id, str(exc)))
            print(f"warning: skipped {doc.id}: {exc}", file=sys.stderr)
    return results, skips, dumps


def _header(rc: RunConfig, command: str) -> dict:
    return {
        "record": "header",
        "tool": "extsum",
        "version": __version__,
        "command": command,
        "corpus": rc.corpus,
        "golden": rc.golden,
        "method": rc.method,
        "mode": rc.mode,
        "compression": rc.compression,
        "weighting": rc.weighting,
        "params": {
            "lambda": rc.lambda_,
            "n_dims": rc.n_dims,
            "k": rc.k,
            "seed": rc.seed,
            "tol": rc.tol,
            "max_iter": rc.max_iter,
            "redundancy": rc.redundancy,
            "length_variant": rc.length_variant,
            "threshold": rc.threshold,
            "min_len": rc.min_len,
            "profile": rc.profile,
        },
    }


def _emit(rc: RunConfig, json_lines: list[dict], table: str) -> None:
    payload = "".join(json.dumps(rec, ensure_ascii=False) + "\n" for rec in json_lines)
    if rc.out:
        Path(rc.out).write_text(payload, encoding="utf-8")
        print(table, end="")
    else:
        print(payload, end="")
        print(table, end="", file=sys.stderr)


def _format_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}"


METRIC_HEADERS = ["Precision (%)", "Recall (%)", "F-score (%)", "ROUGE-1"]


def _metric_cells(p: float, r: float, f1: float, rouge: float) -> list[str]:
    return [_pct(p), _pct(r), _pct(f1), f"{rouge:.4f}"]


def cmd_summarize(rc: RunConfig) -> int:
    tokenizer = _tokenizer_from(rc)
    docs = read_corpus(rc.corpus, tokenizer=tokenizer)
    if rc.method is None:
        raise UsageError("summarize requires --method")
    _require_queries(docs, rc)
    results, skips, dumps = _run_summaries(docs, rc, tokenizer)
    if rc.dump_matrix:
        Path(rc.dump_matrix).write_text("\n".join(dumps), encoding="utf-8")

    json_lines: list[dict] = [_header(rc, "summarize")]
    for res in results:
        json_lines.append(
            {
                "record": "summary",
                "doc_id": res.doc_id,
                "method": res.method,
                "params": res.params,
                "selected": [[i, s] for i, s in res.selected],
            }
        )
    rows = [
        [res.doc_id, str(len(res.selected)), " ".join(str(i) for i in sorted(res.indices))]
        for res in results
    ]
    table = _format_table(["Document", "Selected", "Sentence indices"], rows)
    if skips:
        table += f"skipped {len(skips)} document(s)\n"
    _emit(rc, json_lines, table)
    return EXIT_SKIPS if skips else EXIT_OK


def _load_summary_file(path: str) -> dict[str, SummaryResult]:
    out: dict[str, SummaryResult] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read summaries file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{path}: line {lineno}: malformed record: {exc}") from exc
        if rec.get("record") != "summary":
            continue
        out[rec["doc_id"]] = SummaryResult(
            doc_id=rec["doc_id"],
            selected=tuple((int(i), float(s)) for i, s in rec["selected"]),
            method=rec.get("method", "file"),
            params=rec.get("params", ""),
        )
    return out


def _evaluate(
    docs: list[Document],
    goldens: list[GoldenSummary],
    results: list[SummaryResult],
    rc: RunConfig,
) -> tuple[list[EvalReport], list[str]]:
    """Pair each summary with goldens of the run's mode; returns reports and
    the doc ids with no matching golden."""
    by_doc: dict[str, list[GoldenSummary]] = {}
    for g in goldens:
        if g.mode == rc.mode:
            by_doc.setdefault(g.doc_id, []).append(g)
    doc_index = {d.id: d for d in docs}
    reports: list[EvalReport] = []
    missing: list[str] = []
    for res in results:
        matching = by_doc.get(res.doc_id)
        if not matching:
            missing.append(res.doc_id)
            continue
        doc = doc_index[res.doc_id]
        candidate = [
            tok.normalized
            for i in sorted(res.indices)
            for tok in doc.sentences[i].tokens
        ]
        references = [
            [
                tok.normalized
                for i in sorted(g.selected_indices)
                for tok in doc.sentences[i].tokens
            ]
            for g in matching
        ]
        rouge = rouge_n(candidate, references, n=1)
        reports.append(precision_recall_f1(res, matching[0], rouge_1=rouge))
    return reports, missing


def _eval_pipeline(
    rc: RunConfig,
) -> tuple[list[EvalReport], list[tuple[str, str]], list[str]]:
    tokenizer = _tokenizer_from(rc)
    docs = read_corpus(rc.corpus, tokenizer=tokenizer)
    if not rc.golden:
        raise UsageError("eval requires --golden")
    goldens = load_golden(rc.golden, docs)
    skips: list[tuple[str, str]] = []
    if rc.summaries:
        loaded = _load_summary_file(rc.summaries)
        results = [loaded[d.id] for d in docs if d.id in loaded]
        skips = [(d.id, "not present in summaries file") for d in docs if d.id not in loaded]
    else:
        if rc.method is None:
            raise UsageError("eval requires --summaries or --method")
        _require_queries(docs, rc)
        results, skips, _ = _run_summaries(docs, rc, tokenizer)
    reports, missing = _evaluate(docs, goldens, results, rc)
    return reports, skips, missing


def cmd_eval(rc: RunConfig) -> int:
    reports, skips, missing = _eval_pipeline(rc)
    if not reports:
        raise CorpusError("no document could be evaluated")
    agg = aggregate(reports)

    json_lines: list[dict] = [_header(rc, "eval")]
    for r in reports:
        json_lines.append(
            {
                "record": "eval",
                "doc_id": r.doc_id,
                "method": r.method,
                "tp": r.tp,
                "fp": r.fp,
                "fn": r.fn,
                "precision": r.precision,
                "recall": r.recall,
                "f1": r.f1,
                "rouge_1": r.rouge_1,
            }
        )
    json_lines.append(
        {
            "record": "aggregate",
            "n_docs": agg.n_docs,
            "macro_precision": agg.macro_precision,
            "macro_recall": agg.macro_recall,
            "macro_f1": agg.macro_f1,
            "macro_rouge_1": agg.macro_rouge_1,
            "micro_precision": agg.micro_precision,
            "micro_recall": agg.micro_recall,
            "micro_f1": agg.micro_f1,
            "tp": agg.tp,
            "fp": agg.fp,
            "fn": agg.fn,
            "missing_goldens": missing,
            "skipped": [d for d, _ in skips],
        }
    )
    rows = [
        [r.doc_id] + _metric_cells(r.precision, r.recall, r.f1, r.rouge_1)
        for r in reports
    ]
    rows.append(
        ["macro"]
        + _metric_cells(agg.macro_precision, agg.macro_recall, agg.macro_f1, agg.macro_rouge_1)
    )
    rows.append(
        ["micro",
         _pct(agg.micro_precision), _pct(agg.micro_recall), _pct(agg.micro_f1), "-"]
    )
    table = _format_table(["Document"] + METRIC_HEADERS, rows)
    if missing:
        table += "missing goldens for: " + ", ".join(missing) + "\n"
    _emit(rc, json_lines, table)
    return EXIT_SKIPS if skips or missing else EXIT_OK


_SWEEP_DEFAULTS = {
    "lambda": [round(0.1 * i, 1) for i in range(11)],
    "k": [2, 3, 4, 5, 6],
    "n_dims": [1, 2, 3, 4, 5],
}

_SWEEP_METHOD = {"lambda": "mmr", "k": "plsa", "n_dims": "lsa_steinberger"}


def _sweep_values(rc: RunConfig) -> list[float | int]:
    param = rc.param
    if rc.values:
        raw = [v.strip() for v in rc.values.split(",") if v.strip()]
        if param == "lambda":
            return [float(v) for v in raw]
        return [int(v) for v in raw]
    return _SWEEP_DEFAULTS[param]


def _check_sweep_value(param: str, value: float | int) -> None:
    if param == "lambda" and not 0.0 <= value <= 1.0:
        raise UsageError(f"lambda={value:g} outside [0, 1]")
    if param in ("k", "n_dims") and value < 1:
        raise UsageError(f"{param}={value:g} must be >= 1")


def cmd_sweep(rc: RunConfig) -> int:
    if rc.param not in _SWEEP_DEFAULTS:
        raise UsageError("sweep requires --param {lambda,k,n_dims}")
    method = rc.method or _SWEEP_METHOD[rc.param]
    if _SWEEP_METHOD[rc.param] != method:
        raise UsageError(f"--param {rc.param} applies to method {_SWEEP_METHOD[rc.param]}, not {method}")
    mode = _resolve_mode(method, rc.mode if rc.mode_explicit else None)
    base = dataclasses.replace(rc, method=method, mode=mode)

    try:
        values = _sweep_values(rc)
    except ValueError as exc:
        raise UsageError(f"--values: {exc}") from exc

    json_lines: list[dict] = [_header(base, "sweep")]
    rows: list[list[str]] = []
    any_skips = False
    field = {"lambda": "lambda_", "k": "k", "n_dims": "n_dims"}[rc.param]
    for value in values:
        run = dataclasses.replace(base, **{field: value})
        try:
            _check_sweep_value(rc.param, value)
            reports, skips, missing = _eval_pipeline(run)
            if not reports:
                raise CorpusError("no document could be evaluated")
            agg = aggregate(reports)
        except (UsageError, CorpusError, ValueError) as exc:
            rows.append([str(value), f"error: {exc}", "", "", ""])
            json_lines.append({"record": "sweep_row", "param": rc.param, "value": value, "error": str(exc)})
            continue
        any_skips = any_skips or bool(skips) or bool(missing)
        rows.append([str(value)] + _metric_cells(agg.macro_precision, agg.macro_recall, agg.macro_f1, agg.macro_rouge_1))
        json_lines.append(
            {
                "record": "sweep_row",
                "param": rc.param,
                "value": value,
                "precision": agg.macro_precision,
                "recall": agg.macro_recall,
                "f1": agg.macro_f1,
                "rouge_1": agg.macro_rouge_1,
            }
        )
    label = {"lambda": "lambda", "k": "k", "n_dims": "n"}[rc.param]
    table = _format_table([label] + METRIC_HEADERS, rows)
    _emit(rc, json_lines, table)
    return EXIT_SKIPS if any_skips else EXIT_OK


def _parse_method_spec(spec: str) -> tuple[str, dict[str, object], str]:
    """Parse 'name' or 'name:key=val;key=val' into (method, overrides, label)."""
    name, _, tail = spec.partition(":")
    name = name.strip()
    if name not in METHODS:
        raise UsageError(f"unknown method {name!r} in --methods")
    overrides: dict[str, object] = {}
    pieces: list[str] = []
    if tail:
        for item in tail.split(";"):
            item = item.strip()
            if not item:
                continue
            key, sep, raw = item.partition("=")
            key = key.strip().lower().replace("-", "_")
            if key == "lambda":
                key = "lambda_"
            if not sep or key not in _CONFIG_TYPES:
                raise UsageError(f"bad override {item!r} in method spec {spec!r}")
            overrides[key] = _coerce(key, raw.strip())
            pieces.append(f"{key.rstrip('_')}={raw.strip()}")
    label = name if not pieces else f"{name}({','.join(pieces)})"
    return name, overrides, label


def cmd_compare(rc: RunConfig) -> int:
    if not rc.methods:
        raise UsageError("compare requires --methods")
    specs = [s.strip() for s in rc.methods.split(",") if s.strip()]
    if not specs:
        raise UsageError("--methods lists no methods")
    parsed = [_parse_method_spec(s) for s in specs]

    # All methods must share one mode.
    implied = {_IMPLIED_MODE.get(name) for name, _, _ in parsed}
    implied.discard(None)
    if len(implied) > 1:
        raise UsageError(f"methods mix incompatible modes: {sorted(implied)}")
    shared_mode = rc.mode
    if implied:
        only = implied.pop()
        if rc.mode_explicit and rc.mode != only:
            raise UsageError(f"methods imply mode {only}, got --mode {rc.mode}")
        shared_mode = only

    json_lines: list[dict] = [_header(rc, "compare")]
    rows: list[list[str]] = []
    any_skips = False
    for name, overrides, label in parsed:
        run = dataclasses.replace(rc, method=name, mode=shared_mode, **overrides)
        reports, skips, missing = _eval_pipeline(run)
        if not reports:
            raise CorpusError(f"no document could be evaluated for {label}")
        agg = aggregate(reports)
        any_skips = any_skips or bool(skips) or bool(missing)
        rows.append([label] + _metric_cells(agg.macro_precision, agg.macro_recall, agg.macro_f1, agg.macro_rouge_1))
        json_lines.append(
            {
                "record": "compare_row",
                "method": label,
                "precision": agg.macro_precision,
                "recall": agg.macro_recall,
                "f1": agg.macro_f1,
                "rouge_1": agg.macro_rouge_1,
            }
        )
    table = _format_table(["Method"] + METRIC_HEADERS, rows)
    _emit(rc, json_lines, table)
    return EXIT_SKIPS if any_skips else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        rc = resolve_config(args)
        if rc.command == "summarize":
            return cmd_summarize(rc)
        if rc.command == "eval":
            return cmd_eval(rc)
        if rc.command == "sweep":
            return cmd_sweep(rc)
        return cmd_compare(rc)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (*_NUMERIC_ERRORS, NonFiniteInputError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
