"""Pipeline orchestration and report emission.

run_pipeline streams the corpus through extraction, cleaning and aggregation,
fanning records out to worker processes when asked, and writes every output:
the headline table, the four figure bundles (CSV data plus standalone SVG),
the per-candidate audit trail, the per-paper summaries file, and a run
manifest with input digests. Outputs are byte-identical for identical inputs
and configuration, regardless of worker count.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import multiprocessing
import sys
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import chart
from .cleanse import audit_rows, clean_record
from .ingest import (
    Blacklist,
    MalformedLine,
    SurnameSet,
    load_blacklist,
    load_discipline_map,
    load_surname_set,
    record_from_json,
)
from .metrics import (
    ContributorSummary,
    DisciplineAggregate,
    MeanCounts,
    Table1Row,
    combine_all,
    count_distributions,
    cross_discipline_dispersion,
    cumulative_author_distribution,
    fold,
    mean_acks_by_author_count,
    mean_counts,
    single_author_ack_share,
    summarize,
    table1_row,
)
from .ner import extract_candidates, recognizer_info

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_PARSE_ERROR = 3
EXIT_OUTPUT_ERROR = 4

_CHUNK_LINES = 2048

TABLE1_HEADER = [
    "discipline",
    "N",
    "N_ack",
    "pct_ack",
    "N_acknowledgee",
    "pct_of_ack",
    "pct_of_total",
]
SUMMARIES_HEADER = ["id", "discipline", "n_authors", "n_acknowledgees", "has_ack_text"]
AUDIT_HEADER = ["id", "surface", "verdict", "stage"]


@dataclass
class PipelineConfig:
    corpus: Path
    lexicon: Path
    blacklist: Path
    out_dir: Path
    discipline_map: Path | None = None
    workers: int = 1
    strict: bool = True
    k_max: int = 9


def _pct(value: float | None) -> str:
    return "" if value is None else f"{value:.1f}"


def _mean(value: float) -> str:
    return f"{value:.4f}"


def emit_table1(rows: Iterable[Table1Row], path: str | Path) -> Path:
    """Write the headline table: discipline rows sorted by pct_of_total
    descending, any Total row last."""
    path = Path(path)
    ordinary = [r for r in rows if r.discipline != "Total"]
    totals = [r for r in rows if r.discipline == "Total"]
    ordinary.sort(key=lambda r: (-(r.pct_of_total if r.pct_of_total is not None else -1), r.discipline))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TABLE1_HEADER)
        for row in ordinary + totals:
            writer.writerow(
                [
                    row.discipline,
                    row.n_papers,
                    row.n_with_ack,
                    _pct(row.pct_with_ack),
                    row.n_with_acknowledgee,
                    _pct(row.pct_of_ack),
                    _pct(row.pct_of_total),
                ]
            )
    return path


def emit_figure_data(kind: str, stats, out_dir: str | Path) -> tuple[Path, Path]:
    """Write fig<N>.csv and a standalone fig<N>.svg for one figure kind.

    stats by kind: fig1: {discipline: [(k, cum_pct), ...]};
    fig2: (author_hist, acknowledgee_hist) pooled over disciplines;
    fig3: {discipline: MeanCounts}; fig4: {discipline: {k: mean}}.
    """
    out = Path(out_dir)
    csv_path = out / f"{kind}.csv"
    svg_path = out / f"{kind}.svg"
    with open(csv_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if kind == "fig1":
            writer.writerow(["discipline", "authors", "cum_pct_papers"])
            for discipline in sorted(stats):
                for k, pct in stats[discipline]:
                    writer.writerow([discipline, k, _pct(pct)])
            svg = chart.line_chart(
                "Cumulative share of papers by author count",
                "authors per paper (up to k)",
                "% of papers",
                [(d, [(k, pct) for k, pct in stats[d]]) for d in sorted(stats)],
            )
        elif kind == "fig2":
            author_hist, ack_hist = stats
            writer.writerow(["kind", "count", "papers"])
            for count, papers in sorted(author_hist.items()):
                writer.writerow(["authors", count, papers])
            for count, papers in sorted(ack_hist.items()):
                writer.writerow(["acknowledgees", count, papers])
            svg = chart.log_count_histogram(
                "Papers by number of authors and acknowledgees",
                "count per paper",
                [("authors", author_hist), ("acknowledgees", ack_hist)],
            )
        elif kind == "fig3":
            writer.writerow(
                [
                    "discipline",
                    "mean_authors",
                    "mean_acknowledgees",
                    "mean_contributors",
                    "min_authors",
                    "max_authors",
                    "min_acknowledgees",
                    "max_acknowledgees",
                ]
            )
            ordered = sorted(stats, key=lambda d: -stats[d].mean_contributors)
            bars = []
            for discipline in ordered:
                m: MeanCounts = stats[discipline]
                writer.writerow(
                    [
                        discipline,
                        _mean(m.mean_authors),
                        _mean(m.mean_acknowledgees),
                        _mean(m.mean_contributors),
                        m.author_range[0],
                        m.author_range[1],
                        m.ack_range[0],
                        m.ack_range[1],
                    ]
                )
                annotation = (
                    f"[{m.author_range[0]}-{m.author_range[1]}] "
                    f"[{m.ack_range[0]}-{m.ack_range[1]}]"
                )
                bars.append((discipline, m.mean_authors, m.mean_acknowledgees, annotation))
            svg = chart.stacked_bar_chart(
                "Mean authors and acknowledgees per paper",
                "mean count per paper (ranges in brackets)",
                bars,
                ("authors", "acknowledgees"),
            )
        elif kind == "fig4":
            writer.writerow(["discipline", "authors", "mean_acknowledgees"])
            for discipline in sorted(stats):
                for k in sorted(stats[discipline]):
                    writer.writerow([discipline, k, _mean(stats[discipline][k])])
            svg = chart.line_chart(
                "Mean acknowledgees by number of authors",
                "authors per paper",
                "mean acknowledgees",
                [
                    (d, sorted(stats[d].items()))
                    for d in sorted(stats)
                    if stats[d]
                ],
            )
        else:
            raise ValueError(f"unknown figure kind {kind!r}")
    svg_path.write_text(svg, encoding="utf-8")
    return csv_path, svg_path


def emit_reports(
    aggs: dict[str, DisciplineAggregate], out_dir: str | Path, k_max: int = 9
) -> list[Path]:
    """Write the headline table, all figure bundles, and the dispersion and
    single-author companion tables."""
    out = Path(out_dir)
    written = []

    rows = [table1_row(agg) for agg in aggs.values()]
    if aggs:
        rows.append(table1_row(combine_all(aggs.values())))
    written.append(emit_table1(rows, out / "table1.csv"))

    fig1 = {d: cumulative_author_distribution(a) for d, a in aggs.items() if a.n_with_ack}
    written.extend(emit_figure_data("fig1", fig1, out))
    pooled = combine_all(aggs.values()) if aggs else DisciplineAggregate("Total")
    written.extend(emit_figure_data("fig2", count_distributions(pooled), out))
    fig3 = {d: m for d, a in aggs.items() if (m := mean_counts(a)) is not None}
    written.extend(emit_figure_data("fig3", fig3, out))
    fig4 = {d: mean_acks_by_author_count(a, k_max) for d, a in aggs.items() if a.n_with_ack}
    written.extend(emit_figure_data("fig4", fig4, out))

    dispersion_path = out / "dispersion.csv"
    with open(dispersion_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["basis", "M", "SD", "RSD_pct"])
        if fig3:
            for basis, picker in (
                ("authors", lambda m: m.mean_authors),
                ("contributors", lambda m: m.mean_contributors),
            ):
                stats = cross_discipline_dispersion([picker(m) for m in fig3.values()])
                writer.writerow(
                    [basis, _mean(stats.m), _mean(stats.sd), "" if stats.rsd is None else stats.rsd]
                )
    written.append(dispersion_path)

    singles_path = out / "single_author.csv"
    with open(singles_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["n_single_author", "n_with_acknowledgees", "pct"])
        share = single_author_ack_share(aggs.values())
        n_single = sum(a.author_hist.get(1, 0) for a in aggs.values())
        n_with = sum(a.n_single_with_ackee for a in aggs.values())
        writer.writerow([n_single, n_with, _pct(share)])
    written.append(singles_path)
    return written


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def write_manifest(config: PipelineConfig, out_dir: Path, outputs: list[Path]) -> Path:
    manifest = {
        "recognizer": recognizer_info(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "inputs": {
            "corpus": str(config.corpus),
            "lexicon": str(config.lexicon),
            "blacklist": str(config.blacklist),
            "discipline_map": str(config.discipline_map) if config.discipline_map else None,
        },
        "digests": {
            "corpus": _sha256_file(config.corpus),
            "lexicon": _sha256_file(config.lexicon),
            "blacklist": _sha256_file(config.blacklist),
            "discipline_map": _sha256_file(config.discipline_map)
            if config.discipline_map
            else None,
        },
        "config": {
            "workers": config.workers,
            "strict": config.strict,
            "k_max": config.k_max,
        },
        "outputs": sorted(p.name for p in outputs),
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# record processing (shared by in-process and pooled execution)

def process_record(record, lexicon: SurnameSet, blacklist: Blacklist):
    """Extraction plus cleaning for one record; returns (summary, acks, outcomes)."""
    candidates = extract_candidates(record.ack_text) if record.ack_text is not None else []
    acks, outcomes = clean_record(record, candidates, lexicon, blacklist)
    return summarize(record, acks), acks, outcomes


def _process_chunk(
    chunk: list[tuple[int, str]],
    lexicon: SurnameSet,
    blacklist: Blacklist,
    discipline_map: dict[str, str] | None,
    strict: bool,
):
    summaries_buf = io.StringIO()
    audit_buf = io.StringIO()
    summaries_writer = csv.writer(summaries_buf, lineterminator="\n")
    audit_writer = csv.writer(audit_buf, lineterminator="\n")
    aggs: dict[str, DisciplineAggregate] = {}
    malformed: list[str] = []
    for line_no, line in chunk:
        if not line.strip():
            continue
        try:
            record = record_from_json(line, line_no, discipline_map)
        except MalformedLine as exc:
            if strict:
                raise
            malformed.append(str(exc))
            continue
        summary, acks, outcomes = process_record(record, lexicon, blacklist)
        summaries_writer.writerow(
            [
                summary.record_id,
                summary.discipline,
                summary.n_authors,
                summary.n_acknowledgees,
                "true" if summary.has_ack_text else "false",
            ]
        )
        for row in audit_rows(record.id, outcomes):
            audit_writer.writerow(row)
        agg = aggs.get(summary.discipline)
        if agg is None:
            agg = aggs[summary.discipline] = DisciplineAggregate(summary.discipline)
        fold(agg, summary)
    return summaries_buf.getvalue(), audit_buf.getvalue(), aggs, malformed


_WORKER_STATE: dict = {}


def _init_worker(lexicon, blacklist, discipline_map, strict) -> None:
    _WORKER_STATE["args"] = (lexicon, blacklist, discipline_map, strict)


def _pool_chunk(chunk):
    return _process_chunk(chunk, *_WORKER_STATE["args"])


def _chunked_lines(handle, size: int = _CHUNK_LINES) -> Iterator[list[tuple[int, str]]]:
    chunk: list[tuple[int, str]] = []
    for line_no, line in enumerate(handle, start=1):
        chunk.append((line_no, line))
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def read_summaries(path: str | Path) -> Iterator[ContributorSummary]:
    """Stream ContributorSummary rows back from a summaries file."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != SUMMARIES_HEADER:
            raise ValueError(f"unexpected summaries header: {header!r}")
        for row in reader:
            if not row:
                continue
            record_id, discipline, n_authors, n_acks, has_text = row
            yield ContributorSummary(
                record_id=record_id,
                discipline=discipline,
                n_authors=int(n_authors),
                n_acknowledgees=int(n_acks),
                has_ack_text=has_text == "true",
            )


def _merge_partials(
    aggs: dict[str, DisciplineAggregate], partials: dict[str, DisciplineAggregate]
) -> None:
    from .metrics import _combine_into

    for discipline, part in partials.items():
        agg = aggs.get(discipline)
        if agg is None:
            aggs[discipline] = part
        else:
            _combine_into(agg, part)


def run_pipeline(config: PipelineConfig) -> int:
    """Run corpus -> extraction -> cleaning -> aggregation -> reports.

    Returns a process exit status: 0 success, 2 input error, 3 parse error
    under strict mode, 4 output error. On failure no partial output files are
    left behind.
    """
    required = [config.corpus, config.lexicon, config.blacklist]
    if config.discipline_map is not None:
        required.append(config.discipline_map)
    for path in required:
        if not Path(path).is_file():
            print(f"ackmine: input not found: {path}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    try:
        lexicon = load_surname_set(config.lexicon)
        blacklist = load_blacklist(config.blacklist)
        discipline_map = (
            load_discipline_map(config.discipline_map) if config.discipline_map else None
        )
    except (OSError, ValueError) as exc:
        print(f"ackmine: cannot load inputs: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    out = Path(config.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"ackmine: cannot create output directory: {exc}", file=sys.stderr)
        return EXIT_OUTPUT_ERROR

    summaries_tmp = out / "summaries.csv.partial"
    audit_tmp = out / "audit.csv.partial"
    aggs: dict[str, DisciplineAggregate] = {}
    malformed_total = 0
    pool = None
    try:
        with open(config.corpus, encoding="utf-8") as corpus_handle, open(
            summaries_tmp, "w", encoding="utf-8", newline=""
        ) as summaries_handle, open(
            audit_tmp, "w", encoding="utf-8", newline=""
        ) as audit_handle:
            csv.writer(summaries_handle, lineterminator="\n").writerow(SUMMARIES_HEADER)
            csv.writer(audit_handle, lineterminator="\n").writerow(AUDIT_HEADER)
            chunks = _chunked_lines(corpus_handle)
            if config.workers <= 1:
                results = (
                    _process_chunk(c, lexicon, blacklist, discipline_map, config.strict)
                    for c in chunks
                )
            else:
                pool = multiprocessing.Pool(
                    processes=config.workers,
                    initializer=_init_worker,
                    initargs=(lexicon, blacklist, discipline_map, config.strict),
                )
                results = pool.imap(_pool_chunk, chunks)
            for summaries_csv, audit_csv, partials, malformed in results:
                summaries_handle.write(summaries_csv)
                audit_handle.write(audit_csv)
                _merge_partials(aggs, partials)
                for message in malformed:
                    log.warning("skipping malformed corpus line: %s", message)
                malformed_total += len(malformed)
            if pool is not None:
                pool.close()
                pool.join()
    except MalformedLine as exc:
        print(f"ackmine: corpus parse error: {exc}", file=sys.stderr)
        summaries_tmp.unlink(missing_ok=True)
        audit_tmp.unlink(missing_ok=True)
        return EXIT_PARSE_ERROR
    except OSError as exc:
        print(f"ackmine: I/O error: {exc}", file=sys.stderr)
        summaries_tmp.unlink(missing_ok=True)
        audit_tmp.unlink(missing_ok=True)
        return EXIT_OUTPUT_ERROR
    finally:
        if pool is not None:
            pool.terminate()

    try:
        summaries_path = out / "summaries.csv"
        audit_path = out / "audit.csv"
        summaries_tmp.replace(summaries_path)
        audit_tmp.replace(audit_path)
        outputs = emit_reports(aggs, out, config.k_max)
        outputs += [summaries_path, audit_path]
        outputs.append(write_manifest(config, out, outputs))
    except OSError as exc:
        print(f"ackmine: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_OUTPUT_ERROR
    if malformed_total:
        print(f"ackmine: skipped {malformed_total} malformed line(s)", file=sys.stderr)
    return EXIT_OK


def report_from_summaries(summaries: Path, out_dir: Path, k_max: int = 9) -> int:
    """Recompute every table and figure from a saved summaries file."""
    if not Path(summaries).is_file():
        print(f"ackmine: input not found: {summaries}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    from .metrics import aggregate_summaries

    try:
        aggs = aggregate_summaries(read_summaries(summaries))
    except (OSError, ValueError) as exc:
        print(f"ackmine: cannot read summaries: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        emit_reports(aggs, out, k_max)
    except OSError as exc:
        print(f"ackmine: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_OUTPUT_ERROR
    return EXIT_OK
