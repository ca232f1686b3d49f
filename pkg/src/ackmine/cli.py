"""Command-line interface: run the pipeline, recompute reports, or generate
a synthetic corpus."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .report import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_OUTPUT_ERROR,
    PipelineConfig,
    report_from_summaries,
    run_pipeline,
)
from .synth import default_config, generate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ackmine",
        description="Extract acknowledged individuals from bibliographic records "
        "and report per-discipline collaboration statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full pipeline over a corpus")
    run.add_argument("--corpus", type=Path, required=True, help="JSON-lines corpus file")
    run.add_argument("--lexicon", type=Path, required=True, help="surname benchmark list")
    run.add_argument("--blacklist", type=Path, required=True, help="non-person full names")
    run.add_argument("--out", type=Path, required=True, help="output directory")
    run.add_argument(
        "--discipline-map",
        type=Path,
        help="journal,discipline table (records must then carry 'journal')",
    )
    run.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    run.add_argument(
        "--strict",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="abort on malformed corpus lines (default) or skip them",
    )
    run.add_argument("--k-max", type=int, default=9, help="author-count cap for fig4")

    report = sub.add_parser("report", help="recompute tables from a summaries file")
    report.add_argument("--summaries", type=Path, required=True)
    report.add_argument("--out", type=Path, required=True)
    report.add_argument("--k-max", type=int, default=9)

    gen = sub.add_parser("generate", help="generate a synthetic corpus with ground truth")
    gen.add_argument("--out", type=Path, required=True)
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument(
        "--total-papers", type=int, default=10_000, help="corpus size, split by discipline weight"
    )
    gen.add_argument(
        "--papers-per-discipline",
        type=int,
        help="flat per-discipline paper count (overrides --total-papers)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return run_pipeline(
            PipelineConfig(
                corpus=args.corpus,
                lexicon=args.lexicon,
                blacklist=args.blacklist,
                out_dir=args.out,
                discipline_map=args.discipline_map,
                workers=args.workers,
                strict=args.strict,
                k_max=args.k_max,
            )
        )
    if args.command == "report":
        return report_from_summaries(args.summaries, args.out, args.k_max)
    if args.command == "generate":
        try:
            config = default_config(
                seed=args.seed,
                total_papers=args.total_papers,
                papers_per_discipline=args.papers_per_discipline,
            )
            artifacts = generate(config, args.out)
        except ValueError as exc:
            print(f"ackmine: invalid generator configuration: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        except OSError as exc:
            print(f"ackmine: cannot write corpus: {exc}", file=sys.stderr)
            return EXIT_OUTPUT_ERROR
        for path in (artifacts.corpus, artifacts.lexicon, artifacts.blacklist, artifacts.ground_truth):
            print(path)
        return EXIT_OK
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
