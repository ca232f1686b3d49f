"""ackmine: acknowledgement mining and collaboration statistics.

Extracts acknowledged individuals from the acknowledgement texts of
bibliographic records, merges them with byline authors into per-paper
contributor counts, and aggregates per-discipline collaboration statistics.
"""

from .cleanse import AcknowledgeeSet, CleaningOutcome, clean_record, count_acknowledgees
from .ingest import (
    Blacklist,
    MalformedLine,
    SurnameSet,
    default_blacklist,
    load_blacklist,
    load_discipline_map,
    load_surname_set,
    parse_corpus,
    record_from_json,
    record_to_json,
)
from .metrics import (
    ContributorSummary,
    DisciplineAggregate,
    DispersionStats,
    MeanCounts,
    Table1Row,
    aggregate_summaries,
    combine_all,
    count_distributions,
    cross_discipline_dispersion,
    cumulative_author_distribution,
    fold,
    mean_acks_by_author_count,
    mean_counts,
    merge,
    single_author_ack_share,
    summarize,
    table1_row,
)
from .model import (
    AuthorName,
    DocType,
    LinkageKey,
    NormalizedName,
    Record,
    RejectionReason,
    fold_surname,
    linkage_key,
    normalize_author,
    normalize_name,
)
from .ner import NameCandidate, extract_candidates, recognizer_info
from .report import PipelineConfig, emit_figure_data, emit_table1, run_pipeline
from .synth import (
    DisciplineProfile,
    GeneratorConfig,
    PhraseTemplates,
    build_profile,
    default_config,
    evaluate,
    generate,
    load_ground_truth,
)

__version__ = "0.1.0"

__all__ = [
    "AcknowledgeeSet",
    "AuthorName",
    "Blacklist",
    "CleaningOutcome",
    "ContributorSummary",
    "DisciplineAggregate",
    "DisciplineProfile",
    "DispersionStats",
    "DocType",
    "GeneratorConfig",
    "LinkageKey",
    "MalformedLine",
    "MeanCounts",
    "NameCandidate",
    "NormalizedName",
    "PhraseTemplates",
    "PipelineConfig",
    "Record",
    "RejectionReason",
    "SurnameSet",
    "Table1Row",
    "aggregate_summaries",
    "build_profile",
    "clean_record",
    "combine_all",
    "count_acknowledgees",
    "count_distributions",
    "cross_discipline_dispersion",
    "cumulative_author_distribution",
    "default_blacklist",
    "default_config",
    "emit_figure_data",
    "emit_table1",
    "evaluate",
    "fold",
    "fold_surname",
    "generate",
    "linkage_key",
    "load_blacklist",
    "load_discipline_map",
    "load_ground_truth",
    "load_surname_set",
    "mean_acks_by_author_count",
    "mean_counts",
    "merge",
    "normalize_author",
    "normalize_name",
    "parse_corpus",
    "record_from_json",
    "record_to_json",
    "recognizer_info",
    "run_pipeline",
    "single_author_ack_share",
    "summarize",
    "table1_row",
]
