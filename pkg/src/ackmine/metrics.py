"""Per-discipline aggregation of contributor counts and all derived statistics.

DisciplineAggregate is a mergeable accumulator: fold summaries into
shard-local aggregates on any number of workers, merge the shards, then read
the statistics off the result. All counters are integers, so folding and
merging are exact and order-invariant.

n_papers / n_with_ack / n_with_acknowledgee span every record (the headline
table needs all papers); the detail tables (histograms, sums, ranges) cover
papers with acknowledgement text, which is the population every distribution
and mean statistic is defined over.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field

from .cleanse import AcknowledgeeSet
from .model import Record


def round1(x: float) -> float:
    """Round to one decimal, halves away from zero (table presentation)."""
    return math.floor(x * 10 + 0.5) / 10 if x >= 0 else -math.floor(-x * 10 + 0.5) / 10


@dataclass(frozen=True)
class ContributorSummary:
    """Per-paper contributor counts; the unit every aggregate is built from."""

    record_id: str
    discipline: str
    n_authors: int
    n_acknowledgees: int
    has_ack_text: bool

    def __post_init__(self) -> None:
        if self.n_authors < 1:
            raise ValueError("n_authors must be >= 1")
        if self.n_acknowledgees < 0:
            raise ValueError("n_acknowledgees must be >= 0")
        if self.n_acknowledgees > 0 and not self.has_ack_text:
            raise ValueError("acknowledgees imply acknowledgement text")

    @property
    def n_contributors(self) -> int:
        return self.n_authors + self.n_acknowledgees


def summarize(record: Record, acks: AcknowledgeeSet) -> ContributorSummary:
    return ContributorSummary(
        record_id=record.id,
        discipline=record.discipline,
        n_authors=len(record.authors),
        n_acknowledgees=len(acks),
        has_ack_text=record.ack_text is not None,
    )


@dataclass
class DisciplineAggregate:
    discipline: str
    n_papers: int = 0
    n_with_ack: int = 0
    n_with_acknowledgee: int = 0
    author_hist: Counter = field(default_factory=Counter)
    ack_hist: Counter = field(default_factory=Counter)
    ack_sum_by_authors: Counter = field(default_factory=Counter)
    n_single_with_ackee: int = 0
    author_sum: int = 0
    ack_sum: int = 0
    min_authors: int | None = None
    max_authors: int | None = None
    min_acks: int | None = None
    max_acks: int | None = None


def fold(agg: DisciplineAggregate, summary: ContributorSummary) -> DisciplineAggregate:
    """Fold one summary into the aggregate (in place; returns it)."""
    if summary.discipline != agg.discipline:
        raise ValueError(
            f"cannot fold {summary.discipline!r} summary into {agg.discipline!r} aggregate"
        )
    agg.n_papers += 1
    if not summary.has_ack_text:
        return agg
    k, n = summary.n_authors, summary.n_acknowledgees
    agg.n_with_ack += 1
    agg.author_hist[k] += 1
    agg.ack_hist[n] += 1
    agg.ack_sum_by_authors[k] += n
    agg.author_sum += k
    agg.ack_sum += n
    if n > 0:
        agg.n_with_acknowledgee += 1
        if k == 1:
            agg.n_single_with_ackee += 1
    agg.min_authors = k if agg.min_authors is None else min(agg.min_authors, k)
    agg.max_authors = k if agg.max_authors is None else max(agg.max_authors, k)
    agg.min_acks = n if agg.min_acks is None else min(agg.min_acks, n)
    agg.max_acks = n if agg.max_acks is None else max(agg.max_acks, n)
    return agg


def _combine_into(total: DisciplineAggregate, part: DisciplineAggregate) -> None:
    total.n_papers += part.n_papers
    total.n_with_ack += part.n_with_ack
    total.n_with_acknowledgee += part.n_with_acknowledgee
    total.author_hist.update(part.author_hist)
    total.ack_hist.update(part.ack_hist)
    total.ack_sum_by_authors.update(part.ack_sum_by_authors)
    total.n_single_with_ackee += part.n_single_with_ackee
    total.author_sum += part.author_sum
    total.ack_sum += part.ack_sum
    for attr, pick in (
        ("min_authors", min),
        ("max_authors", max),
        ("min_acks", min),
        ("max_acks", max),
    ):
        ours, theirs = getattr(total, attr), getattr(part, attr)
        if theirs is not None:
            setattr(total, attr, theirs if ours is None else pick(ours, theirs))


def merge(a: DisciplineAggregate, b: DisciplineAggregate) -> DisciplineAggregate:
    """Combine two shard aggregates; commutative, associative, with the empty
    aggregate as identity."""
    if a.discipline != b.discipline:
        raise ValueError(f"cannot merge {a.discipline!r} with {b.discipline!r}")
    out = DisciplineAggregate(a.discipline)
    _combine_into(out, a)
    _combine_into(out, b)
    return out


def combine_all(aggs: Iterable[DisciplineAggregate], label: str = "Total") -> DisciplineAggregate:
    """Pool aggregates across disciplines under a new label (the Total row)."""
    out = DisciplineAggregate(label)
    for agg in aggs:
        _combine_into(out, agg)
    return out


def aggregate_summaries(summaries: Iterable[ContributorSummary]) -> dict[str, DisciplineAggregate]:
    """Fold a summary stream into one aggregate per discipline."""
    aggs: dict[str, DisciplineAggregate] = {}
    for summary in summaries:
        agg = aggs.get(summary.discipline)
        if agg is None:
            agg = aggs[summary.discipline] = DisciplineAggregate(summary.discipline)
        fold(agg, summary)
    return aggs


@dataclass(frozen=True)
class Table1Row:
    """One headline-table row; percentages are None when undefined."""

    discipline: str
    n_papers: int
    n_with_ack: int
    pct_with_ack: float | None
    n_with_acknowledgee: int
    pct_of_ack: float | None
    pct_of_total: float | None


def table1_row(agg: DisciplineAggregate) -> Table1Row:
    """Paper counts and one-decimal percentages for one discipline."""
    n, n_ack, n_ackee = agg.n_papers, agg.n_with_ack, agg.n_with_acknowledgee
    return Table1Row(
        discipline=agg.discipline,
        n_papers=n,
        n_with_ack=n_ack,
        pct_with_ack=round1(100 * n_ack / n) if n else None,
        n_with_acknowledgee=n_ackee,
        pct_of_ack=round1(100 * n_ackee / n_ack) if n_ack else None,
        pct_of_total=round1(100 * n_ackee / n) if n else None,
    )


def cumulative_author_distribution(agg: DisciplineAggregate) -> list[tuple[int, float]]:
    """(k, % of papers with <= k authors) over papers with acknowledgements.

    Nondecreasing in k; the last entry is exactly 100.0.
    """
    total = agg.n_with_ack
    if total == 0:
        return []
    out = []
    running = 0
    for k in sorted(agg.author_hist):
        running += agg.author_hist[k]
        out.append((k, 100 * running / total))
    return out


def count_distributions(agg: DisciplineAggregate) -> tuple[dict[int, int], dict[int, int]]:
    """Exact frequency tables of author and acknowledgee counts."""
    return (
        dict(sorted(agg.author_hist.items())),
        dict(sorted(agg.ack_hist.items())),
    )


@dataclass(frozen=True)
class MeanCounts:
    mean_authors: float
    mean_acknowledgees: float
    mean_contributors: float
    author_range: tuple[int, int]
    ack_range: tuple[int, int]


def mean_counts(agg: DisciplineAggregate) -> MeanCounts | None:
    """Mean authors/acknowledgees/contributors with (min, max) ranges, or None
    for an aggregate without analyzable papers."""
    n = agg.n_with_ack
    if n == 0:
        return None
    mean_authors = agg.author_sum / n
    mean_acks = agg.ack_sum / n
    return MeanCounts(
        mean_authors=mean_authors,
        mean_acknowledgees=mean_acks,
        mean_contributors=mean_authors + mean_acks,
        author_range=(agg.min_authors, agg.max_authors),
        ack_range=(agg.min_acks, agg.max_acks),
    )


def mean_acks_by_author_count(agg: DisciplineAggregate, k_max: int = 9) -> dict[int, float]:
    """Mean acknowledgees among papers with k authors, k = 1..k_max.

    Author counts with no papers are absent from the result, never 0.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    return {
        k: agg.ack_sum_by_authors[k] / agg.author_hist[k]
        for k in range(1, k_max + 1)
        if agg.author_hist[k] > 0
    }


@dataclass(frozen=True)
class DispersionStats:
    """Spread of per-discipline means: mean, population SD, and SD/mean in
    integer percent (None when the mean is zero)."""

    m: float
    sd: float
    rsd: int | None


def cross_discipline_dispersion(means: Iterable[float]) -> DispersionStats:
    values = list(means)
    if not values:
        raise ValueError("need at least one per-discipline mean")
    m = math.fsum(values) / len(values)
    sd = math.sqrt(math.fsum((v - m) ** 2 for v in values) / len(values))
    rsd = int(math.floor(100 * sd / m + 0.5)) if m > 0 else None
    return DispersionStats(m=m, sd=sd, rsd=rsd)


def single_author_ack_share(aggs: Iterable[DisciplineAggregate]) -> float | None:
    """Percentage of single-authored papers (with acknowledgement text) that
    acknowledge at least one individual; None when there are none."""
    singles = 0
    with_ackee = 0
    for agg in aggs:
        singles += agg.author_hist.get(1, 0)
        with_ackee += agg.n_single_with_ackee
    if singles == 0:
        return None
    return 100 * with_ackee / singles
