import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ackmine.cleanse import AcknowledgeeSet
from ackmine.metrics import (
    ContributorSummary,
    DisciplineAggregate,
    aggregate_summaries,
    combine_all,
    count_distributions,
    cross_discipline_dispersion,
    cumulative_author_distribution,
    fold,
    mean_acks_by_author_count,
    mean_counts,
    merge,
    round1,
    single_author_ack_share,
    summarize,
    table1_row,
)
from ackmine.model import AuthorName, DocType, Record

# Published headline-table counts and percentages; the arithmetic oracle.
TABLE1 = [
    ("Earth & Space", 92238, 72922, 41633, 79.1, 57.1, 45.1),
    ("Biology", 105279, 76281, 43365, 72.5, 56.8, 41.2),
    ("Biomedical Research", 189066, 158067, 59142, 83.6, 37.4, 31.3),
    ("Physics", 124556, 95676, 35063, 76.8, 36.6, 28.2),
    ("Psychology", 31286, 15085, 7736, 48.2, 51.3, 24.7),
    ("Chemistry", 151947, 123806, 36583, 81.5, 29.5, 24.1),
    ("Social Sciences", 50420, 16972, 9291, 33.7, 54.7, 18.4),
    ("Engineering & Technology", 241124, 165590, 43899, 68.7, 26.5, 18.2),
    ("Clinical Medicine", 389311, 218367, 67019, 56.1, 30.7, 17.2),
    ("Mathematics", 49997, 35390, 8314, 70.8, 23.5, 16.6),
    ("Health", 37309, 18703, 5651, 50.1, 30.2, 15.1),
    ("Professional Fields", 41015, 12552, 5071, 30.6, 40.4, 12.4),
    ("Total", 1503548, 1009411, 362767, 67.1, 35.9, 24.1),
]


def summary(discipline="Biology", authors=3, acks=0, has_text=True, record_id="r"):
    return ContributorSummary(
        record_id=record_id,
        discipline=discipline,
        n_authors=authors,
        n_acknowledgees=acks,
        has_ack_text=has_text,
    )


def build_agg(pairs, discipline="Biology", extra_no_text=0):
    """Aggregate over (n_authors, n_acknowledgees) pairs, all with ack text."""
    agg = DisciplineAggregate(discipline)
    for i, (authors, acks) in enumerate(pairs):
        fold(agg, summary(discipline, authors, acks, record_id=f"r{i}"))
    for i in range(extra_no_text):
        fold(agg, summary(discipline, 2, 0, has_text=False, record_id=f"n{i}"))
    return agg


summaries_strategy = st.lists(
    st.builds(
        summary,
        authors=st.integers(min_value=1, max_value=30),
        acks=st.integers(min_value=0, max_value=12),
        has_text=st.just(True),
    )
    | st.builds(
        summary,
        authors=st.integers(min_value=1, max_value=30),
        acks=st.just(0),
        has_text=st.just(False),
    ),
    max_size=60,
)


class TestSummarize:
    def test_counts_add(self):
        s = summary(authors=3, acks=2)
        assert s.n_contributors == 5

    def test_single_author_no_acks_is_noncollaborative(self):
        s = summary(authors=1, acks=0)
        assert s.n_contributors == 1

    def test_from_record(self, paper_x_record):
        acks = AcknowledgeeSet(paper_x_record.id, ())
        s = summarize(paper_x_record, acks)
        assert (s.n_authors, s.n_acknowledgees, s.n_contributors) == (3, 0, 3)
        assert s.has_ack_text

    def test_acks_without_text_rejected(self):
        with pytest.raises(ValueError):
            summary(acks=1, has_text=False)


class TestFoldMerge:
    def test_fold_identity(self):
        agg = fold(DisciplineAggregate("Biology"), summary())
        assert agg.n_papers == 1

    def test_merge_with_empty_is_identity(self):
        agg = build_agg([(3, 1), (2, 0), (5, 4)])
        assert merge(agg, DisciplineAggregate("Biology")) == agg
        assert merge(DisciplineAggregate("Biology"), agg) == agg

    def test_discipline_mismatch_is_error(self):
        with pytest.raises(ValueError):
            fold(DisciplineAggregate("Physics"), summary(discipline="Biology"))
        with pytest.raises(ValueError):
            merge(DisciplineAggregate("Physics"), DisciplineAggregate("Biology"))

    @given(data=summaries_strategy, split=st.integers(min_value=0, max_value=60))
    def test_split_fold_merge_equals_whole(self, data, split):
        split = min(split, len(data))
        whole = DisciplineAggregate("Biology")
        for s in data:
            fold(whole, s)
        left, right = DisciplineAggregate("Biology"), DisciplineAggregate("Biology")
        for s in data[:split]:
            fold(left, s)
        for s in data[split:]:
            fold(right, s)
        assert merge(left, right) == whole
        assert merge(right, left) == whole

    @given(data=summaries_strategy)
    def test_order_invariance(self, data):
        shuffled = list(data)
        random.Random(7).shuffle(shuffled)
        a, b = DisciplineAggregate("Biology"), DisciplineAggregate("Biology")
        for s in data:
            fold(a, s)
        for s in shuffled:
            fold(b, s)
        assert a == b

    def test_merge_associative(self):
        parts = [build_agg([(k, k % 3)]) for k in range(1, 7)]
        left = merge(merge(parts[0], parts[1]), parts[2])
        right = merge(parts[0], merge(parts[1], parts[2]))
        assert left == right

    def test_aggregate_summaries_groups_by_discipline(self):
        aggs = aggregate_summaries(
            [summary("Biology"), summary("Physics"), summary("Biology")]
        )
        assert aggs["Biology"].n_papers == 2
        assert aggs["Physics"].n_papers == 1


class TestTable1Row:
    @pytest.mark.parametrize("row", TABLE1, ids=[r[0] for r in TABLE1])
    def test_published_percentages_reproduced(self, row):
        discipline, n, n_ack, n_ackee, pct_ack, pct_of_ack, pct_total = row
        agg = DisciplineAggregate(
            discipline, n_papers=n, n_with_ack=n_ack, n_with_acknowledgee=n_ackee
        )
        got = table1_row(agg)
        assert got.pct_with_ack == pytest.approx(pct_ack, abs=0.051)
        assert got.pct_of_ack == pytest.approx(pct_of_ack, abs=0.051)
        assert got.pct_of_total == pytest.approx(pct_total, abs=0.051)

    def test_no_acknowledgements(self):
        agg = DisciplineAggregate("X", n_papers=100, n_with_ack=0, n_with_acknowledgee=0)
        row = table1_row(agg)
        assert row.pct_with_ack == 0.0
        assert row.pct_of_ack is None
        assert row.pct_of_total == 0.0

    def test_zero_papers_percentages_absent(self):
        row = table1_row(DisciplineAggregate("X"))
        assert row.pct_with_ack is None
        assert row.pct_of_ack is None
        assert row.pct_of_total is None

    @given(
        n=st.integers(min_value=1, max_value=10_000),
        ack_share=st.floats(min_value=0, max_value=1),
        ackee_share=st.floats(min_value=0, max_value=1),
    )
    def test_percentage_arithmetic_consistent(self, n, ack_share, ackee_share):
        n_ack = round(n * ack_share)
        n_ackee = round(n_ack * ackee_share)
        agg = DisciplineAggregate(
            "X", n_papers=n, n_with_ack=n_ack, n_with_acknowledgee=n_ackee
        )
        row = table1_row(agg)
        if row.pct_of_ack is not None:
            # pct_of_total == pct_of_ack * (n_ack / n) within rounding slack
            derived = row.pct_of_ack * n_ack / n
            assert abs(row.pct_of_total - derived) <= 0.11


class TestDistributions:
    def test_cumulative_hand_count(self):
        agg = build_agg([(1, 0), (2, 0), (2, 0), (5, 0)])
        assert cumulative_author_distribution(agg) == [
            (1, 25.0),
            (2, 75.0),
            (5, 100.0),
        ]

    def test_cumulative_singleton(self):
        agg = build_agg([(4, 1)])
        assert cumulative_author_distribution(agg) == [(4, 100.0)]

    def test_cumulative_single_author_share(self):
        # a Social-Sciences-like mix: 30% single-authored papers
        pairs = [(1, 1)] * 3 + [(2, 0)] * 4 + [(3, 2)] * 3
        agg = build_agg(pairs)
        cdf = dict(cumulative_author_distribution(agg))
        assert cdf[1] > 25.0

    @given(data=summaries_strategy)
    def test_cumulative_monotone_ending_at_100(self, data):
        agg = DisciplineAggregate("Biology")
        for s in data:
            fold(agg, s)
        cdf = cumulative_author_distribution(agg)
        if not cdf:
            assert agg.n_with_ack == 0
            return
        percentages = [pct for _, pct in cdf]
        assert all(a <= b for a, b in zip(percentages, percentages[1:]))
        assert percentages[-1] == pytest.approx(100.0)

    def test_count_tallies(self):
        agg = build_agg([(2, 0), (3, 0), (4, 1)])
        authors, acks = count_distributions(agg)
        assert acks == {0: 2, 1: 1}
        assert authors == {2: 1, 3: 1, 4: 1}

    @given(data=summaries_strategy)
    def test_histograms_conserve_paper_count(self, data):
        agg = DisciplineAggregate("Biology")
        for s in data:
            fold(agg, s)
        authors, acks = count_distributions(agg)
        assert sum(authors.values()) == agg.n_with_ack
        assert sum(acks.values()) == agg.n_with_ack

    def test_median_acks_zero_when_zero_majority(self):
        agg = build_agg([(2, 0), (2, 0), (2, 0), (2, 4), (2, 5)])
        _, acks = count_distributions(agg)
        assert acks[0] > agg.n_with_ack / 2  # median of the ack counts is zero


class TestMeans:
    def test_constant_distribution_exact(self):
        agg = build_agg([(4, 2)] * 10)
        m = mean_counts(agg)
        assert (m.mean_authors, m.mean_acknowledgees) == (4.0, 2.0)
        assert m.mean_contributors == 6.0

    def test_physics_like_means(self):
        # mean authors 10.7 and mean acknowledgees 1.0 -> contributors 11.7
        pairs = [(10, 1)] * 3 + [(11, 1)] * 7
        agg = build_agg(pairs)
        m = mean_counts(agg)
        assert m.mean_authors == pytest.approx(10.7)
        assert m.mean_acknowledgees == pytest.approx(1.0)
        assert m.mean_contributors == pytest.approx(11.7)

    def test_social_sciences_like_ack_excess(self):
        # mean acknowledgees 2.8 exceeds mean authors 2.7
        pairs = [(2, 2)] * 3 + [(3, 4)] * 5 + [(3, 1)] * 2
        agg = build_agg(pairs)
        m = mean_counts(agg)
        assert m.mean_authors == pytest.approx(2.7)
        assert m.mean_acknowledgees == pytest.approx(2.8)
        assert m.mean_acknowledgees > m.mean_authors

    def test_ranges(self):
        agg = build_agg([(1, 0), (7, 3), (4, 9)])
        m = mean_counts(agg)
        assert m.author_range == (1, 7)
        assert m.ack_range == (0, 9)

    def test_empty_aggregate_absent(self):
        assert mean_counts(DisciplineAggregate("X")) is None
        assert mean_counts(build_agg([], extra_no_text=5)) is None

    @given(data=summaries_strategy)
    def test_contributor_mean_is_exact_sum(self, data):
        agg = DisciplineAggregate("Biology")
        for s in data:
            fold(agg, s)
        m = mean_counts(agg)
        if m is not None:
            assert m.mean_contributors == m.mean_authors + m.mean_acknowledgees


class TestMeanAcksByAuthorCount:
    def test_hand_computed(self):
        agg = build_agg([(1, 3), (1, 1), (2, 1)])
        assert mean_acks_by_author_count(agg) == {1: 2.0, 2: 1.0}

    def test_missing_author_counts_absent(self):
        agg = build_agg([(1, 3), (5, 1)])
        table = mean_acks_by_author_count(agg, k_max=9)
        assert set(table) == {1, 5}

    def test_k_max_caps_table(self):
        agg = build_agg([(k, 1) for k in range(1, 15)])
        assert set(mean_acks_by_author_count(agg, k_max=9)) == set(range(1, 10))

    def test_decreasing_fixture_reports_decreasing(self):
        # Biology-like: conditional means planted strictly decreasing in k
        pairs = []
        for k in range(1, 6):
            pairs.extend([(k, 6 - k)] * 4)
        table = mean_acks_by_author_count(build_agg(pairs), k_max=5)
        values = [table[k] for k in sorted(table)]
        assert values == sorted(values, reverse=True)
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_k_max_validation(self):
        with pytest.raises(ValueError):
            mean_acks_by_author_count(build_agg([(1, 1)]), k_max=0)


class TestDispersion:
    def test_paper_author_triple(self):
        means = [4.98 + 2.15] * 6 + [4.98 - 2.15] * 6
        stats = cross_discipline_dispersion(means)
        assert stats.m == pytest.approx(4.98)
        assert stats.sd == pytest.approx(2.15)
        assert stats.rsd == 43

    def test_paper_contributor_triple(self):
        means = [6.68 + 2.08] * 6 + [6.68 - 2.08] * 6
        stats = cross_discipline_dispersion(means)
        assert stats.rsd == 31

    def test_hand_computed_population_sd(self):
        stats = cross_discipline_dispersion([2, 4, 6])
        assert stats.m == pytest.approx(4.0)
        assert stats.sd == pytest.approx(1.633, abs=5e-4)
        assert stats.rsd == 41

    def test_zero_mean_rsd_absent(self):
        assert cross_discipline_dispersion([0.0, 0.0]).rsd is None

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            cross_discipline_dispersion([])

    @given(
        means=st.lists(
            st.floats(min_value=0.1, max_value=50), min_size=1, max_size=12
        )
    )
    def test_matches_direct_formula(self, means):
        stats = cross_discipline_dispersion(means)
        m = sum(means) / len(means)
        var = sum((x - m) ** 2 for x in means) / len(means)
        assert stats.m == pytest.approx(m)
        assert stats.sd == pytest.approx(math.sqrt(var))


class TestSingleAuthorShare:
    def test_forty_percent(self):
        pairs = [(1, 1)] * 4 + [(1, 0)] * 6
        agg = build_agg(pairs)
        assert single_author_ack_share([agg]) == pytest.approx(40.0)

    def test_none_with_acknowledgees(self):
        agg = build_agg([(1, 0)] * 5)
        assert single_author_ack_share([agg]) == 0.0

    def test_all_with_acknowledgees(self):
        agg = build_agg([(1, 2)] * 5)
        assert single_author_ack_share([agg]) == 100.0

    def test_no_single_author_papers_absent(self):
        agg = build_agg([(2, 1)] * 5)
        assert single_author_ack_share([agg]) is None

    def test_pools_across_disciplines(self):
        a = build_agg([(1, 1)] * 2 + [(1, 0)] * 3, discipline="Biology")
        b = build_agg([(1, 1)] * 2 + [(1, 0)] * 3, discipline="Physics")
        assert single_author_ack_share([a, b]) == pytest.approx(40.0)


class TestCombineAll:
    def test_total_pools_counts(self):
        a = build_agg([(2, 1), (3, 0)], discipline="Biology", extra_no_text=1)
        b = build_agg([(1, 2)], discipline="Physics")
        total = combine_all([a, b])
        assert total.discipline == "Total"
        assert total.n_papers == 4
        assert total.n_with_ack == 3
        assert total.n_with_acknowledgee == 2


class TestRounding:
    @pytest.mark.parametrize(
        "value,expected",
        [(79.049, 79.0), (79.05, 79.1), (0.0, 0.0), (100.0, 100.0), (57.0926, 57.1)],
    )
    def test_half_away_from_zero(self, value, expected):
        assert round1(value) == expected
