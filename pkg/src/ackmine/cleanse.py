"""The cleaning cascade: from raw candidates to a paper's acknowledgee set.

Stages run in fixed order per candidate: (1) completeness, (2) surname in
the benchmark lexicon, (3) full name not blacklisted, (4) no linkage-key
match with a byline author, (5) not a duplicate of an already-accepted
acknowledgee of the same paper. Every candidate receives exactly one verdict,
so the audit trail is complete by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable, Iterator

from .ingest import Blacklist, SurnameSet
from .model import (
    LinkageKey,
    NormalizedName,
    Record,
    RejectionReason,
    author_key,
    linkage_key,
    normalize_name,
)
from .ner import NameCandidate

ACCEPTED = "accepted"


@dataclass(frozen=True)
class CleaningOutcome:
    """Per-candidate audit entry. reason is None exactly when accepted;
    normalized is None exactly when the candidate was incomplete."""

    candidate: NameCandidate
    normalized: NormalizedName | None
    reason: RejectionReason | None

    @property
    def accepted(self) -> bool:
        return self.reason is None

    @property
    def verdict(self) -> str:
        return ACCEPTED if self.reason is None else self.reason.value


@dataclass(frozen=True)
class AcknowledgeeSet:
    """Accepted acknowledgees of one record, keyed by LinkageKey.

    No two members share a key, and no key collides with a byline author's.
    """

    record_id: str
    members: tuple[tuple[LinkageKey, NormalizedName], ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[NormalizedName]:
        return (name for _, name in self.members)

    def keys(self) -> frozenset[LinkageKey]:
        return frozenset(key for key, _ in self.members)


def byline_keys(record: Record) -> frozenset[LinkageKey]:
    """Linkage keys of all byline authors that have a usable given token."""
    keys = set()
    for author in record.authors:
        key = author_key(author.given, author.surname)
        if key is not None:
            keys.add(key)
    return frozenset(keys)


def clean_record(
    record: Record,
    candidates: Iterable[NameCandidate],
    lexicon: SurnameSet,
    blacklist: Blacklist,
) -> tuple[AcknowledgeeSet, list[CleaningOutcome]]:
    """Run the cascade over the candidates of one record.

    Returns the accepted set plus one outcome per input candidate, in input
    order. Pure: records can be cleaned independently in parallel.
    """
    authors = byline_keys(record)
    accepted: dict[LinkageKey, NormalizedName] = {}
    outcomes = []
    for candidate in candidates:
        name = normalize_name(candidate.surface)
        if name is None:
            outcomes.append(CleaningOutcome(candidate, None, RejectionReason.INCOMPLETE))
            continue
        reason = None
        if not lexicon.contains_folded("".join(name.surname)):
            reason = RejectionReason.NOT_IN_BENCHMARK
        elif blacklist.contains(name):
            reason = RejectionReason.BLACKLISTED
        else:
            key = linkage_key(name)
            if key in authors:
                reason = RejectionReason.SELF_AUTHOR
            elif key in accepted:
                reason = RejectionReason.DUPLICATE_IN_PAPER
            else:
                accepted[key] = name
        outcomes.append(CleaningOutcome(candidate, name, reason))
    return AcknowledgeeSet(record.id, tuple(accepted.items())), outcomes


def count_acknowledgees(acks: AcknowledgeeSet) -> int:
    """Cardinality of the accepted set (the per-paper acknowledgee count)."""
    return len(acks.members)


def audit_rows(record_id: str, outcomes: Iterable[CleaningOutcome]) -> list[tuple[str, str, str, str]]:
    """Audit trail rows (record id, surface, verdict, stage) for export."""
    return [
        (
            record_id,
            outcome.candidate.surface,
            outcome.verdict,
            "" if outcome.reason is None else str(outcome.reason.stage),
        )
        for outcome in outcomes
    ]
