"""Rule-based extraction of person-name candidate spans from acknowledgement text.

The grammar is deliberately simple and deterministic: a candidate is a maximal
run of name-like tokens (capitalized words of two or more letters, or initials
like "J." / "J") separated only by whitespace. Lowercase surname particles
("van", "de", "la", ...) may appear between name-like tokens and stay inside
the span, so "Instituto de Salud Carlos III" and "Maria van der Berg" are
single candidates. Honorifics are skipped, common capitalized function words
never join a candidate, and anything else (lowercase words, digits,
punctuation) breaks the run. Over-generation (acronyms, org names) is
intentional; the cleaning cascade absorbs it.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import IO

from .model import SURNAME_PARTICLES

RECOGNIZER_INFO = "rule-ner v1"

HONORIFICS = frozenset({"Dr", "Prof", "Mr", "Ms", "Mrs"})

# Capitalized words that never form part of a name; mostly sentence-initial
# function words plus a few acknowledgement-prose staples.
STOPWORDS = frozenset(
    """
    A Acknowledgements Acknowledgments Additional All Also An And Are As At
    Author Authors Be Been Both But By Data Drs During Each Finally Financial
    For From Funding Furthermore Grateful He Her Here His However I If In Is
    It Its Many More Moreover Most Much My No Nor Not Of On One Or Our
    Partial Research She Since So Some Special Study Such Support Supported
    Thank Thanks That The Their Them Then There These They This Those Three
    To Two Under Upon Was We Were When Where Which While Who Will With
    Without Work Would
    """.split()
)

_TOKEN_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*\.?")


@dataclass(frozen=True)
class NameCandidate:
    """A candidate span; `surface` always equals text[span[0]:span[1]]."""

    surface: str
    span: tuple[int, int]
    tokens: tuple[str, ...]


def recognizer_info() -> str:
    """Name/version of the recognizer, recorded in run manifests."""
    return RECOGNIZER_INFO


def load_token_list(source: str | Path | IO | Iterable[str]) -> frozenset[str]:
    """Load a one-token-per-line override file for honorifics or stopwords."""
    from .ingest import _iter_lines

    tokens = set()
    for line in _iter_lines(source):
        text = line.split("#", 1)[0].strip()
        if text:
            tokens.add(text)
    return frozenset(tokens)


def extract_candidates(
    text: str,
    honorifics: frozenset[str] = HONORIFICS,
    stopwords: frozenset[str] = STOPWORDS,
    particles: frozenset[str] = SURNAME_PARTICLES,
) -> list[NameCandidate]:
    """Scan text left to right and return candidate spans in order of
    appearance, duplicates preserved. Spans are code-point offsets into text;
    a candidate's `tokens` include any interior particles."""
    candidates: list[NameCandidate] = []
    tokens: list[str] = []
    span_start = 0
    span_end = 0
    pending: list[str] = []  # particles seen after span_end, not yet committed
    pending_end = 0

    def flush() -> None:
        if tokens:
            candidates.append(
                NameCandidate(text[span_start:span_end], (span_start, span_end), tuple(tokens))
            )
            tokens.clear()
        pending.clear()

    for match in _TOKEN_RE.finditer(text):
        group = match.group()
        dotted = group.endswith(".")
        word = group[:-1] if dotted else group
        start = match.start()

        gap = text[pending_end if pending else span_end : start]
        if tokens and gap and not gap.isspace():
            flush()

        if tokens and not dotted and word in particles:
            pending.append(word)
            pending_end = start + len(word)
            continue

        initial = len(word) == 1 and word.isupper()
        capword = not initial and len(word) >= 2 and word[0].isupper()
        if not (initial or capword) or word in honorifics or (not dotted and word in stopwords):
            flush()
            continue

        if not tokens:
            span_start = start
        else:
            tokens.extend(pending)
        pending.clear()
        span_end = match.end() if (dotted and initial) else start + len(word)
        tokens.append(word)

    flush()
    return candidates
