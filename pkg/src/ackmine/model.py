"""Domain types shared by the whole pipeline, plus person-name normalization.

Every stage trades in the types below: corpus records with their byline
authors, normalized person names, and the (first initial, surname) linkage
key used both to match acknowledged names against the byline and to
deduplicate acknowledgees within a paper.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache

# Tokens attached to the surname when splitting "given ... surname" strings.
# Extensible via the `particles` argument of normalize_name.
SURNAME_PARTICLES = frozenset({"van", "de", "der", "da", "del", "von", "la"})

_SEPARATOR_RE = re.compile(r"[^\w.'’-]+")


class DocType(enum.Enum):
    ARTICLE = "article"
    REVIEW = "review"


class RejectionReason(enum.Enum):
    """Why a candidate was dropped; one reason per cleaning stage."""

    INCOMPLETE = "incomplete"
    NOT_IN_BENCHMARK = "not_in_benchmark"
    BLACKLISTED = "blacklisted"
    SELF_AUTHOR = "self_author"
    DUPLICATE_IN_PAPER = "duplicate_in_paper"

    @property
    def stage(self) -> int:
        """1-based index of the cleaning stage that issues this verdict."""
        return _STAGE_OF_REASON[self]


_STAGE_OF_REASON = {
    RejectionReason.INCOMPLETE: 1,
    RejectionReason.NOT_IN_BENCHMARK: 2,
    RejectionReason.BLACKLISTED: 3,
    RejectionReason.SELF_AUTHOR: 4,
    RejectionReason.DUPLICATE_IN_PAPER: 5,
}


@dataclass(frozen=True)
class AuthorName:
    """One byline author as printed: given name(s) or initials, and surname."""

    given: str
    surname: str

    def __post_init__(self) -> None:
        if not self.surname.strip():
            raise ValueError("author surname must be non-empty")


@dataclass(frozen=True)
class Record:
    """One paper. ack_text is None exactly when no acknowledgement is indexed."""

    id: str
    year: int
    discipline: str
    doc_type: DocType
    authors: tuple[AuthorName, ...]
    ack_text: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("record id must be non-empty")
        if not self.authors:
            raise ValueError("record must have at least one author")
        if self.ack_text is not None and not self.ack_text.strip():
            raise ValueError("ack_text must be None or non-blank")


@dataclass(frozen=True)
class GivenToken:
    """A folded given-name token; `initial` marks single-letter tokens."""

    text: str
    initial: bool


@dataclass(frozen=True)
class NormalizedName:
    """Canonical decomposition of a person name into given + surname tokens.

    Tokens are case-folded and diacritic-stripped. `display` keeps the
    original surface string and is excluded from equality, so normalizing
    a name's canonical rendering yields an equal value.
    """

    given: tuple[GivenToken, ...]
    surname: tuple[str, ...]
    display: str = field(compare=False)

    def canonical(self) -> str:
        """Space-joined folded tokens, e.g. 'j r smith' or 'marie curie'."""
        return " ".join([t.text for t in self.given] + list(self.surname))


@dataclass(frozen=True)
class LinkageKey:
    """(first initial, joined surname) pair used for matching and dedup."""

    first_initial: str
    surname: str


def fold_text(text: str) -> str:
    """Case-fold and strip diacritics (compatibility decomposition)."""
    decomposed = unicodedata.normalize("NFKD", text)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return stripped.casefold()


def _name_tokens(raw: str) -> list[tuple[str, bool, bool]]:
    """Split a surface string into folded (text, is_single_letter, dot_marked)
    tokens. Hyphens and apostrophes are removed inside a token; periods split
    tokens and mark the piece before them (the initial form "J.")."""
    tokens: list[tuple[str, bool, bool]] = []
    for chunk in _SEPARATOR_RE.split(fold_text(raw)):
        if not chunk:
            continue
        pieces = chunk.split(".")
        last = len(pieces) - 1
        for i, piece in enumerate(pieces):
            text = "".join(c for c in piece if c.isalpha())
            if text:
                tokens.append((text, len(text) == 1, i < last))
    return tokens


def normalize_name(
    raw: str, particles: frozenset[str] = SURNAME_PARTICLES
) -> NormalizedName | None:
    """Decompose a candidate person name, or return None when incomplete.

    A name is complete when it has at least one given token and a surname:
    surname-only strings ("Smith"), initials-only strings ("J. R.") and
    strings ending in a dotted initial ("John Q.") all yield None. The final
    token starts the surname; immediately preceding particles ("van", "de",
    ...) are absorbed into it. A bare single-letter final token is accepted
    as a surname ("Xiao E").
    """
    tokens = _name_tokens(raw)
    if not tokens:
        return None
    if all(single for _, single, _ in tokens):
        return None
    _, last_single, last_dotted = tokens[-1]
    if last_single and last_dotted:
        return None
    split = len(tokens) - 1
    while split > 0 and tokens[split - 1][0] in particles:
        split -= 1
    if split == 0:
        return None
    return NormalizedName(
        given=tuple(GivenToken(text, single) for text, single, _ in tokens[:split]),
        surname=tuple(text for text, _, _ in tokens[split:]),
        display=" ".join(raw.split()),
    )


def linkage_key(name: NormalizedName) -> LinkageKey:
    """First character of the first given token plus the joined surname."""
    return LinkageKey(name.given[0].text[0], "".join(name.surname))


def fold_surname(raw: str) -> str:
    """Fold a bare surname string to its joined-token form ("van Berg" -> "vanberg")."""
    return "".join(text for text, _, _ in _name_tokens(raw))


def normalize_author(author: AuthorName) -> NormalizedName | None:
    """Normalize a structured byline name; the whole surname field is kept as
    surname tokens (no particle splitting). None when the given field holds no
    usable token, in which case the author cannot be linkage-matched."""
    given = _name_tokens(author.given)
    surname = _name_tokens(author.surname)
    if not given or not surname:
        return None
    return NormalizedName(
        given=tuple(GivenToken(text, single) for text, single, _ in given),
        surname=tuple(text for text, _, _ in surname),
        display=f"{author.given} {author.surname}".strip(),
    )


@lru_cache(maxsize=1 << 16)
def author_key(given: str, surname: str) -> LinkageKey | None:
    """Cached linkage key for a byline (given, surname) pair; None when the
    given field yields no initial. Bylines repeat heavily across a corpus."""
    given_tokens = _name_tokens(given)
    surname_tokens = _name_tokens(surname)
    if not given_tokens or not surname_tokens:
        return None
    return LinkageKey(
        given_tokens[0][0][0], "".join(text for text, _, _ in surname_tokens)
    )
