"""Parsing of corpus, lexicon, blacklist and discipline-map files.

The corpus is UTF-8 JSON lines, one record per line; lexicon and blacklist
are plain one-entry-per-line text. Parsing is streaming: one record never
requires another, and memory stays bounded by a single line.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO

from .model import (
    AuthorName,
    DocType,
    NormalizedName,
    Record,
    fold_surname,
    normalize_name,
)

log = logging.getLogger(__name__)


class MalformedLine(Exception):
    """A corpus line that cannot be turned into a valid Record."""

    def __init__(self, line_no: int, cause: str):
        super().__init__(f"line {line_no}: {cause}")
        self.line_no = line_no
        self.cause = cause

    def __reduce__(self):
        # two-argument constructor; default exception pickling would lose it
        return (MalformedLine, (self.line_no, self.cause))


@dataclass(frozen=True)
class SurnameSet:
    """Person-name benchmark lexicon; members are pre-folded surnames."""

    members: frozenset[str]

    @property
    def count(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, surname: str) -> bool:
        return fold_surname(surname) in self.members

    def contains_folded(self, folded: str) -> bool:
        """Membership for an already-folded joined surname (hot path)."""
        return folded in self.members


@dataclass(frozen=True)
class Blacklist:
    """Known non-person full names, stored as canonical renderings."""

    members: frozenset[str]

    def __len__(self) -> int:
        return len(self.members)

    def contains(self, name: NormalizedName) -> bool:
        return name.canonical() in self.members


def _iter_lines(source: str | Path | IO | Iterable[str]) -> Iterator[str]:
    """Yield text lines from a path, an open file (text or binary), or any
    iterable of lines."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            yield from handle
        return
    if isinstance(source, io.BufferedIOBase) or (
        hasattr(source, "read") and isinstance(getattr(source, "mode", ""), str) and "b" in getattr(source, "mode", "")
    ):
        yield from io.TextIOWrapper(source, encoding="utf-8")
        return
    for line in source:
        yield line.decode("utf-8") if isinstance(line, bytes) else line


def load_surname_set(source: str | Path | IO | Iterable[str]) -> SurnameSet:
    """Load a one-surname-per-line lexicon; '#' starts a comment. Entries are
    folded, so variants differing only by case/diacritics collapse."""
    members = set()
    for line in _iter_lines(source):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        folded = fold_surname(text)
        if folded:
            members.add(folded)
    return SurnameSet(frozenset(members))


def load_blacklist(
    source: str | Path | IO | Iterable[str],
    on_invalid: Callable[[int, str], None] | None = None,
) -> Blacklist:
    """Load a one-full-name-per-line blacklist. Lines that do not normalize
    to a complete name are reported (callback or log) and skipped."""
    members = set()
    for line_no, line in enumerate(_iter_lines(source), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        name = normalize_name(text)
        if name is None:
            if on_invalid is not None:
                on_invalid(line_no, text)
            else:
                log.warning("blacklist line %d not a complete name: %r", line_no, text)
            continue
        members.add(name.canonical())
    return Blacklist(frozenset(members))


def default_blacklist() -> Blacklist:
    """The blacklist file shipped with the package."""
    with resources.files("ackmine").joinpath("data/blacklist.txt").open(
        encoding="utf-8"
    ) as handle:
        return load_blacklist(handle)


def load_discipline_map(source: str | Path | IO | Iterable[str]) -> dict[str, str]:
    """Load a journal,discipline two-column table into a dict."""
    mapping: dict[str, str] = {}
    for line_no, line in enumerate(_iter_lines(source), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = next(csv.reader([line]))
        if len(row) != 2 or not row[0].strip() or not row[1].strip():
            raise ValueError(f"discipline map line {line_no}: expected 'journal,discipline'")
        journal, discipline = row[0].strip(), row[1].strip()
        if mapping.get(journal, discipline) != discipline:
            raise ValueError(f"discipline map line {line_no}: conflicting entry for {journal!r}")
        mapping[journal] = discipline
    return mapping


def record_from_obj(
    obj: object, line_no: int = 0, discipline_map: dict[str, str] | None = None
) -> Record:
    """Validate one decoded corpus object into a Record."""

    def bad(cause: str) -> MalformedLine:
        return MalformedLine(line_no, cause)

    if not isinstance(obj, dict):
        raise bad("record must be an object")
    rid = obj.get("id")
    if not isinstance(rid, str) or not rid:
        raise bad("missing or empty 'id'")
    year = obj.get("year")
    if not isinstance(year, int) or isinstance(year, bool):
        raise bad("'year' must be an integer")
    raw_doc_type = obj.get("doc_type")
    try:
        doc_type = DocType(raw_doc_type)
    except ValueError:
        raise bad(f"'doc_type' must be 'article' or 'review', got {raw_doc_type!r}") from None

    if discipline_map is None:
        discipline = obj.get("discipline")
        if not isinstance(discipline, str) or not discipline:
            raise bad("missing 'discipline' (no discipline map in use)")
    else:
        if obj.get("discipline") is not None:
            raise bad("record carries 'discipline' while a discipline map is in use")
        journal = obj.get("journal")
        if not isinstance(journal, str) or not journal:
            raise bad("missing 'journal' (required with a discipline map)")
        try:
            discipline = discipline_map[journal]
        except KeyError:
            raise bad(f"journal {journal!r} not in discipline map") from None

    raw_authors = obj.get("authors")
    if not isinstance(raw_authors, list) or not raw_authors:
        raise bad("'authors' must be a non-empty array")
    authors = []
    for i, a in enumerate(raw_authors):
        if not isinstance(a, dict):
            raise bad(f"author {i} must be an object")
        given, surname = a.get("given", ""), a.get("surname")
        if not isinstance(given, str):
            raise bad(f"author {i}: 'given' must be a string")
        if not isinstance(surname, str) or not surname.strip():
            raise bad(f"author {i}: 'surname' must be a non-empty string")
        authors.append(AuthorName(given, surname))

    ack_text = obj.get("ack_text")
    if ack_text is not None and not isinstance(ack_text, str):
        raise bad("'ack_text' must be a string or null")

    try:
        return Record(
            id=rid,
            year=year,
            discipline=discipline,
            doc_type=doc_type,
            authors=tuple(authors),
            ack_text=ack_text,
        )
    except ValueError as exc:
        raise bad(str(exc)) from None


def record_from_json(
    line: str, line_no: int = 0, discipline_map: dict[str, str] | None = None
) -> Record:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedLine(line_no, f"invalid JSON: {exc.msg}") from None
    return record_from_obj(obj, line_no, discipline_map)


def record_to_json(record: Record) -> str:
    """Serialize a Record to one corpus line (no trailing newline)."""
    return json.dumps(
        {
            "id": record.id,
            "year": record.year,
            "discipline": record.discipline,
            "doc_type": record.doc_type.value,
            "authors": [{"given": a.given, "surname": a.surname} for a in record.authors],
            "ack_text": record.ack_text,
        },
        ensure_ascii=False,
    )


def parse_corpus(
    source: str | Path | IO | Iterable[str],
    strict: bool = True,
    discipline_map: dict[str, str] | None = None,
    on_malformed: Callable[[MalformedLine], None] | None = None,
) -> Iterator[Record]:
    """Yield Records in file order. Malformed lines raise MalformedLine under
    strict mode (the default); otherwise they are reported to `on_malformed`
    (or logged) and skipped. Blank lines are ignored."""
    for line_no, line in enumerate(_iter_lines(source), start=1):
        if not line.strip():
            continue
        try:
            yield record_from_json(line, line_no, discipline_map)
        except MalformedLine as exc:
            if strict:
                raise
            if on_malformed is not None:
                on_malformed(exc)
            else:
                log.warning("skipping malformed corpus line: %s", exc)
