"""Graded hadith corpus: record model, JSONL ingestion, validation, lookup."""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator


class BookId(enum.Enum):
    """The six canonical collections, declared in canonical order."""

    BUKHARI = "bukhari"
    MUSLIM = "muslim"
    ABUDAWOD = "abudawod"
    TERMIDHI = "termidhi"
    IBNMAJAH = "ibnmajah"
    NASAI = "nasai"

    @property
    def order(self) -> int:
        """Position in the canonical book order, used for tie-breaking."""
        return _BOOK_ORDER[self]


_BOOK_ORDER = {book: i for i, book in enumerate(BookId)}


@functools.total_ordering
class Grade(enum.Enum):
    """Authenticity grades. Comparison follows authenticity: SAHIH is greatest."""

    SAHIH = "sahih"
    MOOTHAQ = "moothaq"
    HASSAN = "hassan"
    DAEEF = "daeef"

    @property
    def authenticity(self) -> int:
        """Rank on the authenticity order; higher means more authentic."""
        return _GRADE_RANK[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Grade):
            return NotImplemented
        return self.authenticity < other.authenticity


_GRADE_RANK = {Grade.DAEEF: 0, Grade.HASSAN: 1, Grade.MOOTHAQ: 2, Grade.SAHIH: 3}


class CorpusError(Exception):
    """Base for corpus file problems (parse or validation)."""


class CorpusParseError(CorpusError):
    """A line could not be decoded into a record."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class CorpusValidationError(CorpusError):
    """The file parsed but violates a corpus invariant."""


@dataclass(frozen=True)
class HadithRecord:
    """One graded hadith. ``matn_norm`` is derived from ``matn_raw`` at load."""

    id: str
    book: BookId
    number_in_book: int
    matn_raw: str
    matn_norm: str
    isnad_raw: str
    grade: Grade

    def sort_key(self) -> tuple[int, int]:
        """Canonical (book order, number) key."""
        return (self.book.order, self.number_in_book)


@dataclass(frozen=True)
class Corpus:
    """Immutable collection of records with id lookup, in file order."""

    records: tuple[HadithRecord, ...]
    by_id: dict[str, HadithRecord]

    def get(self, hadith_id: str) -> HadithRecord | None:
        """Stored record for a known id, None otherwise."""
        return self.by_id.get(hadith_id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[HadithRecord]:
        return iter(self.records)


_REQUIRED_FIELDS = ("id", "book", "number", "matn", "isnad", "grade")
_BOOK_BY_NAME = {b.value: b for b in BookId}
_GRADE_BY_NAME = {g.value: g for g in Grade}


def _parse_line(line_no: int, text: str) -> HadithRecord:
    from .textnorm import normalize

    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusParseError(line_no, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise CorpusParseError(line_no, "expected a JSON object")
    missing = [f for f in _REQUIRED_FIELDS if f not in obj]
    if missing:
        raise CorpusParseError(line_no, f"missing fields: {', '.join(missing)}")

    rec_id = obj["id"]
    if not isinstance(rec_id, str) or not rec_id:
        raise CorpusParseError(line_no, "'id' must be a non-empty string")
    book_name = obj["book"]
    if book_name not in _BOOK_BY_NAME:
        raise CorpusParseError(
            line_no, f"'book' must be one of {sorted(_BOOK_BY_NAME)}, got {book_name!r}"
        )
    number = obj["number"]
    if isinstance(number, bool) or not isinstance(number, int) or number < 1:
        raise CorpusParseError(line_no, "'number' must be a positive integer")
    matn = obj["matn"]
    if not isinstance(matn, str):
        raise CorpusParseError(line_no, "'matn' must be a string")
    isnad = obj["isnad"]
    if not isinstance(isnad, str):
        raise CorpusParseError(line_no, "'isnad' must be a string (may be empty)")
    grade_name = obj["grade"]
    if grade_name not in _GRADE_BY_NAME:
        raise CorpusParseError(
            line_no, f"'grade' must be one of {sorted(_GRADE_BY_NAME)}, got {grade_name!r}"
        )

    matn_norm = normalize(matn)
    if not matn_norm:
        raise CorpusValidationError(
            f"line {line_no}: matn of record {rec_id!r} normalizes to empty"
        )
    return HadithRecord(
        id=rec_id,
        book=_BOOK_BY_NAME[book_name],
        number_in_book=number,
        matn_raw=matn,
        matn_norm=matn_norm,
        isnad_raw=isnad,
        grade=_GRADE_BY_NAME[grade_name],
    )


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate a line-delimited JSON corpus file.

    Deterministic: the same bytes always produce the same corpus, records in
    file order. Blank lines are skipped. Raises OSError for unreadable files,
    CorpusParseError for malformed lines (named by line number), and
    CorpusValidationError for duplicate keys, empty matn, or an empty file.
    """
    raw = Path(path).read_bytes()
    records: list[HadithRecord] = []
    by_id: dict[str, HadithRecord] = {}
    id_lines: dict[str, int] = {}
    slot_lines: dict[tuple[BookId, int], int] = {}

    for line_no, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            text = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusParseError(line_no, f"invalid UTF-8 ({exc.reason})") from exc
        record = _parse_line(line_no, text)

        dup_line = id_lines.get(record.id)
        if dup_line is not None:
            raise CorpusValidationError(
                f"duplicate id {record.id!r} on lines {dup_line} and {line_no}"
            )
        slot = (record.book, record.number_in_book)
        dup_line = slot_lines.get(slot)
        if dup_line is not None:
            raise CorpusValidationError(
                f"duplicate (book, number) ({record.book.value}, "
                f"{record.number_in_book}) on lines {dup_line} and {line_no}"
            )
        id_lines[record.id] = line_no
        slot_lines[slot] = line_no
        records.append(record)
        by_id[record.id] = record

    if not records:
        raise CorpusValidationError("empty corpus")
    return Corpus(records=tuple(records), by_id=by_id)
