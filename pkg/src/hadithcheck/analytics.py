"""Append-only query log and the reports built on it.

Reports are pure functions of (entries, now, params): trend counts, weak-grade
source detection, and smoothed per-site reputation.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import IO, Iterable, Sequence
from urllib.parse import urlsplit

from .corpus import Grade
from .verdict import Status

_TS_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def now_utc() -> datetime:
    """Current UTC time truncated to whole seconds."""
    return datetime.now(timezone.utc).replace(microsecond=0)


def format_ts(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime(_TS_FORMAT)


def parse_ts(value: str) -> datetime:
    # Python 3.10 fromisoformat does not accept a trailing Z.
    return datetime.fromisoformat(value.replace("Z", "+00:00")).astimezone(timezone.utc)


def domain_of(url: str | None) -> str | None:
    """Site key for a page URL: the lowercased host, port and path stripped.

    None when the URL has no parseable host.
    """
    if not url:
        return None
    try:
        host = urlsplit(url).hostname
    except ValueError:
        return None
    return host or None


class LogParseError(Exception):
    """A log line could not be decoded into an entry."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


@dataclass(frozen=True)
class QueryLogEntry:
    """One verification request and its outcome.

    No client identifiers are stored: only the query, where it was seen, and
    what the engine answered.
    """

    ts: datetime
    query: str
    url: str | None
    domain: str | None
    status: Status
    grade: Grade | None
    hadith_id: str | None

    def __post_init__(self) -> None:
        found = self.status is Status.FOUND
        if (self.grade is not None) != found or (self.hadith_id is not None) != found:
            raise ValueError("grade and hadith_id must be present exactly when found")
        if self.domain is not None and self.url is None:
            raise ValueError("domain requires a url")

    @classmethod
    def create(
        cls,
        ts: datetime,
        query: str,
        url: str | None,
        status: Status,
        grade: Grade | None,
        hadith_id: str | None,
    ) -> "QueryLogEntry":
        """Build an entry, deriving the domain and truncating to seconds."""
        return cls(
            ts=ts.astimezone(timezone.utc).replace(microsecond=0),
            query=query,
            url=url,
            domain=domain_of(url),
            status=status,
            grade=grade,
            hadith_id=hadith_id,
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "ts": format_ts(self.ts),
                "query": self.query,
                "url": self.url,
                "domain": self.domain,
                "status": self.status.value,
                "grade": self.grade.value if self.grade else None,
                "hadith_id": self.hadith_id,
            },
            ensure_ascii=False,
        )


@dataclass(frozen=True)
class TrendEntry:
    """How often one hadith was the top answer inside the report window."""

    hadith_id: str
    query_count: int
    last_seen: datetime


@dataclass(frozen=True)
class SiteReputation:
    """Laplace-smoothed authentic-to-weak ratio for one domain."""

    domain: str
    sahih_count: int
    dhaeef_count: int
    score: float

    @classmethod
    def from_counts(cls, domain: str, sahih: int, dhaeef: int) -> "SiteReputation":
        # +1/+2 smoothing keeps the score strictly inside (0, 1).
        return cls(domain, sahih, dhaeef, (sahih + 1) / (sahih + dhaeef + 2))


class QueryLog:
    """Single-writer append-only JSONL log.

    Appends are serialized through a lock and flushed plus fsynced before
    returning, so every acknowledged entry survives a crash. Readers scan the
    file independently and see a prefix of the log.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._fh: IO[str] = open(self.path, "a", encoding="utf-8")

    def append(self, entry: QueryLogEntry) -> None:
        line = entry.to_json() + "\n"
        with self._lock:
            self._fh.write(line)
            self._fh.flush()
            os.fsync(self._fh.fileno())

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.close()

    def __enter__(self) -> "QueryLog":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


_STATUS_BY_NAME = {s.value: s for s in Status}
_GRADE_BY_NAME = {g.value: g for g in Grade}


def _parse_log_line(line_no: int, text: str) -> QueryLogEntry:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LogParseError(line_no, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise LogParseError(line_no, "expected a JSON object")
    try:
        status = _STATUS_BY_NAME[obj["status"]]
        grade_name = obj["grade"]
        entry = QueryLogEntry(
            ts=parse_ts(obj["ts"]),
            query=obj["query"],
            url=obj["url"],
            domain=obj["domain"],
            status=status,
            grade=_GRADE_BY_NAME[grade_name] if grade_name is not None else None,
            hadith_id=obj["hadith_id"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise LogParseError(line_no, f"bad entry: {exc}") from exc
    return entry


def read_log(path: str | Path) -> list[QueryLogEntry]:
    """Scan a log file into entries, append order preserved.

    Raises OSError for unreadable files and LogParseError for bad lines.
    """
    entries: list[QueryLogEntry] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            entries.append(_parse_log_line(line_no, line))
    return entries


def trend_report(
    entries: Iterable[QueryLogEntry],
    window: timedelta,
    limit: int,
    now: datetime | None = None,
) -> list[TrendEntry]:
    """Count Found answers per hadith inside [now - window, now].

    Sorted by count descending, then last_seen descending, then id ascending.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if now is None:
        now = now_utc()
    cutoff = now - window
    counts: dict[str, int] = {}
    last_seen: dict[str, datetime] = {}
    for entry in entries:
        if entry.status is not Status.FOUND:
            continue
        if entry.ts < cutoff or entry.ts > now:
            continue
        hid = entry.hadith_id
        assert hid is not None  # entry invariant
        counts[hid] = counts.get(hid, 0) + 1
        if hid not in last_seen or entry.ts > last_seen[hid]:
            last_seen[hid] = entry.ts
    trends = [TrendEntry(hid, counts[hid], last_seen[hid]) for hid in counts]
    trends.sort(key=lambda t: (-t.query_count, -t.last_seen.timestamp(), t.hadith_id))
    return trends[:limit]


def dhaeef_sources(
    entries: Iterable[QueryLogEntry], limit: int
) -> list[tuple[str, int]]:
    """Domains ranked by how often they served weak-graded hadith.

    Entries without an attributable domain are excluded. Sorted by count
    descending then domain ascending.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    counts: dict[str, int] = {}
    for entry in entries:
        if entry.status is not Status.FOUND or entry.grade is not Grade.DAEEF:
            continue
        if entry.domain is None:
            continue
        counts[entry.domain] = counts.get(entry.domain, 0) + 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:limit]


def site_ranking(
    entries: Iterable[QueryLogEntry], limit: int
) -> list[SiteReputation]:
    """Per-domain smoothed Sahih:Dhaeef reputation, best first.

    Only Sahih and Dhaeef verdicts count; intermediate grades and NotFound are
    ignored, and domains with no countable entry are omitted entirely.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    sahih: dict[str, int] = {}
    dhaeef: dict[str, int] = {}
    for entry in entries:
        if entry.status is not Status.FOUND or entry.domain is None:
            continue
        if entry.grade is Grade.SAHIH:
            sahih[entry.domain] = sahih.get(entry.domain, 0) + 1
        elif entry.grade is Grade.DAEEF:
            dhaeef[entry.domain] = dhaeef.get(entry.domain, 0) + 1
    domains = set(sahih) | set(dhaeef)
    sites = [
        SiteReputation.from_counts(d, sahih.get(d, 0), dhaeef.get(d, 0))
        for d in domains
    ]
    sites.sort(
        key=lambda s: (-s.score, -(s.sahih_count + s.dhaeef_count), s.domain)
    )
    return sites[:limit]
