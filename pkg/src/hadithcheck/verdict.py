"""Consolidate ranked matches into the user-facing verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .corpus import BookId, Corpus, Grade
from .match import InvertedIndex, MatchResult, SearchParams, search
from .textnorm import normalize


class Status(enum.Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"


@dataclass(frozen=True)
class Verdict:
    """The consolidated answer for one query.

    ``matches`` holds only results at or above the found threshold, in the
    engine's ranked order; ``best_grade`` is present exactly when FOUND.
    """

    status: Status
    query_norm: str
    matches: tuple[MatchResult, ...]
    best_grade: Grade | None

    @property
    def per_book(self) -> list[tuple[BookId, Grade, float]]:
        """(book, grade, score) for every retained match, in display order."""
        return [(m.book, m.grade, m.score) for m in self.matches]


def consolidate(
    results: Sequence[MatchResult], theta: float, query_norm: str = ""
) -> Verdict:
    """Filter to score >= theta and pick the most authentic grade as headline.

    Conflicting per-book grades are all kept; nothing is averaged away.
    NotFound is a value, not an error.
    """
    kept = tuple(r for r in results if r.score >= theta)
    if not kept:
        return Verdict(Status.NOT_FOUND, query_norm, (), None)
    best = max(m.grade for m in kept)
    return Verdict(Status.FOUND, query_norm, kept, best)


def verify(
    index: InvertedIndex,
    corpus: Corpus,
    query: str,
    params: SearchParams | None = None,
) -> Verdict:
    """Search then consolidate: the whole verification pipeline for one query."""
    if params is None:
        params = SearchParams()
    results = search(index, corpus, query, params)
    return consolidate(results, params.theta, query_norm=normalize(query))
