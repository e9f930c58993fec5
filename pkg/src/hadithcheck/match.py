"""Inverted-index candidate generation and deterministic match scoring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .corpus import BookId, Corpus, Grade, HadithRecord
from .textnorm import normalize, tokenize, trigrams

# Blend weights: token containment dominates so that pure-fragment highlights
# always clear the found threshold; trigram overlap adds fuzzy tolerance.
TOKEN_WEIGHT = 0.7
TRIGRAM_WEIGHT = 0.3

DEFAULT_K = 5
DEFAULT_THETA = 0.6


class EmptyQueryError(ValueError):
    """The query text normalized to nothing matchable."""


@dataclass(frozen=True)
class SearchParams:
    """Result-list size and the found threshold used downstream."""

    k: int = DEFAULT_K
    theta: float = DEFAULT_THETA

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must be within [0, 1]")


@dataclass(frozen=True)
class MatchResult:
    """One scored corpus hit."""

    hadith_id: str
    book: BookId
    number_in_book: int
    grade: Grade
    score: float


class InvertedIndex:
    """Token postings over one corpus, plus cached per-record match sets.

    Immutable after build; concurrent searches are safe.
    """

    def __init__(
        self,
        postings: dict[str, list[str]],
        token_sets: dict[str, frozenset[str]],
        trigram_sets: dict[str, frozenset[str]],
    ):
        self.postings = postings
        self.token_sets = token_sets
        self.trigram_sets = trigram_sets


def build_index(corpus: Corpus) -> InvertedIndex:
    """Build token -> id postings, each list in canonical (book, number) order."""
    postings: dict[str, list[str]] = {}
    token_sets: dict[str, frozenset[str]] = {}
    trigram_sets: dict[str, frozenset[str]] = {}
    for record in sorted(corpus, key=HadithRecord.sort_key):
        tokens = frozenset(tokenize(record.matn_norm))
        token_sets[record.id] = tokens
        trigram_sets[record.id] = frozenset(trigrams(record.matn_norm))
        for token in tokens:
            postings.setdefault(token, []).append(record.id)
    return InvertedIndex(postings, token_sets, trigram_sets)


def containment(query_tokens: Iterable[str], matn_tokens: Iterable[str]) -> float:
    """Fraction of distinct query tokens present in the matn token set."""
    query_set = frozenset(query_tokens)
    if not query_set:
        raise EmptyQueryError("query token set is empty")
    return len(query_set & frozenset(matn_tokens)) / len(query_set)


def trigram_jaccard(a: Iterable[str], b: Iterable[str]) -> float:
    """Jaccard overlap of two trigram sets; 0.0 when both are empty."""
    set_a, set_b = frozenset(a), frozenset(b)
    if not set_a and not set_b:
        return 0.0
    return len(set_a & set_b) / len(set_a | set_b)


def score(
    query: str,
    record: HadithRecord,
    token_weight: float = TOKEN_WEIGHT,
    trigram_weight: float = TRIGRAM_WEIGHT,
) -> float:
    """Blend of token containment and trigram overlap, in [0, 1].

    ``query`` must already be normalized and non-empty.
    """
    c = containment(tokenize(query), tokenize(record.matn_norm))
    j = trigram_jaccard(trigrams(query), trigrams(record.matn_norm))
    return token_weight * c + trigram_weight * j


def search(
    index: InvertedIndex,
    corpus: Corpus,
    query: str,
    params: SearchParams | None = None,
) -> list[MatchResult]:
    """Top-k matches for a raw query, deterministically ordered.

    Candidates are records sharing at least one token with the normalized
    query; each is scored and the list is sorted by score descending, then
    canonical book order, then number in book. Equivalent to a linear scan
    restricted to records with token overlap.
    """
    if params is None:
        params = SearchParams()
    query_norm = normalize(query)
    query_tokens = frozenset(tokenize(query_norm))
    if not query_tokens:
        raise EmptyQueryError("query normalizes to empty")
    query_grams = frozenset(trigrams(query_norm))

    candidate_ids: set[str] = set()
    for token in query_tokens:
        candidate_ids.update(index.postings.get(token, ()))

    scored: list[tuple[float, HadithRecord]] = []
    for hadith_id in candidate_ids:
        record = corpus.by_id[hadith_id]
        c = len(query_tokens & index.token_sets[hadith_id]) / len(query_tokens)
        j = trigram_jaccard(query_grams, index.trigram_sets[hadith_id])
        scored.append((TOKEN_WEIGHT * c + TRIGRAM_WEIGHT * j, record))

    scored.sort(key=lambda pair: (-pair[0], pair[1].book.order, pair[1].number_in_book))
    return [
        MatchResult(
            hadith_id=record.id,
            book=record.book,
            number_in_book=record.number_in_book,
            grade=record.grade,
            score=value,
        )
        for value, record in scored[: params.k]
    ]
