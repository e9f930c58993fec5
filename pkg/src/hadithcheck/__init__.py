"""hadithcheck: verify highlighted web text against a graded six-book hadith corpus."""

from .analytics import (
    QueryLog,
    QueryLogEntry,
    SiteReputation,
    TrendEntry,
    dhaeef_sources,
    domain_of,
    read_log,
    site_ranking,
    trend_report,
)
from .corpus import (
    BookId,
    Corpus,
    CorpusError,
    CorpusParseError,
    CorpusValidationError,
    Grade,
    HadithRecord,
    load_corpus,
)
from .match import (
    EmptyQueryError,
    InvertedIndex,
    MatchResult,
    SearchParams,
    build_index,
    containment,
    score,
    search,
    trigram_jaccard,
)
from .server import ServerConfig, create_app
from .textnorm import normalize, tokenize, trigrams
from .verdict import Status, Verdict, consolidate, verify

__version__ = "0.1.0"

__all__ = [
    "BookId",
    "Corpus",
    "CorpusError",
    "CorpusParseError",
    "CorpusValidationError",
    "EmptyQueryError",
    "Grade",
    "HadithRecord",
    "InvertedIndex",
    "MatchResult",
    "QueryLog",
    "QueryLogEntry",
    "SearchParams",
    "ServerConfig",
    "SiteReputation",
    "Status",
    "TrendEntry",
    "Verdict",
    "build_index",
    "consolidate",
    "containment",
    "create_app",
    "dhaeef_sources",
    "domain_of",
    "load_corpus",
    "normalize",
    "read_log",
    "score",
    "search",
    "site_ranking",
    "tokenize",
    "trend_report",
    "trigram_jaccard",
    "trigrams",
    "verify",
]
