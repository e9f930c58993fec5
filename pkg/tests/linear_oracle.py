"""Linear-scan reference search used to cross-check the indexed engine.

Token and trigram overlap are recomputed here from scratch with plain loops;
only the normalizer is shared, since both sides are defined over its output.
"""

from __future__ import annotations

from hadithcheck.textnorm import normalize


def oracle_tokens(text: str) -> set[str]:
    return set(text.split())


def oracle_trigrams(text: str) -> set[str]:
    if len(text) == 0:
        return set()
    if len(text) < 3:
        return {text}
    grams = set()
    for i in range(len(text) - 2):
        grams.add(text[i : i + 3])
    return grams


def oracle_score(query_norm: str, matn_norm: str) -> float:
    query_tokens = oracle_tokens(query_norm)
    matn_tokens = oracle_tokens(matn_norm)
    shared = 0
    for token in query_tokens:
        if token in matn_tokens:
            shared += 1
    c = shared / len(query_tokens)

    query_grams = oracle_trigrams(query_norm)
    matn_grams = oracle_trigrams(matn_norm)
    inter = 0
    for gram in query_grams:
        if gram in matn_grams:
            inter += 1
    union = len(query_grams) + len(matn_grams) - inter
    j = 0.0 if union == 0 else inter / union
    return 0.7 * c + 0.3 * j


def oracle_search(corpus, query_raw: str, k: int) -> list[tuple[str, float]]:
    """Score every corpus record sharing at least one token; top-k (id, score)."""
    query_norm = normalize(query_raw)
    query_tokens = oracle_tokens(query_norm)
    if not query_tokens:
        raise ValueError("empty query")
    hits = []
    for record in corpus:
        if query_tokens.isdisjoint(oracle_tokens(record.matn_norm)):
            continue
        hits.append((oracle_score(query_norm, record.matn_norm), record))
    hits.sort(key=lambda pair: (-pair[0], pair[1].book.order, pair[1].number_in_book))
    return [(record.id, value) for value, record in hits[:k]]
