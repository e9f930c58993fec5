"""Arabic text canonicalization: letter folding, tokenization, character trigrams."""

from __future__ import annotations

import re

# Harakat plus the superscript alef. Deleted outright (not replaced with a
# space) so a vocalized word stays one token.
_DIACRITICS = re.compile("[ً-ْٰ]")

_TATWEEL = "ـ"

# Variant letters folded to a canonical form. Applied before the letter
# filter, so the variants never survive into the output.
_FOLD = str.maketrans(
    {
        "آ": "ا",  # alef madda
        "أ": "ا",  # alef hamza above
        "إ": "ا",  # alef hamza below
        "ٱ": "ا",  # alef wasla
        "ة": "ه",  # ta marbuta -> ha
        "ى": "ي",  # alef maqsura -> ya
        "ؤ": "و",  # waw with hamza -> waw
        "ئ": "ي",  # ya with hamza -> ya
    }
)


def normalize(raw: str) -> str:
    """Fold raw text into canonical Arabic letters separated by single spaces.

    Pipeline: strip diacritics and tatweel, fold variant letters, turn every
    character outside U+0621..U+064A into a space, then collapse runs of
    spaces and trim. Idempotent: the output is a fixed point.
    """
    text = _DIACRITICS.sub("", raw)
    text = text.replace(_TATWEEL, "")
    text = text.translate(_FOLD)
    text = "".join(c if "ء" <= c <= "ي" else " " for c in text)
    return " ".join(text.split())


def tokenize(text: str) -> list[str]:
    """Split normalized text on spaces, preserving order. Empty text -> []."""
    return text.split()


def trigrams(text: str) -> set[str]:
    """Set of all contiguous 3-character windows of the string, spaces included.

    A non-empty string shorter than 3 characters yields itself as the only
    gram; the empty string yields the empty set.
    """
    n = len(text)
    if n == 0:
        return set()
    if n < 3:
        return {text}
    return {text[i : i + 3] for i in range(n - 2)}
