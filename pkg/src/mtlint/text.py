"""Shared text primitives: whitespace tokenization, offset-aware token spans,
trailing-punctuation stripping and token classification.

Every component that talks about "token i" uses the same whitespace
tokenization defined here, so indices stay comparable between detectors,
alignment providers and generators.
"""

from __future__ import annotations

import re
import unicodedata

# Punctuation stripped from the *end* of a source token before trigger
# comparison. Leading punctuation is deliberately left alone.
TRAILING_PUNCT = ".,;:!?)\"'"

_TOKEN_RE = re.compile(r"\S+")
_DIGIT_RE = re.compile(r"\d")


def tokens(text: str) -> list[str]:
    return text.split()


def token_spans(text: str) -> list[tuple[int, int, str]]:
    """Whitespace tokens with (start, end) character offsets."""
    return [(m.start(), m.end(), m.group()) for m in _TOKEN_RE.finditer(text)]


def strip_trailing(token: str) -> str:
    return token.rstrip(TRAILING_PUNCT)


def has_digit(text: str) -> bool:
    return _DIGIT_RE.search(text) is not None


def is_punct_token(token: str) -> bool:
    """True when every character carries the Unicode punctuation property."""
    return bool(token) and all(
        unicodedata.category(ch).startswith("P") for ch in token
    )


def normalize_ws(text: str) -> str:
    """Trim and collapse internal whitespace runs; no case folding."""
    return " ".join(text.split())


def strip_framing(text: str) -> str:
    """Remove line breaks and NUL characters (record framing safety)."""
    if "\n" in text or "\r" in text or "\x00" in text:
        return text.replace("\n", "").replace("\r", "").replace("\x00", "")
    return text
