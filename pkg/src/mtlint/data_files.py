"""Access to bundled data files (tables, stopword lists, number lexicons)."""

from __future__ import annotations

from importlib import resources


def read_data_text(*parts: str) -> str:
    node = resources.files("mtlint.data")
    for part in parts:
        node = node.joinpath(part)
    return node.read_text(encoding="utf-8")


def parse_word_list(text: str) -> frozenset[str]:
    """One lowercase token per line, '#' comments."""
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def read_word_list(*parts: str) -> frozenset[str]:
    return parse_word_list(read_data_text(*parts))
