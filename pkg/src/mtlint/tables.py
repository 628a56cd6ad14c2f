"""Transformation tables: the per-language-pair resources behind every
token-level detector.

A table maps source trigger tokens to the target-language forms that count
as acceptable translations, each row tagged with a free-form type label
(``dist``, ``sym``, ...) used by the generators to group interchangeable
triggers.

File format: TSV with columns ``trigger``, comma-separated ``targets``,
``type_tag``, ``category`` and an optional ``canonical`` target override;
``#`` starts a comment. Tables ship as data files under ``data/tables/``,
one file per category.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional

from .errors import TableError
from .text import strip_trailing

CATEGORIES = ("physical-units", "currencies", "large-numbers", "web-terms")

_LANG_PAIR_RE = re.compile(r"^([a-z]{2,3})-([a-z]{2,3})$")


def match_key(trigger: str) -> str:
    """Normalized form used for trigger lookup: lowercase, trailing
    punctuation stripped (unless that would empty the trigger)."""
    stripped = strip_trailing(trigger)
    return (stripped or trigger).lower()


def is_symbol_trigger(trigger: str) -> bool:
    """Triggers with no alphanumeric characters ($, £, €, ₹) may match fused
    with digits and use the adjacent rather than antecedent numeric guard."""
    return not any(ch.isalnum() for ch in trigger)


@dataclass(frozen=True)
class TransformationEntry:
    trigger: str
    targets: tuple[str, ...]
    type_tag: str
    category: str
    canonical: Optional[str] = None

    @property
    def canonical_target(self) -> str:
        """Form substituted into templates; defaults to the first target."""
        return self.canonical if self.canonical is not None else self.targets[0]

    def validate(self, where: str = "") -> None:
        ctx = f"{where}: " if where else ""
        if not self.trigger or any(ch.isspace() for ch in self.trigger):
            raise TableError(f"{ctx}trigger must be nonempty without whitespace: {self.trigger!r}")
        if not self.targets or any(not t for t in self.targets):
            raise TableError(f"{ctx}trigger {self.trigger!r} needs nonempty target forms")
        if not self.type_tag:
            raise TableError(f"{ctx}trigger {self.trigger!r} is missing a type tag")
        if self.category not in CATEGORIES:
            raise TableError(
                f"{ctx}unknown category {self.category!r} (expected one of {', '.join(CATEGORIES)})"
            )
        if self.canonical is not None and self.canonical not in self.targets:
            raise TableError(
                f"{ctx}canonical form {self.canonical!r} is not among the targets of {self.trigger!r}"
            )


@dataclass(frozen=True)
class TransformationTable:
    entries: tuple[TransformationEntry, ...]
    language_pair: tuple[str, str]

    @property
    def category(self) -> str:
        return self.entries[0].category if self.entries else ""

    def by_key(self) -> dict[str, TransformationEntry]:
        return {match_key(e.trigger): e for e in self.entries}

    def by_type(self, type_tag: str) -> list[TransformationEntry]:
        return [e for e in self.entries if e.type_tag == type_tag]

    def validate(self, where: str = "") -> None:
        seen: dict[str, int] = {}
        for i, entry in enumerate(self.entries):
            entry.validate(f"{where} entry {i}" if where else f"entry {i}")
            key = match_key(entry.trigger)
            if key in seen:
                raise TableError(
                    f"{where or 'table'}: duplicate trigger {entry.trigger!r} "
                    f"(entries {seen[key]} and {i} collide case-insensitively)"
                )
            seen[key] = i
            if entry.category != self.entries[0].category:
                raise TableError(
                    f"{where or 'table'}: mixed categories "
                    f"{self.entries[0].category!r} and {entry.category!r}"
                )


def _parse_row(row: str, where: str) -> TransformationEntry:
    cols = row.split("\t")
    if len(cols) not in (4, 5):
        raise TableError(f"{where}: expected 4 or 5 TAB-separated columns, got {len(cols)}")
    trigger = cols[0].strip()
    targets = tuple(t.strip() for t in cols[1].split(",") if t.strip())
    type_tag = cols[2].strip()
    category = cols[3].strip()
    canonical = cols[4].strip() if len(cols) == 5 and cols[4].strip() else None
    entry = TransformationEntry(
        trigger=trigger.lower(),
        targets=targets,
        type_tag=type_tag,
        category=category,
        canonical=canonical,
    )
    entry.validate(where)
    return entry


def _infer_language_pair(path: str) -> tuple[str, str]:
    parent = os.path.basename(os.path.dirname(os.path.abspath(path)))
    m = _LANG_PAIR_RE.match(parent)
    return (m.group(1), m.group(2)) if m else ("en", "de")


def load_table(path: str, language_pair: Optional[tuple[str, str]] = None) -> TransformationTable:
    """Load and validate one table file; failures name the offending line."""
    try:
        with open(path, encoding="utf-8") as stream:
            lines = stream.readlines()
    except OSError as exc:
        raise TableError(f"cannot read table {path!r}: {exc}") from exc
    return parse_table(
        lines,
        language_pair or _infer_language_pair(path),
        source_name=path,
    )


def parse_table(
    lines: Iterable[str],
    language_pair: tuple[str, str],
    source_name: str = "<table>",
) -> TransformationTable:
    entries: list[TransformationEntry] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        row = raw.rstrip("\n").rstrip("\r")
        if not row.strip() or row.lstrip().startswith("#"):
            continue
        where = f"{source_name}:{lineno}"
        entry = _parse_row(row, where)
        key = match_key(entry.trigger)
        if key in seen:
            raise TableError(
                f"{where}: duplicate trigger {entry.trigger!r} (first seen on line {seen[key]})"
            )
        seen[key] = lineno
        if entries and entry.category != entries[0].category:
            raise TableError(
                f"{where}: category {entry.category!r} differs from "
                f"{entries[0].category!r} earlier in the same table"
            )
        entries.append(entry)
    if not entries:
        raise TableError(f"{source_name}: table has no entries")
    return TransformationTable(entries=tuple(entries), language_pair=language_pair)


def format_table(table: TransformationTable) -> str:
    rows = []
    for e in table.entries:
        cols = [e.trigger, ", ".join(e.targets), e.type_tag, e.category]
        if e.canonical is not None:
            cols.append(e.canonical)
        rows.append("\t".join(cols))
    return "\n".join(rows) + "\n"


def write_table(table: TransformationTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as stream:
        stream.write(format_table(table))


_BUILTIN_FILES = {
    "physical-units": "physical-units.tsv",
    "currencies": "currencies.tsv",
    "large-numbers": "large-numbers.tsv",
    "web-terms": "web-terms.tsv",
}

SUPPORTED_PAIRS = (("en", "de"),)


def builtin_tables(language_pair: tuple[str, str] = ("en", "de")) -> list[TransformationTable]:
    """The bundled tables for one language pair, in category order."""
    if tuple(language_pair) not in SUPPORTED_PAIRS:
        supported = ", ".join("-".join(p) for p in SUPPORTED_PAIRS)
        raise TableError(
            f"unsupported language pair {'-'.join(language_pair)} (supported: {supported})"
        )
    pair_dir = "-".join(language_pair)
    root = resources.files("mtlint.data").joinpath("tables").joinpath(pair_dir)
    out = []
    for category in CATEGORIES:
        text = root.joinpath(_BUILTIN_FILES[category]).read_text(encoding="utf-8")
        table = parse_table(
            text.splitlines(), tuple(language_pair), source_name=_BUILTIN_FILES[category]
        )
        table.validate(_BUILTIN_FILES[category])
        out.append(table)
    return out


def load_table_dir(path: str, language_pair: tuple[str, str]) -> list[TransformationTable]:
    """Load every ``*.tsv`` in a directory as one table each."""
    try:
        names = sorted(n for n in os.listdir(path) if n.endswith(".tsv"))
    except OSError as exc:
        raise TableError(f"cannot list table directory {path!r}: {exc}") from exc
    if not names:
        raise TableError(f"no .tsv tables found in {path!r}")
    out = []
    for name in names:
        table = load_table(os.path.join(path, name), language_pair)
        table.validate(name)
        out.append(table)
    return out
