"""Numeric value detection.

Numbers are extracted from the source as whole digit-bearing tokens, the set
of acceptable target renderings is generated on the fly (verbatim copy,
equal value under the target locale's separator conventions, 12/24-hour
clock variants, day/month field swaps, and small-integer number words), and
the target is searched for any of them.

Comparison is by parsed value, not by digit string: "24.70" and "2,470"
share digits but differ in value, which is exactly the error class this
detector exists for. Tokens where digits are fused with other characters
("£14", "2nd", "6-7") are extracted as ``fused-unit`` values: they are never
checked as source seeds (precision first), but they do count as target-side
acceptance candidates so that formatting fusions like "10km" never cause a
flag. Fraction-like compounds ("1.1/2") are skipped outright.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from functools import lru_cache
from typing import Optional, Union

from .corpus import Detection, SentencePair, TokenSpan
from .data_files import read_data_text
from .errors import ConfigError
from .text import TRAILING_PUNCT

KIND_PLAIN = "plain"
KIND_TIME = "time"
KIND_DATE = "date"
KIND_FUSED = "fused-unit"

_DIGIT_RE = re.compile(r"\d")
_DIGIT_RUN_RE = re.compile(r"\d+")
_TIME_RE = re.compile(r"(\d{1,2}):(\d{2})")
_DATE_RE = re.compile(r"(\d{1,2})([/-])(\d{1,2})\2(\d{4}|\d{2})")
_PLAIN_RE = re.compile(r"\d(?:[\d.,]*\d)?")
_RUN_RE = re.compile(r"\d(?:[\d.,]*\d)?")


@dataclass(frozen=True)
class LocaleConvention:
    decimal_mark: str
    group_mark: str

    def __post_init__(self) -> None:
        if self.decimal_mark == self.group_mark:
            raise ConfigError("decimal and group marks must differ")


EN = LocaleConvention(decimal_mark=".", group_mark=",")
DE = LocaleConvention(decimal_mark=",", group_mark=".")

Parsed = Union[Decimal, tuple, None]


@dataclass(frozen=True)
class NumericValue:
    span: TokenSpan
    raw: str
    condensed: str
    parsed: Parsed  # Decimal | (hour, minute) | (field1, field2, year) | None
    kind: str


def condense(raw: str) -> str:
    """The digit subsequence of the raw match."""
    return "".join(_DIGIT_RE.findall(raw))


def parse_number(text: str, locale: LocaleConvention) -> Optional[Decimal]:
    """Parse a digit string with locale separators; None when the group
    marks do not sit at valid 3-digit boundaries (no guessing)."""
    d, g = locale.decimal_mark, locale.group_mark
    intpart, frac = text, ""
    if d in text:
        if text.count(d) > 1:
            return None
        intpart, frac = text.split(d)
        if not frac or not frac.isdigit():
            return None
    if g in intpart:
        groups = intpart.split(g)
        if not groups[0] or not groups[0].isdigit() or len(groups[0]) > 3:
            return None
        if any(len(p) != 3 or not p.isdigit() for p in groups[1:]):
            return None
        intpart = "".join(groups)
    if not intpart.isdigit():
        return None
    return Decimal(intpart + ("." + frac if frac else ""))


def _classify(core: str, start: int, locale: LocaleConvention) -> list[NumericValue]:
    span = TokenSpan(start, start + len(core), core)
    if "/" in core or "-" in core:
        m = _DATE_RE.fullmatch(core)
        if m:
            a, b = int(m.group(1)), int(m.group(3))
            if 1 <= a <= 31 and 1 <= b <= 31:
                return [
                    NumericValue(span, core, condense(core), (a, b, int(m.group(4))), KIND_DATE)
                ]
        if "/" in core:
            return []  # fraction-like compounds: no extraction
    if ":" in core:
        m = _TIME_RE.fullmatch(core)
        if m:
            h, minute = int(m.group(1)), int(m.group(2))
            if h < 24 and minute < 60:
                return [NumericValue(span, core, condense(core), (h, minute), KIND_TIME)]
    if _PLAIN_RE.fullmatch(core):
        value = parse_number(core, locale)
        if value is not None:
            return [NumericValue(span, core, condense(core), value, KIND_PLAIN)]
    # Digits fused with other characters (or with implausible separators):
    # one fused-unit value per embedded numeric run.
    values = []
    for m in _RUN_RE.finditer(core):
        run = m.group()
        run_span = TokenSpan(start + m.start(), start + m.end(), run)
        values.append(
            NumericValue(run_span, run, condense(run), parse_number(run, locale), KIND_FUSED)
        )
    return values


def extract_numeric_values(text: str, locale: LocaleConvention) -> list[NumericValue]:
    """Digit-bearing whitespace tokens, left to right, classified as plain
    numbers, clock times, dates or fused-unit values."""
    values: list[NumericValue] = []
    consumed = 0
    n = len(text)
    # Find digit runs (cheap), then widen each to its whitespace token.
    for m in _DIGIT_RUN_RE.finditer(text):
        start = m.start()
        if start < consumed:
            continue  # another run inside a token already handled
        while start > 0 and not text[start - 1].isspace():
            start -= 1
        end = m.end()
        while end < n and not text[end].isspace():
            end += 1
        consumed = end
        core = text[start:end].rstrip(TRAILING_PUNCT)
        if core:
            values.extend(_classify(core, start, locale))
    return values


@lru_cache(maxsize=4)
def number_word_lexicon(lang: str = "de") -> dict[int, tuple[str, ...]]:
    lex: dict[int, tuple[str, ...]] = {}
    for line in read_data_text("lexicons", f"numbers_{lang}.tsv").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        value, _, words = line.partition("\t")
        lex[int(value)] = tuple(w.strip().lower() for w in words.split(",") if w.strip())
    return lex


@dataclass(frozen=True)
class AcceptanceSet:
    """The allowed target renderings of one source value."""

    verbatim: str
    values: frozenset
    times: frozenset
    time_variants: tuple[str, ...]
    dates: frozenset
    number_words: tuple[str, ...]

    def admits(self, index: "TargetIndex") -> bool:
        if self.verbatim in index.text:
            return True
        if self.values and not self.values.isdisjoint(index.plains):
            return True
        if self.times and not self.times.isdisjoint(index.times):
            return True
        for variant in self.time_variants:
            if variant in index.text:
                return True
        if self.dates and not self.dates.isdisjoint(index.dates):
            return True
        for word in self.number_words:
            if word in index.lower:
                return True
        return False


class TargetIndex:
    """All numeric material extracted once from one target string."""

    __slots__ = ("text", "lower", "plains", "times", "dates")

    def __init__(self, text: str, locale: LocaleConvention):
        self.text = text
        self.lower = text.lower()
        plains, times, dates = set(), set(), set()
        for v in extract_numeric_values(text, locale):
            if v.kind == KIND_TIME:
                times.add(v.parsed)
            elif v.kind == KIND_DATE:
                dates.add(v.parsed)
            elif v.parsed is not None:  # plain and parseable fused runs
                plains.add(v.parsed)
        self.plains = plains
        self.times = times
        self.dates = dates


def allowed_target_forms(
    v: NumericValue,
    src_locale: LocaleConvention = EN,
    tgt_locale: LocaleConvention = DE,
    word_lang: str = "de",
) -> AcceptanceSet:
    """Acceptance set for one source value: verbatim copy, equal parsed value
    under the target locale, the 12-hour/24-hour clock variant, the day/month
    field swap, and number words for small integers."""
    values: frozenset = frozenset()
    times: frozenset = frozenset()
    dates: frozenset = frozenset()
    variants: tuple[str, ...] = ()
    words: tuple[str, ...] = ()
    if v.kind == KIND_TIME:
        h, minute = v.parsed
        shifted = (h + 12) % 24
        times = frozenset({(h, minute), (shifted, minute)})
        variants = tuple(
            dict.fromkeys(
                (
                    f"{shifted}:{minute:02d}",
                    f"{shifted:02d}:{minute:02d}",
                    f"{h}:{minute:02d}",
                    f"{h:02d}:{minute:02d}",
                )
            )
        )
    elif v.kind == KIND_DATE:
        a, b, y = v.parsed
        dates = frozenset({(a, b, y), (b, a, y)})
    elif v.parsed is not None:
        values = frozenset({v.parsed})
        if v.parsed == int(v.parsed):
            words = number_word_lexicon(word_lang).get(int(v.parsed), ())
    return AcceptanceSet(
        verbatim=v.raw,
        values=values,
        times=times,
        time_variants=variants,
        dates=dates,
        number_words=words,
    )


def check_pair_numeric(
    pair: SentencePair,
    src_locale: LocaleConvention = EN,
    tgt_locale: LocaleConvention = DE,
    word_lang: str = "de",
) -> list[Detection]:
    """One Detection per source value with no acceptable target rendering."""
    if not _DIGIT_RE.search(pair.source):
        return []
    target = pair.target
    # Verbatim copies (the common clean case) need no acceptance machinery.
    seeds = [
        v
        for v in extract_numeric_values(pair.source, src_locale)
        if v.kind != KIND_FUSED and v.raw not in target
    ]
    if not seeds:
        return []
    index = TargetIndex(target, tgt_locale)
    detections = []
    for v in seeds:
        acceptance = allowed_target_forms(v, src_locale, tgt_locale, word_lang)
        if not acceptance.admits(index):
            detections.append(
                Detection(
                    pair_id=pair.id,
                    detector="numerical-values",
                    source_spans=(v.span,),
                    evidence=f"number '{v.raw}' has no allowed counterpart in target",
                )
            )
    return detections
