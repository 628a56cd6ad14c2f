"""Token-level detection: trigger scanning, numeric guards and target-side
verification.

The contract: a trigger counts only as a whole whitespace-delimited source
token (after stripping trailing punctuation), while target forms are accepted
as case-insensitive substrings anywhere in the translation. The deliberate
asymmetry keeps precision high across formatting-only changes such as
"10 km" -> "10km". The trigger itself is always an accepted target form, so
a translation that copies the source token through is never flagged.

Symbol triggers ($, £, €, ₹) additionally match when fused with digits
("£14") and use the adjacent rather than antecedent numeric guard.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .corpus import Detection, SentencePair, TokenSpan
from .data_files import read_word_list
from .errors import ConfigError
from .tables import (
    TransformationEntry,
    TransformationTable,
    is_symbol_trigger,
    match_key,
)
from .text import TRAILING_PUNCT, token_spans

GUARD_NONE = "none"
GUARD_ANTECEDENT = "numeric-antecedent"
GUARD_ADJACENT = "numeric-adjacent"
GUARD_MODES = (GUARD_NONE, GUARD_ANTECEDENT, GUARD_ADJACENT)

# Default guard per category. Symbol triggers escalate antecedent->adjacent.
DEFAULT_GUARDS = {
    "physical-units": GUARD_ANTECEDENT,
    "currencies": GUARD_ANTECEDENT,
    "large-numbers": GUARD_NONE,
    "web-terms": GUARD_NONE,
}

_DIGIT_RE = re.compile(r"\d")
# Characters allowed around the digits of a symbol-fused token ("£14.50").
_FUSED_FILLER = frozenset("0123456789.,:-/")


@dataclass(frozen=True)
class GuardPolicy:
    """Precision guard: when does a trigger occurrence count at all."""

    mode: str = GUARD_NONE

    def __post_init__(self) -> None:
        if self.mode not in GUARD_MODES:
            raise ConfigError(f"unknown guard mode {self.mode!r}")


@dataclass(frozen=True)
class TriggerMatch:
    entry: TransformationEntry
    span: TokenSpan
    token_index: int


@lru_cache(maxsize=1)
def number_words() -> frozenset[str]:
    """English cardinal words counting as numbers for the guards."""
    return read_word_list("lexicons", "numbers_en.txt")


def _numericish(token: str) -> bool:
    if _DIGIT_RE.search(token):
        return True
    return token.rstrip(TRAILING_PUNCT).lower() in number_words()


def _digit_filler(text: str) -> bool:
    return bool(text) and _DIGIT_RE.search(text) is not None and all(
        ch in _FUSED_FILLER for ch in text
    )


def effective_guard(entry: TransformationEntry, policy: GuardPolicy) -> str:
    if policy.mode == GUARD_ANTECEDENT and is_symbol_trigger(entry.trigger):
        return GUARD_ADJACENT
    return policy.mode


def numeric_guard(
    source_tokens: Sequence[str], token_index: int, policy: GuardPolicy | str
) -> bool:
    """Is the trigger at ``token_index`` in a numeric context?

    ``numeric-antecedent``: the immediately preceding token is numeric (has a
    digit) or is an English number word. ``numeric-adjacent``: the preceding
    or following token is numeric, or the trigger token itself carries digits
    (fused forms like "£14").
    """
    mode = policy.mode if isinstance(policy, GuardPolicy) else policy
    if mode == GUARD_NONE:
        return True
    if token_index >= len(source_tokens):
        raise IndexError(f"token index {token_index} out of range")
    if mode == GUARD_ANTECEDENT:
        return token_index > 0 and _numericish(source_tokens[token_index - 1])
    if mode == GUARD_ADJACENT:
        if _DIGIT_RE.search(source_tokens[token_index]):
            return True
        if token_index > 0 and _numericish(source_tokens[token_index - 1]):
            return True
        return token_index + 1 < len(source_tokens) and _numericish(
            source_tokens[token_index + 1]
        )
    raise ConfigError(f"unknown guard mode {mode!r}")


class _Armed:
    """One table entry prepared for scanning."""

    __slots__ = ("detector", "entry", "guard", "forms")

    def __init__(self, detector: str, entry: TransformationEntry, guard: str):
        self.detector = detector
        self.entry = entry
        self.guard = guard
        forms = {f.lower() for f in entry.targets}
        forms.add(entry.trigger.lower())  # identity is always accepted
        self.forms = tuple(forms)


class DetectorBundle:
    """Scan structures shared by every token-level detector in one run.

    Built once per configuration; ``scan`` is the per-pair hot path and runs
    a single token loop over all tables together.
    """

    def __init__(self, armed_tables: Iterable[tuple[TransformationTable, GuardPolicy]]):
        self.lookup: dict[str, tuple[_Armed, ...]] = {}
        symbol_map: dict[str, list[_Armed]] = {}
        for table, policy in armed_tables:
            detector = table.category
            for entry in table.entries:
                armed = _Armed(detector, entry, effective_guard(entry, policy))
                key = match_key(entry.trigger)
                self.lookup[key] = self.lookup.get(key, ()) + (armed,)
                if is_symbol_trigger(entry.trigger):
                    symbol_map.setdefault(key, []).append(armed)
        # Longest symbols first so multi-character symbols win the fused scan.
        self.symbols = tuple(
            (sym, tuple(armeds))
            for sym, armeds in sorted(symbol_map.items(), key=lambda kv: -len(kv[0]))
        )
        self.symbol_heads = frozenset(
            ch for sym, _ in self.symbols for ch in (sym[0], sym[-1])
        )

    def _fused(self, core: str) -> list[tuple[str, int, _Armed]]:
        """Symbol triggers fused with digits inside one token.

        Returns (symbol, offset-in-core, armed) triples.
        """
        found = []
        for sym, armeds in self.symbols:
            if len(core) <= len(sym):
                continue
            if core.startswith(sym) and _digit_filler(core[len(sym):]):
                found.extend((sym, 0, armed) for armed in armeds)
                return found
            if core.endswith(sym) and _digit_filler(core[: -len(sym)]):
                off = len(core) - len(sym)
                found.extend((sym, off, armed) for armed in armeds)
                return found
        return found

    def scan(self, pair: SentencePair) -> list[Detection]:
        detections: Optional[list[Detection]] = None
        source = pair.source
        toks = source.split()
        # One C-level lower of the whole string beats one per token; fall
        # back if an exotic case mapping ever changes tokenization.
        low_toks = source.lower().split()
        if len(low_toks) != len(toks):
            low_toks = [t.lower() for t in toks]
        lookup_get = self.lookup.get
        symbol_heads = self.symbol_heads
        for i, low in enumerate(low_toks):
            core = low
            armed_set = lookup_get(low)
            if armed_set is None:
                core = low.rstrip(TRAILING_PUNCT)
                if core is not low:
                    armed_set = lookup_get(core)
                if armed_set is None:
                    if (
                        symbol_heads
                        and core
                        and (core[0] in symbol_heads or core[-1] in symbol_heads)
                        and _DIGIT_RE.search(core)
                    ):
                        hits = [(off, len(sym), a) for sym, off, a in self._fused(core)]
                        if hits:
                            detections = self._verify(pair, toks, i, hits, detections)
                    continue
            hits = [(0, len(core), a) for a in armed_set]
            detections = self._verify(pair, toks, i, hits, detections)
        return detections if detections is not None else []

    def _verify(
        self,
        pair: SentencePair,
        toks: list[str],
        i: int,
        hits: list,
        detections: Optional[list[Detection]],
    ) -> Optional[list[Detection]]:
        """Guard check and target search for one token's trigger hits."""
        tgt_lower: Optional[str] = None
        for off, length, armed in hits:
            if armed.guard != GUARD_NONE and not numeric_guard(toks, i, armed.guard):
                continue
            if tgt_lower is None:
                tgt_lower = pair.target.lower()
            if any(form in tgt_lower for form in armed.forms):
                continue
            span = _nth_token_span(pair.source, i, off, length)
            if detections is None:
                detections = []
            detections.append(
                Detection(
                    pair_id=pair.id,
                    detector=armed.detector,
                    source_spans=(span,),
                    evidence=(
                        f"trigger '{armed.entry.trigger}' has no accepted "
                        f"target form; expected one of: "
                        f"{', '.join(armed.entry.targets)}"
                    ),
                )
            )
        return detections


def _nth_token_span(source: str, token_index: int, offset: int, length: int) -> TokenSpan:
    spans = token_spans(source)
    start, _, _ = spans[token_index]
    begin = start + offset
    return TokenSpan.of(source, begin, begin + length)


@lru_cache(maxsize=64)
def _cached_bundle(table: TransformationTable, mode: str) -> DetectorBundle:
    return DetectorBundle(((table, GuardPolicy(mode)),))


def find_triggers(source: str, table: TransformationTable) -> list[TriggerMatch]:
    """Every whole-token (or symbol-fused) trigger occurrence, left to right."""
    bundle = _cached_bundle(table, GUARD_NONE)
    matches: list[TriggerMatch] = []
    for i, (start, _end, tok) in enumerate(token_spans(source)):
        core = tok.rstrip(TRAILING_PUNCT)
        if not core:
            continue
        low = core.lower()
        armed_set = bundle.lookup.get(low)
        if armed_set is not None:
            span = TokenSpan(start, start + len(core), core)
            matches.extend(TriggerMatch(a.entry, span, i) for a in armed_set)
            continue
        if bundle.symbols and _DIGIT_RE.search(low):
            for sym, off, armed in bundle._fused(low):
                span = TokenSpan(start + off, start + off + len(sym), core[off : off + len(sym)])
                matches.append(TriggerMatch(armed.entry, span, i))
    return matches


def check_pair(
    pair: SentencePair, table: TransformationTable, policy: GuardPolicy
) -> list[Detection]:
    """One Detection per guarded trigger occurrence with no accepted target
    form; nothing otherwise."""
    return _cached_bundle(table, policy.mode).scan(pair)


# --- URL copying check -------------------------------------------------------

_URL_RE = re.compile(r"(?<!\S)(?:[a-zA-Z][a-zA-Z0-9+.-]*://\S+|www\.\S+)")


def find_urls(text: str) -> list[TokenSpan]:
    """Scheme- or www-prefixed tokens, maximal non-whitespace extent, with
    trailing sentence punctuation stripped."""
    if "://" not in text and "www." not in text:
        return []
    out = []
    for m in _URL_RE.finditer(text):
        surface = m.group().rstrip(TRAILING_PUNCT)
        if surface:
            out.append(TokenSpan(m.start(), m.start() + len(surface), surface))
    return out


def check_urls(pair: SentencePair) -> list[Detection]:
    detections = []
    for span in find_urls(pair.source):
        if span.surface not in pair.target:
            detections.append(
                Detection(
                    pair_id=pair.id,
                    detector="web-terms",
                    source_spans=(span,),
                    evidence=f"URL not copied verbatim into target: {span.surface}",
                )
            )
    return detections


def check_web_terms(
    pair: SentencePair, table: Optional[TransformationTable] = None
) -> list[Detection]:
    """URL copying check plus the identity table for bare web terms."""
    if table is None:
        from .tables import builtin_tables

        table = next(t for t in builtin_tables(("en", "de")) if t.category == "web-terms")
    detections = check_urls(pair)
    detections.extend(check_pair(pair, table, GuardPolicy(GUARD_NONE)))
    return detections
