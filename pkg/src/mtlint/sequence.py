"""Sequence-level detectors: coverage and hallucination.

These judge whole sequences without transformation tables, so they run
unchanged on any target language. Coverage counts unaligned content words
against a length-bucketed threshold; oscillatory hallucination compares the
most frequent target bigram against the source; natural hallucination finds
one target string shared by many sources of distinct lengths.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .alignment import AlignmentLinks
from .corpus import Detection, SentencePair, TokenSpan
from .data_files import read_word_list
from .errors import ConfigError
from .text import is_punct_token, normalize_ws, strip_trailing, token_spans

# (source length bound, max unaligned content words); bound None = catch-all.
DEFAULT_COVERAGE_BUCKETS = ((50, 10), (100, 20), (200, 30), (None, 40))


@lru_cache(maxsize=4)
def builtin_stopwords(lang: str = "en") -> frozenset[str]:
    return read_word_list("stopwords", f"{lang}.txt")


@dataclass(frozen=True)
class CoverageConfig:
    stopwords: frozenset = field(default_factory=builtin_stopwords)
    thresholds: tuple = DEFAULT_COVERAGE_BUCKETS

    def __post_init__(self) -> None:
        if not self.thresholds or self.thresholds[-1][0] is not None:
            raise ConfigError("coverage thresholds need a final catch-all bucket")
        bounds = [b for b, _ in self.thresholds[:-1]]
        limits = [t for _, t in self.thresholds]
        if any(b is None for b in bounds):
            raise ConfigError("only the last coverage bucket may be the catch-all")
        if sorted(bounds) != bounds or len(set(bounds)) != len(bounds):
            raise ConfigError("coverage bucket bounds must be strictly increasing")
        if sorted(limits) != limits or len(set(limits)) != len(limits):
            raise ConfigError("coverage thresholds must be strictly increasing")

    def threshold_for(self, source_len: int) -> int:
        for bound, limit in self.thresholds:
            if bound is None or source_len < bound:
                return limit
        raise AssertionError("unreachable: catch-all bucket is validated")


@dataclass(frozen=True)
class HallucinationConfig:
    oscillatory_margin: int = 4
    oscillatory_floor: int = 10
    natural_min_sources: int = 5

    def __post_init__(self) -> None:
        if min(self.oscillatory_margin, self.oscillatory_floor, self.natural_min_sources) <= 0:
            raise ConfigError("hallucination thresholds must be positive")


def coverage_check(
    pair: SentencePair, links: AlignmentLinks, cfg: Optional[CoverageConfig] = None
) -> Optional[Detection]:
    """Flag when strictly more content words than the bucket threshold are
    unaligned. Content = not a stopword (case-insensitive, trailing
    punctuation ignored) and not punctuation-only."""
    if cfg is None:
        cfg = CoverageConfig()
    spans = token_spans(pair.source)
    threshold = cfg.threshold_for(len(spans))
    aligned = {i for i, _ in links.links}
    missing: list[TokenSpan] = []
    for idx, (start, end, tok) in enumerate(spans):
        if idx in aligned or is_punct_token(tok):
            continue
        word = strip_trailing(tok).lower() or tok.lower()
        if word in cfg.stopwords:
            continue
        missing.append(TokenSpan(start, end, tok))
    if len(missing) <= threshold:
        return None
    return Detection(
        pair_id=pair.id,
        detector="coverage",
        source_spans=tuple(missing),
        evidence=(
            f"{len(missing)} content words unaligned "
            f"(threshold {threshold} for a {len(spans)}-token source)"
        ),
    )


def _max_bigram(tokens: list[str]) -> tuple[Optional[tuple[str, str]], int]:
    if len(tokens) < 2:
        return None, 0
    counts = Counter(zip(tokens, tokens[1:]))
    best = max(counts.items(), key=lambda kv: kv[1])
    return best[0], best[1]


def oscillatory_check(
    pair: SentencePair, cfg: Optional[HallucinationConfig] = None
) -> Optional[Detection]:
    """Flag when the most frequent target bigram outruns the source's by the
    configured margin and clears the absolute floor."""
    if cfg is None:
        cfg = HallucinationConfig()
    bigram, tgt_max = _max_bigram(pair.target.split())
    if bigram is None or tgt_max <= cfg.oscillatory_floor:
        return None
    _, src_max = _max_bigram(pair.source.split())
    if tgt_max - src_max < cfg.oscillatory_margin:
        return None
    return Detection(
        pair_id=pair.id,
        detector="hallucination-oscillatory",
        source_spans=(),
        evidence=(
            f"bigram '{bigram[0]} {bigram[1]}' repeats {tgt_max}x in target "
            f"vs at most {src_max}x in source"
        ),
    )


class NaturalScan:
    """Corpus-wide accumulator for the shared-target hallucination rule.

    Targets are compared after trimming and collapsing whitespace runs, with
    no case folding; a group flags every member once it collects the
    configured number of distinct source token lengths.
    """

    def __init__(self, cfg: Optional[HallucinationConfig] = None):
        self.cfg = cfg if cfg is not None else HallucinationConfig()
        self._groups: dict[str, tuple[set[int], list[int]]] = {}

    def add(self, pair: SentencePair) -> None:
        key = normalize_ws(pair.target)
        group = self._groups.get(key)
        if group is None:
            group = (set(), [])
            self._groups[key] = group
        group[0].add(len(pair.source.split()))
        group[1].append(pair.id)

    def detections(self) -> list[Detection]:
        out: list[Detection] = []
        for target, (lengths, members) in self._groups.items():
            if len(lengths) < self.cfg.natural_min_sources:
                continue
            ids = sorted(members)
            id_list = ", ".join(str(i) for i in ids)
            for pid in ids:
                out.append(
                    Detection(
                        pair_id=pid,
                        detector="hallucination-natural",
                        source_spans=(),
                        evidence=(
                            f"target shared by {len(ids)} sources spanning "
                            f"{len(lengths)} distinct token lengths "
                            f"(pairs {id_list}): {target}"
                        ),
                    )
                )
        out.sort(key=lambda d: d.pair_id)
        return out


def natural_hallucination_scan(
    corpus: Iterable[SentencePair], cfg: Optional[HallucinationConfig] = None
) -> list[Detection]:
    scan = NaturalScan(cfg)
    for pair in corpus:
        scan.add(pair)
    return scan.detections()
