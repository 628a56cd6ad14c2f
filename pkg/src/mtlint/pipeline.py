"""Corpus-scale orchestration: detect, filter, summarize and generate.

The per-pair detectors are pure functions over immutable tables, so corpus
runs fan out over a process pool; results are reassembled in input order and
reports come out byte-identical for any shard count. The natural
hallucination scan is the one global phase and runs in the reader process.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .alignment import AlignmentLinks, provider_from_spec
from .config import RunConfig
from .corpus import (
    CorpusStats,
    DETECTOR_ORDER,
    Detection,
    SentencePair,
    read_bitext,
    read_report,
    render_stats,
    write_report,
)
from .data_files import parse_word_list
from .errors import AlignmentUnavailable, ConfigError, InputError
from .generate import MetaCorpusResult, meta_corpus_generate, metamorphic_generate
from .numeric import LocaleConvention, check_pair_numeric
from .sequence import (
    CoverageConfig,
    HallucinationConfig,
    NaturalScan,
    builtin_stopwords,
    coverage_check,
    oscillatory_check,
)
from .tables import CATEGORIES, builtin_tables, load_table_dir
from .token_detectors import DEFAULT_GUARDS, DetectorBundle, GuardPolicy, check_urls

log = logging.getLogger(__name__)

_CHUNK = 512


class Runtime:
    """Every structure the per-pair detectors need, built once per process."""

    def __init__(self, config: RunConfig):
        config.validate()
        self.config = config
        guard_overrides = dict(config.guards)
        if config.tables_dir:
            tables = load_table_dir(config.tables_dir, config.language_pair)
        else:
            tables = builtin_tables(config.language_pair)
        self.tables = {t.category: t for t in tables}
        armed = []
        for category in CATEGORIES:
            if category not in config.detectors or category not in self.tables:
                continue
            mode = guard_overrides.get(category, DEFAULT_GUARDS[category])
            armed.append((self.tables[category], GuardPolicy(mode)))
        self.bundle = DetectorBundle(armed) if armed else None
        self.url_check = "web-terms" in config.detectors
        self.numeric = "numerical-values" in config.detectors
        self.src_locale = LocaleConvention(*config.source_locale)
        self.tgt_locale = LocaleConvention(*config.target_locale)
        self.word_lang = config.language_pair[1]
        self.oscillatory = "hallucination-oscillatory" in config.detectors
        self.natural = "hallucination-natural" in config.detectors
        self.coverage = "coverage" in config.detectors
        self.hallucination_cfg = HallucinationConfig(
            oscillatory_margin=config.oscillatory_margin,
            oscillatory_floor=config.oscillatory_floor,
            natural_min_sources=config.natural_min_sources,
        )
        if config.stopwords_path:
            try:
                with open(config.stopwords_path, encoding="utf-8") as stream:
                    stopwords = parse_word_list(stream.read())
            except OSError as exc:
                raise InputError(
                    f"cannot read stopwords {config.stopwords_path!r}: {exc}"
                ) from exc
        else:
            stopwords = builtin_stopwords("en")
        self.coverage_cfg = CoverageConfig(
            stopwords=stopwords, thresholds=config.coverage_thresholds
        )

    def guard_policy(self, category: str) -> GuardPolicy:
        overrides = dict(self.config.guards)
        return GuardPolicy(overrides.get(category, DEFAULT_GUARDS[category]))


def detect_pair(
    runtime: Runtime, pair: SentencePair, links: Optional[AlignmentLinks] = None
) -> list[Detection]:
    """All per-pair detections (everything except the natural-hallucination
    scan, which needs the whole corpus)."""
    out: list[Detection] = []
    if runtime.bundle is not None:
        out.extend(runtime.bundle.scan(pair))
    if runtime.url_check:
        out.extend(check_urls(pair))
    if runtime.numeric:
        out.extend(
            check_pair_numeric(pair, runtime.src_locale, runtime.tgt_locale, runtime.word_lang)
        )
    if runtime.oscillatory:
        det = oscillatory_check(pair, runtime.hallucination_cfg)
        if det is not None:
            out.append(det)
    if runtime.coverage and links is not None:
        det = coverage_check(pair, links, runtime.coverage_cfg)
        if det is not None:
            out.append(det)
    return out


def detection_sort_key(d: Detection) -> tuple:
    first = d.source_spans[0].start if d.source_spans else -1
    return (d.pair_id, DETECTOR_ORDER.get(d.detector, len(DETECTOR_ORDER)), first, d.evidence)


_WORKER_RUNTIME: Optional[Runtime] = None


def _init_worker(config: RunConfig) -> None:
    global _WORKER_RUNTIME
    _WORKER_RUNTIME = Runtime(config)


def _detect_chunk(chunk: list) -> list[Detection]:
    assert _WORKER_RUNTIME is not None
    out: list[Detection] = []
    for pair, links in chunk:
        out.extend(detect_pair(_WORKER_RUNTIME, pair, links))
    return out


def run_detect(
    config: RunConfig, source, target=None
) -> tuple[list[Detection], CorpusStats]:
    """Apply every enabled detector to every pair; detections come back
    sorted in canonical report order."""
    runtime = Runtime(config)
    stats = CorpusStats()
    natural = NaturalScan(runtime.hallucination_cfg) if runtime.natural else None
    provider = (
        provider_from_spec(config.alignment, config.sidecar_timeout)
        if runtime.coverage
        else None
    )
    detections: list[Detection] = []

    def annotated() -> Iterator[tuple[SentencePair, Optional[AlignmentLinks]]]:
        for pair in read_bitext(source, config.bitext_format, target, stats):
            stats.total_pairs += 1
            if natural is not None:
                natural.add(pair)
            links = None
            if provider is not None:
                try:
                    links = provider.links_for(pair)
                except AlignmentUnavailable as exc:
                    stats.alignment_unavailable += 1
                    log.warning("pair %d excluded from coverage: %s", pair.id, exc)
            yield pair, links

    try:
        if config.shards <= 1:
            runtime_local = runtime
            for pair, links in annotated():
                detections.extend(detect_pair(runtime_local, pair, links))
        else:
            with multiprocessing.Pool(
                processes=config.shards, initializer=_init_worker, initargs=(config,)
            ) as pool:
                for results in pool.imap(_detect_chunk, _chunks(annotated(), _CHUNK)):
                    detections.extend(results)
    finally:
        if provider is not None:
            provider.close()

    if natural is not None:
        detections.extend(natural.detections())
    detections.sort(key=detection_sort_key)
    for det in detections:
        stats.counts[det.detector] = stats.counts.get(det.detector, 0) + 1
    stats.flagged_pairs = len({det.pair_id for det in detections})
    return detections, stats


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    buf: list = []
    for item in items:
        buf.append(item)
        if len(buf) >= size:
            yield buf
            buf = []
    if buf:
        yield buf


def run_filter(
    config: RunConfig,
    source: str,
    clean_sink: str,
    removed_sink: str,
    target: Optional[str] = None,
    report_sink: Optional[str] = None,
) -> tuple[CorpusStats, int, int]:
    """Partition a corpus into clean and removed streams.

    Pairs with at least one detection from any enabled detector are removed;
    both output streams are TSV, order-preserving and disjoint. Inputs must
    be paths (the corpus is read twice: detect, then partition).
    """
    if not isinstance(source, str):
        raise ConfigError("run_filter needs path inputs (the corpus is read twice)")
    detections, stats = run_detect(config, source, target)
    if report_sink is not None:
        write_report(detections, report_sink)
    flagged = {det.pair_id for det in detections}
    kept = removed = 0
    try:
        clean_stream = open(clean_sink, "w", encoding="utf-8")
        removed_stream = open(removed_sink, "w", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot open filter outputs: {exc}") from exc
    try:
        for pair in read_bitext(source, config.bitext_format, target):
            line = f"{pair.source}\t{pair.target}\n"
            if pair.id in flagged:
                removed_stream.write(line)
                removed += 1
            else:
                clean_stream.write(line)
                kept += 1
    finally:
        clean_stream.close()
        removed_stream.close()
    return stats, kept, removed


def standard_filter(
    pair: SentencePair,
    max_ratio: Fraction = Fraction(13, 10),
    max_words: int = 150,
    lang_predicate: Optional[Callable[[SentencePair], bool]] = None,
) -> tuple[str, Optional[str]]:
    """The baseline length/ratio filter: ("keep", None) or ("drop", reason).

    Checks run in order (ratio, reverse ratio, length, language) and the
    reason names the first failed rule. Ratio comparisons use exact integer
    cross-multiplication, so a ratio of exactly 1.3 still keeps the pair.
    """
    src_n = len(pair.source.split())
    tgt_n = len(pair.target.split())
    num, den = max_ratio.numerator, max_ratio.denominator
    if tgt_n * den > src_n * num:
        return "drop", "ratio"
    if src_n * den > tgt_n * num:
        return "drop", "reverse-ratio"
    if src_n > max_words or tgt_n > max_words:
        return "drop", "length"
    if lang_predicate is not None and not lang_predicate(pair):
        return "drop", "language"
    return "keep", None


def run_stdfilter(
    config: RunConfig,
    source: str,
    kept_sink: str,
    dropped_sink: str,
    target: Optional[str] = None,
    lang_predicate: Optional[Callable[[SentencePair], bool]] = None,
) -> tuple[int, int, dict[str, int]]:
    """Apply the baseline filter; returns (kept, dropped, reason counts)."""
    ratio = config.max_ratio_fraction
    kept = dropped = 0
    reasons: dict[str, int] = {}
    try:
        kept_stream = open(kept_sink, "w", encoding="utf-8")
        dropped_stream = open(dropped_sink, "w", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot open filter outputs: {exc}") from exc
    try:
        for pair in read_bitext(source, config.bitext_format, target):
            verdict, reason = standard_filter(pair, ratio, config.max_words, lang_predicate)
            line = f"{pair.source}\t{pair.target}\n"
            if verdict == "keep":
                kept_stream.write(line)
                kept += 1
            else:
                dropped_stream.write(line)
                dropped += 1
                reasons[reason] = reasons.get(reason, 0) + 1
    finally:
        kept_stream.close()
        dropped_stream.close()
    return kept, dropped, reasons


def run_stats(report_source, total_pairs: Optional[int] = None) -> tuple[CorpusStats, str]:
    """Counts table for an existing report; incidence rate needs the total
    pair count, which the report alone does not carry."""
    stats = CorpusStats()
    pair_ids = set()
    for record in read_report(report_source):
        stats.counts[record.detector] = stats.counts.get(record.detector, 0) + 1
        pair_ids.add(record.pair_id)
    stats.flagged_pairs = len(pair_ids)
    stats.total_pairs = total_pairs if total_pairs is not None else 0
    return stats, render_stats(stats)


def run_metamorphic(
    config: RunConfig,
    source: str,
    output_sink: str,
    provenance_sink: Optional[str] = None,
    category: str = "physical-units",
) -> tuple[int, int]:
    """Generate metamorphic instances from a file of source sentences (one
    per line). Output is one new sentence per line; the provenance file is
    line-aligned with it."""
    runtime = Runtime(config)
    table = runtime.tables.get(category)
    if table is None:
        raise ConfigError(f"no table loaded for category {category!r}")
    lines_in = instances_out = 0
    try:
        out_stream = open(output_sink, "w", encoding="utf-8")
        prov_stream = open(provenance_sink, "w", encoding="utf-8") if provenance_sink else None
    except OSError as exc:
        raise InputError(f"cannot open metamorphic outputs: {exc}") from exc
    try:
        with open(source, encoding="utf-8") as stream:
            for lineno, raw in enumerate(stream):
                sentence = raw.rstrip("\n").rstrip("\r")
                lines_in += 1
                for inst in metamorphic_generate(sentence, table, original_id=lineno):
                    out_stream.write(inst.new_source + "\n")
                    if prov_stream is not None:
                        prov_stream.write(
                            json.dumps(
                                {
                                    "original_id": inst.original_id,
                                    "from": inst.substituted_from,
                                    "to": inst.substituted_to,
                                    "type": inst.type_tag,
                                },
                                ensure_ascii=False,
                            )
                            + "\n"
                        )
                    instances_out += 1
    except OSError as exc:
        raise InputError(f"cannot read sentences {source!r}: {exc}") from exc
    finally:
        out_stream.close()
        if prov_stream is not None:
            prov_stream.close()
    return lines_in, instances_out


def run_metacorpus(
    config: RunConfig,
    source: str,
    output_sink: str,
    provenance_sink: Optional[str] = None,
    templates_sink: Optional[str] = None,
    target: Optional[str] = None,
    category: str = "physical-units",
) -> MetaCorpusResult:
    """Generate a synthetic parallel corpus (bitext TSV plus line-aligned
    provenance records) from detector-clean pairs."""
    runtime = Runtime(config)
    table = runtime.tables.get(category)
    if table is None:
        raise ConfigError(f"no table loaded for category {category!r}")
    policy = runtime.guard_policy(category)
    result = meta_corpus_generate(
        read_bitext(source, config.bitext_format, target), table, policy
    )
    try:
        with open(output_sink, "w", encoding="utf-8") as out_stream:
            for mpair in result.pairs:
                out_stream.write(f"{mpair.source}\t{mpair.target}\n")
        if provenance_sink:
            with open(provenance_sink, "w", encoding="utf-8") as prov_stream:
                for mpair in result.pairs:
                    template_id, token, form = mpair.provenance
                    prov_stream.write(
                        json.dumps(
                            {"template": template_id, "source_token": token, "target_form": form},
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
        if templates_sink:
            with open(templates_sink, "w", encoding="utf-8") as tpl_stream:
                for index, tpl in enumerate(result.templates):
                    tpl_stream.write(
                        json.dumps(
                            {
                                "id": index,
                                "pair_id": tpl.pair_id,
                                "source_template": tpl.source_template,
                                "target_template": tpl.target_template,
                                "trigger": tpl.slot_entry.trigger,
                                "matched_target_form": tpl.matched_target_form,
                            },
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
    except OSError as exc:
        raise InputError(f"cannot write meta-corpus outputs: {exc}") from exc
    return result
