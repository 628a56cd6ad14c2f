"""Core data types, bitext I/O and the detection report format.

A corpus is a stream of :class:`SentencePair`; detectors turn pairs into
:class:`Detection` records; reports are line-delimited JSON, one record per
line, stable across runs.
"""

from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Optional, Union

from .errors import InputError
from .text import strip_framing

log = logging.getLogger(__name__)

# Canonical detector names, in report order.
DETECTOR_NAMES = (
    "physical-units",
    "currencies",
    "large-numbers",
    "web-terms",
    "numerical-values",
    "coverage",
    "hallucination-oscillatory",
    "hallucination-natural",
)

DETECTOR_ORDER = {name: i for i, name in enumerate(DETECTOR_NAMES)}


@dataclass(frozen=True)
class SentencePair:
    """One source sentence and one candidate translation.

    ``id`` is the 0-based input line number; skipped (malformed) lines leave
    gaps so ids stay line-aligned with the input file.
    """

    id: int
    source: str
    target: str


@dataclass(frozen=True)
class TokenSpan:
    """Character span [start, end) into an owning string."""

    start: int
    end: int
    surface: str

    @classmethod
    def of(cls, text: str, start: int, end: int) -> "TokenSpan":
        return cls(start, end, text[start:end])


@dataclass(frozen=True)
class Detection:
    """A single flagged error: boolean semantics, no severity."""

    pair_id: int
    detector: str
    source_spans: tuple[TokenSpan, ...]
    evidence: str


@dataclass
class CorpusStats:
    """Per-detector counts plus run totals."""

    counts: dict[str, int] = field(
        default_factory=lambda: {name: 0 for name in DETECTOR_NAMES}
    )
    total_pairs: int = 0
    flagged_pairs: int = 0
    malformed_lines: int = 0
    alignment_unavailable: int = 0

    def record(self, detections: Iterable[Detection]) -> None:
        flagged = False
        for det in detections:
            self.counts[det.detector] = self.counts.get(det.detector, 0) + 1
            flagged = True
        if flagged:
            self.flagged_pairs += 1

    @property
    def total_errors(self) -> int:
        return sum(self.counts.values())

    @property
    def incidence_rate(self) -> float:
        return self.flagged_pairs / self.total_pairs if self.total_pairs else 0.0


PathOrStream = Union[str, "io.TextIOBase", IO[str]]


def _open_text(source: PathOrStream, mode: str = "r") -> tuple[IO[str], bool]:
    if isinstance(source, str):
        try:
            return open(source, mode, encoding="utf-8", newline=""), True
        except OSError as exc:
            raise InputError(f"cannot open {source!r}: {exc}") from exc
    return source, False


def _clean(line: str) -> str:
    return strip_framing(line.rstrip("\n").rstrip("\r"))


def read_bitext(
    source: PathOrStream,
    fmt: str = "tsv",
    target: Optional[PathOrStream] = None,
    stats: Optional[CorpusStats] = None,
) -> Iterator[SentencePair]:
    """Stream sentence pairs from a TSV file or two parallel files.

    TSV mode expects exactly one TAB per line; malformed lines are logged,
    counted on ``stats`` and skipped. Parallel mode requires both files to
    have the same number of lines and fails naming both counts otherwise.
    """
    if fmt == "tsv":
        yield from _read_tsv(source, stats)
    elif fmt == "parallel":
        if target is None:
            raise InputError("parallel format requires a target file")
        yield from _read_parallel(source, target, stats)
    else:
        raise InputError(f"unknown bitext format {fmt!r} (expected tsv or parallel)")


def _read_tsv(source: PathOrStream, stats: Optional[CorpusStats]) -> Iterator[SentencePair]:
    stream, owned = _open_text(source)
    try:
        for lineno, line in enumerate(stream):
            line = _clean(line)
            if line.count("\t") != 1:
                log.warning("line %d: expected exactly one TAB, skipping", lineno)
                if stats is not None:
                    stats.malformed_lines += 1
                continue
            src, tgt = line.split("\t")
            yield SentencePair(id=lineno, source=src, target=tgt)
    finally:
        if owned:
            stream.close()


def _read_parallel(
    source: PathOrStream, target: PathOrStream, stats: Optional[CorpusStats]
) -> Iterator[SentencePair]:
    src_stream, src_owned = _open_text(source)
    tgt_stream, tgt_owned = _open_text(target)
    try:
        lineno = 0
        while True:
            src_line = src_stream.readline()
            tgt_line = tgt_stream.readline()
            if not src_line and not tgt_line:
                return
            if not src_line or not tgt_line:
                # Drain the longer stream so the error names both totals.
                longer_stream = tgt_stream if not src_line else src_stream
                remaining = 1
                for _ in longer_stream:
                    remaining += 1
                if not src_line:
                    src_count, tgt_count = lineno, lineno + remaining
                else:
                    src_count, tgt_count = lineno + remaining, lineno
                raise InputError(
                    f"parallel files differ in length: source has {src_count} "
                    f"lines, target has {tgt_count} lines"
                )
            yield SentencePair(
                id=lineno, source=_clean(src_line), target=_clean(tgt_line)
            )
            lineno += 1
    finally:
        if src_owned:
            src_stream.close()
        if tgt_owned:
            tgt_stream.close()


def detection_to_record(det: Detection) -> dict:
    return {
        "pair_id": det.pair_id,
        "detector": det.detector,
        "spans": [[s.start, s.end] for s in det.source_spans],
        "evidence": det.evidence,
    }


def write_report(detections: Iterable[Detection], sink: PathOrStream) -> None:
    """Write one JSON record per detection, LF-terminated, UTF-8."""
    stream, owned = _open_text(sink, "w")
    try:
        for det in detections:
            stream.write(
                json.dumps(detection_to_record(det), ensure_ascii=False) + "\n"
            )
    except OSError as exc:
        raise InputError(f"report write failed: {exc}") from exc
    finally:
        if owned:
            stream.close()


@dataclass(frozen=True)
class ReportRecord:
    """A detection as read back from a report (spans without surfaces)."""

    pair_id: int
    detector: str
    spans: tuple[tuple[int, int], ...]
    evidence: str


def read_report(source: PathOrStream) -> Iterator[ReportRecord]:
    stream, owned = _open_text(source)
    try:
        for lineno, line in enumerate(stream):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                yield ReportRecord(
                    pair_id=int(obj["pair_id"]),
                    detector=str(obj["detector"]),
                    spans=tuple((int(s), int(e)) for s, e in obj["spans"]),
                    evidence=str(obj["evidence"]),
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise InputError(f"report line {lineno}: bad record: {exc}") from exc
    finally:
        if owned:
            stream.close()


def render_stats(stats: CorpusStats, title: str = "Erroneous translations") -> str:
    """Plain-text counts table: one row per detector plus totals."""
    width = max(len(name) for name in DETECTOR_NAMES) + 2
    lines = [title, "-" * (width + 10)]
    for name in DETECTOR_NAMES:
        lines.append(f"{name:<{width}}{stats.counts.get(name, 0):>10}")
    lines.append("-" * (width + 10))
    lines.append(f"{'total errors':<{width}}{stats.total_errors:>10}")
    lines.append(f"{'pairs processed':<{width}}{stats.total_pairs:>10}")
    lines.append(f"{'pairs flagged':<{width}}{stats.flagged_pairs:>10}")
    lines.append(f"{'incidence rate':<{width}}{stats.incidence_rate:>9.4%}")
    if stats.malformed_lines:
        lines.append(f"{'malformed lines':<{width}}{stats.malformed_lines:>10}")
    if stats.alignment_unavailable:
        lines.append(
            f"{'alignment unavailable':<{width}}{stats.alignment_unavailable:>10}"
        )
    return "\n".join(lines)
