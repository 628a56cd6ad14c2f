"""Pydantic request/response models for the detection service.

Corpus-scale jobs reference server-local paths so the data never crosses the
wire; inline endpoints carry the pairs themselves. ``settings`` dictionaries
use the same flat keys as the config file.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from ..corpus import CorpusStats, Detection


class ConfigOptions(BaseModel):
    config_path: Optional[str] = None
    settings: dict[str, str] = Field(default_factory=dict)


class PairIn(BaseModel):
    id: int = 0
    source: str
    target: str


class DetectionOut(BaseModel):
    pair_id: int
    detector: str
    spans: list[tuple[int, int]]
    evidence: str

    @classmethod
    def from_detection(cls, det: Detection) -> "DetectionOut":
        return cls(
            pair_id=det.pair_id,
            detector=det.detector,
            spans=[(s.start, s.end) for s in det.source_spans],
            evidence=det.evidence,
        )


class StatsOut(BaseModel):
    counts: dict[str, int]
    total_pairs: int
    flagged_pairs: int
    total_errors: int
    incidence_rate: float
    malformed_lines: int = 0
    alignment_unavailable: int = 0

    @classmethod
    def from_stats(cls, stats: CorpusStats) -> "StatsOut":
        return cls(
            counts=dict(stats.counts),
            total_pairs=stats.total_pairs,
            flagged_pairs=stats.flagged_pairs,
            total_errors=stats.total_errors,
            incidence_rate=stats.incidence_rate,
            malformed_lines=stats.malformed_lines,
            alignment_unavailable=stats.alignment_unavailable,
        )


class CheckRequest(BaseModel):
    source: str
    target: str
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class CheckResponse(BaseModel):
    detections: list[DetectionOut]


class DetectBatchRequest(BaseModel):
    pairs: list[PairIn]
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class DetectBatchResponse(BaseModel):
    detections: list[DetectionOut]
    stats: StatsOut


class MetamorphicRequest(BaseModel):
    sentence: str
    category: str = "physical-units"
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class MetamorphicInstanceOut(BaseModel):
    new_source: str
    substituted_from: str
    substituted_to: str
    type_tag: str


class MetamorphicResponse(BaseModel):
    instances: list[MetamorphicInstanceOut]


class TableInfo(BaseModel):
    category: str
    language_pair: str
    entries: int
    triggers: list[str]


# --- corpus jobs (server-local paths) -------------------------------------------

class DetectJobRequest(BaseModel):
    input: str
    target_input: Optional[str] = None  # parallel format second file
    report: Optional[str] = None
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class DetectJobResponse(BaseModel):
    report: Optional[str]
    stats: StatsOut
    stats_text: str


class FilterJobRequest(BaseModel):
    input: str
    target_input: Optional[str] = None
    clean: str
    removed: str
    report: Optional[str] = None
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class FilterJobResponse(BaseModel):
    kept: int
    removed: int
    stats: StatsOut


class StdFilterJobRequest(BaseModel):
    input: str
    target_input: Optional[str] = None
    kept: str
    dropped: str
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class StdFilterJobResponse(BaseModel):
    kept: int
    dropped: int
    reasons: dict[str, int]


class StatsJobRequest(BaseModel):
    report: str
    total_pairs: Optional[int] = None


class StatsJobResponse(BaseModel):
    stats: StatsOut
    stats_text: str


class MetamorphicJobRequest(BaseModel):
    input: str  # one source sentence per line
    output: str
    provenance: Optional[str] = None
    category: str = "physical-units"
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class MetamorphicJobResponse(BaseModel):
    sentences_in: int
    instances_out: int


class MetaCorpusJobRequest(BaseModel):
    input: str
    target_input: Optional[str] = None
    output: str
    provenance: Optional[str] = None
    templates: Optional[str] = None
    category: str = "physical-units"
    options: ConfigOptions = Field(default_factory=ConfigOptions)


class MetaCorpusJobResponse(BaseModel):
    templates: int
    pairs: int
    skipped: dict[str, int]
