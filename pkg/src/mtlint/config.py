"""Run configuration: a flat key/value file plus programmatic overrides.

Every field is addressable by one key; ``#`` starts a comment. Values keep
the same spelling on the command line (``--set key=value``) and in service
requests, so the three surfaces share one vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Optional

from .corpus import DETECTOR_NAMES
from .errors import ConfigError
from .sequence import DEFAULT_COVERAGE_BUCKETS
from .token_detectors import GUARD_MODES

DEFAULT_DETECTORS = (
    "physical-units",
    "currencies",
    "large-numbers",
    "web-terms",
    "numerical-values",
    "hallucination-oscillatory",
)


@dataclass(frozen=True)
class RunConfig:
    detectors: tuple = DEFAULT_DETECTORS
    tables_dir: Optional[str] = None  # None = bundled tables
    language_pair: tuple = ("en", "de")
    guards: tuple = ()  # ((category, mode), ...) overrides
    source_locale: tuple = (".", ",")  # (decimal mark, group mark)
    target_locale: tuple = (",", ".")
    stopwords_path: Optional[str] = None  # None = bundled list
    coverage_thresholds: tuple = DEFAULT_COVERAGE_BUCKETS
    oscillatory_margin: int = 4
    oscillatory_floor: int = 10
    natural_min_sources: int = 5
    alignment: Optional[str] = None  # diagonal | file:PATH | sidecar-cmd:CMD | sidecar-tcp:HOST:PORT
    sidecar_timeout: float = 10.0
    shards: int = 1
    bitext_format: str = "tsv"
    max_ratio: str = "1.3"
    max_words: int = 150

    def validate(self) -> "RunConfig":
        for name in self.detectors:
            if name not in DETECTOR_NAMES:
                raise ConfigError(
                    f"unknown detector {name!r} (expected one of {', '.join(DETECTOR_NAMES)})"
                )
        if "coverage" in self.detectors and not self.alignment:
            raise ConfigError("coverage detection requires an alignment provider")
        for category, mode in self.guards:
            if mode not in GUARD_MODES:
                raise ConfigError(f"unknown guard mode {mode!r} for {category!r}")
        if self.shards < 1:
            raise ConfigError("shards must be >= 1")
        if self.bitext_format not in ("tsv", "parallel"):
            raise ConfigError(f"unknown bitext format {self.bitext_format!r}")
        try:
            ratio = Fraction(self.max_ratio)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad max_ratio {self.max_ratio!r}") from exc
        if ratio <= 0 or self.max_words < 1:
            raise ConfigError("max_ratio and max_words must be positive")
        if (
            len(self.source_locale) != 2
            or len(self.target_locale) != 2
            or self.source_locale[0] == self.source_locale[1]
            or self.target_locale[0] == self.target_locale[1]
        ):
            raise ConfigError("locales need distinct decimal and group marks")
        return self

    @property
    def max_ratio_fraction(self) -> Fraction:
        return Fraction(self.max_ratio)


def parse_config_text(text: str, source_name: str = "<config>") -> dict[str, str]:
    settings: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{source_name}:{lineno}: expected 'key = value', got {raw!r}")
        settings[key.strip()] = value.strip()
    return settings


def _parse_thresholds(value: str) -> tuple:
    buckets = []
    for part in value.split(","):
        bound_str, sep, limit_str = part.strip().partition(":")
        if not sep or not limit_str.strip().isdigit():
            raise ConfigError(f"bad coverage bucket {part!r} (expected BOUND:LIMIT)")
        bound_str = bound_str.strip()
        bound = None if bound_str in ("default", "*") else int(bound_str)
        buckets.append((bound, int(limit_str)))
    return tuple(buckets)


def _parse_locale(value: str) -> tuple:
    marks = value.split()
    if len(marks) != 2 or any(len(m) != 1 for m in marks):
        raise ConfigError(
            f"bad locale {value!r} (expected two single characters: decimal group)"
        )
    return (marks[0], marks[1])


def apply_settings(config: RunConfig, settings: dict[str, str]) -> RunConfig:
    guards = dict(config.guards)
    updates: dict = {}
    for key, value in settings.items():
        if key == "detectors":
            updates["detectors"] = tuple(
                name.strip() for name in value.split(",") if name.strip()
            )
        elif key == "tables_dir":
            updates["tables_dir"] = value or None
        elif key == "language_pair":
            src, sep, tgt = value.partition("-")
            if not sep:
                raise ConfigError(f"bad language pair {value!r} (expected xx-yy)")
            updates["language_pair"] = (src, tgt)
        elif key.startswith("guard."):
            guards[key[len("guard.") :]] = value
        elif key == "source_locale":
            updates["source_locale"] = _parse_locale(value)
        elif key == "target_locale":
            updates["target_locale"] = _parse_locale(value)
        elif key == "stopwords":
            updates["stopwords_path"] = value or None
        elif key == "coverage_thresholds":
            updates["coverage_thresholds"] = _parse_thresholds(value)
        elif key in ("oscillatory_margin", "oscillatory_floor", "natural_min_sources",
                     "shards", "max_words"):
            if not value.lstrip("-").isdigit():
                raise ConfigError(f"{key} expects an integer, got {value!r}")
            updates[key] = int(value)
        elif key == "alignment":
            updates["alignment"] = value or None
        elif key == "sidecar_timeout":
            try:
                updates["sidecar_timeout"] = float(value)
            except ValueError as exc:
                raise ConfigError(f"bad sidecar_timeout {value!r}") from exc
        elif key == "format":
            updates["bitext_format"] = value
        elif key == "max_ratio":
            updates["max_ratio"] = value
        else:
            known = [f.name for f in fields(RunConfig)]
            raise ConfigError(f"unknown config key {key!r} (known keys include: {', '.join(sorted(known))})")
    if guards != dict(config.guards):
        updates["guards"] = tuple(sorted(guards.items()))
    return replace(config, **updates)


def load_config(
    path: Optional[str] = None, overrides: Optional[dict[str, str]] = None
) -> RunConfig:
    config = RunConfig()
    if path:
        try:
            with open(path, encoding="utf-8") as stream:
                text = stream.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
        config = apply_settings(config, parse_config_text(text, path))
    if overrides:
        config = apply_settings(config, overrides)
    return config.validate()
