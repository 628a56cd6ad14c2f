"""The detection service: a FastAPI app wrapping the core package.

Inline endpoints (/api/check, /api/detect, /api/metamorphic) carry sentence
pairs in the request and serve interactive QA clients. Job endpoints
(/api/jobs/*) run corpus-scale work against server-local paths so streaming
throughput never depends on HTTP. Errors map to a structured body
{"error": {"category", "message"}} that clients translate into exit codes.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..alignment import DiagonalProvider
from ..config import RunConfig, load_config
from ..corpus import SentencePair, CorpusStats, render_stats, write_report
from ..errors import ConfigError, MtlintError
from ..generate import metamorphic_generate
from ..pipeline import (
    Runtime,
    detect_pair,
    run_detect,
    run_filter,
    run_metacorpus,
    run_metamorphic,
    run_stats,
    run_stdfilter,
)
from .models import (
    CheckRequest,
    CheckResponse,
    ConfigOptions,
    DetectBatchRequest,
    DetectBatchResponse,
    DetectJobRequest,
    DetectJobResponse,
    DetectionOut,
    FilterJobRequest,
    FilterJobResponse,
    MetaCorpusJobRequest,
    MetaCorpusJobResponse,
    MetamorphicInstanceOut,
    MetamorphicJobRequest,
    MetamorphicJobResponse,
    MetamorphicRequest,
    MetamorphicResponse,
    StatsJobRequest,
    StatsJobResponse,
    StatsOut,
    StdFilterJobRequest,
    StdFilterJobResponse,
    TableInfo,
)

log = logging.getLogger(__name__)

_STATUS_BY_CATEGORY = {"usage": 400, "io": 400, "internal": 500}


def _config_from(options: ConfigOptions) -> RunConfig:
    return load_config(options.config_path, options.settings)


@lru_cache(maxsize=8)
def _cached_runtime(config: RunConfig) -> Runtime:
    return Runtime(config)


def _inline_links(runtime: Runtime, pair: SentencePair):
    """Inline endpoints carry no corpus context, so coverage runs only with
    the stateless diagonal provider; file and sidecar providers are for
    corpus jobs."""
    if runtime.coverage and runtime.config.alignment == "diagonal":
        return DiagonalProvider().links_for(pair)
    return None


def create_app() -> FastAPI:
    app = FastAPI(title="mtlint", version=__version__)

    @app.exception_handler(MtlintError)
    async def _mtlint_error(request: Request, exc: MtlintError) -> JSONResponse:
        return JSONResponse(
            status_code=_STATUS_BY_CATEGORY.get(exc.category, 500),
            content={"error": {"category": exc.category, "message": str(exc)}},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/api/tables")
    def tables(language_pair: str = "en-de") -> list[TableInfo]:
        src, sep, tgt = language_pair.partition("-")
        if not sep:
            raise ConfigError(f"bad language pair {language_pair!r}")
        runtime = _cached_runtime(
            load_config(overrides={"language_pair": language_pair})
        )
        return [
            TableInfo(
                category=t.category,
                language_pair="-".join(t.language_pair),
                entries=len(t.entries),
                triggers=[e.trigger for e in t.entries],
            )
            for t in runtime.tables.values()
        ]

    @app.post("/api/check")
    def check(request: CheckRequest) -> CheckResponse:
        runtime = _cached_runtime(_config_from(request.options))
        pair = SentencePair(0, request.source, request.target)
        detections = detect_pair(runtime, pair, _inline_links(runtime, pair))
        return CheckResponse(
            detections=[DetectionOut.from_detection(d) for d in detections]
        )

    @app.post("/api/detect")
    def detect_batch(request: DetectBatchRequest) -> DetectBatchResponse:
        runtime = _cached_runtime(_config_from(request.options))
        stats = CorpusStats()
        out = []
        for row in request.pairs:
            pair = SentencePair(row.id, row.source, row.target)
            stats.total_pairs += 1
            detections = detect_pair(runtime, pair, _inline_links(runtime, pair))
            stats.record(detections)
            out.extend(DetectionOut.from_detection(d) for d in detections)
        return DetectBatchResponse(detections=out, stats=StatsOut.from_stats(stats))

    @app.post("/api/metamorphic")
    def metamorphic(request: MetamorphicRequest) -> MetamorphicResponse:
        runtime = _cached_runtime(_config_from(request.options))
        table = runtime.tables.get(request.category)
        if table is None:
            raise ConfigError(f"no table loaded for category {request.category!r}")
        instances = metamorphic_generate(request.sentence, table)
        return MetamorphicResponse(
            instances=[
                MetamorphicInstanceOut(
                    new_source=i.new_source,
                    substituted_from=i.substituted_from,
                    substituted_to=i.substituted_to,
                    type_tag=i.type_tag,
                )
                for i in instances
            ]
        )

    @app.post("/api/jobs/detect")
    def detect_job(request: DetectJobRequest) -> DetectJobResponse:
        config = _config_from(request.options)
        detections, stats = run_detect(config, request.input, request.target_input)
        if request.report:
            write_report(detections, request.report)
        return DetectJobResponse(
            report=request.report,
            stats=StatsOut.from_stats(stats),
            stats_text=render_stats(stats),
        )

    @app.post("/api/jobs/filter")
    def filter_job(request: FilterJobRequest) -> FilterJobResponse:
        config = _config_from(request.options)
        stats, kept, removed = run_filter(
            config,
            request.input,
            request.clean,
            request.removed,
            target=request.target_input,
            report_sink=request.report,
        )
        return FilterJobResponse(
            kept=kept, removed=removed, stats=StatsOut.from_stats(stats)
        )

    @app.post("/api/jobs/stdfilter")
    def stdfilter_job(request: StdFilterJobRequest) -> StdFilterJobResponse:
        config = _config_from(request.options)
        kept, dropped, reasons = run_stdfilter(
            config, request.input, request.kept, request.dropped, request.target_input
        )
        return StdFilterJobResponse(kept=kept, dropped=dropped, reasons=reasons)

    @app.post("/api/jobs/stats")
    def stats_job(request: StatsJobRequest) -> StatsJobResponse:
        stats, text = run_stats(request.report, request.total_pairs)
        return StatsJobResponse(stats=StatsOut.from_stats(stats), stats_text=text)

    @app.post("/api/jobs/metamorphic")
    def metamorphic_job(request: MetamorphicJobRequest) -> MetamorphicJobResponse:
        config = _config_from(request.options)
        lines_in, instances = run_metamorphic(
            config, request.input, request.output, request.provenance, request.category
        )
        return MetamorphicJobResponse(sentences_in=lines_in, instances_out=instances)

    @app.post("/api/jobs/metacorpus")
    def metacorpus_job(request: MetaCorpusJobRequest) -> MetaCorpusJobResponse:
        config = _config_from(request.options)
        result = run_metacorpus(
            config,
            request.input,
            request.output,
            request.provenance,
            request.templates,
            target=request.target_input,
            category=request.category,
        )
        return MetaCorpusJobResponse(
            templates=len(result.templates),
            pairs=len(result.pairs),
            skipped=result.skipped,
        )

    return app


app = create_app()
