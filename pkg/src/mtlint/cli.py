"""Command-line client for the detection service.

The CLI always speaks the HTTP API: with ``--server`` it talks to a running
service, otherwise it mounts the app in-process over an ASGI transport. All
business logic lives in the service and the core package; this module only
shapes requests and prints responses.

Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 internal error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Optional

import httpx

EXIT_BY_CATEGORY = {"usage": 1, "io": 2, "internal": 3}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server", help="URL of a running mtlint service; default runs in-process"
    )
    common.add_argument("--config", help="path to a flat key/value config file")
    common.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )

    parser = _Parser(prog="mtlint", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, help_text: str):
        return sub.add_parser(name, help=help_text, parents=[common])

    detect = add_parser("detect", "run detectors over a corpus, write a report")
    detect.add_argument("--input", "-i", required=True, help="bitext TSV (or source file with --target-input)")
    detect.add_argument("--target-input", help="target side for parallel format")
    detect.add_argument("--report", "-o", help="detection report path (JSON lines)")

    filt = add_parser("filter", "split a corpus into clean and removed streams")
    filt.add_argument("--input", "-i", required=True)
    filt.add_argument("--target-input")
    filt.add_argument("--clean", required=True)
    filt.add_argument("--removed", required=True)
    filt.add_argument("--report")

    stdf = add_parser("stdfilter", "baseline length/ratio filter")
    stdf.add_argument("--input", "-i", required=True)
    stdf.add_argument("--target-input")
    stdf.add_argument("--kept", required=True)
    stdf.add_argument("--dropped", required=True)

    stats = add_parser("stats", "summarize an existing report")
    stats.add_argument("--report", "-r", required=True)
    stats.add_argument("--total-pairs", type=int, help="corpus size, for the incidence rate")

    meta = add_parser("metamorphic", "generate same-type substitution instances")
    meta.add_argument("--input", "-i", required=True, help="one source sentence per line")
    meta.add_argument("--output", "-o", required=True)
    meta.add_argument("--provenance")
    meta.add_argument("--category", default="physical-units")

    mc = add_parser("metacorpus", "generate synthetic pairs from clean templates")
    mc.add_argument("--input", "-i", required=True)
    mc.add_argument("--target-input")
    mc.add_argument("--output", "-o", required=True)
    mc.add_argument("--provenance")
    mc.add_argument("--templates")
    mc.add_argument("--category", default="physical-units")

    check = add_parser("check", "check one source/translation pair")
    check.add_argument("--source", "-s", required=True)
    check.add_argument("--target", "-t", required=True)

    tables = add_parser("tables", "list loaded transformation tables")
    tables.add_argument("--language-pair", default="en-de")

    serve = add_parser("serve", "run the detection service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8011)

    return parser


def _options(args: argparse.Namespace) -> dict:
    settings = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            print(f"mtlint: error: --set expects KEY=VALUE, got {item!r}", file=sys.stderr)
            raise SystemExit(1)
        settings[key.strip()] = value.strip()
    return {"config_path": args.config, "settings": settings}


async def _request(args, method: str, path: str, payload: Optional[dict] = None):
    if args.server:
        transport = None
        base_url = args.server
    else:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        base_url = "http://mtlint.internal"
    async with httpx.AsyncClient(
        transport=transport, base_url=base_url, timeout=None
    ) as client:
        if method == "GET":
            response = await client.get(path, params=payload)
        else:
            response = await client.post(path, json=payload)
    try:
        body = response.json()
    except ValueError:
        body = {"error": {"category": "internal", "message": response.text[:500]}}
    return response.status_code, body


def _call(args, method: str, path: str, payload: Optional[dict] = None):
    try:
        return asyncio.run(_request(args, method, path, payload))
    except httpx.HTTPError as exc:
        print(f"mtlint: error: cannot reach service: {exc}", file=sys.stderr)
        raise SystemExit(2) from exc


def _fail_if_error(status: int, body: dict) -> None:
    error = body.get("error") if isinstance(body, dict) else None
    if status >= 400 or error:
        if not error:
            error = {"category": "internal", "message": json.dumps(body)[:500]}
        if status == 422:  # request model validation
            error = {"category": "usage", "message": json.dumps(body.get("detail", body))[:500]}
        print(f"mtlint: error ({error['category']}): {error['message']}", file=sys.stderr)
        raise SystemExit(EXIT_BY_CATEGORY.get(error["category"], 3))


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
        return 0

    if args.command == "check":
        payload = {"source": args.source, "target": args.target, "options": _options(args)}
        status, body = _call(args, "POST", "/api/check", payload)
        _fail_if_error(status, body)
        for det in body["detections"]:
            print(json.dumps(det, ensure_ascii=False))
        return 0

    if args.command == "tables":
        status, body = _call(args, "GET", "/api/tables", {"language_pair": args.language_pair})
        _fail_if_error(status, body)
        for table in body:
            print(f"{table['category']}: {table['entries']} triggers ({table['language_pair']})")
        return 0

    if args.command == "detect":
        payload = {
            "input": args.input,
            "target_input": args.target_input,
            "report": args.report,
            "options": _options(args),
        }
        status, body = _call(args, "POST", "/api/jobs/detect", payload)
        _fail_if_error(status, body)
        print(body["stats_text"])
        if body["report"]:
            print(f"report written to {body['report']}")
        return 0

    if args.command == "filter":
        payload = {
            "input": args.input,
            "target_input": args.target_input,
            "clean": args.clean,
            "removed": args.removed,
            "report": args.report,
            "options": _options(args),
        }
        status, body = _call(args, "POST", "/api/jobs/filter", payload)
        _fail_if_error(status, body)
        print(f"kept {body['kept']} pairs, removed {body['removed']}")
        return 0

    if args.command == "stdfilter":
        payload = {
            "input": args.input,
            "target_input": args.target_input,
            "kept": args.kept,
            "dropped": args.dropped,
            "options": _options(args),
        }
        status, body = _call(args, "POST", "/api/jobs/stdfilter", payload)
        _fail_if_error(status, body)
        reasons = ", ".join(f"{k}={v}" for k, v in sorted(body["reasons"].items())) or "none"
        print(f"kept {body['kept']} pairs, dropped {body['dropped']} (reasons: {reasons})")
        return 0

    if args.command == "stats":
        payload = {"report": args.report, "total_pairs": args.total_pairs}
        status, body = _call(args, "POST", "/api/jobs/stats", payload)
        _fail_if_error(status, body)
        print(body["stats_text"])
        return 0

    if args.command == "metamorphic":
        payload = {
            "input": args.input,
            "output": args.output,
            "provenance": args.provenance,
            "category": args.category,
            "options": _options(args),
        }
        status, body = _call(args, "POST", "/api/jobs/metamorphic", payload)
        _fail_if_error(status, body)
        print(f"{body['sentences_in']} sentences in, {body['instances_out']} instances out")
        return 0

    if args.command == "metacorpus":
        payload = {
            "input": args.input,
            "target_input": args.target_input,
            "output": args.output,
            "provenance": args.provenance,
            "templates": args.templates,
            "category": args.category,
            "options": _options(args),
        }
        status, body = _call(args, "POST", "/api/jobs/metacorpus", payload)
        _fail_if_error(status, body)
        skipped = ", ".join(f"{k}={v}" for k, v in sorted(body["skipped"].items())) or "none"
        print(
            f"{body['templates']} templates, {body['pairs']} pairs "
            f"(skipped: {skipped})"
        )
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
