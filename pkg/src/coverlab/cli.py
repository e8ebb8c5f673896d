"""Command-line driver. Thin client over the HTTP service.

Results go to --output (or stdout); progress and diagnostics go to
stderr. Exit codes: 0 success, 2 domain error, 3 resource budget,
4 root bracketing failure, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import pydantic

from coverlab.client import run_via_service
from coverlab.errors import EXIT_CODES
from coverlab.reports import COMMANDS
from coverlab.service.models import ExperimentConfig

_CONFIG_FIELDS = (
    "n",
    "m",
    "d",
    "k",
    "ell",
    "delta",
    "seed",
    "trials",
    "edges",
    "colors",
    "nu",
    "model",
    "mode",
    "event",
    "budget",
    "max_mu",
    "max_nu",
    "format",
)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (required for sampling)")
    p.add_argument("--trials", type=int, default=None, help="number of trials")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    p.add_argument("--output", default=None, help="report file (default: stdout)")
    p.add_argument("--server", default=None, help="service URL (default: run in-process)")


def _add_graph_size(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=None, help="number of vertices")
    p.add_argument("--m", type=int, default=None, help="number of edges")
    p.add_argument("--d", type=float, default=None, help="average degree (alternative to --m)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverlab",
        description="Covers, cores, and first-moment rate functions for random graph coloring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a random graph and emit it")
    _add_graph_size(p)
    p.add_argument("--k", type=int, default=None, help="colors (planted model only)")
    p.add_argument(
        "--model",
        choices=("gnm", "multigraph", "planted"),
        default=None,
        help="gnm: uniform simple; multigraph: independent ordered pairs; planted: proper by construction",
    )
    _add_common(p)

    p = sub.add_parser("color", help="count or enumerate proper colorings")
    p.add_argument("--edges", default=None, help="builtin name, file, or edge-list text")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="number of colors")
    p.add_argument("--nu", default=None, help="class-size profile, e.g. 2,2,1")
    p.add_argument("--mode", choices=("count", "enumerate"), default=None)
    _add_common(p)

    p = sub.add_parser("whiten", help="map a coloring to its cover")
    p.add_argument("--edges", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--colors", default=None, help="coloring file or comma-separated values")
    _add_common(p)

    p = sub.add_parser("census", help="valid-cover census with cluster statistics")
    p.add_argument("--edges", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="max colorings to enumerate")
    p.add_argument("--include-colorings", action="store_true", help="list each cluster's colorings")
    _add_common(p)

    p = sub.add_parser("core", help="core decomposition, freeze and expansion checks")
    p.add_argument("--edges", default=None, help="graph for mode=check")
    p.add_argument("--colors", default=None, help="coloring for mode=check")
    _add_graph_size(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--ell", type=float, default=None, help="density parameter")
    p.add_argument("--delta", type=float, default=None, help="freeze distance fraction")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--mode", choices=("check", "ensemble"), default=None)
    _add_common(p)

    p = sub.add_parser("bounds", help="colorability bounds table over k")
    p.add_argument(
        "--k", type=int, action="append", dest="ks", default=None, help="k value (repeatable)"
    )
    _add_common(p)

    p = sub.add_parser("montecarlo", help="empirical moments vs exact expectations")
    _add_graph_size(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--nu", default=None, help="restrict to one class-size profile")
    _add_common(p)

    p = sub.add_parser("model-compare", help="event probability under the two graph models")
    _add_graph_size(p)
    p.add_argument("--event", choices=("triangle-free",), default=None)
    _add_common(p)

    p = sub.add_parser("ballsbins-check", help="occupancy identity grid and overhead constants")
    p.add_argument("--max-mu", type=int, default=None, dest="max_mu")
    p.add_argument("--max-nu", type=int, default=None, dest="max_nu")
    p.add_argument(
        "--lambda",
        type=float,
        action="append",
        dest="lambdas",
        default=None,
        help="rate to test (repeatable)",
    )
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    payload: dict = {"subcommand": args.command}
    for field in _CONFIG_FIELDS:
        value = getattr(args, field, None)
        if value is not None:
            payload[field] = value
    if getattr(args, "ks", None):
        payload["ks"] = args.ks
    if getattr(args, "lambdas", None):
        payload["lambdas"] = args.lambdas
    if getattr(args, "include_colorings", False):
        payload["include_colorings"] = True
    return ExperimentConfig(**payload)


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)
        print(f"wrote {output}", file=sys.stderr)


def _error_exit(record: dict, output: Optional[str]) -> int:
    kind = record.get("error", {}).get("kind", "internal")
    _emit(json.dumps(record, sort_keys=True, indent=2) + "\n", output)
    return EXIT_CODES.get(kind, 1)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("coverlab.service.app:app", host=args.host, port=args.port)
        return 0

    try:
        cfg = _config_from_args(args)
    except pydantic.ValidationError as exc:
        detail = [
            {"loc": list(e.get("loc", ())), "msg": e.get("msg"), "type": e.get("type")}
            for e in exc.errors()
        ]
        record = {"error": {"kind": "domain", "message": "invalid config", "detail": detail}}
        return _error_exit(record, args.output)

    if cfg.format == "csv" and args.command != "bounds":
        record = {
            "error": {"kind": "domain", "message": "csv output is only for the bounds table"}
        }
        return _error_exit(record, args.output)

    print(f"running {args.command} ...", file=sys.stderr)
    try:
        reply = run_via_service(args.command, cfg, server=args.server)
    except Exception as exc:  # connection problems and the like
        record = {"error": {"kind": "internal", "message": str(exc)}}
        return _error_exit(record, args.output)

    try:
        report = reply.json()
    except json.JSONDecodeError:
        record = {"error": {"kind": "internal", "message": f"bad reply: {reply.text[:200]}"}}
        return _error_exit(record, args.output)

    if reply.status != 200 or "error" in report:
        return _error_exit(report, args.output)

    if cfg.format == "csv":
        _emit(report["result"]["csv"], args.output)
    else:
        _emit(reply.text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
