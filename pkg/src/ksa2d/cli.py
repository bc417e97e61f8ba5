"""Command-line front end, a thin client of the HTTP service.

By default requests run against the app over an in-process ASGI
transport, so no server needs to be running and exit codes stay usable
in CI; pass --server URL to target a live instance instead. Exit codes:
0 all checks pass, 1 a check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .pipeline import ConfigError, parse_config_file, render_csv, to_json_text

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


class ServiceClient:
    """POSTs either to a live server or to the app over in-process ASGI."""

    def __init__(self, server: str | None):
        self.server = server

    def post(self, endpoint: str, values: dict) -> httpx.Response:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=600.0) as client:
                return client.post(endpoint, json=values)

        from .service import app

        async def go() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://ksa2d.internal", timeout=600.0
            ) as client:
                return await client.post(endpoint, json=values)

        return asyncio.run(go())


def _collect_config(args: argparse.Namespace) -> dict:
    """Merge config file values with command-line flags; flags win."""
    values: dict = {}
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        values.update(parse_config_file(path.read_text()))
    for key in ("signature", "bilinear", "module", "b", "geometry", "fixture", "format"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "fierz_samples", None) is not None:
        values["fierz_samples"] = args.fierz_samples
    if getattr(args, "seed", None) is not None:
        values["seed"] = args.seed
    tolerances = dict(values.get("tolerances", {}))
    for item in getattr(args, "tolerance", None) or []:
        if "=" not in item:
            raise ConfigError(f"--tolerance expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        tolerances[name.strip()] = value.strip()
    if tolerances:
        values["tolerances"] = tolerances
    return values


def _output_format(values: dict) -> str:
    return str(values.pop("format", "markdown"))


def _post(client: ServiceClient, endpoint: str, values: dict) -> dict:
    response = client.post(endpoint, values)
    if response.status_code == 400:
        raise ConfigError(response.json().get("detail", "bad configuration"))
    if response.status_code == 422:
        raise ConfigError(response.text)
    response.raise_for_status()
    return response.json()


def cmd_tables(args) -> int:
    values = _collect_config(args)
    fmt = _output_format(values)
    payload = _post(ServiceClient(args.server), "/tables", values)
    if fmt == "markdown":
        print(payload["markdown"])
    elif fmt == "csv":
        print(payload["csv"])
    else:
        print(to_json_text({k: payload[k] for k in ("table1", "table2", "table3")}))
    return EXIT_OK


def cmd_verify(args) -> int:
    values = _collect_config(args)
    fmt = _output_format(values)
    payload = _post(ServiceClient(args.server), "/verify", values)
    if fmt == "json":
        print(to_json_text(payload))
    else:
        for check in payload["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            residual = f"  residual={check['residual']:.3e}" if check.get("residual") is not None else ""
            print(f"{status}  {check['name']}{residual}  ({check['detail']})")
        total = len(payload["checks"])
        good = sum(1 for c in payload["checks"] if c["passed"])
        print(f"{good}/{total} checks passed")
    return EXIT_OK if payload["passed"] else EXIT_CHECK_FAILED


def cmd_deform(args) -> int:
    values = _collect_config(args)
    values.pop("format", None)
    payload = _post(ServiceClient(args.server), "/deform", values)
    print(to_json_text(payload["document"]))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    values = _collect_config(args)
    values.pop("format", None)
    payload = _post(ServiceClient(args.server), "/cohomology", values)
    print(to_json_text(payload))
    return EXIT_OK


def cmd_geometry(args) -> int:
    values = _collect_config(args)
    fmt = _output_format(values)
    payload = _post(ServiceClient(args.server), "/geometry", values)
    report = payload["report"]
    if fmt == "csv":
        headers = list(report.keys())
        print(render_csv(headers, [[json.dumps(report[h]) for h in headers]]))
    else:
        print(to_json_text(report))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("ksa2d.service:app", host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, with_fixture: bool = False):
    parser.add_argument("--signature", help="1,1 or 0,2")
    parser.add_argument("--bilinear", help="bilinear symmetry sign: + or -")
    parser.add_argument("--module", help="spinor module: full or chiral+")
    parser.add_argument("-b", dest="b", help="deformation parameter (exact rational, e.g. 1/2)")
    parser.add_argument("--geometry", help="all, none, flat, h2, ds2 or ads2")
    parser.add_argument("--format", choices=("markdown", "json", "csv"))
    parser.add_argument("--config", help="path to a key = value configuration file")
    parser.add_argument(
        "--tolerance",
        action="append",
        metavar="NAME=VALUE",
        help="override a named tolerance (repeatable)",
    )
    parser.add_argument("--server", help="base URL of a running service; default runs in-process")
    if with_fixture:
        parser.add_argument(
            "--fixture",
            choices=("none", "corrupted_bracket", "perturbed_metric"),
            help="negative-control fixture to activate",
        )
        parser.add_argument("--fierz-samples", dest="fierz_samples", type=int)
        parser.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksa2d",
        description="2D spinor-geometry workbench: bilinear tables, Spencer-type "
        "cohomology, superalgebra deformations and Killing-spinor geometry checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="reproduce the bilinear and summary tables")
    _add_common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="run the full verification pipeline")
    _add_common(p, with_fixture=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("deform", help="emit a deformed structure-constant document")
    _add_common(p)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("cohomology", help="solve the degree-(2,2) cocycle system")
    _add_common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("geometry", help="run the geometric suite for one model space")
    _add_common(p)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
