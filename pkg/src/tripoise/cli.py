"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it talks to the
app in-process (no server needed); ``--server URL`` points it at a running
instance instead.  Exit codes: 0 poised / success, 1 not poised /
disagreement found, 2 invalid input.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import httpx

from .problemio import format_rational, parse_problem

EXIT_POISED = 0
EXIT_NOT_POISED = 1
EXIT_INVALID = 2


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        # starlette warns about its httpx-based TestClient; in-process use is fine
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _load_payload(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            pf = parse_problem(fh.read())
    except OSError as exc:
        raise ValueError(str(exc)) from exc
    return {
        "vertices": [[format_rational(p.x), format_rational(p.y)] for p in pf.vertices],
        "nodes": [[format_rational(p.x), format_rational(p.y)] for p in pf.nodes],
        "boundary": pf.boundary,
    }


def _post(client: httpx.Client, path: str, payload: dict):
    resp = client.post(path, json=payload)
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail", "invalid input")
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)
    resp.raise_for_status()
    return resp.json()


def cmd_check(args) -> int:
    payload = _load_payload(args.file)
    payload.update(
        trace=args.trace, witness=args.witness, nc_filter=not args.no_nc_filter
    )
    with _client(args.server) as client:
        body = _post(client, "/check", payload)
    if body["poised"]:
        print("POISED")
    else:
        print(f"NOT POISED ({body['reason']})")
    if args.witness:
        witness = body.get("witness")
        if witness:
            print("witness vertex values: " + " ".join(witness))
        elif not body["poised"]:
            print("witness: none available")
    if args.trace:
        for line in body.get("trace") or []:
            print(line)
    return EXIT_POISED if body["poised"] else EXIT_NOT_POISED


def cmd_oracle(args) -> int:
    payload = _load_payload(args.file)
    with _client(args.server) as client:
        body = _post(client, "/oracle", payload)
    print(f"nodes: {body['node_count']}")
    print(f"dimension: {body['dimension']}")
    if body["square"]:
        print(f"determinant: {body['determinant']}")
    else:
        print("determinant: non-square")
    return EXIT_POISED if body["poised"] else EXIT_NOT_POISED


def cmd_fuzz(args) -> int:
    payload = {
        "count": args.count,
        "max_n": args.max_n,
        "seed": args.seed,
        "nc_filter": not args.no_nc_filter,
    }
    with _client(args.server) as client:
        body = _post(client, "/fuzz", payload)
    print(
        f"agree {body['agreements']}/{body['total']} "
        f"(fallback steps: {body['fallback_steps']})"
    )
    if body["disagreements"]:
        out = args.out or "fuzz-counterexample.txt"
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body["counterexample"])
        print(f"counterexample written to {out}", file=sys.stderr)
        return EXIT_NOT_POISED
    return EXIT_POISED


def cmd_interp(args) -> int:
    payload = _load_payload(args.file)
    payload.update(data=args.data, eval_points=[list(p) for p in args.eval or []])
    with _client(args.server) as client:
        resp = client.post("/interp", json=payload)
        if resp.status_code in (400, 422):
            print(f"error: {resp.json().get('detail', 'invalid input')}", file=sys.stderr)
            return EXIT_INVALID
        if resp.status_code == 409:
            print("error: not poised", file=sys.stderr)
            return EXIT_NOT_POISED
        resp.raise_for_status()
        body = resp.json()
    print("vertex values: " + " ".join(body["vertex_values"]))
    for (x, y), value in zip(args.eval or [], body["evaluations"]):
        print(f"s({x}, {y}) = {value}")
    return EXIT_POISED


def cmd_gen(args) -> int:
    payload = {"pattern": args.pattern, "n": args.n, "m": args.m, "seed": args.seed}
    with _client(args.server) as client:
        body = _post(client, "/gen", payload)
    sys.stdout.write(body["text"])
    return EXIT_POISED


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("tripoise.service.app:app", host=args.host, port=args.port)
    return EXIT_POISED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripoise",
        description="Poisedness of piecewise-linear interpolation on triangle strips.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_server(p):
        p.add_argument(
            "--server",
            default=None,
            help="URL of a running service (default: run in-process)",
        )

    p = sub.add_parser("check", help="decide poisedness of a problem file")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print the reduction tree")
    p.add_argument("--witness", action="store_true", help="print a kernel witness")
    p.add_argument(
        "--no-nc-filter",
        action="store_true",
        help="disable the necessary-condition filter (verdict unchanged)",
    )
    add_server(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="exact Vandermonde determinant of a problem file")
    p.add_argument("file")
    add_server(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="cross-check the engine against the oracle")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="counterexample output path")
    p.add_argument("--no-nc-filter", action="store_true")
    add_server(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("interp", help="interpolate data at the nodes")
    p.add_argument("file")
    p.add_argument("--data", nargs="+", required=True, help="rational per node")
    p.add_argument(
        "--eval",
        nargs=2,
        action="append",
        metavar=("X", "Y"),
        help="evaluate the interpolant at a point (repeatable)",
    )
    add_server(p)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("gen", help="generate a problem file on stdout")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    add_server(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
