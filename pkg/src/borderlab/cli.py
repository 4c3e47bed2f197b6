"""Command-line front end.

Every subcommand builds the same request model the HTTP service accepts,
invokes the shared handler in-process, and prints a RunReport as JSON to
stdout.  Inputs come inline as JSON, from a file path, or from stdin ("-").

Exit codes: 0 for a completed run (an infeasible verdict is a result, not an
error), 1 for domain errors (bad input, cap overruns, internal identity
violations), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from pydantic import ValidationError

from .errors import BorderlabError
from .hypercube import DEFAULT_CAP
from .service import handlers, schemas
from . import codec


def _load(value: str):
    """Inline JSON, a file path, or '-' for stdin."""
    if value == "-":
        return json.load(sys.stdin)
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        pass
    with open(value, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _threads(args) -> int:
    if args.threads is not None:
        threads = args.threads
    else:
        threads = int(os.environ.get("BORDERLAB_THREADS", "1"))
    if threads < 1:
        raise ValueError("--threads must be at least 1")
    return threads


def _report(args, argv, payload, results) -> dict:
    return {
        "command": list(argv),
        "inputs_digest": codec.digest(payload),
        "results": results,
        "caps": {
            "cap": args.cap if args.cap is not None else DEFAULT_CAP,
            "threads": _threads(args),
        },
    }


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--cap", type=int, default=None, help="override the enumeration cap")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (also BORDERLAB_THREADS); computations are pure",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borderlab",
        description="Exact-rational mechanism-design and Boolean-function toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an environment's invariants")
    p.add_argument("--env", required=True, help="environment JSON (inline, path, or -)")
    _common(p)

    p = sub.add_parser("feasible", help="interim-rule feasibility")
    p.add_argument("--env", required=True)
    p.add_argument("--rule", required=True, help='interim rule JSON: {"y": [[...]]} or [[...]]')
    p.add_argument("--method", choices=["lp", "border"], default="lp")
    _common(p)

    p = sub.add_parser("optrev", help="optimal expected revenue")
    p.add_argument("--env", required=True)
    p.add_argument("--method", choices=["lp", "myerson"], default="lp")
    _common(p)

    p = sub.add_parser("optwel", help="optimal expected welfare")
    p.add_argument("--env", required=True)
    _common(p)

    p = sub.add_parser("khintchine", help="exact Khintchine constant")
    p.add_argument("--weights", required=True)
    _common(p)

    p = sub.add_parser("pp-rev", help="public-project optimal revenue K(a)/2")
    p.add_argument("--weights", required=True)
    _common(p)

    p = sub.add_parser("pp-audit", help="audit the threshold mechanism exhaustively")
    p.add_argument("--weights", required=True)
    _common(p)

    chow = sub.add_parser("chow", help="Chow-parameter operations")
    chow_sub = chow.add_subparsers(dest="chow_command", required=True)

    p = chow_sub.add_parser("compute", help="Chow vector of a bounded function")
    p.add_argument("--function", required=True, help="2^n rational strings, x_1 is the LSB")
    _common(p)

    p = chow_sub.add_parser("opt", help="maximize an affine functional over the polytope")
    p.add_argument("--a0", default="0")
    p.add_argument("--weights", required=True)
    _common(p)

    p = chow_sub.add_parser("member", help="polytope membership (exact LP)")
    p.add_argument("--vector", required=True)
    _common(p)

    p = chow_sub.add_parser("vertex", help="vertex test with halfspace recovery")
    p.add_argument("--vector", required=True)
    _common(p)

    p = chow_sub.add_parser("from-conditionals", help="conditional probabilities to Chow vector")
    p.add_argument("--conditionals", required=True, help="[Pr[E], Pr[E|X_1], ...]")
    _common(p)

    p = chow_sub.add_parser("majority", help="majority extremality report")
    p.add_argument("--n", type=int, required=True)
    _common(p)

    reduce_p = sub.add_parser("reduce", help="counting-reduction gadgets")
    reduce_sub = reduce_p.add_subparsers(dest="reduce_command", required=True)

    p = reduce_sub.add_parser("partition", help="balanced signings via Khintchine constants")
    p.add_argument("--weights", required=True, help="positive integers")
    _common(p)

    p = reduce_sub.add_parser("stconn", help="directed s-t connection probability via matching")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="blue multiplicity")
    _common(p)

    p = reduce_sub.add_parser("matroid", help="undirected s-t probability via components")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _build_request(args):
    cap = args.cap
    cmd = args.command
    if cmd == "validate":
        payload = _load(args.env)
        return payload, schemas.EnvironmentModel(**payload), handlers.validate_environment
    if cmd == "feasible":
        payload = {"environment": _load(args.env), "y": _load(args.rule), "method": args.method}
        rule = payload["y"]
        if isinstance(rule, dict):
            payload["y"] = rule["y"]
        return payload, schemas.FeasibleRequest(**payload, cap=cap), handlers.feasible
    if cmd == "optrev":
        payload = {"environment": _load(args.env), "method": args.method}
        return payload, schemas.OptRevRequest(**payload, cap=cap), handlers.optrev
    if cmd == "optwel":
        payload = {"environment": _load(args.env)}
        return payload, schemas.OptWelRequest(**payload, cap=cap), handlers.optwel
    if cmd == "khintchine":
        payload = {"weights": _load(args.weights)}
        return payload, schemas.WeightsRequest(**payload, cap=cap), handlers.khintchine
    if cmd == "pp-rev":
        payload = {"weights": _load(args.weights)}
        return payload, schemas.WeightsRequest(**payload, cap=cap), handlers.pp_rev
    if cmd == "pp-audit":
        payload = {"weights": _load(args.weights)}
        return payload, schemas.WeightsRequest(**payload, cap=cap), handlers.pp_audit
    if cmd == "chow":
        sub = args.chow_command
        if sub == "compute":
            payload = {"function": _load(args.function)}
            return payload, schemas.ChowComputeRequest(**payload, cap=cap), handlers.chow_compute
        if sub == "opt":
            payload = {"a0": args.a0, "weights": _load(args.weights)}
            return payload, schemas.ChowOptRequest(**payload, cap=cap), handlers.chow_opt
        if sub == "member":
            payload = {"vector": _load(args.vector)}
            return payload, schemas.ChowVectorRequest(**payload, cap=cap), handlers.chow_member
        if sub == "vertex":
            payload = {"vector": _load(args.vector)}
            return payload, schemas.ChowVectorRequest(**payload, cap=cap), handlers.chow_vertex
        if sub == "from-conditionals":
            payload = {"conditionals": _load(args.conditionals)}
            return (
                payload,
                schemas.ConditionalsRequest(**payload, cap=cap),
                handlers.chow_from_conditionals,
            )
        if sub == "majority":
            payload = {"n": args.n}
            return payload, schemas.MajorityRequest(**payload, cap=cap), handlers.chow_majority
    if cmd == "reduce":
        sub = args.reduce_command
        if sub == "partition":
            payload = {"weights": _load(args.weights)}
            return payload, schemas.PartitionRequest(**payload, cap=cap), handlers.reduce_partition
        if sub == "stconn":
            payload = {"graph": _load(args.graph), "s": args.s, "t": args.t, "k": args.k}
            return payload, schemas.StConnRequest(**payload, cap=cap), handlers.reduce_stconn
        if sub == "matroid":
            payload = {"graph": _load(args.graph), "s": args.s, "t": args.t}
            return payload, schemas.MatroidRequest(**payload, cap=cap), handlers.reduce_matroid
    raise AssertionError(f"unhandled command {cmd!r}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    started = time.perf_counter()
    try:
        payload, request, handler = _build_request(args)
        results = handler(request)
        report = _report(args, argv, payload, results)
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    except (BorderlabError, ValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        error_report = {
            "command": list(argv),
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        json.dump(error_report, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
