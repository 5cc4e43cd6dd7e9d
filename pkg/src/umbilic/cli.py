"""Command-line front end.

Thin client over the same handlers the HTTP service uses: JSON job documents
in, JSON (or CSV for profile curves) out.  Exit codes: 0 success, 2 malformed
or out-of-domain input, 3 violated mathematical precondition, 1 internal
fault.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from pydantic import ValidationError

from . import handlers
from .errors import InputError, PreconditionError
from .schemas import (
    ClassifyRequest,
    CongruentRequest,
    EncodeRequest,
    ProfileRequest,
    SelftestRequest,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umbilic",
        description="Classify umbilical submanifolds of H^k x S^(n-k+1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_input=True):
        p.add_argument("--input", required=need_input, help="JSON job document")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        p.add_argument("--out", default=None, help="write output to this file")

    p = sub.add_parser("encode", help="orthonormal spacelike basis of a spec")
    add_common(p)

    p = sub.add_parser("congruent", help="decide congruence of two specs")
    add_common(p)
    p.add_argument("--witness", action="store_true", help="emit a realizing isometry")

    p = sub.add_parser("classify", help="invariant, topology, orbits, canonical form")
    add_common(p)

    p = sub.add_parser("profile", help="sample a profile curve (k = n)")
    add_common(p)
    p.add_argument("--samples", type=int, default=None, help="number of samples")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("selftest", help="run the built-in oracle suites")
    add_common(p, need_input=False)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _load_document(args) -> dict:
    if getattr(args, "input", None) is None:
        return {}
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"input file is not valid JSON: {exc}") from exc


def _apply_overrides(args, doc: dict) -> dict:
    doc = dict(doc)
    env_tol = os.environ.get("UMBILIC_TOL")
    if env_tol is not None and doc.get("tol") is None:
        try:
            doc["tol"] = float(env_tol)
        except ValueError as exc:
            raise InputError(f"UMBILIC_TOL is not a number: {env_tol!r}") from exc
    if getattr(args, "tol", None) is not None:
        doc["tol"] = args.tol
    if getattr(args, "witness", False):
        doc["witness"] = True
    if getattr(args, "samples", None) is not None:
        doc["samples"] = args.samples
    if getattr(args, "seed", None) is not None:
        doc["seed"] = args.seed
    return doc


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _profile_csv(resp) -> str:
    n1 = len(resp.rows[0].x) if resp.rows else 0
    header = ["theta"] + [f"x_{i + 1}" for i in range(n1)] + [
        "slice_angle",
        "membership_residual",
    ]
    lines = [",".join(header)]
    for row in resp.rows:
        cells = [repr(row.theta)]
        cells += [repr(c) for c in row.x]
        cells += [repr(row.slice_angle), repr(row.membership_residual)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _run(args) -> str:
    doc = _apply_overrides(args, _load_document(args))
    try:
        if args.command == "encode":
            return _dump_json(handlers.handle_encode(EncodeRequest(**doc)).model_dump())
        if args.command == "congruent":
            return _dump_json(handlers.handle_congruent(CongruentRequest(**doc)).model_dump())
        if args.command == "classify":
            return _dump_json(handlers.handle_classify(ClassifyRequest(**doc)).model_dump())
        if args.command == "profile":
            resp = handlers.handle_profile(ProfileRequest(**doc))
            if args.format == "csv":
                return _profile_csv(resp)
            return _dump_json(resp.model_dump())
        if args.command == "selftest":
            doc.pop("tol", None)
            return _dump_json(handlers.handle_selftest(SelftestRequest(**doc)).model_dump())
    except ValidationError as exc:
        raise InputError(f"job document failed validation: {exc}") from exc
    raise InputError(f"unknown command {args.command!r}")


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    try:
        _emit(args, _run(args))
    except InputError as exc:
        sys.stderr.write(_dump_json({"error": str(exc), "kind": type(exc).__name__}))
        return EXIT_INPUT
    except PreconditionError as exc:
        sys.stderr.write(_dump_json({"error": str(exc), "kind": type(exc).__name__}))
        return EXIT_PRECONDITION
    except Exception as exc:  # anything else is an internal fault
        sys.stderr.write(_dump_json({"error": str(exc), "kind": type(exc).__name__}))
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
