"""Command-line front end.

Exit status: 0 on success, 1 when a check fails or a reproduced value
mismatches, 2 for inadmissible parameters or bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from smallhull.bounds import (
    check_eigenvector_identities,
    conjecture_scan,
    conjecture_targets,
    independence_level,
)
from smallhull.construct import InternalInconsistencyError, build_code, build_P, construct
from smallhull.distance import DEFAULT_BUDGET, min_distance
from smallhull.field import FieldDescriptor
from smallhull.params import ORDERINGS, ConstructionParams, InadmissibleError, PreconditionError, make_params
from smallhull.reference import EXAMPLES, TABLE1
from smallhull.report import admissible_tuples, analyze, reproduce, verify_tuple

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- formatting ----------------------------------------------------------------------


def beta_power(F: FieldDescriptor, beta: int, value: int) -> str:
    """'0', or 'b^e' with value = beta^e."""
    if value == 0:
        return "0"
    e = F.log(value) if beta == F.primitive_code else _dlog(F, beta, value)
    return f"b^{e}"


def _dlog(F: FieldDescriptor, base: int, value: int) -> int:
    x, e = 1, 0
    while x != value:
        x, e = F.mul(x, base), e + 1
    return e


def matrix_json(F: FieldDescriptor, beta: int, rows: list[list[int]]) -> dict:
    return {"raw": rows, "beta_powers": [[beta_power(F, beta, x) for x in row] for row in rows]}


def emit(payload: dict, args, *, rows: list[dict] | None = None) -> None:
    """Write ``payload`` as JSON, or ``rows`` as CSV, or a readable dump."""
    fmt = args.format
    if fmt == "csv":
        if rows is None:
            raise UsageError("csv output is only available for tabular commands")
        buf = io.StringIO()
        fields = sorted({k for row in rows for k in row})
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in fields})
        text = buf.getvalue()
    elif fmt == "pretty":
        text = _pretty(payload)
    else:
        text = json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return v


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(_pretty(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    return "\n".join(lines) + "\n"


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


# -- parameter handling ---------------------------------------------------------------


def _parse_moduli(specs: Sequence[str] | None) -> dict[str, list[int]]:
    out = {}
    for spec in specs or ():
        kind, _, coeffs = spec.partition("=")
        if kind not in ("source", "code", "split") or not coeffs:
            raise UsageError(f"--modulus expects source|code|split=c0,c1,...; got {spec!r}")
        try:
            out[kind] = [int(c) for c in coeffs.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad coefficients in {spec!r}") from exc
    return out


def _parse_v(params: ConstructionParams, text: str | None):
    """An element code, or b^e for a power of beta."""
    if text is None:
        return None
    text = text.strip()
    if text.startswith(("b^", "beta^")):
        return params.beta ** int(text.split("^", 1)[1])
    value = int(text)
    if not 0 <= value < params.q:
        raise UsageError(f"v={value} is not an element code of GF({params.q})")
    return params.code_field.element(value)


def params_from_args(args, *, ordering: str | None = None) -> ConstructionParams:
    for name in ("r", "N", "q"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")
    params = make_params(
        args.r,
        args.m,
        args.N,
        args.q,
        ordering=ordering or args.ordering,
        moduli=_parse_moduli(args.modulus),
        alpha=args.alpha,
        beta=args.beta,
        gamma=args.gamma,
    )
    return params.with_v(_parse_v(params, args.v))


def _construction(args):
    params = params_from_args(args)
    if args.hull is None and params.v is None:
        params = params.with_v(0)
    return construct(params, args.hull, s_max=args.s_max)


def _construction_json(c) -> dict:
    params = c.params
    F = params.code_field
    beta = params.beta.value
    P = build_P(params).rows()
    return {
        "params": params.to_json(),
        "v_beta_power": beta_power(F, beta, params.v.value),
        "n": c.code.n,
        "k": c.code.k,
        "P": matrix_json(F, beta, P),
        "G": matrix_json(F, beta, c.code.G.rows()),
        "certificate": c.certificate,
        "predicates": c.predicates,
    }


# -- commands ----------------------------------------------------------------------


def cmd_construct(args) -> int:
    c = _construction(args)
    emit({"command": "construct", **_construction_json(c)}, args)
    return EXIT_OK


def cmd_analyze(args) -> int:
    c = _construction(args)
    rep = analyze(c, args.budget, dual_distance=args.dual, bound=args.bound)
    payload = {"command": "analyze", **rep.to_json()}
    payload["construction"] = _construction_json(c)
    emit(payload, args)
    failed = rep.certificate_consistent is False or not rep.crosscheck
    return EXIT_FAIL if failed else EXIT_OK


def cmd_reproduce(args) -> int:
    refs = TABLE1 + EXAMPLES if args.examples else TABLE1
    if args.r is not None:
        refs = tuple(ref for ref in refs if ref.r == args.r and (args.q is None or ref.q == args.q))
    rows = [reproduce(ref, args.budget, dual_distance=args.dual).to_json() for ref in refs]
    flat = [
        {
            "key": row["key"],
            "status": row["status"],
            "expected": "[{n},{k},{d}] hull {hull}".format(**row["expected"]),
            "measured_d": row["measured"]["d"],
            "measured_hull": row["measured"]["hull"],
            "certificate": row["certificate"],
        }
        for row in rows
    ]
    emit({"command": "reproduce-table1", "rows": rows}, args, rows=flat)
    return EXIT_FAIL if any(row["status"] == "mismatch" for row in rows) else EXIT_OK


def cmd_verify(args) -> int:
    if args.r is not None:
        params = params_from_args(args)
        tuples = [(params.r, params.m, params.N, params.q)]
    else:
        tuples = list(admissible_tuples(args.max_points, args.max_q))
    entries = [verify_tuple(*t) for t in tuples]
    payload = {
        "command": "verify",
        "checked": len(entries),
        "passed": all(e.passed for e in entries),
        "entries": [e.to_json() for e in entries],
    }
    flat = [
        {"params": "/".join(map(str, e.params)), "passed": e.passed, "failures": ";".join(e.failures)}
        for e in entries
    ]
    emit(payload, args, rows=flat)
    return EXIT_OK if payload["passed"] else EXIT_FAIL


def cmd_bound(args) -> int:
    params = params_from_args(args, ordering="squares_first")
    if params.v is None:
        params = params.with_v(0)
    rep = independence_level(params, args.cap)
    payload = {"command": "bound61", "params": params.to_json(), "report": rep.to_json()}
    result = min_distance(build_code(params), args.budget)
    payload["distance"] = result.to_json()
    sound = rep.certified_bound <= result.upper
    payload["bound_sound"] = sound
    payload["eigenvector_identities"] = check_eigenvector_identities(params).to_json()
    emit(payload, args)
    ok = sound and not payload["eigenvector_identities"]["failures"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_conjecture(args) -> int:
    if args.r is not None:
        if args.q is None:
            raise UsageError("--q is required with --r")
        targets = [(args.r, args.m, args.q)]
    else:
        targets = list(conjecture_targets(args.max_points, args.max_q))
    vs = None
    if args.v is not None:
        vs = [int(x) for x in args.v.split(",")]
    table = conjecture_scan(targets, vs=vs, budget=args.budget)
    payload = {"command": "conjecture-scan", **table.to_json()}
    payload["mismatches"] = len(table.mismatches)
    emit(payload, args, rows=[row.to_json() for row in table.rows])
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, *, sweep: bool = False) -> None:
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--N", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--v", help="diagonal value: element code or b^e")
    p.add_argument("--hull", type=int, choices=(0, 1), help="target hull dimension")
    p.add_argument("--ordering", choices=ORDERINGS, default="natural")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum enumerated messages")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--out", help="write output to this path")
    p.add_argument("--modulus", action="append", help="source|code|split=c0,c1,... (low degree first)")
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--gamma", type=int)
    p.add_argument("--s-max", type=int, dest="s_max")
    p.add_argument("--cap", type=int)
    if sweep:
        p.add_argument("--max-points", type=int, default=27, dest="max_points")
        p.add_argument("--max-q", type=int, default=49, dest="max_q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smallhull", description="Codes with small hulls from character sums.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build P and the generator [I | P]")
    _common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="hull, distance and cross-checks for one construction")
    _common(p)
    p.add_argument("--dual", action="store_true", help="also compute the dual distance")
    p.add_argument("--bound", action="store_true", help="include the independence bound (N=2, v=0)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reproduce-table1", help="rebuild the published table rows and compare")
    _common(p)
    p.add_argument("--examples", action="store_true", help="include the worked examples")
    p.add_argument("--dual", action="store_true", help="also compare dual distances where published")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify", help="character-sum identities and eigenvalue cross-checks")
    _common(p, sweep=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound61", help="independence-level lower bound for N=2")
    _common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("conjecture-scan", help="measured vs predicted distances for N=2")
    _common(p)
    p.add_argument("--max-points", type=int, default=13, dest="max_points")
    p.add_argument("--max-q", type=int, default=49, dest="max_q")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (InadmissibleError, PreconditionError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
