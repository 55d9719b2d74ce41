"""Command-line interface.

Every command prints a report ``{schema_version, command, inputs, result}``
(plus ``certificates`` for negative decisions).  Rationals are written as
``"p/q"`` strings and infinity as ``"inf"``; integers stay integers.

Exit codes: 0 success (including negative decisions), 2 input error,
3 precondition violation, 4 enumeration overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from chainstab.chain_core import ChainInvariants, as_alpha, check_genus
from chainstab.conditions import admissible, check_c3_prime, check_conditions
from chainstab.errors import EnumerationOverflowError, InputError, PreconditionError
from chainstab.euler import chi, chi_scan
from chainstab.moduli import (
    UpqInvariants,
    decide_above_higgs,
    decide_at_higgs,
    triple_bounds,
    upq_report,
    upq_to_triple,
)
from chainstab.nilpotent import component_report, expected_dimension, order_by_weight
from chainstab.params import (
    critical_values_on_segment,
    region_halfspaces,
    walls_in_box,
    walls_through,
)

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_OVERFLOW = 4

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


# -- serialization -----------------------------------------------------------

def encode(value: Any) -> Any:
    """Turn results into JSON-ready values without floats."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if value == math.inf:
            return "inf"
        raise TypeError(f"refusing to serialize float {value!r}")
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def decode(value: Any) -> Any:
    """Inverse of :func:`encode`: rational strings become Fractions again."""
    if isinstance(value, str):
        if value == "inf":
            return math.inf
        if _RATIONAL.match(value):
            return Fraction(value)
        return value
    if isinstance(value, dict):
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


def parse_report(text: str) -> dict:
    return decode(json.loads(text))


def _flatten(value: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(value, dict):
        rows = []
        for k, v in value.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else k))
        return rows or [(prefix, "{}")]
    if isinstance(value, list):
        rows = []
        for i, v in enumerate(value):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
        return rows or [(prefix, "[]")]
    return [(prefix, value)]


def render(report: dict, fmt: str) -> str:
    payload = encode(report)
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = _flatten(payload)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, val in rows:
            writer.writerow([key, json.dumps(val) if isinstance(val, bool) else val])
        return buf.getvalue()
    return "".join(f"{key} = {json.dumps(val) if not isinstance(val, str) else val}\n"
                   for key, val in rows)


# -- argument parsing --------------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return as_alpha(v for v in text.split(",") if v.strip() != "")
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


class UsageError(Exception):
    """Raised instead of exiting when the command line does not parse."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--quiet", action="store_true",
                        help="suppress diagnostics on standard error")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(
        prog="chainstab", description="Stability combinatorics of holomorphic chains."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def chain_args(p):
        p.add_argument("--ranks", type=_ints, required=True)
        p.add_argument("--degrees", type=_ints, required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate C0-C3 at a parameter")
    chain_args(p)
    p.add_argument("--alpha", type=_rationals, default=())
    p.add_argument("--genus", type=int)

    p = sub.add_parser("region", parents=[common], help="half-spaces of the stability region")
    chain_args(p)
    p.add_argument("--genus", type=int, default=2)

    p = sub.add_parser("walls", parents=[common], help="walls in a box, on a segment or at a point")
    chain_args(p)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--box", nargs="+", metavar="CORNER")
    where.add_argument("--segment", nargs="+", metavar="END")
    where.add_argument("--at", type=_rationals, metavar="ALPHA")
    p.add_argument("--merge", action="store_true", help="merge geometrically equal walls")
    p.add_argument("--effective-only", action="store_true")

    p = sub.add_parser("decide", parents=[common], help="non-emptiness and irreducibility")
    chain_args(p)
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--alpha", type=_rationals)
    how.add_argument("--at-higgs", action="store_true")
    p.add_argument("--genus", type=int, default=2)

    p = sub.add_parser("triple", parents=[common], help="alpha_min and alpha_max of a triple")
    chain_args(p)

    p = sub.add_parser("upq", parents=[common], help="U(p,q)-Higgs moduli report")
    for name in ("--p", "--q", "--a", "--b"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--genus", type=int, default=2)

    p = sub.add_parser("nilpotent", parents=[common], help="components of the nilpotent cone")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--max-len", type=int)
    p.add_argument("--allow-interior-zeros", action="store_true")

    p = sub.add_parser("chi", parents=[common], help="Euler characteristic of the Hom complex")
    for side in ("source", "target"):
        p.add_argument(f"--{side}-ranks", type=_ints, required=True)
        p.add_argument(f"--{side}-degrees", type=_ints, required=True)
    p.add_argument("--genus", type=int, default=2)

    p = sub.add_parser("chi-scan", parents=[common], help="search for pairs with chi > 0")
    p.add_argument("--rank-bound", type=int, required=True)
    p.add_argument("--degree-bound", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--genus", type=int, default=2)
    return parser


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Attach values like ``-1,0`` to the preceding option so argparse accepts them."""
    out: list[str] = []
    for token in argv:
        if (out and out[-1].startswith("--") and "=" not in out[-1]
                and re.match(r"^-\d", token)):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def _corners(tokens: Sequence[str], r: int, what: str) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    values = [_rationals(t) for t in tokens]
    if len(values) == 2:
        return values[0], values[1]
    if len(values) == 1 and len(values[0]) == 2 * r:
        return values[0][:r], values[0][r:]
    raise InputError(f"--{what} needs two comma-separated points of length r={r}")


# -- commands ----------------------------------------------------------------

def _checks(items, keys):
    return [dict(zip(keys, c.key), margin=c.margin, holds=c.holds) for c in items]


def _chain_json(ci: ChainInvariants) -> dict:
    return {"ranks": list(ci.ranks), "degrees": list(ci.degrees)}


def _wall_json(w) -> dict:
    return {"sub_ranks": list(w.sub_ranks), "sub_total_degree": w.sub_total_degree,
            "normal": list(w.normal), "offset": w.offset}


def _cmd_check(args) -> dict:
    ci = ChainInvariants(args.ranks, args.degrees)
    rep = check_conditions(ci, args.alpha)
    result = {
        "mu": rep.mu,
        "c0": _checks(rep.c0, ("i",)),
        "c1": _checks(rep.c1, ("k",)),
        "c2": _checks(rep.c2, ("k", "j")),
        "c3": _checks(rep.c3, ("k", "j")),
        "c3_prime": [{"k": k, "j": j, "holds": h} for (k, j), h in check_c3_prime(ci, args.alpha)],
        "all_hold": rep.all_hold,
    }
    inputs = {**_chain_json(ci), "alpha": list(args.alpha)}
    if args.genus is not None:
        check_genus(args.genus)
        inputs["genus"] = args.genus
        result["admissible"] = admissible(ci, args.alpha, args.genus, at_boundary=False)
        result["admissible_closure"] = admissible(ci, args.alpha, args.genus, at_boundary=True)
    return {"inputs": inputs, "result": result}


def _cmd_region(args) -> dict:
    ci = ChainInvariants(args.ranks, args.degrees)
    conds = region_halfspaces(ci, args.genus)
    return {
        "inputs": {**_chain_json(ci), "genus": args.genus},
        "result": {"halfspaces": [
            {"coeffs": list(c.coeffs), "relation": c.relation, "bound": c.bound, "tag": c.tag}
            for c in conds
        ]},
    }


def _cmd_walls(args) -> dict:
    ci = ChainInvariants(args.ranks, args.degrees)
    inputs = _chain_json(ci)
    if args.at is not None:
        walls = walls_through(ci, args.at, merge=args.merge, effective_only=args.effective_only)
        inputs["at"] = list(args.at)
        result = {"critical": bool(walls), "walls": [_wall_json(w) for w in walls]}
    elif args.box is not None:
        lo, hi = _corners(args.box, ci.r, "box")
        inputs["box"] = {"lo": list(lo), "hi": list(hi)}
        result = {"walls": [_wall_json(w) for w in walls_in_box(ci, lo, hi, merge=args.merge)]}
    else:
        a, b = _corners(args.segment, ci.r, "segment")
        inputs["segment"] = {"from": list(a), "to": list(b)}
        crit = critical_values_on_segment(ci, a, b)
        result = {"critical_values": [
            {"t": t, "alpha": [(1 - t) * x + t * y for x, y in zip(a, b)],
             "walls": [_wall_json(w) for w in walls]}
            for t, walls in crit
        ]}
    return {"inputs": inputs, "result": result}


def _cmd_decide(args) -> dict:
    ci = ChainInvariants(args.ranks, args.degrees)
    inputs = {**_chain_json(ci), "genus": args.genus}
    if args.at_higgs:
        decision = decide_at_higgs(ci, args.genus)
        inputs["at_higgs"] = True
    else:
        decision = decide_above_higgs(ci, args.alpha, args.genus)
        inputs["alpha"] = list(args.alpha)
    out = {"inputs": inputs, "result": {"nonempty_irreducible": decision.nonempty_irreducible}}
    cert = decision.failing_certificate
    if cert is not None:
        out["certificates"] = [{"tag": cert.tag, "margin": cert.margin}]
    return out


def _cmd_triple(args) -> dict:
    ci = ChainInvariants(args.ranks, args.degrees)
    tb = triple_bounds(ci)
    return {"inputs": _chain_json(ci),
            "result": {"alpha_min": tb.alpha_min, "alpha_max": tb.alpha_max, "empty": tb.empty}}


def _cmd_upq(args) -> dict:
    u = UpqInvariants(args.p, args.q, args.a, args.b, args.genus)
    ci, alpha = upq_to_triple(u)
    rep = upq_report(u)
    return {
        "inputs": {"p": u.p, "q": u.q, "a": u.a, "b": u.b, "genus": u.g},
        "result": {"nonempty": rep.nonempty, "connected": rep.connected,
                   "triple": {**_chain_json(ci), "alpha": list(alpha)}},
    }


def _cmd_nilpotent(args) -> dict:
    report = component_report(args.rank, args.degree, args.genus, max_len=args.max_len,
                              interior_zeros=args.allow_interior_zeros)
    index = {id(t): i for i, t in enumerate(report.types)}
    return {
        "inputs": {"rank": args.rank, "degree": args.degree, "genus": args.genus,
                   "max_len": args.max_len, "allow_interior_zeros": args.allow_interior_zeros},
        "result": {
            "count": report.count,
            "coprime": report.coprime,
            "exact": report.exact,
            "expected_dimension": expected_dimension(args.rank, args.genus),
            "types": [{**_chain_json(t.chain), "higgs_degrees": list(t.higgs_degrees),
                       "weight": t.weight} for t in report.types],
            "weight_levels": [{"weight": w, "types": [index[id(t)] for t in ts]}
                              for w, ts in order_by_weight(report.types)],
        },
    }


def _cmd_chi(args) -> dict:
    src = ChainInvariants(args.source_ranks, args.source_degrees)
    tgt = ChainInvariants(args.target_ranks, args.target_degrees)
    return {"inputs": {"source": _chain_json(src), "target": _chain_json(tgt), "genus": args.genus},
            "result": {"chi": chi(src, tgt, args.genus)}}


def _cmd_chi_scan(args) -> dict:
    for name in ("rank_bound", "degree_bound", "r_max"):
        if getattr(args, name) < 0:
            raise InputError(f"--{name.replace('_', '-')} must be non-negative")
    res = chi_scan(args.rank_bound, args.degree_bound, args.r_max, args.genus)
    return {
        "inputs": {"rank_bound": args.rank_bound, "degree_bound": args.degree_bound,
                   "r_max": args.r_max, "genus": args.genus},
        "result": {
            "chains": res.chains, "pairs": res.pairs, "boundary_pairs": len(res.boundary),
            "violations": [{"source": _chain_json(v.source), "target": _chain_json(v.target),
                            "chi": v.chi} for v in res.violations],
        },
    }


COMMANDS = {
    "check": _cmd_check,
    "region": _cmd_region,
    "walls": _cmd_walls,
    "decide": _cmd_decide,
    "triple": _cmd_triple,
    "upq": _cmd_upq,
    "nilpotent": _cmd_nilpotent,
    "chi": _cmd_chi,
    "chi-scan": _cmd_chi_scan,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        if "--quiet" not in argv:
            print(exc, file=stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT

    def fail(code: int, exc: Exception) -> int:
        if not args.quiet:
            print(f"chainstab {args.command}: {exc}", file=stderr)
        return code

    try:
        body = COMMANDS[args.command](args)
    except PreconditionError as exc:
        return fail(EXIT_PRECONDITION, exc)
    except EnumerationOverflowError as exc:
        return fail(EXIT_OVERFLOW, exc)
    except InputError as exc:
        return fail(EXIT_INPUT, exc)
    report = {"schema_version": SCHEMA_VERSION, "command": args.command, **body}
    stdout.write(render(report, args.format))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
