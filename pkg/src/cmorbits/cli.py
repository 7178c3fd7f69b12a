"""Command-line front end.

Exit statuses: 0 success, 1 oracle disagreement, 2 invalid input,
3 unsupported field (discriminant -3 or -4).  Diagnostics go to stderr
only, and nothing is written to stdout on an error path.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Tuple

from .arith import ImaginaryQuadraticField, class_number
from .counts import (
    UnsupportedFieldError,
    conductor_table,
    count_cm_pair,
    count_gamma0_cusps,
    count_gl2_order,
)
from .oracles import enumerate_walks, gamma0_orbit_oracle
from .volcano import (
    NOT_COVERED,
    build_truncated_volcano,
    count_walks_dp,
    local_queries,
    rk_prime_closed,
    to_dot,
)

FORMATS = ("text", "json", "csv", "dot")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field(D: int) -> ImaginaryQuadraticField:
    return ImaginaryQuadraticField(D)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _render_report(report, fmt: str, oracle: Optional[int] = None) -> str:
    if fmt == "json":
        d = report.to_dict()
        if oracle is not None:
            d["oracle"] = oracle
        return json.dumps(d) + "\n"
    if fmt == "csv":
        return report.to_csv()
    if oracle is not None:
        return f"formula {report.total}\noracle {oracle}\n"
    return f"{report.total}\n"


def cmd_count(args) -> Tuple[str, int]:
    report = count_cm_pair(_field(args.disc), args.cond, args.cond2)
    return _render_report(report, args.format), 0


def cmd_gl2(args) -> Tuple[str, int]:
    report = count_gl2_order(_field(args.disc), args.cond)
    return _render_report(report, args.format), 0


def cmd_gamma0(args) -> Tuple[str, int]:
    report = count_gamma0_cusps(args.N)
    if not args.oracle:
        return _render_report(report, args.format), 0
    brute = gamma0_orbit_oracle(args.N)
    return _render_report(report, args.format, brute), 0 if brute == report.total else 1


def _rk_factor(q, method: str) -> Tuple[int, str]:
    if method == "dp":
        return count_walks_dp(q), "dp"
    if method == "closed":
        v = rk_prime_closed(q)
        if v is NOT_COVERED:
            return count_walks_dp(q), "dp-fallback"
        return v, "closed"
    g = build_truncated_volcano(q.p, q.chi, max(q.a, q.b) + q.c)
    return enumerate_walks(g, q.a, q.b, q.c), "enumerate"


def cmd_rk(args) -> Tuple[str, int]:
    queries = local_queries(_field(args.disc), args.a, args.b, args.n)
    rows = []
    total = 1
    for q in queries:
        v, how = _rk_factor(q, args.method)
        rows.append((q.p, q.chi, q.a, q.b, q.c, v, how))
        total *= v
    status = 0
    check = None
    if args.oracle:
        other = "dp" if args.method == "enumerate" else "enumerate"
        check = 1
        for q in queries:
            check *= _rk_factor(q, other)[0]
        status = 0 if check == total else 1

    if args.format == "json":
        keys = ("p", "chi", "a", "b", "c", "value", "method")
        d = {"total": total, "factors": [dict(zip(keys, r)) for r in rows]}
        if check is not None:
            d["oracle"] = check
        return json.dumps(d) + "\n", status
    if args.format == "csv":
        return _csv(("p", "chi", "a", "b", "c", "value", "method"), rows), status
    if check is not None:
        return f"{args.method} {total}\noracle {check}\n", status
    return f"{total}\n", status


def cmd_class_number(args) -> Tuple[str, int]:
    h = class_number(args.disc)
    if args.format == "json":
        return json.dumps({"discriminant": args.disc, "class_number": h}) + "\n", 0
    if args.format == "csv":
        return _csv(("discriminant", "class_number"), [(args.disc, h)]), 0
    return f"{h}\n", 0


def cmd_volcano(args) -> Tuple[str, int]:
    g = build_truncated_volcano(args.prime, args.symbol, args.depth)
    fmt = args.format or "dot"
    if fmt == "dot":
        return to_dot(g), 0
    if fmt == "json":
        d = {
            "p": g.p,
            "chi": g.chi,
            "depth": g.depth,
            "level_sizes": g.level_sizes(),
            "vertices": [list(v) for v in g.vertices],
            "edges": [[list(g.vertices[u]), list(g.vertices[v])] for u, v in g.edges],
        }
        return json.dumps(d) + "\n", 0
    if fmt == "csv":
        return _csv(("level", "vertices"), enumerate(g.level_sizes())), 0
    lines = [f"level {k}: {n} vertices" for k, n in enumerate(g.level_sizes())]
    lines.append(f"edges: {len(g.edges)}")
    return "\n".join(lines) + "\n", 0


def cmd_table(args) -> Tuple[str, int]:
    rows = conductor_table(_field(args.disc), args.max)
    if args.format == "json":
        return json.dumps([{"c": c, "c_prime": cp, "total": t} for c, cp, t in rows]) + "\n", 0
    return _csv(("c", "c_prime", "total"), rows), 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmorbits", description="Orbit counts on the projective line for CM elliptic curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, default_format="text"):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=FORMATS, default=default_format)
        p.add_argument("--oracle", action="store_true", help="cross-check against a brute-force oracle where one exists")
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "orbit count N(E, E') for conductors c, c'")
    p.add_argument("--disc", type=int, required=True, help="fundamental discriminant D < 0")
    p.add_argument("--cond", type=int, required=True, help="conductor c of E")
    p.add_argument("--cond2", type=int, required=True, help="conductor c' of E'")

    p = add("gl2", cmd_gl2, "orbits under GL_2 of the order of conductor f")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--cond", type=int, required=True, help="conductor f")

    p = add("gamma0", cmd_gamma0, "cusps of Gamma_0(N), determinant +-1")
    p.add_argument("N", type=int)

    p = add("rk", cmd_rk, "r_K(a, b, N) assembled prime by prime")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--a", type=int, required=True, help="conductor of the source curve")
    p.add_argument("--b", type=int, required=True, help="conductor of the quotient")
    p.add_argument("--n", type=int, required=True, help="order of the cyclic subgroup")
    p.add_argument("--method", choices=("closed", "dp", "enumerate"), default="dp")

    p = add("class-number", cmd_class_number, "class number by reduced forms")
    p.add_argument("--disc", type=int, required=True)

    p = add("volcano", cmd_volcano, "export a truncated volcano", default_format="dot")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--symbol", type=int, required=True, choices=(-1, 0, 1))
    p.add_argument("--depth", type=int, required=True)

    p = add("table", cmd_table, "grid of N(E, E') over 1 <= c, c' <= max", default_format="csv")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    return parser


def run(argv: Optional[List[str]] = None) -> Tuple[int, str, str]:
    """Execute a command line; returns (status, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.format == "dot" and args.command != "volcano":
            raise UsageError("--format dot is only valid for the volcano command")
        if args.command == "table" and args.format not in ("csv", "json"):
            raise UsageError("table output is csv or json")
        out, status = args.func(args)
    except UsageError as e:
        return 2, "", f"cmorbits: usage error: {e}\n"
    except UnsupportedFieldError as e:
        return 3, "", f"cmorbits: {e}\n"
    except (ValueError, TypeError) as e:
        return 2, "", f"cmorbits: invalid input: {e}\n"
    err = "" if status == 0 else "cmorbits: oracle disagrees with formula\n"
    return status, out, err


def main(argv: Optional[List[str]] = None) -> int:
    status, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
