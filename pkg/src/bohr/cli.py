"""Command line entry point: ``bohr <command> ...``.

Commands
--------
table   constants table (json, csv or markdown)
bound   radius bounds for one quantity and domain, as JSON
root    certified root of one of the series equations, as JSON
verify  seeded verification suite, as a JSON array of reports
expand  coefficients of an extremal family in the series text format

Exit status is 0 on success, 1 when a check or table row does not match,
and 2 on usage errors.

Custom domains (``bound --domain custom --table FILE``) are read from a
plain text file with one multi-index per line: the ``n`` integer parts
separated by spaces, then the ``d_alpha`` value. Blank lines and text after
``#`` are ignored. Example for the unit polydisk in two variables::

    0 0  1.0
    1 0  1.0
    0 1  1.0
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds, harness
from .domains import DomainError, load_custom_domain
from .rootfind import BracketError, TruncationError, bisect_increasing
from .series import compose_linear, dumps, extremal_cone_family, mobius_witness

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _clean(obj):
    """Make ``obj`` strict-JSON safe: non-finite floats become null."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False)


# -- table ------------------------------------------------------------------

_COLUMNS = ("key", "description", "shown", "relation", "reference", "status", "computed")


def _render_table(rows, fmt: str) -> str:
    dicts = [row.to_dict() for row in rows]
    if fmt == "json":
        return _dump(dicts) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for d in dicts:
            writer.writerow({k: d[k] for k in _COLUMNS})
        return buf.getvalue()
    lines = [
        "| key | description | value | relation | reference | status |",
        "|---|---|---|---|---|---|",
    ]
    for d in dicts:
        reference = "" if d["reference"] is None else repr(d["reference"])
        lines.append(
            f"| {d['key']} | {d['description']} | {d['shown']} | {d['relation']} | {reference} | {d['status']} |"
        )
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    rows = harness.run_constants_table(args.n_max)
    sys.stdout.write(_render_table(rows, args.format))
    return EXIT_MISMATCH if any(row.status == "fail" for row in rows) else EXIT_OK


# -- bound ------------------------------------------------------------------


def _parse_beta(text: str | None):
    if not text:
        raise UsageError("--beta is required for the monomial domain")
    try:
        return tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"--beta must be integers, got {text!r}") from None


def _bn_bounds(args) -> list:
    domain, n = args.domain, args.n
    if domain == "monomial":
        beta = _parse_beta(args.beta)
        if n is not None and n != len(beta):
            raise UsageError(f"--n {n} does not match beta of length {len(beta)}")
        return [bounds.monomial_domain_radius(beta)]
    if domain == "custom":
        if not args.table:
            raise UsageError("--table is required for the custom domain")
        D = load_custom_domain(args.table)
        if n is not None and n != D.dimension:
            raise UsageError(f"--n {n} does not match the table dimension {D.dimension}")
        return [bounds.general_lower(D.dimension)]
    if n is None:
        raise UsageError("--n is required")
    if domain == "polydisk":
        return [bounds.general_lower(1)] if n == 1 else list(bounds.polydisk_bounds(n))
    if domain == "ball":
        out = [bounds.general_lower(n)]
        return out if n == 1 else out + [bounds.ball_lower(n)]
    return [bounds.general_lower(n), bounds.hypercone_upper(n), bounds.refined_cone_upper(n)]


def cmd_bound(args) -> int:
    if args.quantity == "bn":
        result = _bn_bounds(args)
    elif args.quantity == "kn":
        if args.domain != "polydisk":
            raise UsageError("kn is defined on the polydisk only")
        if args.n is None or args.n < 2:
            raise UsageError("kn needs --n >= 2")
        result = list(bounds.polydisk_bounds(args.n))
    else:
        if args.domain != "hypercone":
            raise UsageError("ln is defined on the hypercone only")
        result = list(bounds.l1_bounds())
    print(_dump({"quantity": args.quantity, "domain": args.domain,
                 "bounds": [b.to_dict() for b in result]}))
    return EXIT_OK


# -- root -------------------------------------------------------------------


def cmd_root(args) -> int:
    if args.equation == "19":
        eq, p, strict = bounds.self_power_equation(), args.p or 25, True
    elif args.equation == "21":
        eq, p, strict = bounds.l1_equation(), args.p or 25, False
    else:
        eq, p, strict = bounds.cone_mass_equation(args.n or 2), args.p or 60, True
    root = bisect_increasing(eq, p, args.tol, strict=strict)
    print(_dump(root.to_dict()))
    return EXIT_OK


# -- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    reports = harness.run_verification_suite(args.seed, args.budget)
    text = _dump([rep.to_dict() for rep in reports]) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = [rep.case_id for rep in reports if not rep.ok]
    for case in bad:
        print(f"mismatch: {case}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


# -- expand -----------------------------------------------------------------


def cmd_expand(args) -> int:
    if not 0 < args.a < 1:
        raise UsageError(f"--a must lie in (0, 1), got {args.a}")
    if args.n < 1 or args.K < 1:
        raise UsageError("--n and --K must be positive")
    if args.family == "cone":
        f = extremal_cone_family(args.a, args.n, args.K)
    else:
        # Composed with z_1 + ... + z_n; for n = 1 this is the disk witness itself.
        f = mobius_witness(args.a, args.K)
        if args.n > 1:
            f = compose_linear(f, [1.0] * args.n)
    sys.stdout.write(dumps(f))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohr", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="constants table")
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bound", help="radius bounds as JSON")
    p.add_argument("--quantity", choices=("bn", "kn", "ln"), required=True)
    p.add_argument("--domain", choices=("polydisk", "ball", "hypercone", "monomial", "custom"),
                   required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--beta", help='monomial exponents, e.g. "1 2"')
    p.add_argument("--table", help="custom d_alpha table file")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("root", help="certified root as JSON")
    p.add_argument("--equation", choices=("19", "21", "remark3"), required=True,
                   help="19: sum x^k/k^k = 1/2; 21: sum k^k/k! x^k = 1/2; "
                        "remark3: sum T_k(n) x^k = 1/2")
    p.add_argument("--n", type=int, help="dimension for remark3 (default 2)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--p", type=int, help="truncation degree")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("verify", help="seeded verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", choices=("small", "full"), default="small")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", help="series coefficients in text format")
    p.add_argument("--family", choices=("cone", "mobius"), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.set_defaults(func=cmd_expand)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, BracketError, TruncationError, ValueError) as exc:
        print(f"bohr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
