"""Command line front end.

Exit status: 0 on success, 1 on invalid input, 2 when a cross-check or an
identity check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import identities
from .core import (
    CLOSED_FORM,
    FIRST_KIND,
    INCLUSION_EXCLUSION,
    ORACLE,
    CycleRatios,
    VolumeReport,
    central_volume,
    cyclic_blocks,
    equal_ratio_volume,
    first_kind_volume,
    subset_volume,
)
from .exactnum import parse_rational, render
from .oracle import cevian_simplex_volume, oracle_first_kind_volume, oracle_subset_volume

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2
GEOMETRY_MAX_N = 64

ID_ALIASES = {"e2": identities.E2}
SPEC_SUITE = [
    (identities.IE_N4, [4]),
    (identities.E2, [4, 5, 6, 7, 8]),
    (identities.FIRST_KIND_N4, [4]),
    (identities.FIRST_KIND_N5, [5]),
]


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _ratio_args(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, help="number of simplex vertices")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ratios", help="comma separated exact ratios, e.g. 2/1,3,1/2")
    group.add_argument("--k", help="equal-ratio shorthand: every x_i = k")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="routh", description="Exact Routh-type simplex volumes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("volume", help="central simplex volume")
    _ratio_args(p)
    p.add_argument("--method", choices=(CLOSED_FORM, INCLUSION_EXCLUSION, ORACLE), default=CLOSED_FORM)
    p.add_argument("--max-n", type=int, default=20, help="bound for the 2^n inclusion-exclusion sum")

    p = sub.add_parser("first-kind", help="volume of the simplex spanned by the edge points")
    _ratio_args(p)

    p = sub.add_parser("subset", help="volume of the intersection of the corner cuts over a subset")
    _ratio_args(p)
    p.add_argument("--subset", required=True, help="comma separated indices in 1..n")

    p = sub.add_parser("oracle", help="compare closed forms with the coordinate construction")
    _ratio_args(p)

    p = sub.add_parser("identity", help="check an identity at seeded random points")
    p.add_argument("--id", required=True, dest="identity",
                   choices=sorted(set(identities.IDENTITY_IDS) | set(ID_ALIASES) | {"all"}))
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=9, help="numerators and denominators drawn from 1..bound")
    p.add_argument("--max-n", type=int, default=identities.DEFAULT_MAX_N)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("table", help="equal-ratio volumes over a range of n")
    p.add_argument("--kind", choices=("central", "first_kind"), default="central")
    p.add_argument("--n", required=True, help="single n or range like 3..8")
    p.add_argument("--k", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _parse_ratios(args, max_n: int = GEOMETRY_MAX_N) -> CycleRatios:
    if args.ratios is not None:
        values = [parse_rational(t) for t in args.ratios.split(",")]
        if args.n is not None and args.n != len(values):
            raise InputError(f"--n {args.n} but {len(values)} ratios given")
    else:
        if args.n is None:
            raise InputError("--k needs --n")
        values = [parse_rational(args.k)] * args.n
    if len(values) > max_n:
        raise InputError(f"n={len(values)} exceeds the supported maximum {max_n}")
    return CycleRatios.of(values)


def _parse_n_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_n = int(lo)
        hi_n = int(hi) if sep else lo_n
    except ValueError:
        raise InputError(f"bad n range {text!r}") from None
    if lo_n < 3 or hi_n < lo_n or hi_n > GEOMETRY_MAX_N:
        raise InputError(f"n range {text!r} must lie within 3..{GEOMETRY_MAX_N}")
    return range(lo_n, hi_n + 1)


def _cmd_volume(args):
    max_n = args.max_n if args.method == INCLUSION_EXCLUSION else GEOMETRY_MAX_N
    x = _parse_ratios(args, max_n)
    return central_volume(x, args.method).to_dict(), EXIT_OK


def _cmd_first_kind(args):
    x = _parse_ratios(args)
    report = VolumeReport(first_kind_volume(x), FIRST_KIND, x, x.regime)
    return report.to_dict(), EXIT_OK


def _cmd_subset(args):
    x = _parse_ratios(args)
    try:
        members = sorted({int(t) for t in args.subset.split(",")})
    except ValueError:
        raise InputError(f"bad subset {args.subset!r}") from None
    blocks = cyclic_blocks(x.n, members)
    value = subset_volume(x, members)
    oracle = oracle_subset_volume(x, members)
    out = {
        "blocks": [[b.start, b.length] for b in blocks],
        "match": value == oracle,
        "n": x.n,
        "oracle": render(oracle),
        "subset": members,
        "value": render(value),
        "x": x.as_strings(),
    }
    return out, EXIT_OK if value == oracle else EXIT_MISMATCH


def _cmd_oracle(args):
    x = _parse_ratios(args)
    central = central_volume(x).value
    geometric = cevian_simplex_volume(x)
    first = first_kind_volume(x)
    first_geometric = oracle_first_kind_volume(x)
    out = {
        "closed_form": render(central),
        "first_kind": render(first),
        "first_kind_match": first == first_geometric,
        "match": central == geometric,
        "n": x.n,
        "oracle": render(geometric),
        "oracle_first_kind": render(first_geometric),
        "product_regime": x.regime,
        "x": x.as_strings(),
    }
    ok = out["match"] and out["first_kind_match"]
    return out, EXIT_OK if ok else EXIT_MISMATCH


def _cmd_identity(args):
    if args.samples < 1:
        raise InputError("--samples must be positive")
    if args.identity == "all":
        plan = SPEC_SUITE
    else:
        identity_id = ID_ALIASES.get(args.identity, args.identity)
        n = args.n if args.n is not None else identities.fixed_n(identity_id)
        if n is None:
            raise InputError(f"{args.identity} needs --n")
        plan = [(identity_id, [n])]
    rows = []
    for identity_id, ns in plan:
        for n in ns:
            rows.extend(identities.run_identity(identity_id, n, args.samples, args.seed,
                                                args.bound, args.max_n))
    all_hold = all(r.holds for r in rows)
    out = {
        "all_hold": all_hold,
        "failures": sum(not r.holds for r in rows),
        "rows": [r.to_dict() for r in rows],
        "samples": args.samples,
        "seed": args.seed,
    }
    return out, EXIT_OK if all_hold else EXIT_MISMATCH


def _cmd_table(args):
    k = parse_rational(args.k)
    rows = []
    ok = True
    for n in _parse_n_range(args.n):
        x = CycleRatios.equal(n, k)
        value = central_volume(x).value if args.kind == "central" else first_kind_volume(x)
        law = equal_ratio_volume(n, k, args.kind)
        ok &= value == law
        rows.append({"k": render(k), "kind": args.kind, "law": render(law), "n": n, "value": render(value)})
    return {"rows": rows}, EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "volume": _cmd_volume,
    "first-kind": _cmd_first_kind,
    "subset": _cmd_subset,
    "oracle": _cmd_oracle,
    "identity": _cmd_identity,
    "table": _cmd_table,
}


def _csv_cell(value) -> str:
    if isinstance(value, list):
        return " ".join(_csv_cell(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def serialize(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    rows = payload["rows"] if "rows" in payload else [payload]
    buf = io.StringIO()
    fields = sorted(rows[0]) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return buf.getvalue()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, code = COMMANDS[args.command](args)
    except (InputError, ValueError, ZeroDivisionError) as exc:
        print(f"routh {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(serialize(payload, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
