"""Command line surface.

Subcommands: ``rank`` for a single pair's component breakdown,
``certify`` for a machine-verifiable rank certificate (build or
re-verify), ``census`` for the exhaustive sixth-power-free sweep, and
``oracle`` for the independent bounded-height point search.

Exit codes: 0 success, 1 a verification or consistency failure,
2 usage error.
"""

import argparse
import json
import re
import sys
from fractions import Fraction

from .generators import (
    certificate_to_json,
    full_certificate,
    verify_certificate_json,
)
from .oracle import cross_validate
from .rankalg import breakdown_to_json, census_rows, rank_breakdown

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")

_CASE_RANK = {"0": 0, "1": 1, "2a": 2, "2b": 2, "2c": 2, "2d": 2, "3": 3}

_CUBE_NAME = {1: "4AB", 2: "A", 3: "B", 4: "4AB"}
_SQUARE_NAME = {1: "A", 2: "B", 3: "A", 4: "B"}


def rational_arg(text: str) -> Fraction:
    """Exact rational literal: an integer or p/q.  No floats."""
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an integer or p/q rational literal")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has a zero denominator")


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if n < 1:
        raise argparse.ArgumentTypeError("value must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sexticrank",
        description="Exact Mordell-Weil rank of y^2 = x^3 + A*t^6 + B "
                    "over Q(t), with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="component breakdown for one pair")
    p.add_argument("A", type=rational_arg)
    p.add_argument("B", type=rational_arg)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser(
        "certify",
        help="build (or with --verify re-check) a rank certificate")
    p.add_argument("A", type=rational_arg, nargs="?")
    p.add_argument("B", type=rational_arg, nargs="?")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", metavar="FILE",
                   help="also write the certificate JSON to FILE")
    p.add_argument("--verify", metavar="FILE",
                   help="re-verify an existing certificate file; "
                        "A and B are then not needed")

    p = sub.add_parser("census",
                       help="stream all sixth-power-free pairs up to a bound")
    p.add_argument("--bound", type=positive_int, required=True)
    p.add_argument("--jobs", type=positive_int, default=1)
    p.add_argument("--format", choices=["tsv", "text"], default="tsv",
                   help="text is an alias; the body is the same TSV")

    p = sub.add_parser("oracle",
                       help="independent bounded-height point search")
    p.add_argument("A", type=rational_arg)
    p.add_argument("B", type=rational_arg)
    p.add_argument("--k", type=int, choices=[1, 2, 3, 4],
                   help="restrict to one component (default: all four)")
    p.add_argument("--height", type=positive_int, default=12)
    p.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def _require_nonzero(parser, args):
    if args.A is None or args.B is None:
        parser.error("A and B are required")
    if args.A == 0:
        parser.error("A must be nonzero")
    if args.B == 0:
        parser.error("B must be nonzero")


def _component_text(reason) -> str:
    k = reason.k
    bits = []
    if reason.cube_root is not None:
        bits.append(f"{_CUBE_NAME[k]} = {reason.cube_value}"
                    f" = ({reason.cube_root})^3")
    else:
        bits.append(f"{_CUBE_NAME[k]} = {reason.cube_value} is not a cube")
    name = _SQUARE_NAME[k]
    v = reason.square_value
    if reason.square_kind == "square":
        bits.append(f"{name} = {v} = ({reason.square_root})^2")
    elif reason.square_kind == "neg3_square":
        bits.append(f"-3*{name} = {-3 * v} = ({reason.square_root})^2"
                    " (twisted)")
    else:
        bits.append(f"neither {name} = {v} nor -3*{name} = {-3 * v}"
                    " is a square")
    return "; ".join(bits)


def cmd_rank(args) -> int:
    bd = rank_breakdown(args.A, args.B)
    if args.format == "json":
        print(json.dumps(breakdown_to_json(bd), indent=2))
        return 0
    data = breakdown_to_json(bd)
    print(f"A = {bd.A} (class {data['A_class']}), "
          f"B = {bd.B} (class {data['B_class']})")
    print(f"r = {list(bd.r)}")
    for reason in bd.reasons:
        flag = 1 if reason.satisfied else 0
        print(f"  r{reason.k} = {flag}: {_component_text(reason)}")
    print(f"rank = {bd.rank}")
    return 0


def cmd_certify(args, parser) -> int:
    if args.verify:
        try:
            with open(args.verify) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read certificate: {exc}")
        report = verify_certificate_json(data)
        return _emit_verification(report, args.format)

    _require_nonzero(parser, args)
    cert = full_certificate(args.A, args.B)
    data = certificate_to_json(cert)
    report = verify_certificate_json(data)
    ok = cert.all_passed and report.ok
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(f"A = {cert.A}, B = {cert.B}: rank {cert.rank}")
        for w in cert.witnesses:
            sub = next(item for item in data["witnesses"] if item["k"] == w.k)
            print(f"witness k={w.k}: {sub['subfamily_point']}"
                  f" on {sub['subfamily']}")
            print(f"  construction: {sub['construction']}"
                  + (" (Galois descent)" if w.used_descent else ""))
            print(f"  embeds as {sub['embedded_point']}")
        passed = sum(1 for c in cert.checks if c.passed)
        print(f"checks passed: {passed}/{len(cert.checks)}")
        for c in cert.checks:
            if not c.passed:
                print(f"  FAILED: {c.name}")
        print(f"re-verification from JSON: {'ok' if report.ok else 'FAILED'}")
    if not ok:
        for name in report.failures:
            print(f"verification failure: {name}", file=sys.stderr)
    return 0 if ok else 1


def _emit_verification(report, fmt: str) -> int:
    if fmt == "json":
        out = {"ok": report.ok,
               "checks": [{"name": c.name, "passed": c.passed}
                          for c in report.checks]}
        print(json.dumps(out, indent=2))
    else:
        for c in report.checks:
            print(f"{'ok  ' if c.passed else 'FAIL'} {c.name}")
        print(f"certificate {'verifies' if report.ok else 'DOES NOT verify'}")
    return 0 if report.ok else 1


def cmd_census(args) -> int:
    histogram = {}
    pairs = 0
    disagreements = []
    for line in census_rows(args.bound, jobs=args.jobs):
        print(line)
        if line.startswith("A\t"):
            continue
        fields = line.split("\t")
        rank = int(fields[8])
        case = fields[9]
        pairs += 1
        histogram[rank] = histogram.get(rank, 0) + 1
        if _CASE_RANK[case] != rank:
            disagreements.append((fields[0], fields[1]))
    print(f"# pairs {pairs}")
    print("# rank histogram "
          + " ".join(f"{r}:{histogram[r]}" for r in sorted(histogram)))
    print(f"# classify agreements {pairs - len(disagreements)}/{pairs}")
    if disagreements:
        for a, b in disagreements:
            print(f"disagreement at A = {a}, B = {b}", file=sys.stderr)
        return 1
    return 0


def cmd_oracle(args) -> int:
    ks = [args.k] if args.k else [1, 2, 3, 4]
    results = [cross_validate(args.A, args.B, k, height=args.height)
               for k in ks]
    if args.format == "json":
        out = {
            "A": str(args.A),
            "B": str(args.B),
            "height": args.height,
            "results": [{
                "k": cv.k,
                "satisfied": cv.satisfied,
                "used_descent": cv.used_descent,
                "agrees": cv.agrees,
                "conclusive": cv.conclusive,
                "constructed": (cv.constructed.to_str("s")
                                if cv.constructed else None),
                "found": [P.to_str("s") for P in cv.found],
            } for cv in results],
        }
        print(json.dumps(out, indent=2))
    else:
        for cv in results:
            verdict = "agrees" if cv.agrees else "DISAGREES"
            if not cv.conclusive:
                verdict += " (inconclusive: generator beyond search height)"
            print(f"k={cv.k}: criterion {'holds' if cv.satisfied else 'fails'}"
                  f", search found {len(cv.found)} point(s), {verdict}")
            for P in cv.found:
                print(f"  {P.to_str('s')}")
    return 0 if all(cv.agrees for cv in results) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "rank":
        _require_nonzero(parser, args)
        return cmd_rank(args)
    if args.command == "certify":
        return cmd_certify(args, parser)
    if args.command == "census":
        return cmd_census(args)
    if args.command == "oracle":
        _require_nonzero(parser, args)
        return cmd_oracle(args)
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
