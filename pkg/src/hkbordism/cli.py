"""Command-line front end.

Exit codes: 0 success or passing certificate, 1 failing verdict, 2 usage
or data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import selftest
from .basis_certifier import CertificateInconsistency, RankZeroDegree, certify_basis, format_fraction
from .char_calculus import chern_to_pontryagin, newton_girard
from .manifold_catalog import (
    ChernDataError,
    HilbertData,
    ManifoldDescriptor,
    MissingDataError,
    characteristic_number,
    default_data_path,
    load_chern_data,
)
from .partitions import Decoration, Partition, bordism_rank
from .torus_models import c1_power_integral, p1_power_integral

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


def _render(headers: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(headers, row)) for row in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buf.getvalue()
    cells = [list(map(str, headers))] + [[str(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _value(x: Fraction, decimal: bool) -> dict[str, str]:
    out = {"exact": format_fraction(x)}
    if decimal:
        out["decimal"] = f"{float(x):.12g}"
    return out


def _parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if not text:
        return Partition(())
    try:
        return Partition.of(*(int(p) for p in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _load_data(path: str | None) -> HilbertData:
    source = path if path is not None else default_data_path().read_text(encoding="utf-8")
    return HilbertData.from_records(load_chern_data(source))


def cmd_ranks(args) -> int:
    if args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    x = Decoration(args.decoration)
    rows = [(d, bordism_rank(x, d)) for d in range(args.max_degree + 1)]
    sys.stdout.write(_render(("degree", "rank"), rows, args.format))
    return EXIT_OK


def cmd_newton_girard(args) -> int:
    if args.k < 1:
        raise UsageError("k must be at least 1")
    text = str(newton_girard(args.k))
    sys.stdout.write(_render(("k", "s_k"), [(args.k, text)], args.format) if args.format != "table" else text + "\n")
    return EXIT_OK


def cmd_convert(args) -> int:
    if args.k < 1:
        raise UsageError("k must be at least 1")
    text = str(chern_to_pontryagin(args.k))
    sys.stdout.write(_render(("k", "p_k"), [(args.k, text)], args.format) if args.format != "table" else text + "\n")
    return EXIT_OK


def cmd_integrate_torus(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    power = args.n if args.power is None else args.power
    if power < 0:
        raise UsageError("--power must be non-negative")
    if args.kind == "c1":
        value = c1_power_integral(args.n, power)
        label = f"int_T^{2 * args.n} c1(L)^{power}"
    else:
        value = p1_power_integral(args.n, power)
        label = f"int_T^{4 * args.n} p1(Q)^{power}"
    v = _value(value, args.decimal)
    row = [label, v["exact"]] + ([v["decimal"]] if args.decimal else [])
    headers = ["integral", "value"] + (["decimal"] if args.decimal else [])
    sys.stdout.write(_render(headers, [row], args.format))
    return EXIT_OK


def cmd_char_number(args) -> int:
    data = _load_data(args.data)
    try:
        m = ManifoldDescriptor(_parse_partition(args.k3_parts), args.torus_dim, Decoration(args.decoration))
        lam = _parse_partition(args.partition)
        value = characteristic_number(m, args.aux_power, lam, data)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    v = _value(value, args.decimal)
    row = [m.label(), args.aux_power, str(lam), v["exact"]] + ([v["decimal"]] if args.decimal else [])
    headers = ["manifold", "aux_power", "partition", "value"] + (["decimal"] if args.decimal else [])
    sys.stdout.write(_render(headers, [row], args.format))
    return EXIT_OK


def cmd_certify(args) -> int:
    data = _load_data(args.data)
    cert = certify_basis(args.decoration, args.degree, data)
    doc = cert.to_document(include_matrix=args.include_matrix)
    if args.decimal:
        doc["overall_determinant_decimal"] = f"{float(cert.overall_determinant):.12g}"
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        rows = [(cert.decoration.value, cert.degree, cert.rank_columns, doc["overall_determinant"], cert.verdict)]
        sys.stdout.write(_render(("decoration", "degree", "side", "determinant", "verdict"), rows, args.format))
    else:
        sys.stdout.write(text)
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_selftest(args) -> int:
    results = selftest.run()
    rows = [("PASS" if ok else "FAIL", name) for name, ok in results]
    sys.stdout.write(_render(("status", "check"), rows, args.format))
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hkbordism", description="Characteristic-number calculus and basis certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")

    def deco(p):
        p.add_argument("--decoration", choices=[d.value for d in Decoration], required=True)

    p = sub.add_parser("ranks", help="rank of rational Sp^x bordism by degree")
    deco(p)
    p.add_argument("--max-degree", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("newton-girard", help="print s_k(x1, ..., xk)")
    p.add_argument("k", type=int)
    fmt(p)
    p.set_defaults(func=cmd_newton_girard)

    p = sub.add_parser("convert", help="print p_k in Chern classes")
    p.add_argument("k", type=int)
    fmt(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("integrate-torus", help="int c1(L)^y over T^2n, or int p1(Q)^y over T^4n")
    p.add_argument("--kind", choices=("c1", "q"), default="c1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--power", type=int, default=None, help="defaults to n")
    p.add_argument("--decimal", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_integrate_torus)

    p = sub.add_parser("char-number", help="one characteristic number of a basis manifold")
    deco(p)
    p.add_argument("--k3-parts", default="", help="Hilbert-scheme weights, e.g. 2,1")
    p.add_argument("--torus-dim", type=int, default=0)
    p.add_argument("--aux-power", type=int, default=0)
    p.add_argument("--partition", default="", help="Pontryagin monomial, e.g. 1,1")
    p.add_argument("--data")
    p.add_argument("--decimal", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_char_number)

    p = sub.add_parser("certify", help="certify linear independence of B^x in one degree")
    deco(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--data", help="K3 Chern data file (defaults to the shipped file)")
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.add_argument("--include-matrix", action="store_true")
    p.add_argument("--decimal", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("selftest", help="run the built-in invariant checks")
    fmt(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RankZeroDegree, ChernDataError, MissingDataError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except CertificateInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
