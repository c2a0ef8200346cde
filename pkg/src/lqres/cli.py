"""Command-line front end: ``lqres {check,order,resolve,betti,verify,hilbert,corpus}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .corpus import expand_record, record_name
from .field import parse_field
from .ideals import (
    CertificateError,
    IdealError,
    LinearQuotientsError,
    MONOMIAL,
    certify_linear_quotients,
    find_lq_order,
)
from .io import (
    FormatError,
    certificate_to_json,
    ideal_to_json,
    load_ideal,
    resolution_from_json,
    resolution_to_json,
    write_json,
)
from .modules import GradedMapError
from .poly import PolynomialSyntaxError
from .resolution import ConstructionError, build_resolution
from .verify import (
    CheckResult,
    VerificationReport,
    betti_from_resolution,
    bruteforce_minimal_resolution,
    format_tpoly,
    hilbert_series_monomial,
    verify_resolution,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CERTIFY = 3
EXIT_CONSTRUCT = 4
EXIT_VERIFY = 5

PARSE_ERRORS = (FormatError, PolynomialSyntaxError, IdealError, json.JSONDecodeError, OSError)


@dataclass
class RunConfig:
    command: str
    input: str | None
    field: str
    order_mode: str
    seed: int
    emax: int | None
    out: str | None


def _config(args) -> RunConfig:
    return RunConfig(args.command, getattr(args, "input", None), args.field,
                     args.order_mode, args.seed, args.emax, args.out)


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _ordered(args, ideal_file):
    """Apply the order mode; returns (ideal, certificate)."""
    ideal = ideal_file.ordered_ideal()
    mode = args.order_mode
    if mode == "given":
        try:
            cert = certify_linear_quotients(ideal, ideal_file.certificate)
        except LinearQuotientsError as exc:
            wit = ", ".join(str(w) for w in exc.witnesses)
            raise CliFailure(EXIT_CERTIFY, f"not linear quotients: fails at k={exc.k}"
                             + (f" (colon generators of degree >= 2: {wit})" if wit else "")) from exc
        except CertificateError as exc:
            raise CliFailure(EXIT_CERTIFY, f"certificate rejected: {exc}") from exc
        return ideal, cert
    found = find_lq_order(ideal, mode)
    if not found.found:
        kind = "definitive" if found.definitive else "inconclusive"
        raise CliFailure(EXIT_CERTIFY, f"no linear-quotients order ({mode} search, {kind}); "
                         f"fails at k={found.failing_k}")
    return found.ideal, found.certificate


def _print_certificate(ideal, cert):
    print(f"ideal: {ideal}")
    for k, forms in enumerate(cert.forms, start=1):
        gens = ", ".join(str(u) for u in forms) or "0"
        print(f"  k={k}: colon = <{gens}>  q_{k} = {len(forms)}")
    print(f"q = {list(cert.q_values)}, q(I) = {cert.q_max}")
    if cert.provisional:
        print("provisional: colon ideals checked in degrees 1 and 2 only")


def cmd_check(args) -> int:
    ideal, cert = _ordered(args, load_ideal(args.input, _field(args)))
    _print_certificate(ideal, cert)
    if args.out:
        write_json(certificate_to_json(cert, ideal), args.out)
    return EXIT_OK


def cmd_order(args) -> int:
    if args.order_mode == "given":
        args.order_mode = "auto"
    ideal_file = load_ideal(args.input, _field(args))
    ideal, cert = _ordered(args, ideal_file)
    print("order: " + ", ".join(str(g) for g in ideal.generators))
    print(f"q = {list(cert.q_values)}, q(I) = {cert.q_max}")
    if args.out:
        write_json(ideal_to_json(ideal, None, cert), args.out)
    return EXIT_OK


def _build(args):
    ideal, cert = _ordered(args, load_ideal(args.input, _field(args)))
    try:
        res = build_resolution(ideal, cert)
    except ConstructionError as exc:
        raise CliFailure(EXIT_CONSTRUCT, f"construction failed: {exc}") from exc
    return ideal, cert, res


def _report_json(report: VerificationReport, config: RunConfig) -> dict:
    out = report.to_json()
    out["config"] = asdict(config)
    return out


def _print_report(report: VerificationReport):
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f"  {c.witness}" if c.witness else ""
        note = f"  [{c.note}]" if c.note else ""
        print(f"{status} {c.name}{note}{extra}")


def cmd_resolve(args) -> int:
    ideal, cert, res = _build(args)
    report = verify_resolution(res, ideal, cert, e_max=args.emax,
                               degreewise=True if args.emax is not None else None)
    print(report.betti.render())
    print(f"pd = {res.length}, q(I) = {cert.q_max}")
    _print_report(report)
    if args.out:
        write_json(resolution_to_json(res), args.out)
    if args.report:
        write_json(_report_json(report, _config(args)), args.report)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_betti(args) -> int:
    if args.bruteforce:
        ideal = load_ideal(args.input, _field(args)).ideal
        table = bruteforce_minimal_resolution(ideal)
    else:
        _, _, res = _build(args)
        table = betti_from_resolution(res)
    print(table.render())
    if args.out:
        write_json({"betti": table.to_json()}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    field = _field(args)
    ideal_file = load_ideal(args.ideal, field)
    ideal = ideal_file.ordered_ideal()
    data = json.loads(Path(args.input).read_text())
    try:
        res = resolution_from_json(data, field)
    except GradedMapError as exc:
        report = VerificationReport([CheckResult("homogeneity", False, {"error": str(exc)})],
                                    betti=_empty_betti(), pd=-1)
    else:
        cert = None
        try:
            cert = certify_linear_quotients(ideal, ideal_file.certificate)
        except (LinearQuotientsError, CertificateError):
            found = find_lq_order(ideal) if ideal.m <= 8 else None
            cert = found.certificate if found and found.found else None
        report = verify_resolution(res, ideal, cert, e_max=args.emax,
                                   degreewise=True if args.emax is not None else None)
    _print_report(report)
    if args.out:
        write_json(_report_json(report, _config(args)), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _empty_betti():
    from .verify import BettiTable
    return BettiTable()


def cmd_hilbert(args) -> int:
    ideal = load_ideal(args.input, _field(args)).ideal
    if ideal.kind != MONOMIAL:
        raise CliFailure(EXIT_PARSE, "hilbert needs a monomial ideal")
    hs = hilbert_series_monomial(ideal)
    print(f"HS(I)   = ({format_tpoly(hs.numerator)}) / (1-t)^{hs.n}")
    print(f"HS(S/I) = ({format_tpoly(hs.quotient_numerator)}) / (1-t)^{hs.n}")
    if args.out:
        write_json({"numerator": list(hs.numerator),
                    "quotient_numerator": list(hs.quotient_numerator), "n": hs.n}, args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    records = json.loads(Path(args.input).read_text())
    if isinstance(records, dict):
        records = records.get("records", [])
    if not isinstance(records, list):
        raise FormatError("a manifest is a JSON list of {family, params, seed} records")
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    field = _field(args)
    for rec in records:
        rec = dict(rec)
        rec.setdefault("seed", args.seed)
        try:
            ideal = expand_record(rec, field)
        except (KeyError, ValueError) as exc:
            raise FormatError(f"bad manifest record {rec}: {exc}") from exc
        path = out_dir / f"{record_name(rec)}.json"
        write_json(ideal_to_json(ideal), path)
        print(path)
    return EXIT_OK


def _field(args):
    return parse_field(args.field)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="QQ", help="QQ (default) or GF(p), e.g. GF(32003)")
    common.add_argument("--order-mode", default="given",
                        choices=["given", "auto", "exhaustive", "greedy"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--emax", type=int, default=None,
                        help="top degree for degreewise exactness (default d + pd + 2)")
    common.add_argument("--out", default=None)

    parser = argparse.ArgumentParser(prog="lqres", description="Certify linear quotients and build minimal linear resolutions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="certify linear quotients")
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("order", parents=[common], help="search for a linear-quotients order")
    p.add_argument("input")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("resolve", parents=[common], help="build and verify the resolution")
    p.add_argument("input")
    p.add_argument("--report", default=None, help="write the JSON verification report here")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("betti", parents=[common], help="print the Betti diagram")
    p.add_argument("input")
    p.add_argument("--bruteforce", action="store_true", help="use the brute-force oracle")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", parents=[common], help="re-check an exported resolution")
    p.add_argument("input", help="resolution JSON")
    p.add_argument("ideal", help="ideal file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series of a monomial ideal")
    p.add_argument("input")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("corpus", parents=[common], help="expand a corpus manifest")
    p.add_argument("input", help="manifest JSON")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
