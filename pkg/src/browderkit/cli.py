"""Command-line front end: ``browderkit {classify,complete,verify,scan,oracle}``.

Exit codes: 0 success, 1 failed verification or oracle counterexample,
2 malformed input, 3 undecided classification, 4 failed precondition,
5 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .classify import classify_data
from .completion import (
    certificate_from_json,
    construct_browder_C,
    construct_invertible_C,
    verify_certificate,
)
from .errors import DimensionCheckFailed, PrecisionExhausted, PreconditionFailed, SpecParseError
from .expoly import DEFAULT_PRECISION
from .fredholm import DEFAULT_CAP, fredholm_data
from .gauss import as_gauss
from .operator import load_operator, translate
from .oracle import ALIASES, SUITES, run_suite
from .spectra import MODES, parse_region, scan

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNDECIDED, EXIT_PRECONDITION, EXIT_PRECISION = 0, 1, 2, 3, 4, 5


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _lambda(text: str):
    text = text.strip()
    if "," in text:
        re_, im_ = text.split(",", 1)
        return as_gauss([re_.strip(), im_.strip()])
    return as_gauss(text)


def cmd_classify(args) -> int:
    T = load_operator(args.spec)
    lam = _lambda(args.lam)
    fd = fredholm_data(translate(T, lam), args.power_cap, args.precision_bits)
    cls = classify_data(fd)
    print(_dump({"lambda": lam.to_pair(), "fredholm": fd.to_json(), "class": cls.to_json()}))
    return EXIT_OK if cls.all_decided() else EXIT_UNDECIDED


def cmd_complete(args) -> int:
    A, B = load_operator(args.spec_a), load_operator(args.spec_b)
    build = construct_browder_C if args.kind == "browder" else construct_invertible_C
    try:
        C, cert = build(A, B, args.power_cap, args.precision_bits)
    except PreconditionFailed as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        for r in exc.reasons:
            print(f"  - {r}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    out = Path(args.out)
    _write(out / "C.json", _dump(C.to_json()) + "\n")
    _write(out / "certificate.json", cert.dumps() + "\n")
    result = verify_certificate(cert)
    print(_dump({"kind": cert.kind, "C": C.to_json(), "verified": result.ok, "reasons": result.reasons,
                 "files": [str(out / "C.json"), str(out / "certificate.json")]}))
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, line=exc.lineno, column=exc.colno, path=args.certificate) from None
    try:
        cert = certificate_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise SpecParseError(f"malformed certificate: missing or invalid {exc}", path=args.certificate) from None
    result = verify_certificate(cert)
    print(_dump({"verified": result.ok, "reasons": result.reasons}))
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_scan(args) -> int:
    A, B = load_operator(args.spec_a), load_operator(args.spec_b)
    try:
        region = parse_region(args.region)
        step = args.step
        grid = scan(A, B, region, step, args.mode, args.threads, args.witness, args.power_cap,
                    args.precision_bits)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"malformed region or step: {exc}", file=sys.stderr)
        return EXIT_PARSE
    out = Path(args.out)
    fmts = args.format or ["csv", "svg"]
    files = []
    if "csv" in fmts:
        _write(out / "scan.csv", grid.to_csv())
        files.append(str(out / "scan.csv"))
    if "svg" in fmts:
        _write(out / "scan.svg", grid.to_svg())
        files.append(str(out / "scan.svg"))
    if "json-report" in fmts:
        _write(out / "scan.json", _dump(grid.to_json()) + "\n")
        files.append(str(out / "scan.json"))
    print(grid.summary())
    for f in files:
        print(f"wrote {f}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    report = run_suite(args.suite, args.trials, args.seed)
    print(_dump(report.to_json()))
    return EXIT_OK if report.passed else EXIT_FAIL


def _positive(minimum: int):
    def conv(text: str) -> int:
        v = int(text)
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    env_prec = os.environ.get("BROWDER_PRECISION_BITS")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=_positive(64),
                        default=int(env_prec) if env_prec else DEFAULT_PRECISION,
                        help="working precision for ball arithmetic (default 128 or $BROWDER_PRECISION_BITS)")
    common.add_argument("--power-cap", type=_positive(1), default=DEFAULT_CAP,
                        help="largest power tried when searching for ascent and descent")
    common.add_argument("--threads", type=_positive(1), default=os.cpu_count() or 1)

    p = argparse.ArgumentParser(prog="browderkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="Fredholm data and class flags of an operator")
    c.add_argument("spec")
    c.add_argument("--lambda", dest="lam", default="0", help="spectral parameter, 'a' or 're,im'")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("complete", parents=[common], help="construct a completion C and its certificate")
    c.add_argument("spec_a")
    c.add_argument("spec_b")
    c.add_argument("--kind", choices=["browder", "invertible"], default="browder")
    c.add_argument("--out", default=".")
    c.set_defaults(func=cmd_complete)

    c = sub.add_parser("verify", parents=[common], help="re-check a completion certificate")
    c.add_argument("certificate")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("scan", parents=[common], help="classify a rational grid of spectral parameters")
    c.add_argument("spec_a")
    c.add_argument("spec_b")
    c.add_argument("--region", default="-2,2,-2,2", help="re0,re1,im0,im1")
    c.add_argument("--step", default="1/20")
    c.add_argument("--mode", choices=MODES, default="all_C")
    c.add_argument("--witness", action="store_true", help="build and verify a completion at points outside SPR")
    c.add_argument("--format", action="append", choices=["csv", "svg", "json-report"])
    c.add_argument("--out", default=".")
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("oracle", help="seeded finite-dimensional property suites")
    c.add_argument("--suite", choices=sorted(SUITES) + sorted(ALIASES), default="corner")
    c.add_argument("--trials", type=_positive(1), default=500)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_oracle)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    """Attach values such as ``-2,2,-2,2`` to their flag so argparse does not read them as options."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--region", "--lambda", "--step"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except DimensionCheckFailed as exc:
        print(f"internal dimension check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
