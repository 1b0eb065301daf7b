"""Command-line entry point: ``robinkit <command> ...``.

Exit codes: 0 pass, 1 verification mismatch, 2 usage or domain error,
3 precision saturation, 4 a Robin violation above 5040.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Sequence

from . import __version__, robin, thresholds, transforms
from .arith import factorize, set_prime_limit
from .config import FORMATS, RunConfig, load_config
from .errors import DomainError, PrecisionError
from .suites import (
    EXIT_FALSIFY,
    EXIT_MISMATCH,
    EXIT_PASS,
    EXIT_PRECISION,
    EXIT_USAGE,
    SUITES,
    run_suite,
)

REPORT_SCHEMA = "robinkit.report/1"
_SEVERITY = (EXIT_PASS, EXIT_MISMATCH, EXIT_PRECISION, EXIT_FALSIFY)


def _emit(data: Any, fmt: str, *, text: str | None = None, csv_text: str | None = None) -> None:
    if fmt == "json":
        out = json.dumps(data, indent=2, sort_keys=True)
    elif fmt == "csv" and csv_text is not None:
        out = csv_text.rstrip("\n")
    else:
        out = text if text is not None else json.dumps(data, sort_keys=True)
    print(out)


def _rows_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _worst(codes) -> int:
    return max(codes, key=_SEVERITY.index, default=EXIT_PASS)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check(args, cfg: RunConfig) -> int:
    v = robin.check(args.n, cfg.precision_bits)
    data = v.to_json()
    lo, hi = data["margin_lo"], data["margin_hi"]
    _emit(data, cfg.output_format,
          text=f"{v.n}: {v.status.value} (margin in [{lo!r}, {hi!r}], {v.precision_used} bits)",
          csv_text=_rows_csv(list(data), [list(data.values())]))
    if v.status is robin.Status.UNDECIDED:
        return EXIT_PRECISION
    return EXIT_FALSIFY if v.falsifies_rh else EXIT_PASS


def cmd_scan(args, cfg: RunConfig) -> int:
    found = robin.scan(args.start, args.stop, args.filter, max_precision=cfg.precision_bits,
                       chunk_size=cfg.chunk_size, workers=cfg.workers)
    _emit({"from": args.start, "to": args.stop, "filter": args.filter, "violations": found},
          cfg.output_format, text="\n".join(map(str, found)) if found else "(none)",
          csv_text=robin.exceptions_csv(found, args.filter))
    return EXIT_FALSIFY if any(n > robin.CLASSICAL_BOUND for n in found) else EXIT_PASS


def _k_range(text: str) -> range:
    try:
        a, _, b = text.partition(":")
        lo, hi = int(a), int(b or a)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K or K1:K2, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad k range {text!r}")
    return range(lo, hi + 1)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_thresholds(args, cfg: RunConfig) -> int:
    table = thresholds.threshold_table(args.k_range, args.q, d=args.d)
    rows = table.to_json()
    text = table.to_csv().replace(",", "\t")
    _emit(rows, cfg.output_format, text=text.rstrip("\n"), csv_text=table.to_csv())
    return EXIT_PASS


def _suite_text(res) -> str:
    lines = [f"[{'PASS' if res.passed else 'FAIL'}] suite {res.name}"]
    for c in res.checks:
        tag = "info" if c.informational else ("ok" if c.passed else "FAIL")
        lines.append(f"  {tag:4} {c.name}")
    if res.undecided:
        lines.append(f"  UNDECIDED {res.undecided}")
    if res.falsifying:
        lines.append(f"  VIOLATION above 5040: {res.falsifying}")
    return "\n".join(lines)


def _suite_csv(results) -> str:
    return _rows_csv(["suite", "check", "passed", "informational"],
                     [[r.name, c.name, c.passed, c.informational] for r in results for c in r.checks])


def cmd_verify(args, cfg: RunConfig) -> int:
    res = run_suite(args.suite, cfg)
    _emit(res.to_json(), cfg.output_format, text=_suite_text(res), csv_text=_suite_csv([res]))
    return res.exit_code


def cmd_sa(args, cfg: RunConfig) -> int:
    recs = transforms.generate_superabundant(args.limit, args.cutoff)
    data = [r.to_json() for r in recs]
    _emit(data, cfg.output_format, text="\n".join(str(r.value) for r in recs),
          csv_text=_rows_csv(["value", "sigma", "s_num", "s_den", "is_hr"], [list(d.values()) for d in data]))
    return EXIT_PASS


def cmd_transform(args, cfg: RunConfig) -> int:
    f = factorize(args.n)
    if args.op == "B":
        m = transforms.least_dominator(f)
        data = {"op": "B", "n": args.n, "value": m}
        text = "none" if m is None else str(m)
    else:
        g = transforms.hr_compress(f) if args.op == "H" else transforms.sort_exponents(f)
        data = {"op": args.op, "n": args.n, "value": g.value, "factorization": str(g)}
        text = str(g.value)
    _emit(data, cfg.output_format, text=text, csv_text=_rows_csv(list(data), [list(data.values())]))
    return EXIT_PASS


def cmd_report(args, cfg: RunConfig) -> int:
    names = args.suite or list(SUITES)
    results = [run_suite(name, cfg) for name in names]
    code = _worst(r.exit_code for r in results)
    report = {
        "schema": REPORT_SCHEMA,
        "tool": "robinkit",
        "version": __version__,
        "config": cfg.snapshot(),
        "suites": [r.to_json() for r in results],
        "passed": code == EXIT_PASS,
    }
    text = "\n".join([_suite_text(r) for r in results] + [f"overall: {'PASS' if code == EXIT_PASS else 'FAIL'}"])
    _emit(report, cfg.output_format, text=text, csv_text=_suite_csv(results))
    return code


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--precision-bits", type=_positive, help="precision cap in bits (default 4096)")
    g.add_argument("--prime-limit", type=_positive, help="prime table cap (default 1e8)")
    g.add_argument("--chunk-size", type=_positive, help="scan chunk length")
    g.add_argument("--sweep-ceiling", type=_positive, help="upper end of suite sweeps (default 1e6)")
    g.add_argument("--workers", type=_positive, help="worker processes for scans")
    g.add_argument("--format", dest="output_format", choices=FORMATS, help="output format (default json)")
    g.add_argument("--config", dest="config_file", help="JSON config file")
    g.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="robinkit", description="Robin's inequality verification toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verdict for a single n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="violations of Robin's inequality in a range")
    p.add_argument("start", type=int)
    p.add_argument("stop", type=int)
    p.add_argument("--filter", choices=robin.CATEGORIES)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("thresholds", parents=[common], help="table of M(k) and M_k(q)")
    p.add_argument("--k-range", type=_k_range, default=_k_range("1:20"), help="K or K1:K2 (default 1:20)")
    p.add_argument("--q", type=_int_list, default=[2], help="comma-separated primes q (default 2)")
    p.add_argument("--d", type=int, choices=thresholds.SUPPORTED_DIVISORS, help="add log N_{k/d} and eps_k")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sa", parents=[common], help="superabundant numbers up to a limit")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--cutoff", type=_positive, default=transforms.DEFAULT_SA_CUTOFF,
                   help="brute force up to here, HR search above")
    p.set_defaults(func=cmd_sa)

    p = sub.add_parser("transform", parents=[common], help="apply the H/A/B transform to n")
    p.add_argument("--op", choices=("H", "A", "B"), required=True)
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("report", parents=[common], help="run every suite and emit one report")
    p.add_argument("--suite", action="append", choices=list(SUITES), help="restrict to these suites")
    p.set_defaults(func=cmd_report)
    return parser


_CONFIG_KEYS = ("precision_bits", "prime_limit", "chunk_size", "sweep_ceiling", "workers", "output_format")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config({k: getattr(args, k) for k in _CONFIG_KEYS}, config_file=args.config_file)
        set_prime_limit(cfg.prime_limit)
        return args.func(args, cfg)
    except DomainError as exc:
        print(f"robinkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"robinkit: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
