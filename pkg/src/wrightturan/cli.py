"""Command-line front end: ``wrightturan <command> FAMILY ... [options]``.

FAMILY is ``H r t``, ``G a p`` or ``P "{m:e,...}"``.  Tables go to stdout (or
``--out``) as CSV or JSON; exit status 0 means the checked property held.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

import mpmath

from . import series as S
from .contour import ContourConfig, arc_split_report, contour_checks
from .hyperbolicity import turan_scan
from .jensen import hermite_distance, jensen_polynomial, normalized_jensen_curve
from .series import ProductSpec
from .specfun import specfun_checks
from .wright import WrightProfile, growth_model, profile_for, wright_estimate

DIGITS_ENV = "WRIGHTTURAN_DIGITS"
DEFAULT_DIGITS = 30


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: ProductSpec | None
    digits: int
    fmt: str
    out: str | None


# -- parsing helpers -------------------------------------------------------------

def _family(tokens, N=0) -> ProductSpec:
    if not tokens:
        raise UsageError("missing family; expected H r t, G a p or P {m:e,...}")
    return ProductSpec.parse(list(tokens), N)


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(x)) if "e" in x.lower() else int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"--range expects LO:HI, got {text!r}") from exc
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _grid(text: str):
    try:
        parts = text.split(":")
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError) as exc:
        raise UsageError(f"--grid expects XMIN:XMAX:STEPS, got {text!r}") from exc
    if steps < 0:
        raise UsageError("--grid needs STEPS >= 0")
    return lo, hi, steps


def _digits(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(DIGITS_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{DIGITS_ENV} must be an integer, got {env!r}") from exc
    return DEFAULT_DIGITS


def _fmt(x, digits):
    if isinstance(x, (int, str, bool)):
        return x
    return mpmath.nstr(x, digits)


def _emit(cfg: RunConfig, header: list[str], rows: list[list], extra: dict | None = None) -> None:
    if cfg.fmt == "json":
        doc = {"command": cfg.command, "columns": header,
               "rows": [dict(zip(header, (_json_val(v, cfg.digits) for v in r))) for r in rows]}
        if cfg.spec is not None:
            doc["family"] = cfg.spec.canonical()
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v, cfg.digits) for v in r])
        text = buf.getvalue()
    if cfg.out:
        S._atomic_write(cfg.out, text)
    else:
        sys.stdout.write(text)


def _json_val(v, digits):
    if isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v if abs(v) < 2**53 else str(v)
    return mpmath.nstr(v, digits)


def _sequence(spec: ProductSpec, count: int, K: int | None, cache: str | None):
    if cache and os.path.exists(cache):
        seq = S.read_cache(cache)
        want_K = spec.dilation if K is None else K
        if seq.label() != spec.canonical() or seq.K != want_K:
            raise UsageError(f"cache {cache} holds {seq.label()} with K={seq.K}, "
                             f"not {spec.canonical()} with K={want_K}")
        if len(seq) < count:
            raise UsageError(f"cache {cache} holds {len(seq)} terms, need {count}")
        return seq
    seq = S.series_for(spec, count, K)
    if cache:
        S.write_cache(seq, cache)
    return seq


# -- commands ----------------------------------------------------------------------

def cmd_coeffs(args, cfg: RunConfig) -> int:
    spec = cfg.spec.with_N(args.N)
    full = S.expand_product(spec)
    seq = S.dilate_extract(full, args.K) if args.K != 1 else full
    if args.cache:
        S.write_cache(seq, args.cache)
    _emit(cfg, ["n", "c(n)"], [[i, c] for i, c in enumerate(seq)])
    return 0


def cmd_jensen(args, cfg: RunConfig) -> int:
    ns = _int_list(args.n)
    seq = _sequence(cfg.spec, max(ns) + args.d + 1, args.K, args.cache)
    rows = []
    for n in ns:
        poly = jensen_polynomial(seq, args.d, n)
        rows.extend([n, j, poly[j]] for j in range(args.d + 1))
    _emit(cfg, ["n", "j", "coefficient"], rows)
    return 0


def cmd_turan(args, cfg: RunConfig) -> int:
    lo, hi = _range(args.range)
    seq = _sequence(cfg.spec, hi + args.d + 1, args.K, args.cache)
    scan = turan_scan(seq, args.d, (lo, hi))
    rows = [[r.n, int(r.hyperbolic), r.delta_signs] for r in scan.rows]
    tail_start = lo + (hi - lo + 1) // 2
    tail_failures = [n for n in scan.failures if n >= tail_start]
    _emit(cfg, ["n", "hyperbolic", "delta_signs"], rows,
          {"failures": scan.failures, "last_failure": scan.last_failure})
    if scan.failures:
        print(f"failures ({len(scan.failures)}): {' '.join(map(str, scan.failures))}", file=sys.stderr)
    else:
        print("no failures", file=sys.stderr)
    if scan.disagreements:
        print(f"Hankel/Sturm disagreement at n = {scan.disagreements}", file=sys.stderr)
        return 1
    return 1 if tail_failures else 0


def _profile(args, spec):
    if args.profile:
        return WrightProfile.load(args.profile)
    return profile_for(spec)


def cmd_asymptotic(args, cfg: RunConfig) -> int:
    ns = _int_list(args.n)
    if any(n < 1 for n in ns):
        raise UsageError("asymptotic estimates need n >= 1")
    profile = _profile(args, cfg.spec)
    seq = _sequence(cfg.spec, max(ns) + 1, profile.K, args.cache)
    rows = []
    for n in ns:
        exact = S.log_coeff(seq, n)
        est = wright_estimate(profile, n, args.terms).log_value
        rows.append([n, exact, est, mpmath.exp(est - exact)])
    _emit(cfg, ["n", "exact_log", "wright_log", "ratio"], rows)
    return 0


def cmd_hermite(args, cfg: RunConfig) -> int:
    ns = _int_list(args.n)
    grid = _grid(args.grid)
    profile = _profile(args, cfg.spec)
    growth = growth_model(profile, args.convention)
    seq = _sequence(cfg.spec, max(ns) + args.d + 1, profile.K, args.cache)
    rows, curve_rows = [], []
    for n in ns:
        if args.curves:
            curve = normalized_jensen_curve(seq, args.d, n, growth, grid)
            curve_rows.extend([n, X, v, h] for X, v, h in curve)
            dist = max(abs(v - h) for _, v, h in curve)
        else:
            dist = hermite_distance(seq, args.d, n, growth, grid)
        rows.append([n, dist])
    _emit(cfg, ["n", "distance"], rows)
    if args.curves:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "X", "normalized_value", "hermite_value"])
        for r in curve_rows:
            w.writerow([r[0]] + [mpmath.nstr(v, cfg.digits) for v in r[1:]])
        S._atomic_write(args.curves, buf.getvalue())
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    checks = []
    if args.suite in ("specfun", "all"):
        checks.extend(specfun_checks())
    if args.suite in ("contour", "all"):
        if args.family:
            fam = _family(args.family).canonical()
            checks.extend(contour_checks([fam], args.n))
        else:
            checks.extend(contour_checks(n=args.n))
    rows = [[c.name, "pass" if c.passed else "fail", c.detail] for c in checks]
    _emit(cfg, ["check", "result", "detail"], rows)
    return 0 if all(c.passed for c in checks) else 1


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help=f"precision in decimal digits (default ${DIGITS_ENV} or {DEFAULT_DIGITS})")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write the table to this file (atomically)")
    common.add_argument("--cache", help="coefficient cache file to read, or to create if missing")

    p = argparse.ArgumentParser(prog="wrightturan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="exact coefficients c(0..N)")
    c.add_argument("family", nargs="+")
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--K", type=int, default=1, help="output C(n) = c(Kn)")

    j = sub.add_parser("jensen", parents=[common], help="Jensen polynomial coefficients")
    j.add_argument("family", nargs="+")
    j.add_argument("--d", type=int, required=True)
    j.add_argument("--n", required=True, help="comma-separated shifts")
    j.add_argument("--K", type=int, default=None)

    t = sub.add_parser("turan", parents=[common], help="exact hyperbolicity scan of J^{d,n}")
    t.add_argument("family", nargs="+")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--range", required=True, help="inclusive LO:HI shift range")
    t.add_argument("--K", type=int, default=None)

    a = sub.add_parser("asymptotic", parents=[common], help="exact vs Wright main term")
    a.add_argument("family", nargs="+")
    a.add_argument("--n", required=True, help="comma-separated indices")
    a.add_argument("--terms", type=int, default=1)
    a.add_argument("--profile", help="JSON profile overriding the built-in one")

    h = sub.add_parser("hermite", parents=[common], help="distance of normalized Jensen polynomials to H_d")
    h.add_argument("family", nargs="+")
    h.add_argument("--d", type=int, required=True)
    h.add_argument("--n", required=True, help="comma-separated shifts")
    h.add_argument("--grid", default="-3:3:600", help="XMIN:XMAX:STEPS")
    h.add_argument("--convention", choices=("derived", "transcribed"), default="derived")
    h.add_argument("--curves", help="also write plot-ready CSV rows n,X,normalized_value,hermite_value")
    h.add_argument("--profile", help="JSON profile overriding the built-in one")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=("contour", "specfun", "all"))
    v.add_argument("--family", nargs="+", help="family for the contour suite")
    v.add_argument("--n", type=int, default=50)
    return p


COMMANDS = {
    "coeffs": cmd_coeffs,
    "jensen": cmd_jensen,
    "turan": cmd_turan,
    "asymptotic": cmd_asymptotic,
    "hermite": cmd_hermite,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        digits = _digits(args.digits)
        spec = _family(args.family) if getattr(args, "family", None) and args.command != "verify" else None
        cfg = RunConfig(args.command, spec, digits, args.format, args.out)
        with mpmath.workdps(max(digits, 15)):
            return COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, IndexError) as exc:
        print(f"wrightturan {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
