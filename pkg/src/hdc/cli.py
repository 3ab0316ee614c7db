"""Command-line front end: ``hdc <command> <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
Environment variables HDC_SEED, HDC_FORMAT and HDC_DIGITS provide defaults
that command-line flags override.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import ball, centroids, diophantine, leakage, oracles
from .errors import DomainError, ResourceLimitError
from .exact import quad_to_decimal
from .scaled import LogScaled

FORMATS = ("text", "json", "csv")

BALL_SWEEP_HEADER = ["N", "omega", "Omega", "asymptotic", "prop5_bound"]
LEAK_SWEEP_HEADER = ["N", "inner_radius", "ratio", "log_ratio", "leaks", "growth_envelope"]


class VerificationFailure(Exception):
    """Raised after output is written when a check did not pass."""


@dataclass
class RunConfig:
    output_format: str = "text"
    decimal_digits: int = 10
    seed: int = 0
    sample_budget: int = 10**6
    resource_cap_n: int = 2000

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise DomainError(f"format must be one of {', '.join(FORMATS)}")
        if not 1 <= self.decimal_digits <= 50:
            raise DomainError("digits must lie in 1..50")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.sample_budget < 1 or self.resource_cap_n < 1:
            raise DomainError("samples and cap must be positive")

    @classmethod
    def resolve(cls, args, env=None) -> RunConfig:
        env = os.environ if env is None else env
        values = {}
        for field, var, conv in (("output_format", "HDC_FORMAT", str),
                                 ("decimal_digits", "HDC_DIGITS", int),
                                 ("seed", "HDC_SEED", int)):
            if var in env:
                try:
                    values[field] = conv(env[var])
                except ValueError:
                    raise DomainError(f"bad value for {var}: {env[var]!r}") from None
        for field, attr in (("output_format", "format"), ("decimal_digits", "digits"),
                            ("seed", "seed"), ("sample_budget", "samples"),
                            ("resource_cap_n", "cap")):
            if getattr(args, attr, None) is not None:
                values[field] = getattr(args, attr)
        return cls(**values)


# rendering helpers


def fmt_float(x: float, digits: int) -> str:
    return f"{x:.{digits}f}"


def fmt_scaled(v: LogScaled, digits: int) -> str:
    """Fixed point in [1e-6, 1e6), scientific (from the log) elsewhere."""
    if v.is_zero:
        return fmt_float(0.0, digits)
    l10 = v.log10()
    if -6 <= l10 < 6:
        return fmt_float(v.to_float(), digits)
    return v.sci(digits)


def _emit(cfg, records, text, out):
    if cfg.output_format == "json":
        payload = records[0] if len(records) == 1 else records
        out.write(json.dumps(payload, indent=2) + "\n")
    elif cfg.output_format == "csv":
        out.write(_csv(list(records[0]), records))
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _write_series(path, header, rows, out):
    text = _csv(header, rows)
    if path in (None, "-"):
        out.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {len(rows)} rows to {path}", file=sys.stderr)


def _cap(cfg, n):
    if n > cfg.resource_cap_n:
        raise ResourceLimitError(f"--max-n {n} exceeds the resource cap {cfg.resource_cap_n} (raise it with --cap)")
    if n < 1:
        raise DomainError("--max-n must be positive")


def _scaled_record(name, v, cfg, **fields):
    return {"quantity": name, **fields, "value": fmt_scaled(v, cfg.decimal_digits),
            "log_value": v.log(), "sign": v.sign}


def _scaled_text(v, cfg):
    return f"{fmt_scaled(v, cfg.decimal_digits)}\nlog = {v.log():.{cfg.decimal_digits}f}"


# ball


def cmd_ball(args, cfg, out):
    d = cfg.decimal_digits
    if args.sub in ("volume", "area"):
        fn = ball.ball_volume_radius if args.sub == "volume" else ball.sphere_area_radius
        v = fn(args.n, args.radius)
        rec = _scaled_record(f"ball_{args.sub}", v, cfg, N=args.n, radius=args.radius)
        _emit(cfg, [rec], _scaled_text(v, cfg), out)
    elif args.sub == "shell":
        v = ball.shell_fraction(args.n, args.delta)
        rec = {"quantity": "shell_fraction", "N": args.n, "delta": args.delta, "value": fmt_float(v, d)}
        _emit(cfg, [rec], fmt_float(v, d), out)
    elif args.sub == "sweep":
        _cap(cfg, args.max_n)
        rows = [{
            "N": n,
            "omega": ball.sphere_area(n).sci(d),
            "Omega": ball.ball_volume(n).sci(d),
            "asymptotic": ball.asymptotic_volume(n).sci(d),
            "prop5_bound": ball.prop5_bound(n).sci(d),
        } for n in range(1, args.max_n + 1)]
        _write_series(args.emit, BALL_SWEEP_HEADER, rows, out)


# leak


def cmd_leak(args, cfg, out):
    d = cfg.decimal_digits
    if args.sub == "radius":
        r = leakage.inner_radius(args.n)
        rec = {"quantity": "inner_radius", "N": args.n, "value": fmt_float(r, d), "leaks": r > 1.0}
        _emit(cfg, [rec], fmt_float(r, d), out)
    elif args.sub == "ratio":
        v = leakage.leakage_ratio(args.n)
        rec = _scaled_record("leakage_ratio", v, cfg, N=args.n)
        _emit(cfg, [rec], _scaled_text(v, cfg), out)
    elif args.sub == "threshold":
        n = leakage.first_leak_dimension()
        _emit(cfg, [{"quantity": "first_leak_dimension", "N": n}], str(n), out)
    elif args.sub == "sweep":
        _cap(cfg, args.max_n)
        rows = []
        for n in range(2, args.max_n + 1):
            rep = leakage.leakage_report(n)
            rows.append({
                "N": n,
                "inner_radius": fmt_float(rep.inner_radius, d),
                "ratio": rep.ratio.sci(d),
                "log_ratio": repr(rep.ratio.log()),
                "leaks": int(rep.leaks),
                "growth_envelope": leakage.growth_envelope(n).sci(d) if n >= 3 else "",
            })
        _write_series(args.emit, LEAK_SWEEP_HEADER, rows, out)


# centroid


def _coeff_record(n, k, c, d):
    return {"N": n, "k": k, "coordinate_exact": str(c), "coordinate_decimal": quad_to_decimal(c, d)}


def _pair_text(p):
    return "(" + ",".join(p) + ")"


def cmd_centroid(args, cfg, out):
    d = cfg.decimal_digits
    if args.sub in ("coeff", "oracle"):
        fn = centroids.centroid_coefficient if args.sub == "coeff" else centroids.skeleton_centroid_oracle
        c = fn(args.n, args.k)
        text = str(c) if args.exact else quad_to_decimal(c, d)
        _emit(cfg, [_coeff_record(args.n, args.k, c, d)], text, out)
    elif args.sub == "pairs":
        pairs = centroids.coincident_pairs(args.n)
        text = "\n".join(f"{a} {b}" for a, b in pairs) or "none"
        rec = {"N": args.n, "pairs": [list(p) for p in pairs]}
        if cfg.output_format == "csv":
            out.write(_csv(["N", "k1", "k2"], [{"N": args.n, "k1": a, "k2": b} for a, b in pairs]))
        else:
            _emit(cfg, [rec], text, out)
    elif args.sub == "table":
        _cap(cfg, args.max_n)
        rows = diophantine.enumerate_coincidences(args.max_n) if args.max_n >= 2 else []
        if cfg.output_format == "json":
            out.write(json.dumps(diophantine.rows_to_records(rows, d), indent=2) + "\n")
        else:
            out.write(diophantine.rows_to_csv(rows, d))
    elif args.sub == "verify":
        _cap(cfg, args.max_n)
        if args.max_n < 2:
            raise DomainError("--max-n must be >= 2")
        report = diophantine.verify_theorem10(min(args.max_n, args.exhaustive_max))
        triple_free = diophantine.no_triple(args.max_n)
        rec = {
            "max_n": args.max_n,
            "exhaustive_max_n": report.n_max,
            "coincidence_rows": report.rows,
            "theorem10_agree": report.agree,
            "discrepancies": [{"N": n, "scan": [list(p) for p in got], "parametrized": [list(p) for p in want]}
                              for n, got, want in report.discrepancies],
            "no_triple": triple_free,
        }
        lines = [
            f"theorem10: {'agree' if report.agree else 'DISCREPANCY'} "
            f"({report.rows} rows, N <= {report.n_max})",
        ]
        lines += [f"  N={n}: scan={got} parametrized={want}" for n, got, want in report.discrepancies]
        lines.append(f"no_triple(N <= {args.max_n}): {'true' if triple_free else 'FALSE'}")
        _emit(cfg, [rec], "\n".join(lines), out)
        if not (report.agree and triple_free):
            raise VerificationFailure("coincidence verification failed")
    elif args.sub == "triangle":
        c = args.coords
        tri = centroids.triangle_centroids(c[0:2], c[2:4], c[4:6])
        pts = {name: [fmt_float(float(x), d) for x in getattr(tri, name)] for name in ("vertex", "edge", "solid")}
        text = " ".join(f"{name}={_pair_text(v)}" for name, v in pts.items())
        rec = {f"{name}_{axis}": v[i] for name, v in pts.items() for i, axis in enumerate("xy")}
        _emit(cfg, [rec], text, out)


# mc


def _verdict(ok):
    return "PASS" if ok else "FAIL"


def _mc_text(est, reference, verdict, d):
    return (f"mean = {fmt_float(est.mean, d)} ± {fmt_float(est.std_error, d)} "
            f"(samples={est.samples}, seed={est.seed})\n"
            f"reference = {reference}\nverdict: {verdict}")


def cmd_mc(args, cfg, out):
    d = cfg.decimal_digits
    budget, seed = cfg.sample_budget, cfg.seed
    if args.sub == "skeleton":
        ests = oracles.mc_skeleton_centroid(args.n, args.k, budget, seed)
        exact = centroids.centroid_coefficient(args.n, args.k)
        ref = float(exact)
        ok = all(e.agrees_with(ref) for e in ests)
        rec = {"command": "mc skeleton", "N": args.n, "k": args.k,
               "coordinates": [e.to_dict() for e in ests],
               "reference": quad_to_decimal(exact, d), "verdict": _verdict(ok)}
        lines = [f"x{i + 1} = {fmt_float(e.mean, d)} ± {fmt_float(e.std_error, d)}" for i, e in enumerate(ests)]
        lines += [f"samples={budget}, seed={seed}", f"reference = {quad_to_decimal(exact, d)}",
                  f"verdict: {_verdict(ok)}"]
        _emit(cfg, [rec], "\n".join(lines), out)
    else:
        if args.sub == "gauss":
            est = oracles.gaussian_norm_check(args.n, budget, seed, method=args.method)
            ref, ok = 1.0, None
        elif args.sub == "ballvol":
            est = oracles.mc_ball_volume(args.n, budget, seed)
            ref, ok = ball.ball_volume(args.n).to_float(), None
        elif args.sub == "shell":
            est = oracles.mc_shell_fraction(args.n, args.delta, budget, seed)
            ref, ok = ball.shell_fraction(args.n, args.delta), None
        else:  # leakfrac
            est = oracles.mc_leak_fraction(args.n, budget, seed)
            if leakage.inner_radius(args.n) <= 1.0:
                ref, ok = 0.0, est.mean == 0.0
            else:
                low = oracles.bernoulli_lower_bound(est, 0.99)
                ref, ok = None, low > 0.0
        if ok is None:
            ok = est.agrees_with(ref)
        ref_text = fmt_float(ref, d) if ref is not None else "> 0 (99% lower bound " + \
            fmt_float(oracles.bernoulli_lower_bound(est, 0.99), d) + ")"
        rec = {"command": f"mc {args.sub}", **est.to_dict(),
               "reference": ref_text, "verdict": _verdict(ok)}
        _emit(cfg, [rec], _mc_text(est, ref_text, _verdict(ok), d), out)
    if not ok:
        raise VerificationFailure("Monte Carlo check failed")


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (env HDC_FORMAT)")
    g.add_argument("--digits", type=int, default=argparse.SUPPRESS, help="decimal digits, 1..50 (env HDC_DIGITS)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="64-bit seed (env HDC_SEED)")
    g.add_argument("--samples", type=int, default=argparse.SUPPRESS, help="Monte Carlo sample budget")
    g.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="resource cap on --max-n")

    parser = argparse.ArgumentParser(
        prog="hdc", parents=[common],
        description="High-dimensional ball volumes, inner-ball leakage and simplex skeleton centroids.")
    cmds = parser.add_subparsers(dest="command", required=True)

    p = cmds.add_parser("ball", parents=[common], help="ball volumes, sphere areas, shells")
    sub = p.add_subparsers(dest="sub", required=True)
    for name in ("volume", "area"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("n", type=int)
        s.add_argument("--radius", type=float, default=1.0)
    s = sub.add_parser("shell", parents=[common])
    s.add_argument("n", type=int)
    s.add_argument("delta", type=float)
    s = sub.add_parser("sweep", parents=[common],
                       description="CSV columns: " + ",".join(BALL_SWEEP_HEADER) + " for N = 1..M")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--emit", default="-", help="output CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_ball)

    p = cmds.add_parser("leak", parents=[common], help="central ball leaking out of the box")
    sub = p.add_subparsers(dest="sub", required=True)
    for name in ("radius", "ratio"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("n", type=int)
    sub.add_parser("threshold", parents=[common])
    s = sub.add_parser("sweep", parents=[common],
                       description="CSV columns: " + ",".join(LEAK_SWEEP_HEADER) + " for N = 2..M")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--emit", default="-")
    p.set_defaults(func=cmd_leak)

    p = cmds.add_parser("centroid", parents=[common], help="simplex skeleton centroids")
    sub = p.add_subparsers(dest="sub", required=True)
    for name in ("coeff", "oracle"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("n", type=int)
        s.add_argument("k", type=int)
        s.add_argument("--exact", action="store_true", help="print canonical p + q*sqrt(d)")
    s = sub.add_parser("pairs", parents=[common])
    s.add_argument("n", type=int)
    s = sub.add_parser("table", parents=[common],
                       description="CSV columns: " + ",".join(diophantine.CSV_HEADER))
    s.add_argument("--max-n", type=int, required=True)
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--exhaustive-max", type=int, default=200,
                   help="limit of the exhaustive pair scan (default 200)")
    s = sub.add_parser("triangle", parents=[common])
    s.add_argument("coords", type=float, nargs=6, metavar="X1 Y1 X2 Y2 X3 Y3")
    p.set_defaults(func=cmd_centroid)

    p = cmds.add_parser("mc", parents=[common], help="Monte Carlo and quadrature checks")
    sub = p.add_subparsers(dest="sub", required=True)
    s = sub.add_parser("gauss", parents=[common])
    s.add_argument("n", type=int)
    s.add_argument("--method", choices=("mc", "quadrature", "auto"), default="mc")
    for name in ("ballvol", "leakfrac"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("n", type=int)
    s = sub.add_parser("shell", parents=[common])
    s.add_argument("n", type=int)
    s.add_argument("delta", type=float)
    s = sub.add_parser("skeleton", parents=[common])
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.resolve(args)
        args.func(args, cfg, out)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (DomainError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
