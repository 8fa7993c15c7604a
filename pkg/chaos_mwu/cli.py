#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
chaos-mwu command line

Usage:
    chaos-mwu simulate --b 0.4 --a 25 --x0 0.3 --n 1000 --out trace.csv
    chaos-mwu bifurcation --axis equilibrium_b --lo 0.05 --hi 0.95 --points 181 --a 6
    chaos-mwu cobweb --b 0.4 --amin 20 --amax 30 --x0 0.3 --n 200 --format svg
    chaos-mwu analyze --b 0.4 --a 25 --suite fixed
    chaos-mwu thresholds --b 0.4 --lo 4.1 --hi 100 --step 0.1

Exit codes: 0 success, 2 usage error, 3 analysis failure, 4 I/O failure.
"""

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from chaos_mwu.config import config
from chaos_mwu.errors import AnalysisFailure, ChaosMWUError, DomainError, OutputError
from chaos_mwu.dynamics import MapParams, RateRule, iterate_adaptive, iterate_fixed, mwu_step_array
from chaos_mwu import chaos, diagnostics, geometry
from chaos_mwu.io import build_manifest, cobweb_svg, read_config, scatter_svg, write_csv, write_json
from chaos_mwu.scan_executor import ScanExecutor
from chaos_mwu.utils.logger import setup_logger, set_level

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ANALYSIS = 3
EXIT_IO = 4

AXES = ("equilibrium_b", "rate_a", "rate_envelope_amax")
X0_POLICIES = ("fixed_value", "seeded_random_interior")
SUITES = ("fixed", "adaptive", "chaos", "all")
HALF_FLAG = "b = 1/2 lies outside the scope of the chaos construction"
MONOTONE_FLAG = "not applicable: the map is monotone for a <= 4"
ENVELOPE_ENTRIES = ("envelope", "perpetual", "monotone_attraction", "absorption_fixed", "volume_expansion_fixed",
                    "period3")

# keys left out of the manifest: they do not change the payload
_NOT_PARAMS = {"handler", "config", "log_level", "out", "command"}

logger = setup_logger("cli")


@dataclass(frozen=True)
class ScanConfig:
    axis: str
    grid: tuple
    burn_in: int
    keep: int
    rule_template: RateRule
    seed: int
    x0_policy: str
    x0: float = 0.3

    def __post_init__(self):
        lo, hi, points = self.grid
        if self.axis not in AXES:
            raise DomainError(f"unknown axis {self.axis!r}")
        if self.x0_policy not in X0_POLICIES:
            raise DomainError(f"unknown x0 policy {self.x0_policy!r}")
        if not lo < hi:
            raise DomainError(f"grid needs lo < hi, got ({lo!r}, {hi!r})")
        if points < 2 or self.keep < 1 or self.burn_in < 0:
            raise DomainError("scan needs points >= 2, keep >= 1 and burn_in >= 0")

    @property
    def params(self):
        lo, hi, points = self.grid
        return np.linspace(lo, hi, points)

    def initial_shares(self):
        points = self.grid[2]
        if self.x0_policy == "fixed_value":
            return np.full(points, self.x0)
        rng = np.random.default_rng(self.seed)
        return rng.uniform(0.01, 0.99, points)


def distinct_limit_values(xs, resolution: float = None) -> int:
    """Number of clusters among xs when values closer than resolution merge."""
    resolution = resolution if resolution is not None else config.CLUSTER_RESOLUTION
    values = np.sort(np.asarray(xs, dtype=float))
    if values.size == 0:
        return 0
    return int(np.count_nonzero(np.diff(values) > resolution)) + 1


def build_rule(args) -> RateRule:
    """Rate rule from --a or --amin/--amax/--kappa."""
    adaptive = args.amin is not None or args.amax is not None
    if args.a is not None and adaptive:
        raise DomainError("give either --a or --amin/--amax, not both")
    if args.a is not None:
        return RateRule.constant(args.a)
    if adaptive:
        if args.amin is None or args.amax is None:
            raise DomainError("--amin and --amax go together")
        return RateRule.gaussian_bump(args.amin, args.amax, args.kappa)
    raise DomainError("a rate is required: --a or --amin/--amax")


def _manifest(args):
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_PARAMS}
    return build_manifest(args.command, params, args.seed)


def _out_path(args, default_suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(f"{args.command}.{default_suffix}")


def _result(value):
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, (list, tuple)):
        return [_result(v) for v in value]
    return value


def cmd_simulate(args) -> int:
    rule = build_rule(args)
    if args.b is None:
        raise DomainError("--b is required")
    if rule.is_constant:
        trace = iterate_fixed(args.x0, MapParams(rule.a_max, args.b), args.n, args.burn_in)
    else:
        trace = iterate_adaptive(args.x0, rule, args.b, args.n, args.burn_in)
    manifest = _manifest(args)
    rows = list(trace.records())
    final = trace.final_state
    summary = {
        "rows": len(rows),
        "final": {"step": final.step, "x": final.share, "a": final.rate, "r": final.pseudo_regret},
        "rule": rule.describe(),
    }
    fmt = args.format
    out = _out_path(args, fmt)
    if fmt == "json":
        write_json(out, {"trace": [list(r) for r in rows], **summary}, manifest)
    elif fmt == "svg":
        scatter_svg(out, [r[0] for r in rows], [r[1] for r in rows], manifest, xlabel="step", ylabel="x")
        write_csv(out.with_suffix(".csv"), ["step", "x", "a", "r"], rows, manifest)
    else:
        write_csv(out, ["step", "x", "a", "r"], rows, manifest)
        write_json(out.with_suffix(".json"), summary, manifest)
    logger.info(f"Simulated {args.n} steps from x0={args.x0}; final x={final.share:.6f}")
    return EXIT_OK


def _scan_point(scan: ScanConfig, b: float, param: float, x0: float):
    template = scan.rule_template
    if scan.axis == "equilibrium_b":
        rule, eq = template, param
    elif scan.axis == "rate_a":
        rule, eq = RateRule.constant(param), b
    else:
        rule, eq = RateRule.gaussian_bump(template.a_min, param, template.sharpness), b
    trace = iterate_adaptive(float(x0), rule, eq, scan.burn_in + scan.keep, scan.burn_in)
    return trace.shares


def run_scan(scan: ScanConfig, b: float = None, max_workers: int = None):
    """
    Run every grid point of a bifurcation scan.

    Returns:
        tuple: (params, list of kept-share arrays, distinct-value counts), in grid order
    """
    if scan.axis != "equilibrium_b" and b is None:
        raise DomainError(f"axis {scan.axis} needs --b")
    if scan.axis == "rate_envelope_amax" and scan.grid[0] < scan.rule_template.a_min:
        raise DomainError("envelope scan must start at or above a_min")
    params = scan.params
    x0s = scan.initial_shares()
    executor = ScanExecutor(max_workers, label=f"bifurcation {scan.axis}")
    kept = executor.map(lambda item: _scan_point(scan, b, item[0], item[1]), list(zip(params, x0s)))
    counts = [distinct_limit_values(xs) for xs in kept]
    return params, kept, counts


def cmd_bifurcation(args) -> int:
    if args.axis == "rate_a":
        template = RateRule.constant(args.lo)
    else:
        template = build_rule(args)
    scan = ScanConfig(
        axis=args.axis,
        grid=(args.lo, args.hi, args.points),
        burn_in=args.burn_in,
        keep=args.keep,
        rule_template=template,
        seed=args.seed,
        x0_policy=args.x0_policy,
        x0=args.x0,
    )
    params, kept, counts = run_scan(scan, args.b)
    rows = [(float(p), float(x)) for p, xs in zip(params, kept) for x in xs]
    count_rows = [(float(p), c) for p, c in zip(params, counts)]
    manifest = _manifest(args)
    fmt = args.format
    out = _out_path(args, fmt)
    if fmt == "json":
        write_json(out, {"rows": rows, "counts": count_rows}, manifest)
    else:
        csv_out = out.with_suffix(".csv") if fmt == "svg" else out
        write_csv(csv_out, ["param", "x"], rows, manifest)
        write_csv(csv_out.with_name(csv_out.stem + ".counts.csv"), ["param", "count"], count_rows, manifest)
        if fmt == "svg":
            scatter_svg(out, [r[0] for r in rows], [r[1] for r in rows], manifest,
                        xlabel=args.axis, title=f"{len(params)} grid points, keep {scan.keep}")
    logger.info(f"Bifurcation scan: {len(rows)} rows, max distinct values {max(counts)}")
    return EXIT_OK


def cobweb_segments(shares):
    """Orbit polyline (x_n, x_n) -> (x_n, x_{n+1}) -> (x_{n+1}, x_{n+1})."""
    segments = []
    for x, y in zip(shares, shares[1:]):
        segments.append((x, x, x, y))
        segments.append((x, y, y, y))
    return segments


def cmd_cobweb(args) -> int:
    rule = build_rule(args)
    if args.b is None:
        raise DomainError("--b is required")
    trace = iterate_adaptive(args.x0, rule, args.b, args.n)
    shares = np.append(trace.shares, trace.final_state.share).tolist()
    segments = cobweb_segments(shares)
    if not segments:
        segments = [(args.x0, args.x0, args.x0, args.x0)]
    grid = np.linspace(0.0, 1.0, 1000)
    curve = list(zip(grid.tolist(), mwu_step_array(grid, rule.limit_rate, args.b).tolist()))
    curve_rows = [(x0, y0, x1, y1) for (x0, y0), (x1, y1) in zip(curve, curve[1:])]
    rows = [s + ("segment",) for s in segments] + [c + ("curve",) for c in curve_rows]
    manifest = _manifest(args)
    fmt = args.format
    out = _out_path(args, fmt)
    header = ["x_from", "y_from", "x_to", "y_to", "kind"]
    if fmt == "json":
        write_json(out, {"segments": segments, "curve": curve}, manifest)
    else:
        write_csv(out.with_suffix(".csv") if fmt == "svg" else out, header, rows, manifest)
        if fmt == "svg":
            cobweb_svg(out, segments, curve, manifest, title=f"b={args.b}")
    return EXIT_OK


class Bundle:
    """Analysis results keyed by entry name; failures are recorded, not raised."""

    def __init__(self):
        self.entries = {}
        self.hard_failure = False

    def run(self, name, func, flag: str = None):
        try:
            value = func()
        except (AnalysisFailure, DomainError) as e:
            logger.warning(f"{name}: {type(e).__name__}: {e}")
            self.entries[name] = {
                "status": "failed",
                "error": type(e).__name__,
                "message": str(e),
                "context": getattr(e, "context", {}),
            }
            return None
        except Exception as e:
            logger.error(f"{name}: unexpected {type(e).__name__}: {e}")
            self.entries[name] = {"status": "error", "error": type(e).__name__, "message": str(e)}
            self.hard_failure = True
            return None
        entry = {"status": "ok", "result": _result(value)}
        if flag:
            entry["flag"] = flag
        self.entries[name] = entry
        return value

    def skip(self, name, reason, error: str = None):
        entry = {"status": "skipped", "flag": reason}
        if error:
            entry["error"] = error
        self.entries[name] = entry


def _require(passed: bool, message: str, **context):
    if not passed:
        raise AnalysisFailure(message, **context)
    return passed


def _convergence(bundle: Bundle, name: str, rule: RateRule, b: float, args):
    samples = diagnostics.sample_set(seed=args.seed)

    def run():
        suite = diagnostics.convergence_suite(samples, rule, b, args.horizons, k=2)
        failed = [n for n, ok in zip(suite.horizons, suite.bound_holds) if not ok]
        _require(not failed, f"pseudo-regret bound violated at horizons {failed}", horizons=failed)
        return suite

    return bundle.run(name, run)


def _fixed_suite(bundle: Bundle, p: MapParams, args):
    if p.rate <= 4.0:
        for name in ENVELOPE_ENTRIES:
            bundle.skip(name, MONOTONE_FLAG, error="NoCriticalPoints")
        bundle.run("monotone_map", lambda: _require(geometry.monotone_map_check(p),
                                                    f"negative slope at a={p.rate}"))
    else:
        bundle.run("envelope", lambda: geometry.envelope(p))
        bundle.run("perpetual", lambda: geometry.check_perpetual(p))
        bundle.run("monotone_attraction", lambda: _require(geometry.monotone_attraction_check(p),
                                                           "orbits outside F(a) do not move into it"))
        bundle.run("absorption_fixed", lambda: geometry.absorption_time_fixed((0.01, 0.02), p))
        bundle.run("volume_expansion_fixed",
                   lambda: geometry.volume_expansion_fixed((p.b - 1e-3, p.b + 1e-3), p))
        orbit = bundle.run("period3", lambda: chaos.period3_find(p))
        if orbit is not None:
            pair = bundle.run("turbulent_pair", lambda: chaos.build_turbulent_pair(p, orbit))
            if pair is not None:
                bundle.run("nested_family", lambda: chaos.refine_nested(pair, args.depth))
    bundle.run("equilibrium_unstable", lambda: chaos.equilibrium_unstable(p))
    bundle.run("period2", lambda: chaos.period2_points(p))
    suite = _convergence(bundle, "convergence_fixed", RateRule.constant(p.rate), p.b, args)
    bundle.run("lyapunov_fixed", lambda: chaos.lyapunov(args.x0, p, n=args.n, burn_in=min(args.burn_in, args.n - 1)))
    return suite


def _adaptive_suite(bundle: Bundle, rule: RateRule, b: float, args):
    bundle.run("delta_set", lambda: geometry.delta_set(rule, b))
    bundle.run("absorption_adaptive", lambda: geometry.absorption_time_adaptive((0.05, 0.95), rule, b))
    bundle.run("volume_expansion_adaptive",
               lambda: geometry.volume_expansion_adaptive((max(b - 0.05, 1e-3), min(b + 0.05, 1 - 1e-3)),
                                                          rule, b, eps=args.eps))
    suite = _convergence(bundle, "convergence", rule, b, args)
    bundle.run("lyapunov_adaptive",
               lambda: chaos.lyapunov(args.x0, rule, b, n=args.n, burn_in=min(args.burn_in, args.n - 1)))
    return suite


def _chaos_suite(bundle: Bundle, rule: RateRule, b: float, args):
    names = ("chaos_turbulent_pair", "chaos_nested_family", "tracking", "tracking_evidence", "scrambled")
    if b == 0.5:
        for name in names:
            bundle.skip(name, HALF_FLAG)
        return
    p = MapParams(rule.limit_rate, b)
    pair = bundle.run("chaos_turbulent_pair", lambda: chaos.build_turbulent_pair(p))
    family = pair and bundle.run("chaos_nested_family", lambda: chaos.refine_nested(pair, args.depth))
    if not family:
        for name in names[2:]:
            bundle.skip(name, "no nested family")
        return
    depth = max(args.depth, 1)
    first_bits = tuple(0 for _ in range(depth))
    second_bits = tuple(i % 2 for i in range(depth))
    schedules = bundle.run("tracking", lambda: chaos.track_pair(first_bits, second_bits, rule, b, family))
    if not schedules:
        bundle.skip("tracking_evidence", "tracking failed")
        bundle.skip("scrambled", "tracking failed")
        return
    first, second = schedules
    bundle.run("tracking_evidence", lambda: chaos.tracking_evidence(first, second, rule, b, family))
    horizon = max(first.times[-1], second.times[-1])
    bundle.run("scrambled", lambda: chaos.scrambled_metrics(
        first.x0, second.x0, rule, b, n=horizon, times=first.times,
        precision=max(first.precision, second.precision)))


def cmd_analyze(args) -> int:
    rule = build_rule(args)
    if args.b is None:
        raise DomainError("--b is required")
    b = args.b
    bundle = Bundle()
    suites = SUITES[:3] if args.suite == "all" else (args.suite,)
    convergence = None
    if "fixed" in suites:
        convergence = _fixed_suite(bundle, MapParams(rule.limit_rate, b), args)
    if "adaptive" in suites:
        convergence = _adaptive_suite(bundle, rule, b, args) or convergence
    if "chaos" in suites:
        _chaos_suite(bundle, rule, b, args)
    out = _out_path(args, "json")
    write_json(out, {"suite": args.suite, "entries": bundle.entries}, _manifest(args))
    if convergence is not None:
        write_csv(out.with_name(out.stem + ".convergence.csv"), ["quantity", "horizon", "sup", "reference"],
                  convergence.rows(), _manifest(args))
    failed = sorted(k for k, v in bundle.entries.items() if v["status"] != "ok")
    logger.info(f"Analysis bundle with {len(bundle.entries)} entries; not ok: {failed}")
    return EXIT_ANALYSIS if bundle.hard_failure else EXIT_OK


def cmd_thresholds(args) -> int:
    if args.b is None:
        raise DomainError("--b is required")
    estimates = geometry.estimate_thresholds(args.b, (args.lo, args.hi, args.step))
    write_json(_out_path(args, "json"), estimates.to_dict(), _manifest(args))
    return EXIT_OK


def _horizons(text: str):
    try:
        values = [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid horizon list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty horizon list")
    return values


def _add_common(parser, default_n: int):
    parser.add_argument("--b", type=float, help="Equilibrium share b in (0, 1)")
    parser.add_argument("--a", type=float, help="Fixed normalized rate")
    parser.add_argument("--amin", type=float, help="Adaptive rule lower rate")
    parser.add_argument("--amax", type=float, help="Adaptive rule upper rate g(0)")
    parser.add_argument("--kappa", type=float, default=config.DEFAULT_KAPPA, help="Gaussian bump sharpness")
    parser.add_argument("--x0", type=float, default=0.3, help="Initial share")
    parser.add_argument("--n", type=int, default=default_n, help="Number of steps")
    parser.add_argument("--burn-in", type=int, default=0, help="Discarded leading steps")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="Random seed")
    parser.add_argument("--out", help="Output path")
    parser.add_argument("--format", choices=["csv", "json", "svg"], default="csv", help="Output format")
    parser.add_argument("--config", help="key = value file with flag defaults")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None,
                        help="Set logging level")


def build_parser():
    parser = argparse.ArgumentParser(prog="chaos-mwu", description="MWU dynamics in congestion games")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    simulate = sub.add_parser("simulate", help="Write an orbit trace")
    _add_common(simulate, 1000)
    simulate.set_defaults(handler=cmd_simulate)

    bifurcation = sub.add_parser("bifurcation", help="Scan long-run shares over a parameter grid")
    _add_common(bifurcation, 0)
    bifurcation.add_argument("--axis", choices=AXES, default="equilibrium_b")
    bifurcation.add_argument("--lo", type=float, default=0.05)
    bifurcation.add_argument("--hi", type=float, default=0.95)
    bifurcation.add_argument("--points", type=int, default=181)
    bifurcation.add_argument("--keep", type=int, default=config.SCAN_KEEP)
    bifurcation.add_argument("--x0-policy", choices=X0_POLICIES, default="fixed_value")
    bifurcation.set_defaults(handler=cmd_bifurcation, burn_in=config.SCAN_BURN_IN)

    cobweb = sub.add_parser("cobweb", help="Write cobweb segments and the limit-map curve")
    _add_common(cobweb, 200)
    cobweb.set_defaults(handler=cmd_cobweb)

    analyze = sub.add_parser("analyze", help="Run analyses into one JSON bundle")
    _add_common(analyze, 10000)
    analyze.add_argument("--suite", choices=SUITES, default="all")
    analyze.add_argument("--eps", type=float, default=0.5, help="Expansion target offset a* - eps")
    analyze.add_argument("--depth", type=int, default=4, help="Nested family and tracking depth")
    analyze.add_argument("--horizons", type=_horizons, default=[1000, 10000],
                         help="Comma separated convergence horizons")
    analyze.set_defaults(handler=cmd_analyze)

    thresholds = sub.add_parser("thresholds", help="Bracket the rate thresholds at b")
    _add_common(thresholds, 0)
    thresholds.add_argument("--lo", type=float, default=4.1)
    thresholds.add_argument("--hi", type=float, default=100.0)
    thresholds.add_argument("--step", type=float, default=0.1)
    thresholds.set_defaults(handler=cmd_thresholds)
    return parser, sub.choices


def parse_args(argv=None):
    """Parse flags, with defaults taken from --config when given."""
    parser, subparsers = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        values = read_config(args.config)
        known = {a.dest for a in subparsers[args.command]._actions}
        unknown = sorted(set(values) - known)
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(unknown)}")
        subparsers[args.command].set_defaults(**values)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    """Main entry point"""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    except DomainError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except OutputError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO

    if args.log_level:
        os.environ["LOG_LEVEL"] = args.log_level
        set_level(args.log_level)

    try:
        return args.handler(args)
    except DomainError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except OutputError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except (AnalysisFailure, ChaosMWUError) as e:
        logger.error(f"Analysis failed: {type(e).__name__}: {e}")
        return EXIT_ANALYSIS
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
