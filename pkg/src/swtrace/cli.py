"""Command-line interface.

Subcommands:

    exact sw|planch|tv|planch-bounds   exact rational tables and checks
    sample sw|planch                   Monte Carlo shape draws as CSV
    estimate spectrum|power-trace      one estimator run as a JSON report
    sweep                              trials x accuracy grid as CSV
    lowerbound qubit|mixed             hard-pair reports, optional experiments
    calibrate-c                        second-moment constant over exact grids

All randomized commands take --seed (default 112358) and are reproducible:
the same command line yields byte-identical output.  Trial t of a sweep or
experiment consumes the stream (seed, stream_id = t).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .exact_dist import (
    ExactDistribution,
    check_planch_bounds,
    exact_row_second_moment,
    l1_distance,
    planch_exact,
    sw_exact,
)
from .lower_bounds import (
    discrimination_experiment,
    estimate_observation,
    hard_pair_maximally_mixed,
    hard_pair_qubit,
    helstrom_bound,
    likelihood_rule,
    min_copies_for_likelihood_success,
    mixed_pair_l1,
    qubit_copies_scaling,
    shape_observation,
    threshold_rule,
)
from .power_trace import plugin_report, power_trace_estimate, true_power_trace
from .sampling import RngStream, sample_planch_batch, sample_sw_batch
from .schur import Spectrum
from .spectrum_estimation import DEFAULT_C, spectrum_estimate

DEFAULT_SEED = 112358
_PLUGIN_CHILD = 2**48  # reserved child index, disjoint from batch indices

SWEEP_COLUMNS = ["q", "eps", "trial", "seed", "estimate", "truth", "abs_err", "total_samples", "algorithm"]


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def _parse_rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(f"error: cannot parse rational list {text!r}: {exc}")


def _spectrum_from_args(args) -> Spectrum:
    picked = [name for name in ("alpha", "uniform", "zipf") if getattr(args, name, None)]
    if len(picked) != 1:
        raise SystemExit("error: specify exactly one of --alpha, --uniform, --zipf")
    if args.alpha:
        return Spectrum(_parse_rationals(args.alpha))
    if args.uniform:
        return Spectrum.uniform(args.uniform)
    d, s = args.zipf.split(",") if "," in args.zipf else (args.zipf, "1")
    return Spectrum.zipf(int(d), float(s))


def _add_spectrum_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", help="spectrum as comma-separated rationals, e.g. 1/2,3/10,1/5")
    parser.add_argument("--uniform", type=int, metavar="D", help="uniform spectrum of rank D")
    parser.add_argument("--zipf", metavar="D[,S]", help="power-law spectrum over D entries with exponent S")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", out)


def _table_json(dist: ExactDistribution) -> dict:
    return {
        "n": dist.n,
        "entries": [{"shape": lam.to_list(), "p": str(p)} for lam, p in dist],
    }


def _shape_str(rows) -> str:
    return "|".join(str(int(r)) for r in rows if r > 0)


# ---------------------------------------------------------------------------
# exact subcommands
# ---------------------------------------------------------------------------


def _cmd_exact_sw(args) -> None:
    alpha = _spectrum_from_args(args)
    _emit_json(_table_json(sw_exact(alpha, args.n, cap=args.cap)), args.out)


def _cmd_exact_planch(args) -> None:
    _emit_json(_table_json(planch_exact(args.n, cap=args.cap)), args.out)


def _cmd_exact_tv(args) -> None:
    value = l1_distance(
        sw_exact(Spectrum.uniform(args.d), args.n, cap=args.cap),
        planch_exact(args.n, cap=args.cap),
    )
    _emit(f"{value}\n", args.out)


def _cmd_exact_planch_bounds(args) -> None:
    rows = []
    for n in range(2, args.max + 1):
        for d in range(n, args.max + 1):
            res = check_planch_bounds(n, d, cap=args.cap)
            rows.append(
                {
                    "n": n,
                    "d": d,
                    "lower": str(res.lower),
                    "value": str(res.value),
                    "value_float": float(res.value),
                    "upper": res.upper,
                    "pass": res.passed,
                }
            )
    _emit_json({"max": args.max, "rows": rows, "all_pass": all(r["pass"] for r in rows)}, args.out)


# ---------------------------------------------------------------------------
# sampling subcommands
# ---------------------------------------------------------------------------


def _cmd_sample_sw(args) -> None:
    alpha = _spectrum_from_args(args)
    rows = sample_sw_batch(alpha, args.n, args.trials, RngStream(args.seed), method=args.method)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial_id", "shape"])
    for t in range(args.trials):
        writer.writerow([t, _shape_str(rows[t])])
    _emit(buf.getvalue(), args.out)


def _cmd_sample_planch(args) -> None:
    rows = sample_planch_batch(args.n, args.trials, RngStream(args.seed))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial_id", "shape"])
    for t in range(args.trials):
        writer.writerow([t, _shape_str(rows[t])])
    _emit(buf.getvalue(), args.out)


# ---------------------------------------------------------------------------
# estimator subcommands
# ---------------------------------------------------------------------------


def _cmd_estimate_spectrum(args) -> None:
    alpha = _spectrum_from_args(args)
    est = spectrum_estimate(alpha, args.eps, args.delta, c=args.c, rng=RngStream(args.seed))
    report = {
        "kind": "spectrum_estimate",
        "alpha": [float(v) for v in alpha.values],
        "eps": est.epsilon,
        "delta": est.delta,
        "c": est.c,
        "n_per_batch": est.n_per_batch,
        "k_batches": est.k_batches,
        "total_samples": est.total_samples,
        "seed": est.seed,
        "stream_id": est.stream_id,
        "values": list(est.values),
        "max_abs_error": max(abs(v - float(a)) for v, a in zip(est.values, alpha.values)),
    }
    _emit_json(report, args.out)


def _cmd_estimate_power_trace(args) -> None:
    alpha = _spectrum_from_args(args)
    rep = power_trace_estimate(alpha, args.q, args.eps, c=args.c, rng=RngStream(args.seed))
    truth = true_power_trace(alpha, args.q)
    report = {
        "kind": "power_trace_estimate",
        "alpha": [float(v) for v in alpha.values],
        "q": rep.q,
        "eps": rep.epsilon,
        "eps_prime": rep.eps_prime,
        "m": rep.m,
        "delta_prime": rep.delta_prime,
        "algorithm": rep.algorithm.value,
        "estimate": rep.estimate,
        "truth": truth,
        "abs_err": abs(rep.estimate - truth),
        "total_samples": rep.total_samples,
        "seed": rep.seed,
        "stream_id": rep.stream_id,
        "clamped": rep.clamped,
    }
    _emit_json(report, args.out)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _sweep_row(alpha: Spectrum, q: float, eps: float, trial: int, seed: int, c: float,
               truth: float, plugin: bool) -> list[list]:
    stream = RngStream(seed, trial)
    rep = power_trace_estimate(alpha, q, eps, c=c, rng=stream)
    rows = [[q, eps, trial, seed, rep.estimate, truth, abs(rep.estimate - truth),
             rep.total_samples, rep.algorithm.value]]
    if plugin:
        prep = plugin_report(alpha, q, rep.total_samples, rng=stream.child(_PLUGIN_CHILD))
        rows.append([q, eps, trial, seed, prep.estimate, truth, abs(prep.estimate - truth),
                     prep.total_samples, prep.algorithm.value])
    return rows


def _cmd_sweep(args) -> None:
    alpha = _spectrum_from_args(args)
    eps_list = [float(Fraction(e)) for e in args.eps_list.split(",") if e.strip()]
    truth = true_power_trace(alpha, args.q)
    out_fh = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    writer = csv.writer(out_fh, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    jobs = []
    counter = 0
    for eps in eps_list:
        for _ in range(args.trials):
            jobs.append((eps, counter))
            counter += 1
    try:
        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                results = pool.map(
                    lambda job: _sweep_row(alpha, args.q, job[0], job[1], args.seed, args.c, truth, args.plugin),
                    jobs,
                )
                for chunk in results:   # executor.map preserves submission order
                    for row in chunk:
                        writer.writerow(row)
                    out_fh.flush()
        else:
            for eps, trial in jobs:
                for row in _sweep_row(alpha, args.q, eps, trial, args.seed, args.c, truth, args.plugin):
                    writer.writerow(row)
                out_fh.flush()      # incremental: a killed sweep keeps finished rows
    finally:
        if args.out:
            out_fh.close()


# ---------------------------------------------------------------------------
# lower bound subcommands
# ---------------------------------------------------------------------------


def _cmd_lowerbound_qubit(args) -> None:
    eps = Fraction(args.eps)
    pair = hard_pair_qubit(args.q, eps)
    report = {
        "kind": "qubit_pair",
        "q": pair.q,
        "eps": pair.epsilon,
        "spectra": [[float(v) for v in s.values] for s in pair.spectra],
        "trace_gap": pair.trace_gap,
        "infidelity": pair.infidelity,
        "gamma_over_eps_sq": pair.infidelity / pair.epsilon**2 if pair.epsilon else None,
    }
    if args.trials:
        truths = [true_power_trace(s, args.q) for s in pair.spectra]
        rule = threshold_rule((truths[0] + truths[1]) / 2, above=1)
        rate = discrimination_experiment(
            pair,
            estimate_observation(args.q, args.est_eps, c=args.c),
            rule,
            args.trials,
            RngStream(args.seed),
        )
        report["experiment"] = {
            "observation": "power_trace_estimate",
            "est_eps": args.est_eps,
            "trials": args.trials,
            "rate": rate,
        }
    if args.scan_eps:
        grid = [Fraction(e) for e in args.scan_eps.split(",") if e.strip()]
        report["copies_scaling"] = qubit_copies_scaling(args.q, grid)
    _emit_json(report, args.out)


def _cmd_lowerbound_mixed(args) -> None:
    pair = hard_pair_maximally_mixed(args.q, args.eps)
    r, d = pair.rank_r, pair.rank_d
    report = {
        "kind": "maximally_mixed_pair",
        "q": pair.q,
        "eps": pair.epsilon,
        "r": r,
        "d": d,
        "trace_gap": pair.trace_gap,
        "infidelity": pair.infidelity,
        "copies_hint": math.sqrt(2) * r / 6,
    }
    if args.n:
        l1 = mixed_pair_l1(args.n, r, d, cap=args.cap)
        report["n"] = args.n
        report["l1"] = str(l1)
        report["l1_float"] = float(l1)
        report["helstrom"] = helstrom_bound(l1)
        if args.trials:
            rule = likelihood_rule(
                sw_exact(pair.spectra[0], args.n, cap=args.cap),
                sw_exact(pair.spectra[1], args.n, cap=args.cap),
            )
            rate = discrimination_experiment(
                pair, shape_observation(args.n), rule, args.trials, RngStream(args.seed)
            )
            sigma = math.sqrt(report["helstrom"] * (1 - report["helstrom"]) / args.trials)
            report["experiment"] = {
                "observation": "shape",
                "trials": args.trials,
                "rate": rate,
                "cap_plus_3sigma": report["helstrom"] + 3 * sigma,
            }
    if args.scan:
        n_star, records = min_copies_for_likelihood_success(r, d, cap=args.cap)
        report["min_copies_scan"] = {"n_star": n_star, "records": records}
    _emit_json(report, args.out)


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------

CALIBRATION_SPECTRA = ["1", "1/2,1/2", "1/2,3/10,1/5", "1/4,1/4,1/4,1/4"]


def _cmd_calibrate_c(args) -> None:
    specs = args.spectra.split(";") if args.spectra else CALIBRATION_SPECTRA
    overall = Fraction(0)
    argmax = None
    per_spectrum = []
    for text in specs:
        alpha = Spectrum(_parse_rationals(text))
        best = Fraction(0)
        best_at = None
        for n in range(2, args.max_n + 1):
            for j in range(1, alpha.dimension + 1):
                ratio = exact_row_second_moment(alpha, n, j, cap=args.cap) / n
                if ratio > best:
                    best, best_at = ratio, {"n": n, "j": j}
        per_spectrum.append(
            {"alpha": text, "max_ratio": float(best), "max_ratio_exact": str(best), "at": best_at}
        )
        if best > overall:
            overall, argmax = best, {"alpha": text, **(best_at or {})}
    _emit_json(
        {
            "kind": "second_moment_calibration",
            "max_n": args.max_n,
            "max_ratio": float(overall),
            "max_ratio_exact": str(overall),
            "argmax": argmax,
            "per_spectrum": per_spectrum,
            "default_c": DEFAULT_C,
        },
        args.out,
    )


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swtrace",
        description="Schur-Weyl shape sampling and spectrum functional estimation "
        f"(default seed {DEFAULT_SEED}; identical commands give identical bytes)",
    )
    top = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False, cap=False):
        p.add_argument("--out", help="write output to this path instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                           help=f"64-bit RNG seed (default {DEFAULT_SEED})")
        if cap:
            p.add_argument("--cap", type=int, default=None,
                           help="exact-oracle size cap (default 16, env SWTRACE_EXACT_CAP, hard max 30)")

    exact = top.add_parser("exact", help="exact rational tables and checks").add_subparsers(
        dest="sub", required=True
    )
    p = exact.add_parser("sw", help="Schur-Weyl shape table as JSON")
    _add_spectrum_flags(p)
    p.add_argument("--n", type=int, required=True)
    common(p, cap=True)
    p.set_defaults(func=_cmd_exact_sw)

    p = exact.add_parser("planch", help="Plancherel table as JSON")
    p.add_argument("--n", type=int, required=True)
    common(p, cap=True)
    p.set_defaults(func=_cmd_exact_planch)

    p = exact.add_parser("tv", help="exact L1 distance between uniform Schur-Weyl and Plancherel")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    common(p, cap=True)
    p.set_defaults(func=_cmd_exact_tv)

    p = exact.add_parser("planch-bounds", help="sandwich bound check over a grid 2 <= n <= d <= max")
    p.add_argument("--max", type=int, default=8)
    common(p, cap=True)
    p.set_defaults(func=_cmd_exact_planch_bounds)

    sample = top.add_parser("sample", help="Monte Carlo draws as CSV").add_subparsers(
        dest="sub", required=True
    )
    p = sample.add_parser("sw", help="Schur-Weyl shape draws")
    _add_spectrum_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--method", choices=["auto", "rsk", "doob"], default="auto")
    common(p, seed=True)
    p.set_defaults(func=_cmd_sample_sw)

    p = sample.add_parser("planch", help="Plancherel shape draws")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    common(p, seed=True)
    p.set_defaults(func=_cmd_sample_planch)

    estimate = top.add_parser("estimate", help="one estimator run as JSON").add_subparsers(
        dest="sub", required=True
    )
    p = estimate.add_parser("spectrum", help="median-of-batches spectrum estimate")
    _add_spectrum_flags(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--c", type=float, default=DEFAULT_C)
    common(p, seed=True)
    p.set_defaults(func=_cmd_estimate_spectrum)

    p = estimate.add_parser("power-trace", help="truncated power-trace estimate")
    _add_spectrum_flags(p)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--c", type=float, default=DEFAULT_C)
    common(p, seed=True)
    p.set_defaults(func=_cmd_estimate_power_trace)

    p = top.add_parser("sweep", help="trials x eps grid of power-trace runs as CSV "
                                     "(row t uses stream_id = t; incremental writes)")
    _add_spectrum_flags(p)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--eps-list", required=True, help="comma-separated accuracies, e.g. 0.2,0.1,0.05")
    p.add_argument("--trials", type=int, default=20, help="trials per accuracy")
    p.add_argument("--c", type=float, default=DEFAULT_C)
    p.add_argument("--plugin", action="store_true",
                   help="also emit an equal-budget plug-in row per trial")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads; output is identical to the serial run")
    common(p, seed=True)
    p.set_defaults(func=_cmd_sweep)

    lower = top.add_parser("lowerbound", help="hard instance reports").add_subparsers(
        dest="sub", required=True
    )
    p = lower.add_parser("qubit", help="qubit pair: gap linear in eps, infidelity quadratic")
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--eps", required=True, help="splitting, exact rational or decimal string")
    p.add_argument("--trials", type=int, default=0, help="run a threshold discrimination experiment")
    p.add_argument("--est-eps", type=float, default=0.1, help="estimator accuracy inside the experiment")
    p.add_argument("--c", type=float, default=DEFAULT_C)
    p.add_argument("--scan-eps", help="comma-separated eps grid for the exact copies-vs-gamma scan")
    common(p, seed=True)
    p.set_defaults(func=_cmd_lowerbound_qubit)

    p = lower.add_parser("mixed", help="maximally mixed pair of ranks r < d")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, default=0, help="copies for the exact L1/Helstrom report")
    p.add_argument("--trials", type=int, default=0, help="likelihood-rule experiment at n copies")
    p.add_argument("--scan", action="store_true", help="scan the smallest n beating 2/3 success")
    common(p, seed=True, cap=True)
    p.set_defaults(func=_cmd_lowerbound_mixed)

    p = top.add_parser("calibrate-c", help="max exact second moment / n over small grids")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--spectra", help="semicolon-separated rational spectra "
                                     f"(default: {'; '.join(CALIBRATION_SPECTRA)})")
    common(p, cap=True)
    p.set_defaults(func=_cmd_calibrate_c)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
