"""Command-line front end.

Usage::

    tanherf table1                          # tuned alpha for the ten published orders
    tanherf tune --lambda 4
    tanherf errcurve --lambda 2 --out err.csv
    tanherf sample --preset opt1 --n 1000000 --seed 42 --out draws.txt
    tanherf histfit --preset bassett --n 1000000 --seed 1
    tanherf dawson-fit --n 3
    tanherf dawson-eval --out delta.csv
    tanherf ladder-verify --max-n 20
    tanherf bench

Every command except ``bench`` is deterministic: identical flags give
identical bytes.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import csvio
from .dawson_approx import (
    PUBLISHED_CROSSOVER,
    PUBLISHED_G3,
    SegmentedDawson,
    error_curve_rows,
    fit_gaussian_sum,
    gsum_rows,
)
from .errors import TanhErfError
from .ladder import ladder_down_identity, ladder_report, ladder_up_identity
from .reffuncs import erf_ref
from .sampler import PRESETS, fit_histogram, histogram_rows, make_stream, sample_n
from .tanhseries import build_series, default_grid, eval_series, max_abs_error
from .tuner import TABLE1, tune_alpha

COMMANDS = (
    "tune", "table1", "errcurve", "sample", "histfit",
    "dawson-fit", "dawson-eval", "ladder-verify", "bench",
)


@dataclass
class RunConfig:
    command: str
    lam: int | None = None
    alpha: float | None = None
    preset: str | None = None
    seed: int | None = None
    n_samples: int | None = None
    bins: int = 200
    output_path: str | None = None
    format: str = "csv"
    max_n: int = 20
    grid_points: int = 4001
    bracket_lo: float = 0.05
    bracket_hi: float = 2.0
    tol: float = 1e-6
    target: str = "ratio"
    hist_out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "text"):
            raise ValueError("format must be csv or text")


class UsageError(ValueError):
    pass


def _emit(cfg: RunConfig, rows, columns=None):
    text = csvio.rows_to_csv(rows, columns) if cfg.format == "csv" else csvio.rows_to_text(rows, columns)
    csvio.write_output(text, cfg.output_path)


def _series_from(cfg: RunConfig, need_alpha=True):
    if cfg.preset is not None:
        if cfg.lam is not None or cfg.alpha is not None:
            raise UsageError("--preset excludes --lambda/--alpha")
        lam, alpha = PRESETS[cfg.preset]
        return build_series(lam, alpha)
    if cfg.lam is None:
        raise UsageError(f"{cfg.command} requires --lambda or --preset")
    if cfg.alpha is None:
        if need_alpha:
            raise UsageError(f"{cfg.command} requires --alpha or --preset")
        return None
    return build_series(cfg.lam, cfg.alpha)


def _tune(cfg: RunConfig, lam: int):
    return tune_alpha(
        lam, (cfg.bracket_lo, cfg.bracket_hi), cfg.tol, default_grid(cfg.grid_points)
    )


def cmd_tune(cfg):
    if cfg.lam is None:
        raise UsageError("tune requires --lambda")
    r = _tune(cfg, cfg.lam)
    row = r.row() | {"balance": r.balance, "iterations": r.iterations}
    _emit(cfg, [row])


def cmd_table1(cfg):
    rows = []
    for lam, published in TABLE1.items():
        r = _tune(cfg, lam)
        rows.append(r.row() | {"alpha_published": published, "diff": r.alpha_opt - published})
    _emit(cfg, rows)


def cmd_errcurve(cfg):
    series = _series_from(cfg, need_alpha=False)
    grid = default_grid(cfg.grid_points)
    if series is None:
        series = build_series(cfg.lam, _tune(cfg, cfg.lam).alpha_opt)
    err = erf_ref(grid) - eval_series(series, grid)
    _emit(cfg, [{"x": float(x), "err": float(e)} for x, e in zip(grid, err)])


def _draws(cfg):
    series = _series_from(cfg)
    if cfg.n_samples is None or cfg.seed is None:
        raise UsageError(f"{cfg.command} requires --n and --seed")
    return sample_n(make_stream(series, cfg.seed), cfg.n_samples)


def cmd_sample(cfg):
    x = _draws(cfg)
    csvio.write_output("".join(f"{v!r}\n" for v in x.tolist()), cfg.output_path)


def cmd_histfit(cfg):
    x = _draws(cfg)
    if cfg.hist_out:
        csvio.write_output(csvio.rows_to_csv(histogram_rows(x, cfg.bins)), cfg.hist_out)
    fit = fit_histogram(x, cfg.bins)
    _emit(cfg, [{
        "mean": fit.mean, "sigma": fit.sigma, "n_samples": fit.n_samples,
        "bin_width": fit.bin_width, "chi2_per_dof": fit.chi2_per_dof,
    }])


def cmd_dawson_fit(cfg):
    n = cfg.n_samples or 3
    gsum, report = fit_gaussian_sum(n, target=cfg.target, seed=cfg.seed or 0)
    if cfg.format == "text":
        rows = gsum_rows(gsum)
        text = csvio.rows_to_text(rows)
        text += (
            f"crossover={report.crossover!r}\n"
            f"inner_max_err={report.inner_max_err!r}\n"
            f"segmented_max_err={report.segmented_max_err!r}\n"
        )
        csvio.write_output(text, cfg.output_path)
    else:
        _emit(cfg, gsum_rows(gsum))


def cmd_dawson_eval(cfg):
    sd = SegmentedDawson(PUBLISHED_G3, PUBLISHED_CROSSOVER)
    xs = np.linspace(-10.0, 10.0, cfg.grid_points)
    _emit(cfg, error_curve_rows(sd, xs))


def cmd_ladder_verify(cfg):
    if cfg.format == "text":
        csvio.write_output("\n".join(ladder_report(cfg.max_n)) + "\n", cfg.output_path)
        return
    rows = []
    for n in range(cfg.max_n + 1):
        checks = [ladder_up_identity(n)] + ([ladder_down_identity(n)] if n else [])
        for c in checks:
            rows.append({"n": n, "identity": c.identity, "status": "PASS" if c.passed else "FAIL",
                         "residual_norm": c.residual_norm})
    _emit(cfg, rows)


def _throughput(fn, n_points, min_time=0.2):
    fn()
    reps, t0 = 0, time.perf_counter()
    while True:
        fn()
        reps += 1
        dt = time.perf_counter() - t0
        if dt >= min_time:
            return reps * n_points / dt


def bench_rows(orders=(1, 2, 5, 10, 30), n_points=100_000, min_time=0.2) -> list[dict]:
    """Evaluations per second for each order against the reference erf."""
    rng = np.random.default_rng(0)
    x = rng.uniform(-4.0, 4.0, n_points)
    x_ref = x[:5_000]
    ref_rate = _throughput(lambda: erf_ref(x_ref), x_ref.size, min_time)
    rows = []
    for lam in orders:
        series = build_series(lam, TABLE1[lam])
        rate = _throughput(lambda: eval_series(series, x), n_points, min_time)
        rows.append({
            "kind": "erf_lambda", "lambda": lam, "alpha": series.alpha, "per_second": rate,
            "ratio_vs_ref": rate / ref_rate, "max_err": max_abs_error(series)[1],
        })
    rows.append({"kind": "erf_ref", "lambda": 0, "alpha": 0.0, "per_second": ref_rate,
                 "ratio_vs_ref": 1.0, "max_err": 0.0})
    for name in PRESETS:
        stream = make_stream(build_series(*PRESETS[name]), 0)
        rate = _throughput(lambda: sample_n(stream, n_points), n_points, min_time)
        rows.append({"kind": f"sample_{name}", "lambda": stream.series.lam, "alpha": stream.series.alpha,
                     "per_second": rate, "ratio_vs_ref": rate / ref_rate,
                     "max_err": max_abs_error(stream.series)[1]})
    return rows


def cmd_bench(cfg):
    _emit(cfg, bench_rows())


_DISPATCH = {
    "tune": cmd_tune,
    "table1": cmd_table1,
    "errcurve": cmd_errcurve,
    "sample": cmd_sample,
    "histfit": cmd_histfit,
    "dawson-fit": cmd_dawson_fit,
    "dawson-eval": cmd_dawson_eval,
    "ladder-verify": cmd_ladder_verify,
    "bench": cmd_bench,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"tanherf: usage error: {exc}", file=sys.stderr)
        return 2
    except (TanhErfError, ValueError, ArithmeticError) as exc:
        print(f"tanherf: {cfg.command} failed: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tanherf", description="tanh-series erf and Dawson toolkit")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--lambda", dest="lam", type=int, help="series order")
    p.add_argument("--alpha", type=float, help="argument scale")
    p.add_argument("--preset", choices=sorted(PRESETS), help="bassett, opt1 or opt2")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", dest="n_samples", type=int,
                   help="sample count (sample/histfit) or component count (dawson-fit)")
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--out", dest="output_path", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--max-n", dest="max_n", type=int, default=20)
    p.add_argument("--grid-points", dest="grid_points", type=int, default=4001)
    p.add_argument("--bracket-lo", dest="bracket_lo", type=float, default=0.05)
    p.add_argument("--bracket-hi", dest="bracket_hi", type=float, default=2.0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--target", choices=("ratio", "value"), default="ratio",
                   help="dawson-fit: fit F/x (ratio) or F itself (value)")
    p.add_argument("--hist-out", dest="hist_out", help="histfit: also write bin_center,count CSV here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(RunConfig(**vars(args)))


if __name__ == "__main__":
    sys.exit(main())
