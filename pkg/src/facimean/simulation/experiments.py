"""Monte Carlo experiments: interval coverage, FCLT fit, time-function discrepancy.

Replication ``r`` draws its data from a Philox stream keyed only by
``(seed, r)`` (plus the sample size where several are swept), writes its
result into slot ``r``, and all reductions run afterwards in a fixed order.
Results therefore do not depend on ``threads``.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.special import ndtr

from .. import kernels
from ..errors import FaciError
from ..faci_builder import build_interval, method_name
from ..student_core import (
    CenteredSquares,
    VarianceProfile,
    centered_cumulative,
    integral_functional,
    max_ratio_diagnostic,
    student_process,
    student_scale,
    sup_abs_functional,
)
from ..wiener_limits import (
    Endpoint,
    Integral,
    SupAbs,
    functional_name,
    sup_abs_wiener_cdf_array,
)
from .config import (
    CoverageReport,
    DiscrepancyReport,
    DiscrepancyRow,
    FitReport,
    KindFit,
    MethodCoverage,
)
from .designs import generate_sample

_U64 = 2 ** 64

# outcome codes per replication and method
COVERED, MISSED, EMPTY, FAILED = 0, 1, 2, 3


def replication_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent counter-based stream for one replication."""
    ss = np.random.SeedSequence([seed % _U64, *key])
    return np.random.Generator(np.random.Philox(ss))


def default_threads() -> int:
    return os.cpu_count() or 1


def run_replications(fn, replications: int, threads=None) -> list:
    """``[fn(0), ..., fn(R-1)]``, evaluated over contiguous blocks in threads."""
    threads = default_threads() if threads is None else max(1, int(threads))
    out = [None] * replications
    if threads == 1 or replications < 2:
        for r in range(replications):
            out[r] = fn(r)
        return out

    def block(bounds):
        lo, hi = bounds
        for r in range(lo, hi):
            out[r] = fn(r)

    edges = np.linspace(0, replications, min(threads * 4, replications) + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(block, zip(edges[:-1], edges[1:])))
    return out


def ks_distance(values, cdf) -> float:
    """One-sample Kolmogorov-Smirnov statistic against a continuous CDF.

    ``cdf`` maps a sorted array to CDF values.
    """
    x = np.sort(np.asarray(values, dtype=np.float64))
    m = x.shape[0]
    if m == 0:
        raise ValueError("KS distance of an empty sample")
    f = np.asarray(cdf(x), dtype=np.float64)
    i = np.arange(1, m + 1, dtype=np.float64)
    d_plus = np.max(i / m - f)
    d_minus = np.max(f - (i - 1) / m)
    return float(max(d_plus, d_minus, 0.0))


def reference_cdf(kind):
    """(CDF, tag) of the Wiener limit of a path functional."""
    if isinstance(kind, SupAbs):
        return sup_abs_wiener_cdf_array, "sup|W| series"
    if isinstance(kind, Endpoint):
        sd = math.sqrt(kind.t0)
        return (lambda x: ndtr(x / sd)), f"N(0, {kind.t0!r})"
    if isinstance(kind, Integral):
        sd = math.sqrt(1.0 / 3.0)
        return (lambda x: ndtr(x / sd)), "N(0, 1/3)"
    raise TypeError(f"unknown functional kind {kind!r}")


def evaluate_functional(process, kind) -> float:
    if isinstance(kind, SupAbs):
        return sup_abs_functional(process)
    if isinstance(kind, Endpoint):
        return process(kind.t0)
    if isinstance(kind, Integral):
        return integral_functional(process)
    raise TypeError(f"unknown functional kind {kind!r}")


def _median(x):
    return float(np.median(x)) if len(x) else float("nan")


def _mean(x):
    return math.fsum(x) / len(x) if len(x) else float("nan")


def coverage_experiment(config, threads=None) -> CoverageReport:
    """Empirical coverage of each requested interval at the design's mu.

    Empty intervals and construction errors count as misses and are also
    tallied on their own.
    """
    if config.n is None:
        raise ValueError("coverage experiment needs n")
    start = time.perf_counter()
    design, n, alpha, mu = config.design, config.n, config.alpha, config.design.mu
    methods = config.methods

    def one(r):
        z = generate_sample(design, n, replication_rng(config.seed, r))
        res = []
        for m in methods:
            try:
                ci = build_interval(z, m, alpha)
            except FaciError:
                res.append((FAILED, math.nan))
                continue
            if ci.empty:
                res.append((EMPTY, math.nan))
            else:
                res.append((COVERED if mu in ci else MISSED, ci.length))
        return res

    results = run_replications(one, config.replications, threads)
    rows = []
    for j, m in enumerate(methods):
        codes = np.array([res[j][0] for res in results])
        lengths = np.array([res[j][1] for res in results])
        lengths = lengths[~np.isnan(lengths)]
        counts = np.bincount(codes, minlength=4)
        rows.append(MethodCoverage(
            method=method_name(m),
            empirical_coverage=float(counts[COVERED]) / config.replications,
            mean_length=_mean(lengths.tolist()),
            median_length=_median(lengths),
            covered=int(counts[COVERED]),
            not_covered=int(counts[MISSED]),
            empty_count=int(counts[EMPTY]),
            error_count=int(counts[FAILED]),
        ))
    wall = (time.perf_counter() - start) * 1e3
    return CoverageReport(config=config.to_dict(), methods=rows, wall_time_ms=wall)


def functional_draws(config, kinds, threads=None) -> np.ndarray:
    """Array (R, len(kinds)) of path functionals of mu-centered Student processes.

    The numerator uses Z - mu; the empirical time function and the
    denominator come from the observed sample. Failed replications are NaN.
    """
    if config.n is None:
        raise ValueError("fit experiment needs n")
    design, n, mu = config.design, config.n, config.design.mu
    kind_tf = CenteredSquares()

    def one(r):
        z = generate_sample(design, n, replication_rng(config.seed, r))
        try:
            p = student_process(z, kind_tf, shift=mu)
        except FaciError:
            return [math.nan] * len(kinds)
        return [evaluate_functional(p, k) for k in kinds]

    return np.array(run_replications(one, config.replications, threads), dtype=np.float64)


def fclt_fit_experiment(config, kinds=None, threads=None) -> FitReport:
    """KS distance between each path functional and its Wiener limit law."""
    start = time.perf_counter()
    kinds = tuple(config.kinds if kinds is None else kinds)
    draws = functional_draws(config, kinds, threads)
    rows = []
    for j, kind in enumerate(kinds):
        col = draws[:, j]
        ok = col[~np.isnan(col)]
        cdf, tag = reference_cdf(kind)
        rows.append(KindFit(
            kind=functional_name(kind),
            ks_distance=ks_distance(ok, cdf) if ok.size else float("nan"),
            sample_count=int(ok.size),
            reference=tag,
            error_count=int(col.size - ok.size),
        ))
    wall = (time.perf_counter() - start) * 1e3
    cfg = config.to_dict()
    cfg["kinds"] = [{"type": type(k).__name__, **({"t0": k.t0} if hasattr(k, "t0") else {})}
                    for k in kinds]
    return FitReport(config=cfg, kinds=rows, wall_time_ms=wall)


DISCREPANCY_GRID = np.linspace(0.0, 1.0, 1024)


def time_function_distance(sample, mu, oracle_cumulative) -> float:
    """sup over the t-grid of |oracle-time Student process - empirical-time one|.

    Both processes share the numerator partial sums of Z - mu and the
    denominator; only the time function differs.
    """
    scale = student_scale(sample)
    partial = kernels.comp_cumsum(sample - mu) / scale
    ko = kernels.search_indices(oracle_cumulative, DISCREPANCY_GRID)
    ke = kernels.search_indices(centered_cumulative(sample), DISCREPANCY_GRID)
    return float(np.max(np.abs(partial[ko] - partial[ke])))


def discrepancy_experiment(design, n_grid, replications, seed, threads=None) -> list:
    """[(n, median sup-distance)] between oracle- and empirical-time processes."""
    out = []
    for n in n_grid:
        profile = VarianceProfile(design.variances(n))
        cum = profile.cumulative

        def one(r, n=n, cum=cum):
            z = generate_sample(design, n, replication_rng(seed, n, r))
            try:
                return time_function_distance(z, design.mu, cum)
            except FaciError:
                return math.nan
        d = np.array(run_replications(one, replications, threads))
        out.append((int(n), _median(d[~np.isnan(d)])))
    return out


def discrepancy_report(config, threads=None) -> DiscrepancyReport:
    start = time.perf_counter()
    rows = discrepancy_experiment(config.design, config.n_grid, config.replications,
                                  config.seed, threads)
    wall = (time.perf_counter() - start) * 1e3
    return DiscrepancyReport(
        config=config.to_dict(),
        rows=[DiscrepancyRow(n, med, config.replications) for n, med in rows],
        wall_time_ms=wall,
    )


def max_ratio_experiment(design, n_grid, replications, seed, threads=None) -> list:
    """[(n, median max-ratio diagnostic with the sample mean as center)]."""
    out = []
    for n in n_grid:
        def one(r, n=n):
            z = generate_sample(design, n, replication_rng(seed, n, r))
            return max_ratio_diagnostic(z)
        d = np.array(run_replications(one, replications, threads))
        out.append((int(n), _median(d)))
    return out
