"""Acceptance gate. Every test prints one PASS/FAIL line with its measured value.

Run alone with ``pytest -m acceptance -s`` (the lines are also printed without ``-s``).
"""

import itertools
import json
import math
import time

import numpy as np
import pytest
from scipy import integrate, stats

import oracles
from facimean import cli
from facimean import student_core as sc
from facimean.errors import DegenerateWeightedCenter, ZeroTimeIndex
from facimean.faci_builder import (
    FixedT0,
    IntegralWeighted,
    SupIntersection,
    faci_integral,
    faci_sup,
    faci_t0,
)
from facimean.simulation import designs as dz
from facimean.simulation import experiments as ex
from facimean.simulation.config import SimulationConfig
from facimean.wiener_limits import (
    Endpoint,
    Integral,
    SupAbs,
    functional_limit_quantile,
    simulate_sup_abs,
    sup_abs_wiener_quantile,
)

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    """Print a verdict line outside pytest's capture, then assert it."""
    def _report(number, title, ok, detail, elapsed):
        verdict = "PASS" if ok else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {verdict}  {title}: {detail} ({elapsed:.1f} s)")
        assert ok, f"criterion {number} failed: {detail}"
    return _report


MIXED = [dz.IidNormal(0.5, 2.0), dz.HeteroNormal(-1.0, (0.5, 1.0, 2.0)), dz.IidUniform(3.0, 1.0),
         dz.SymmetricTwoPoint(0.0, 1.0), dz.SymmetricT(1.0, 2.0), dz.Cauchy(0.0, 1.0)]


def mixed_samples(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        d = MIXED[len(out) % len(MIXED)]
        z = dz.generate_sample(d, int(rng.integers(2, 51)), rng)
        if np.ptp(z) > 0:
            out.append(z)
    return out


def test_c01_student_self_normalized_identity(report):
    start = time.perf_counter()
    samples = mixed_samples(1000, seed=101)
    ts = np.linspace(0.0, 1.0, 64)
    worst = 0.0
    for i, z in enumerate(samples):
        n = len(z)
        v = sc.self_normalized_sum(z)
        factor = math.sqrt((n - v * v) / (n - 1))
        kind = sc.CenteredSquares() if i % 2 == 0 else sc.RawSquares(0.0)
        a = sc.student_process(z, kind)(ts)
        b = sc.self_normalized_process(z, kind)(ts) / factor
        scale = np.maximum(np.abs(a), np.abs(b))
        rel = np.divide(np.abs(a - b), scale, out=np.zeros_like(a), where=scale > 0)
        worst = max(worst, float(rel.max()))
    elapsed = time.perf_counter() - start
    report(1, "T process = V process / sqrt((n - V^2)/(n - 1))", worst <= 1e-12 and elapsed < 1.0,
           f"max relative error {worst:.2e}, 1000 samples x 64 t", elapsed)


def _close(x, y):
    return abs(x - y) <= 1e-12 * max(1.0, abs(y))


def test_c02_brute_force_oracle(report):
    start = time.perf_counter()
    grid = (-1.0, 0.5, 2.0)
    ts = (0.0, 0.25, 1 / 3, 0.5, 0.7, 1.0)
    a05 = functional_limit_quantile(SupAbs(), 0.05)
    z975 = functional_limit_quantile(Endpoint(1.0), 0.05)
    cases = mismatches = 0
    for n in range(2, 7):
        for combo in itertools.product(grid, repeat=n):
            z = np.array(combo)
            if np.ptp(z) == 0:
                continue
            cases += 1
            fz = oracles.frac_sample(z)
            w = oracles.centered_weights(fz)
            ok = all(sc.time_function(sc.CenteredSquares(), z, t) == oracles.time_index(w, t)
                     for t in ts)
            p = sc.student_process(z, sc.CenteredSquares())
            ok &= _close(sc.sup_abs_functional(p), oracles.sup_abs(fz, w))
            ok &= _close(sc.integral_functional(p), oracles.integral(fz, w))
            ci = faci_sup(z, 0.05)
            lo, hi = oracles.faci_sup(fz, a05)
            ok &= _close(ci.lower, lo) and _close(ci.upper, hi) and ci.empty == (lo > hi)
            for t0 in (0.25, 0.5, 1.0):
                ref = oracles.faci_t0(fz, t0, z975 * math.sqrt(t0))
                try:
                    ci = faci_t0(z, t0, 0.05)
                    ok &= ref is not None and _close(ci.lower, ref[0]) and _close(ci.upper, ref[1])
                except ZeroTimeIndex:
                    ok &= ref is None
            ref = oracles.faci_integral(fz, z975 / math.sqrt(3))
            try:
                ci = faci_integral(z, 0.05)
                ok &= ref is not None and _close(ci.lower, ref[0]) and _close(ci.upper, ref[1])
            except DegenerateWeightedCenter:
                ok &= ref is None
            mismatches += not ok
    elapsed = time.perf_counter() - start
    report(2, "brute-force oracle equivalence, every sample of size 2..6 over a 3-point grid",
           cases >= 500 and mismatches == 0 and elapsed < 10.0,
           f"{cases} cases, {mismatches} mismatches", elapsed)


def test_c03_integral_weighted_representation(report):
    start = time.perf_counter()
    worst = 0.0
    for z in mixed_samples(1000, seed=303):
        p = sc.student_process(z, sc.CenteredSquares())
        nu = sc.nu_weights(z)
        rep = math.fsum((nu[1:] * p.values[1:-1]).tolist())
        val = sc.integral_functional(p)
        worst = max(worst, abs(val - rep) / max(1.0, abs(rep)))
    elapsed = time.perf_counter() - start
    report(3, "integral functional = nu-weighted sum of process values", worst <= 1e-12,
           f"max error {worst:.2e} on 1000 samples", elapsed)


def test_c04_sup_quantile_monte_carlo(report):
    start = time.perf_counter()
    draws = simulate_sup_abs(100_000, 2 ** 14, ex.replication_rng(4, 0))
    gaps = {}
    for alpha in (0.01, 0.05, 0.10):
        gaps[alpha] = abs(sup_abs_wiener_quantile(alpha) - float(np.quantile(draws, 1 - alpha)))
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"alpha={a}: |diff|={g:.4f}" for a, g in gaps.items())
    report(4, "sup|W| series quantiles vs 1e5 paths on a 2^14 grid",
           max(gaps.values()) <= 0.02 and elapsed < 120.0, detail, elapsed)


def _coverage(design, n, R, seed, methods):
    cfg = SimulationConfig(design=design, replications=R, seed=seed, n=n, alpha=0.05,
                           methods=methods)
    return ex.coverage_experiment(cfg)


def test_c05_coverage_lindeberg_class(report):
    start = time.perf_counter()
    rep = _coverage(dz.HeteroNormal(3.0, (0.5, 1.0, 2.0)), 500, 10_000, 5,
                    (FixedT0(1.0), IntegralWeighted(), SupIntersection()))
    cov = {m.method: m.empirical_coverage for m in rep.methods}
    tol = {"FixedT0(1.0)": 0.010, "IntegralWeighted": 0.015, "SupIntersection": 0.015}
    ok = all(abs(cov[k] - 0.95) <= tol[k] for k in tol)
    elapsed = time.perf_counter() - start
    report(5, "coverage, HeteroNormal n=500 R=1e4", ok and elapsed < 300,
           ", ".join(f"{k}={v:.4f}" for k, v in cov.items()), elapsed)


def test_c06_coverage_symmetric_class(report):
    start = time.perf_counter()
    rep = _coverage(dz.SymmetricT(1.0, 2.0), 2000, 10_000, 6, (FixedT0(1.0),))
    cov = rep.methods[0].empirical_coverage
    elapsed = time.perf_counter() - start
    report(6, "coverage, SymmetricT df=2 n=2000 R=1e4", abs(cov - 0.95) <= 0.02 and elapsed < 300,
           f"FixedT0(1.0)={cov:.4f}", elapsed)


def test_c07_fclt_fit(report):
    start = time.perf_counter()
    cfg = SimulationConfig(design=dz.IidNormal(), replications=5000, seed=7, n=2000)
    rep = ex.fclt_fit_experiment(cfg, kinds=[SupAbs(), Endpoint(0.5), Integral()])
    ks = {k.kind: k.ks_distance for k in rep.kinds}
    elapsed = time.perf_counter() - start
    report(7, "FCLT fit, IidNormal n=2000 R=5000", max(ks.values()) <= 0.03 and elapsed < 300,
           ", ".join(f"KS[{k}]={v:.4f}" for k, v in ks.items()), elapsed)


def test_c08_cauchy_negative_control(report):
    start = time.perf_counter()
    cfg = SimulationConfig(design=dz.Cauchy(), replications=5000, seed=8, n=2000)
    ks = ex.fclt_fit_experiment(cfg, kinds=[SupAbs()]).kinds[0].ks_distance
    ratios = ex.max_ratio_experiment(dz.Cauchy(), (100, 400, 1600, 6400), 1000, seed=8)
    ok = ks >= 0.05 and all(m >= 0.2 for _, m in ratios)
    elapsed = time.perf_counter() - start
    report(8, "Cauchy negative control", ok,
           f"KS[SupAbs]={ks:.4f}, median max-ratio " + ", ".join(f"n={n}: {m:.3f}" for n, m in ratios),
           elapsed)


def test_c09_discrepancy_decreasing(report):
    start = time.perf_counter()
    rows = ex.discrepancy_experiment(dz.HeteroNormal(0.0, (0.5, 1.0, 2.0)),
                                     (100, 400, 1600, 6400), 2000, seed=9)
    meds = [m for _, m in rows]
    ok = all(a > b for a, b in zip(meds, meds[1:]))
    elapsed = time.perf_counter() - start
    report(9, "oracle vs empirical time discrepancy", ok and elapsed < 300,
           "medians " + ", ".join(f"n={n}: {m:.4f}" for n, m in rows), elapsed)


def test_c10_lindeberg_profile(report):
    start = time.perf_counter()
    vals, errs = {}, {}
    for n in (100, 10_000):
        c = 0.1 * math.sqrt(n)
        # n equal terms over s_n^2 = n
        ref, _ = integrate.quad(lambda x: 2 * x * x * stats.norm.pdf(x), c, np.inf,
                                epsabs=1e-14, epsrel=1e-12)
        vals[n] = dz.lindeberg_profile(dz.IidNormal(), n, 0.1)
        errs[n] = abs(vals[n] - ref)
    ok = vals[10_000] < vals[100] / 10 and max(errs.values()) <= 1e-6
    elapsed = time.perf_counter() - start
    report(10, "Lindeberg profile decay, IidNormal eps=0.1", ok,
           f"L(100)={vals[100]:.6g}, L(1e4)={vals[10_000]:.3g}, "
           f"max |closed form - quadrature|={max(errs.values()):.1e}", elapsed)


def test_c11_simulate_determinism(report, tmp_path, capsys):
    start = time.perf_counter()
    base = {"schema_version": 1, "design": {"type": "HeteroNormal", "mu": 3.0,
                                            "sigma_pattern": [0.5, 1.0, 2.0]},
            "replications": 400, "seed": 11}
    configs = {
        "coverage": {**base, "n": 200, "alpha": 0.05},
        "fit": {**base, "n": 200},
        "discrepancy": {**base, "n_grid": [50, 200]},
    }
    identical = True
    for experiment, cfg in configs.items():
        path = tmp_path / f"{experiment}.json"
        path.write_text(json.dumps(cfg))
        blobs = []
        for threads in ("1", "8", "1", "8"):
            out = tmp_path / f"{experiment}-{threads}-{len(blobs)}.json"
            code = cli.main(["simulate", "--config", str(path), "--experiment", experiment,
                             "--out", str(out), "--threads", threads])
            identical &= code == 0
            blobs.append(out.read_bytes())
        identical &= all(b == blobs[0] for b in blobs)
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    report(11, "simulate reports byte-identical across reruns and 1 vs 8 threads", identical,
           "coverage, fit, discrepancy each run 4 times", elapsed)
