"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs once per backend through ``facimean.kernels`` (swapped in
place) and reports the best of N wall times. Outputs are checked for
bit-identity before timing.
"""

import argparse
import importlib
import time

import numpy as np

from facimean import _pykernels, kernels
from facimean.faci_builder import FixedT0, IntegralWeighted, SupIntersection
from facimean.simulation import HeteroNormal, SimulationConfig, coverage_experiment

API = ["comp_cumsum", "comp_cumsum_sq", "search_index", "search_indices",
       "sup_abs_attained", "step_integral", "sup_intersection", "weighted_partial",
       "path_sup_abs"]


def use(backend):
    for name in API:
        setattr(kernels, name, getattr(backend, name))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(10_000)
    small = rng.standard_normal(200)
    cum = _pykernels.comp_cumsum_sq(x, 1.0, 0.0)
    ts = np.linspace(0, 1, 1024)
    breaks = cum / cum[-1]
    partial = _pykernels.comp_cumsum(x)
    inc = rng.standard_normal((256, 4096))

    def many_small():
        # per-replication pattern: short samples, call overhead dominates
        for _ in range(2000):
            c = kernels.comp_cumsum(small)
            kernels.sup_intersection(c, 3.0)

    return {
        "comp_cumsum n=1e4": lambda: kernels.comp_cumsum(x),
        "comp_cumsum_sq n=1e4": lambda: kernels.comp_cumsum_sq(x, 2.0, 0.1),
        "search_indices 1024 t": lambda: kernels.search_indices(cum, ts),
        "sup_abs_attained n=1e4": lambda: kernels.sup_abs_attained(breaks, partial),
        "step_integral n=1e4": lambda: kernels.step_integral(breaks, partial),
        "weighted_partial n=1e4": lambda: kernels.weighted_partial(x * x, partial),
        "path_sup_abs 256x4096": lambda: kernels.path_sup_abs(inc, 1 / 64),
        "2000 small samples": many_small,
    }


def coverage_run():
    cfg = SimulationConfig(design=HeteroNormal(3.0, (0.5, 1.0, 2.0)), replications=1000,
                           seed=1, n=500,
                           methods=(SupIntersection(), FixedT0(1.0), IntegralWeighted()))
    return coverage_experiment(cfg, threads=1)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        compiled = importlib.import_module("facimean._ckernels")
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return
    original = {name: getattr(kernels, name) for name in API}
    rows = []
    try:
        for label, fn in workloads().items():
            use(_pykernels)
            ref = fn()
            t_py = best_of(fn, args.repeat)
            use(compiled)
            got = fn()
            same = (ref is None and got is None) or np.array_equal(np.asarray(ref), np.asarray(got))
            t_c = best_of(fn, args.repeat)
            rows.append((label, t_py, t_c, same))
        use(_pykernels)
        ref = coverage_run()
        t_py = best_of(coverage_run, 1)
        use(compiled)
        got = coverage_run()
        t_c = best_of(coverage_run, 1)
        rows.append(("coverage n=500 R=1000", t_py, t_c, ref.methods == got.methods))
    finally:
        for name, fn in original.items():
            setattr(kernels, name, fn)
    print(f"{'workload':<26}{'numpy ms':>11}{'cython ms':>11}{'speedup':>9}  identical")
    for label, t_py, t_c, same in rows:
        print(f"{label:<26}{t_py * 1e3:11.3f}{t_c * 1e3:11.3f}{t_py / t_c:9.2f}  {same}")


if __name__ == "__main__":
    main()
