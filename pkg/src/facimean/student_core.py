"""Sample-level statistics, time functions and Student step processes.

All observations are handled as float64 numpy arrays. Partial sums go
through the compensated kernels in :mod:`facimean.kernels`.

Centered cumulative weights are formed as partial sums of
``(n * Z_i - sum Z)**2``, i.e. ``n**2`` times the usual centered squares.
Every time function compares ``C_m <= t * C_n`` and is therefore unchanged
by the scaling, while integer and dyadic samples stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import kernels
from .errors import DegenerateSample, DegenerateWeights, TooFewObservations


def as_sample(values) -> np.ndarray:
    """Coerce ``values`` to a 1D float64 array (the package's Sample)."""
    z = np.ascontiguousarray(values, dtype=np.float64)
    if z.ndim != 1:
        raise ValueError("a sample must be one-dimensional")
    if not np.all(np.isfinite(z)):
        raise ValueError("sample contains non-finite values")
    return z


@dataclass(frozen=True)
class VarianceProfile:
    """Known variances sigma_i**2 and their cumulative sums s_0..s_n."""

    sigma2: np.ndarray
    cumulative: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        s2 = np.ascontiguousarray(self.sigma2, dtype=np.float64)
        if s2.ndim != 1 or s2.size == 0:
            raise ValueError("sigma2 must be a non-empty 1D sequence")
        if not np.all(s2 > 0):
            raise ValueError("every variance must be positive")
        object.__setattr__(self, "sigma2", s2)
        object.__setattr__(self, "cumulative", kernels.comp_cumsum(s2))

    @classmethod
    def cycled(cls, pattern, n):
        """Variances of a standard-deviation ``pattern`` repeated to length n."""
        sd = np.resize(np.asarray(pattern, dtype=np.float64), n)
        return cls(sd * sd)

    def __len__(self):
        return self.sigma2.shape[0]


@dataclass(frozen=True)
class OracleVariance:
    profile: VarianceProfile


@dataclass(frozen=True)
class RawSquares:
    center: float = 0.0


@dataclass(frozen=True)
class CenteredSquares:
    pass


TimeFunctionKind = Union[OracleVariance, RawSquares, CenteredSquares]


@dataclass(frozen=True)
class SampleMean:
    pass


@dataclass(frozen=True)
class Known:
    mu: float


@dataclass(frozen=True)
class StepProcess:
    """A realized right-continuous step path on [0, 1].

    ``values[k]`` is taken on ``[breakpoints[k], breakpoints[k+1])`` and
    ``values[n]`` at t = 1. ``cumulative`` carries the unnormalized weights
    behind the breakpoints so evaluation can compare without ratios.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    cumulative: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1

    def index_at(self, t):
        if np.ndim(t) == 0:
            _check_t(t)
            return kernels.search_index(self.cumulative, float(t))
        ts = np.asarray(t, dtype=np.float64)
        if np.any((ts < 0) | (ts > 1)):
            raise ValueError("t must lie in [0, 1]")
        return kernels.search_indices(self.cumulative, ts)

    def __call__(self, t):
        """Value of the path at ``t`` (scalar or array)."""
        idx = self.index_at(t)
        if np.ndim(idx) == 0:
            return float(self.values[idx])
        return self.values[idx]


def _check_t(t):
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")


def _require_n(z, minimum=2):
    if z.shape[0] < minimum:
        raise TooFewObservations(
            f"need at least {minimum} observations, got {z.shape[0]}"
        )


def centered_cumulative(z: np.ndarray) -> np.ndarray:
    """``n**2``-scaled cumulative centered squares, length n + 1."""
    n = z.shape[0]
    if n == 0 or np.all(z == z[0]):
        # rounding in n * Z_i - sum Z must not fake a spread
        return np.zeros(n + 1)
    total = kernels.comp_cumsum(z)[-1]
    return kernels.comp_cumsum_sq(z, float(n), total)


def centered_ss(z: np.ndarray) -> float:
    """Centered sum of squares ``sum (Z_i - mean)**2``; raises if zero."""
    z = as_sample(z)
    n = z.shape[0]
    ss = centered_cumulative(z)[-1] / (n * n)
    if not ss > 0:
        raise DegenerateSample("all observations are equal")
    return float(ss)


def student_scale(z: np.ndarray) -> float:
    """``sqrt(n * sum (Z_i - mean)**2 / (n - 1))``, i.e. sqrt(n) times the sample sd."""
    z = as_sample(z)
    _require_n(z)
    n = z.shape[0]
    return math.sqrt(n * centered_ss(z) / (n - 1))


def student_statistic(sample) -> float:
    z = as_sample(sample)
    _require_n(z)
    total = kernels.comp_cumsum(z)[-1]
    return float(total / student_scale(z))


def self_normalized_sum(sample) -> float:
    z = as_sample(sample)
    _require_n(z, 1)
    sq = kernels.comp_cumsum_sq(z, 1.0, 0.0)[-1]
    if not sq > 0:
        raise DegenerateSample("all observations are zero")
    return float(kernels.comp_cumsum(z)[-1] / math.sqrt(sq))


def cumulative_weights(kind: TimeFunctionKind, sample) -> np.ndarray:
    """Cumulative weights C_0 = 0, ..., C_n defining a time function."""
    z = as_sample(sample)
    if isinstance(kind, CenteredSquares):
        cum = centered_cumulative(z)
    elif isinstance(kind, RawSquares):
        cum = kernels.comp_cumsum_sq(z, 1.0, float(kind.center))
    elif isinstance(kind, OracleVariance):
        if len(kind.profile) != z.shape[0]:
            raise ValueError(
                f"variance profile has length {len(kind.profile)}, "
                f"sample has {z.shape[0]}"
            )
        cum = kind.profile.cumulative
    else:
        raise TypeError(f"unknown time function kind {kind!r}")
    if not cum[-1] > 0:
        raise DegenerateWeights("total cumulative weight is zero")
    return cum


def time_function(kind: TimeFunctionKind, sample, t: float) -> int:
    """sup{m in 0..n : C_m <= t C_n}, the largest qualifying index."""
    _check_t(t)
    cum = cumulative_weights(kind, sample)
    return kernels.search_index(cum, float(t))


def _process(cum, values):
    breaks = cum / cum[-1]
    return StepProcess(breakpoints=breaks, values=values, cumulative=cum)


def student_process(sample, kind: TimeFunctionKind, shift: float = 0.0) -> StepProcess:
    """Student process of ``sample``; with ``shift`` that of ``sample - shift``.

    A nonzero ``shift`` recenters only the numerator partial sums; the time
    function and the denominator are computed from ``sample`` as given.
    """
    z = as_sample(sample)
    _require_n(z)
    cum = cumulative_weights(kind, z)
    partial = kernels.comp_cumsum(z - shift if shift else z)
    return _process(cum, partial / student_scale(z))


def self_normalized_process(sample, kind: TimeFunctionKind) -> StepProcess:
    """Partial sums over the full-sample root sum of squares."""
    z = as_sample(sample)
    _require_n(z)
    cum = cumulative_weights(kind, z)
    sq = kernels.comp_cumsum_sq(z, 1.0, 0.0)[-1]
    if not sq > 0:
        raise DegenerateSample("all observations are zero")
    partial = kernels.comp_cumsum(z)
    return _process(cum, partial / math.sqrt(sq))


def sup_abs_functional(process: StepProcess) -> float:
    """sup over t of |X(t)|; zero-width segments are never attained."""
    return float(kernels.sup_abs_attained(process.breakpoints, process.values))


def integral_functional(process: StepProcess) -> float:
    return float(kernels.step_integral(process.breakpoints, process.values))


def endpoint_functional(process: StepProcess, sample, kind, t0: float) -> float:
    """Value of ``process`` at the time index ``time_function(kind, sample, t0)``."""
    if not 0.0 < t0 <= 1.0:
        raise ValueError(f"t0 must lie in (0, 1], got {t0!r}")
    k = time_function(kind, sample, t0)
    return float(process.values[k])


def max_ratio_diagnostic(sample, center=SampleMean()) -> float:
    """max_i (Z_i - c)**2 / sum_i (Z_i - c)**2 with c the mean or a known mu.

    Values near zero indicate that no single observation dominates.
    """
    z = as_sample(sample)
    n = z.shape[0]
    if isinstance(center, SampleMean):
        _require_n(z, 1)
        if np.all(z == z[0]):
            raise DegenerateWeights("all observations are equal")
        total = kernels.comp_cumsum(z)[-1]
        d = n * z - total
    elif isinstance(center, Known):
        d = z - float(center.mu)
    else:
        raise TypeError(f"unknown center {center!r}")
    denom = kernels.comp_cumsum_sq(d, 1.0, 0.0)[-1]
    if not denom > 0:
        raise DegenerateWeights("sum of squared deviations is zero")
    return float(np.max(d * d) / denom)


def nu_weights(sample) -> np.ndarray:
    """Normalized centered squares nu_k, k = 1..n (they sum to one)."""
    z = as_sample(sample)
    _require_n(z, 1)
    cum = centered_cumulative(z)
    if not cum[-1] > 0:
        raise DegenerateSample("all observations are equal")
    d = z.shape[0] * z - kernels.comp_cumsum(z)[-1]
    return (d * d) / cum[-1]
