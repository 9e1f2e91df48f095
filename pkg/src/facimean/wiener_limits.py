"""Limit laws of Wiener functionals and a discretized Wiener sampler.

The law of sup_{0<=t<=1} |W(t)| is evaluated from two classical series:
the theta-type alternating series

    P(sup|W| <= a) = (4/pi) sum_k (-1)^k / (2k+1) exp(-pi^2 (2k+1)^2 / (8 a^2))

which converges fast for small and moderate ``a``, and the reflection
series for the upper tail

    P(sup|W| > a) = 2 sum_{k>=1} (-1)^(k+1) erfc((2k-1) a / sqrt 2)

used where the complement is small. Each is truncated when the next term
drops below 1e-16 (alternating, so that bounds the truncation error).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import DomainError

_TERM_TOL = 1e-16
_SQRT2 = math.sqrt(2.0)
# below this the theta series is used for the CDF, above it the tail series
_SWITCH = 1.5


@dataclass(frozen=True)
class SupAbs:
    pass


@dataclass(frozen=True)
class Endpoint:
    t0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.t0 <= 1.0:
            raise DomainError(f"t0 must lie in (0, 1], got {self.t0!r}")


@dataclass(frozen=True)
class Integral:
    pass


FunctionalKind = Union[SupAbs, Endpoint, Integral]


def functional_name(kind: FunctionalKind) -> str:
    if isinstance(kind, Endpoint):
        return f"Endpoint({kind.t0!r})"
    return type(kind).__name__


def _theta_cdf(a: float) -> float:
    c = math.pi * math.pi / (8.0 * a * a)
    total = 0.0
    k = 0
    while True:
        m = 2 * k + 1
        term = math.exp(-c * m * m) / m
        if term < _TERM_TOL:
            break
        total += term if k % 2 == 0 else -term
        k += 1
    return 4.0 / math.pi * total


def _reflection_sf(a: float) -> float:
    total = 0.0
    k = 1
    while True:
        term = math.erfc((2 * k - 1) * a / _SQRT2)
        if term < _TERM_TOL:
            break
        total += term if k % 2 == 1 else -term
        k += 1
    return 2.0 * total


def _check_level(a):
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"level must be a positive real, got {a!r}")


def sup_abs_wiener_cdf(a: float) -> float:
    """P(sup_{0<=t<=1} |W(t)| <= a)."""
    _check_level(a)
    if a < _SWITCH:
        return min(max(_theta_cdf(a), 0.0), 1.0)
    return min(max(1.0 - _reflection_sf(a), 0.0), 1.0)


def sup_abs_wiener_sf(a: float) -> float:
    """P(sup_{0<=t<=1} |W(t)| > a), accurate in the far tail."""
    _check_level(a)
    if a < _SWITCH:
        return min(max(1.0 - _theta_cdf(a), 0.0), 1.0)
    return min(max(_reflection_sf(a), 0.0), 1.0)


def sup_abs_wiener_cdf_array(x) -> np.ndarray:
    """Vectorized CDF; nonpositive arguments map to 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros(x.shape)
    flat = x.ravel()
    res = out.ravel()
    for i, a in enumerate(flat):
        if a > 0:
            res[i] = sup_abs_wiener_cdf(float(a))
    return res.reshape(x.shape)


def _check_prob(p, name="alpha"):
    if not (0.0 < p < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {p!r}")


@lru_cache(maxsize=256)
def sup_abs_wiener_quantile(alpha: float) -> float:
    """The level a with P(sup|W| > a) = alpha."""
    _check_prob(alpha)
    # g is decreasing in a; the small side of the law carries the precision
    if alpha < 0.5:
        g = lambda a: sup_abs_wiener_sf(a) - alpha
    else:
        g = lambda a: (1.0 - alpha) - sup_abs_wiener_cdf(a)
    lo, hi = 0.25, 4.0
    while g(lo) <= 0:
        lo /= 2.0
    while g(hi) >= 0:
        hi *= 2.0
    return brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)


# Acklam's rational approximation to the inverse normal CDF.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def _acklam(p):
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
                / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    if p > 1.0 - _P_LOW:
        q = math.sqrt(-2.0 * math.log1p(-p))
        return -((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
                 / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    q = p - 0.5
    r = q * q
    return ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
            / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0))


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF.

    Acklam's approximation (relative error ~1e-9) refined by one Halley
    step against the erfc-based CDF.
    """
    _check_prob(p, "p")
    if p == 0.5:
        return 0.0
    x = _acklam(p)
    # work on the smaller tail so the residual keeps relative precision
    if p < 0.5:
        e = normal_cdf(x) - p
    else:
        e = -(0.5 * math.erfc(x / _SQRT2) - (1.0 - p))
    u = e / normal_pdf(x)
    return x - u / (1.0 + 0.5 * x * u)


@lru_cache(maxsize=256)
def functional_limit_quantile(kind: FunctionalKind, alpha: float) -> float:
    """Two-sided critical value of the Wiener limit of ``kind`` at level alpha."""
    _check_prob(alpha)
    if isinstance(kind, SupAbs):
        return sup_abs_wiener_quantile(alpha)
    z = normal_quantile(1.0 - alpha / 2.0)
    if isinstance(kind, Endpoint):
        return z * math.sqrt(kind.t0)
    if isinstance(kind, Integral):
        return z / math.sqrt(3.0)
    raise TypeError(f"unknown functional kind {kind!r}")


@dataclass(frozen=True)
class WienerPath:
    grid_size: int
    values: np.ndarray


def simulate_wiener_path(grid_size: int, rng: np.random.Generator) -> WienerPath:
    """W at t = j/m, j = 0..m, from independent N(0, 1/m) increments."""
    if grid_size < 1:
        raise ValueError("grid_size must be at least 1")
    inc = rng.standard_normal(grid_size) / math.sqrt(grid_size)
    values = np.empty(grid_size + 1)
    values[0] = 0.0
    np.cumsum(inc, out=values[1:])
    return WienerPath(grid_size=grid_size, values=values)


def simulate_sup_abs(paths: int, grid_size: int, rng: np.random.Generator,
                     chunk: int = 512) -> np.ndarray:
    """max_j |W(j/m)| for ``paths`` independent discretized paths."""
    out = np.empty(paths)
    scale = 1.0 / math.sqrt(grid_size)
    done = 0
    while done < paths:
        rows = min(chunk, paths - done)
        inc = rng.standard_normal((rows, grid_size))
        out[done:done + rows] = kernels.path_sup_abs(inc, scale)
        done += rows
    return out
