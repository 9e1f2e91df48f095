"""Confidence intervals for a common mean from Student-process functionals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import kernels
from .errors import DegenerateWeightedCenter, ZeroTimeIndex
from .student_core import (
    as_sample,
    centered_cumulative,
    student_scale,
)
from .wiener_limits import Endpoint, Integral, SupAbs, functional_limit_quantile


@dataclass(frozen=True)
class SupIntersection:
    pass


@dataclass(frozen=True)
class FixedT0:
    t0: float = 1.0


@dataclass(frozen=True)
class IntegralWeighted:
    pass


Method = Union[SupIntersection, FixedT0, IntegralWeighted]


def method_name(method: Method) -> str:
    if isinstance(method, FixedT0):
        return f"FixedT0({method.t0!r})"
    return type(method).__name__


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    method: Method
    empty: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lower", float(self.lower))
        object.__setattr__(self, "upper", float(self.upper))

    def __contains__(self, mu) -> bool:
        return (not self.empty) and self.lower <= mu <= self.upper

    @property
    def length(self) -> float:
        return 0.0 if self.empty else self.upper - self.lower


def faci_sup(sample, alpha: float) -> ConfidenceInterval:
    """Intersection over k of the intervals ``(S_k -+ H) / k``.

    An empty intersection is reported through ``empty=True``.
    """
    z = as_sample(sample)
    a = functional_limit_quantile(SupAbs(), alpha)
    half = a * student_scale(z)
    lo, hi = kernels.sup_intersection(kernels.comp_cumsum(z), half)
    if lo > hi:
        return ConfidenceInterval(lo, hi, 1.0 - alpha, SupIntersection(), empty=True)
    return ConfidenceInterval(lo, hi, 1.0 - alpha, SupIntersection())


def faci_t0(sample, t0: float, alpha: float) -> ConfidenceInterval:
    """Interval from the Student process evaluated at a fixed time t0.

    Raises ZeroTimeIndex when the empirical time function is 0 at t0.
    """
    z = as_sample(sample)
    q = functional_limit_quantile(Endpoint(t0), alpha)
    half = q * student_scale(z)
    k = kernels.search_index(centered_cumulative(z), float(t0))
    if k == 0:
        raise ZeroTimeIndex(
            f"empirical time function is 0 at t0={t0!r}; increase t0 or n"
        )
    s_k = kernels.comp_cumsum(z)[k]
    return ConfidenceInterval(
        (s_k - half) / k, (s_k + half) / k, 1.0 - alpha, FixedT0(t0)
    )


def faci_integral(sample, alpha: float) -> ConfidenceInterval:
    """Interval from the integral of the Student process over [0, 1]."""
    z = as_sample(sample)
    q = functional_limit_quantile(Integral(), alpha)
    half = q * student_scale(z)
    cum = centered_cumulative(z)
    n = z.shape[0]
    d = n * z - kernels.comp_cumsum(z)[-1]
    c_num, d_num = kernels.weighted_partial(d * d, kernels.comp_cumsum(z))
    if not d_num > 0:
        raise DegenerateWeightedCenter(
            "centered squares of observations 2..n are all zero"
        )
    # the nu normalization cancels; only the ratio C / D matters
    center = c_num / d_num
    width = half * cum[-1] / d_num
    return ConfidenceInterval(
        center - width, center + width, 1.0 - alpha, IntegralWeighted()
    )


def build_interval(sample, method: Method, alpha: float) -> ConfidenceInterval:
    if isinstance(method, SupIntersection):
        return faci_sup(sample, alpha)
    if isinstance(method, FixedT0):
        return faci_t0(sample, method.t0, alpha)
    if isinstance(method, IntegralWeighted):
        return faci_integral(sample, alpha)
    raise TypeError(f"unknown method {method!r}")
