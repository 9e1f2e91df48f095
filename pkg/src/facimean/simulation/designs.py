"""Data-generating designs with a known common mean.

Each design draws n independent observations centered (in mean, or in
symmetry for the infinite-variance ones) at ``mu``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import integrate, stats

from ..errors import ConfigError, UnsupportedDesign


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ConfigError(name, f"must be a positive real, got {value!r}")


@dataclass(frozen=True)
class IidNormal:
    mu: float = 0.0
    sigma: float = 1.0

    lindeberg_ok = True
    symmetric_ok = True
    negative_control = False

    def __post_init__(self):
        _positive("sigma", self.sigma)

    def sample(self, rng, n):
        return self.mu + self.sigma * rng.standard_normal(n)

    def variances(self, n):
        return np.full(n, self.sigma ** 2)


@dataclass(frozen=True)
class HeteroNormal:
    """Normal observations whose standard deviations cycle through a pattern."""

    mu: float = 0.0
    sigma_pattern: tuple = (1.0,)

    lindeberg_ok = True
    symmetric_ok = True
    negative_control = False

    def __post_init__(self):
        pattern = tuple(float(s) for s in self.sigma_pattern)
        if not pattern:
            raise ConfigError("sigma_pattern", "must be non-empty")
        for s in pattern:
            _positive("sigma_pattern", s)
        object.__setattr__(self, "sigma_pattern", pattern)

    def sds(self, n):
        return np.resize(np.asarray(self.sigma_pattern), n)

    def sample(self, rng, n):
        return self.mu + self.sds(n) * rng.standard_normal(n)

    def variances(self, n):
        return self.sds(n) ** 2


@dataclass(frozen=True)
class IidUniform:
    mu: float = 0.0
    half_width: float = 1.0

    lindeberg_ok = True
    symmetric_ok = True
    negative_control = False

    def __post_init__(self):
        _positive("half_width", self.half_width)

    def sample(self, rng, n):
        return self.mu + rng.uniform(-self.half_width, self.half_width, n)

    def variances(self, n):
        return np.full(n, self.half_width ** 2 / 3.0)


@dataclass(frozen=True)
class SymmetricTwoPoint:
    mu: float = 0.0
    magnitude: float = 1.0

    lindeberg_ok = True
    symmetric_ok = True
    negative_control = False

    def __post_init__(self):
        _positive("magnitude", self.magnitude)

    def sample(self, rng, n):
        signs = 2.0 * rng.integers(0, 2, n) - 1.0
        return self.mu + self.magnitude * signs

    def variances(self, n):
        return np.full(n, self.magnitude ** 2)


@dataclass(frozen=True)
class SymmetricT:
    """Student t noise; variance is infinite for df <= 2."""

    mu: float = 0.0
    degrees_of_freedom: float = 2.0

    lindeberg_ok = False
    symmetric_ok = True
    negative_control = False

    def __post_init__(self):
        _positive("degrees_of_freedom", self.degrees_of_freedom)

    def sample(self, rng, n):
        return self.mu + rng.standard_t(self.degrees_of_freedom, n)

    def variances(self, n):
        df = self.degrees_of_freedom
        if df <= 2:
            raise UnsupportedDesign(f"t with df={df} has infinite variance")
        return np.full(n, df / (df - 2.0))


@dataclass(frozen=True)
class Cauchy:
    mu: float = 0.0
    scale: float = 1.0

    lindeberg_ok = False
    symmetric_ok = True
    negative_control = True

    def __post_init__(self):
        _positive("scale", self.scale)

    def sample(self, rng, n):
        return self.mu + self.scale * rng.standard_cauchy(n)

    def variances(self, n):
        raise UnsupportedDesign("Cauchy observations have no variance")


DESIGNS = {
    cls.__name__: cls
    for cls in (IidNormal, HeteroNormal, IidUniform, SymmetricTwoPoint, SymmetricT, Cauchy)
}


def design_to_dict(design) -> dict:
    d = asdict(design)
    if "sigma_pattern" in d:
        d["sigma_pattern"] = list(d["sigma_pattern"])
    return {"type": type(design).__name__, **d}


def design_from_dict(data) -> object:
    if not isinstance(data, dict):
        raise ConfigError("design", "must be an object")
    kind = data.get("type")
    if kind not in DESIGNS:
        raise ConfigError("design.type", f"unknown design {kind!r}")
    params = {k: v for k, v in data.items() if k != "type"}
    cls = DESIGNS[kind]
    known = set(cls.__dataclass_fields__)
    extra = set(params) - known
    if extra:
        raise ConfigError(f"design.{sorted(extra)[0]}", "unexpected field")
    if "sigma_pattern" in params and not isinstance(params["sigma_pattern"], list):
        raise ConfigError("design.sigma_pattern", "must be a list")
    try:
        return cls(**params)
    except ConfigError as exc:
        raise ConfigError(f"design.{exc.field}", str(exc).split(": ", 1)[-1]) from None


def generate_sample(design, n: int, rng: np.random.Generator) -> np.ndarray:
    """n independent draws from ``design``."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.ascontiguousarray(design.sample(rng, n), dtype=np.float64)


def _normal_tail_second_moment(u):
    # E[X^2 1{|X| >= u}] for X ~ N(0, 1)
    phi = math.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi)
    return 2.0 * (u * phi + 0.5 * math.erfc(u / math.sqrt(2.0)))


def _t_tail_second_moment(c, df):
    val, _ = integrate.quad(
        lambda x: x * x * stats.t.pdf(x, df), c, np.inf,
        epsabs=1e-12, epsrel=1e-10, limit=200,
    )
    return 2.0 * val


def truncated_second_moment(design, index_variance, c) -> float:
    """E[(Z_i - mu)^2 1{|Z_i - mu| >= c}] for one component of ``design``."""
    if isinstance(design, (IidNormal, HeteroNormal)):
        sigma = math.sqrt(index_variance)
        return index_variance * _normal_tail_second_moment(c / sigma)
    if isinstance(design, IidUniform):
        h = design.half_width
        return (h ** 3 - c ** 3) / (3.0 * h) if c < h else 0.0
    if isinstance(design, SymmetricTwoPoint):
        m = design.magnitude
        return m * m if m >= c else 0.0
    if isinstance(design, SymmetricT):
        return _t_tail_second_moment(c, design.degrees_of_freedom)
    raise UnsupportedDesign(f"no Lindeberg profile for {type(design).__name__}")


def lindeberg_profile(design, n: int, epsilon: float) -> float:
    """s_n^-2 sum_i E[(Z_i - mu)^2 1{|Z_i - mu| >= epsilon s_n}]."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    var = design.variances(n)
    s2 = math.fsum(var)
    c = epsilon * math.sqrt(s2)
    # components with equal variance share a term
    values, counts = np.unique(var, return_counts=True)
    total = math.fsum(
        int(k) * truncated_second_moment(design, float(v), c)
        for v, k in zip(values, counts)
    )
    return total / s2


def raikov_diagnostic(sample, profile) -> float:
    """s_n^-2 sum Z_i^2 for a sample already centered at its mean."""
    z = np.asarray(sample, dtype=np.float64)
    s2 = np.asarray(getattr(profile, "sigma2", profile), dtype=np.float64)
    if z.shape != s2.shape:
        raise ValueError(
            f"sample has length {z.shape[0]}, variance profile {s2.shape[0]}"
        )
    return math.fsum(z * z) / math.fsum(s2)
