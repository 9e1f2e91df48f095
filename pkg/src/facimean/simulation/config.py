"""Simulation configs and reports, with their JSON schema (version 1)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import ConfigError
from ..faci_builder import FixedT0, IntegralWeighted, SupIntersection, method_name
from ..wiener_limits import Endpoint, Integral, SupAbs, functional_name
from .designs import design_from_dict, design_to_dict

SCHEMA_VERSION = 1

_METHODS = {"SupIntersection": SupIntersection, "FixedT0": FixedT0,
            "IntegralWeighted": IntegralWeighted}
_KINDS = {"SupAbs": SupAbs, "Endpoint": Endpoint, "Integral": Integral}


def _tagged_to_dict(obj):
    d = {"type": type(obj).__name__}
    if hasattr(obj, "t0"):
        d["t0"] = obj.t0
    return d


def _tagged_from_dict(data, table, where):
    if not isinstance(data, dict) or data.get("type") not in table:
        raise ConfigError(where, f"expected one of {sorted(table)}, got {data!r}")
    cls = table[data["type"]]
    params = {k: v for k, v in data.items() if k != "type"}
    extra = sorted(set(params) - set(cls.__dataclass_fields__))
    if extra:
        raise ConfigError(f"{where}.{extra[0]}", f"{data['type']} takes no such field")
    if "t0" in params:
        t0 = params["t0"]
        if isinstance(t0, bool) or not isinstance(t0, (int, float)) or not 0 < t0 <= 1:
            raise ConfigError(f"{where}.t0", f"must lie in (0, 1], got {t0!r}")
        return cls(float(t0))
    return cls()


def _int_field(data, name, minimum):
    value = data[name]
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(name, f"must be an integer >= {minimum}, got {value!r}")
    return value


@dataclass(frozen=True)
class SimulationConfig:
    design: object
    replications: int
    seed: int
    n: Optional[int] = None
    alpha: float = 0.05
    methods: tuple = (SupIntersection(), FixedT0(1.0), IntegralWeighted())
    kinds: tuple = (SupAbs(), Endpoint(1.0), Integral())
    n_grid: tuple = ()

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "design": design_to_dict(self.design),
            "replications": self.replications,
            "seed": self.seed,
            "alpha": self.alpha,
            "methods": [_tagged_to_dict(m) for m in self.methods],
            "kinds": [_tagged_to_dict(k) for k in self.kinds],
        }
        if self.n is not None:
            d["n"] = self.n
        if self.n_grid:
            d["n_grid"] = list(self.n_grid)
        return d

    @classmethod
    def from_dict(cls, data: dict, experiment: str = "coverage") -> "SimulationConfig":
        """Validate ``data``; errors carry the offending field name."""
        if not isinstance(data, dict):
            raise ConfigError("config", "must be a JSON object")
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError("schema_version", f"unsupported version {version!r}")
        required = ["design", "replications", "seed"]
        if experiment == "discrepancy":
            required.append("n_grid")
        else:
            required.append("n")
        if experiment == "coverage":
            required.append("alpha")
        for name in required:
            if name not in data:
                raise ConfigError(name, "missing required field")
        allowed = {"schema_version", "design", "replications", "seed", "n",
                   "alpha", "methods", "kinds", "n_grid"}
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigError(unknown[0], "unknown field")

        design = design_from_dict(data["design"])
        replications = _int_field(data, "replications", 1)
        seed = data["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or not -2**63 <= seed < 2**64:
            raise ConfigError("seed", f"must be a 64-bit integer, got {seed!r}")
        n = _int_field(data, "n", 2) if "n" in data else None
        alpha = data.get("alpha", 0.05)
        if isinstance(alpha, bool) or not isinstance(alpha, (int, float)) or not 0 < alpha < 1:
            raise ConfigError("alpha", f"must lie in (0, 1), got {alpha!r}")
        kw = {}
        if "methods" in data:
            if not isinstance(data["methods"], list) or not data["methods"]:
                raise ConfigError("methods", "must be a non-empty list")
            kw["methods"] = tuple(
                _tagged_from_dict(m, _METHODS, f"methods[{i}]")
                for i, m in enumerate(data["methods"])
            )
        if "kinds" in data:
            if not isinstance(data["kinds"], list) or not data["kinds"]:
                raise ConfigError("kinds", "must be a non-empty list")
            kw["kinds"] = tuple(
                _tagged_from_dict(k, _KINDS, f"kinds[{i}]")
                for i, k in enumerate(data["kinds"])
            )
        if "n_grid" in data:
            grid = data["n_grid"]
            if (not isinstance(grid, list) or not grid
                    or any(isinstance(v, bool) or not isinstance(v, int) or v < 2 for v in grid)):
                raise ConfigError("n_grid", "must be a non-empty list of integers >= 2")
            kw["n_grid"] = tuple(grid)
        return cls(design=design, replications=replications, seed=seed, n=n,
                   alpha=float(alpha), **kw)


def load_config(path, experiment="coverage") -> SimulationConfig:
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"{path}: invalid JSON ({exc})") from None
    return SimulationConfig.from_dict(data, experiment)


def _clean(x):
    # JSON has no NaN; undefined statistics are written as null
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


@dataclass
class MethodCoverage:
    method: str
    empirical_coverage: float
    mean_length: Optional[float]
    median_length: Optional[float]
    covered: int
    not_covered: int
    empty_count: int
    error_count: int


@dataclass
class CoverageReport:
    config: dict
    methods: list
    wall_time_ms: Optional[float] = None
    report_type: str = field(default="coverage", init=False)

    def by_method(self, name) -> MethodCoverage:
        for m in self.methods:
            if m.method == name:
                return m
        raise KeyError(name)


@dataclass
class KindFit:
    kind: str
    ks_distance: float
    sample_count: int
    reference: str
    error_count: int = 0


@dataclass
class FitReport:
    config: dict
    kinds: list
    wall_time_ms: Optional[float] = None
    report_type: str = field(default="fit", init=False)

    def by_kind(self, name) -> KindFit:
        for k in self.kinds:
            if k.kind == name:
                return k
        raise KeyError(name)


@dataclass
class DiscrepancyRow:
    n: int
    median_sup_distance: float
    replications: int


@dataclass
class DiscrepancyReport:
    config: dict
    rows: list
    wall_time_ms: Optional[float] = None
    report_type: str = field(default="discrepancy", init=False)


_ROW_TYPES = {"coverage": ("methods", MethodCoverage, CoverageReport),
              "fit": ("kinds", KindFit, FitReport),
              "discrepancy": ("rows", DiscrepancyRow, DiscrepancyReport)}


def report_to_dict(report, include_timing=False) -> dict:
    key, _, _ = _ROW_TYPES[report.report_type]
    d = {
        "schema_version": SCHEMA_VERSION,
        "report_type": report.report_type,
        "seed": report.config.get("seed"),
        "config": report.config,
        key: [{k: _clean(v) for k, v in vars(row).items()} for row in getattr(report, key)],
    }
    if include_timing:
        d["wall_time_ms"] = report.wall_time_ms
    return d


def report_from_dict(data: dict):
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"unsupported {data.get('schema_version')!r}")
    kind = data.get("report_type")
    if kind not in _ROW_TYPES:
        raise ConfigError("report_type", f"unknown {kind!r}")
    key, row_cls, report_cls = _ROW_TYPES[kind]
    rows = [row_cls(**row) for row in data[key]]
    return report_cls(data["config"], rows, data.get("wall_time_ms"))


def dumps_report(report, include_timing=False) -> str:
    return json.dumps(report_to_dict(report, include_timing), indent=2, sort_keys=True,
                      allow_nan=False) + "\n"


def persist_report(report, path, include_timing=False) -> None:
    """Write ``report`` as JSON.

    Wall time is left out unless ``include_timing`` is set, so that reruns
    with the same seed produce byte-identical files.
    """
    text = dumps_report(report, include_timing)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc


def read_report(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read report {path}: {exc.strerror or exc}") from exc
    return report_from_dict(json.loads(text))


__all__ = [
    "SimulationConfig", "load_config", "CoverageReport", "MethodCoverage",
    "FitReport", "KindFit", "DiscrepancyReport", "DiscrepancyRow",
    "persist_report", "read_report", "dumps_report", "method_name", "functional_name",
]
