"""Scenario files for the command line interface.

A scenario is a JSON document that pins down the metric space, the named
input vectors and any extra parameters for one subcommand run:

.. code-block:: json

    {
      "name": "golden-link",
      "command": "link",
      "metric": {"dim": 4, "signature": "lorentzian"},
      "vectors": {"R": [1, 0, 0, 0], "S": [1.25, 0.75, 0, 0]},
      "params": {}
    }

``metric`` accepts either ``{"dim", "signature"}`` with signature one of
``euclidean``, ``lorentzian`` or ``split`` (diagonal metrics, time-like axes
first), or ``{"dim", "matrix"}`` with an explicit symmetric matrix given as
nested rows or as a flat row-major list.  The ``command`` field names the
subcommand the scenario is written for; running it under a different
subcommand is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioError
from .metric_core import DEFAULT_TOL_ABS, DEFAULT_TOL_REL, MetricSpace
from .sampling import SIGNATURES, metric_for

__all__ = ["Scenario", "load", "from_dict"]

_COMMANDS = ("link", "link-scan", "check", "boost", "transform", "add",
             "accel", "groupoid")


@dataclass(frozen=True)
class Scenario:
    """Parsed scenario: metric description, named vectors, free parameters."""

    name: str
    command: str
    metric: dict
    vectors: dict[str, tuple[float, ...]] = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def build_space(self, tol_rel: float = DEFAULT_TOL_REL,
                    tol_abs: float = DEFAULT_TOL_ABS) -> MetricSpace:
        dim = self.metric["dim"]
        if "matrix" in self.metric:
            return MetricSpace.from_metric(self.metric["matrix"],
                                           tol_rel=tol_rel, tol_abs=tol_abs)
        return MetricSpace.from_metric(metric_for(dim, self.metric["signature"]),
                                       tol_rel=tol_rel, tol_abs=tol_abs)

    def vector(self, space: MetricSpace, role: str):
        if role not in self.vectors:
            raise ScenarioError(f"scenario {self.name!r} defines no vector "
                                f"{role!r} (has {sorted(self.vectors)})")
        return space.vector(self.vectors[role])

    def has_vector(self, role: str) -> bool:
        return role in self.vectors

    def param(self, key: str, default=None):
        return self.params.get(key, default)


def _check_metric(metric) -> dict:
    if not isinstance(metric, dict):
        raise ScenarioError("'metric' must be an object")
    if "dim" not in metric:
        raise ScenarioError("'metric' needs a 'dim' entry")
    try:
        dim = int(metric["dim"])
    except (TypeError, ValueError):
        raise ScenarioError("'metric.dim' must be an integer") from None
    if dim < 2:
        raise ScenarioError("'metric.dim' must be at least 2")
    out = {"dim": dim}
    if "matrix" in metric:
        arr = np.asarray(metric["matrix"], dtype=float)
        if arr.size != dim * dim:
            raise ScenarioError(
                f"'metric.matrix' has {arr.size} entries, expected {dim * dim}")
        out["matrix"] = arr.reshape(dim, dim).tolist()
    elif "signature" in metric:
        if metric["signature"] not in SIGNATURES:
            raise ScenarioError(
                f"unknown signature {metric['signature']!r}; "
                f"expected one of {SIGNATURES}")
        out["signature"] = metric["signature"]
    else:
        raise ScenarioError("'metric' needs either 'signature' or 'matrix'")
    return out


def from_dict(data: dict) -> Scenario:
    """Validate a scenario dictionary and normalise its fields."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario document must be a JSON object")
    command = data.get("command")
    if command not in _COMMANDS:
        raise ScenarioError(f"scenario 'command' must be one of {_COMMANDS}, "
                            f"got {command!r}")
    metric = _check_metric(data.get("metric"))
    dim = metric["dim"]
    vectors = {}
    for name, comps in (data.get("vectors") or {}).items():
        arr = np.asarray(comps, dtype=float)
        if arr.ndim != 1 or arr.size != dim:
            raise ScenarioError(
                f"vector {name!r} must have {dim} components, got {comps!r}")
        if not np.all(np.isfinite(arr)):
            raise ScenarioError(f"vector {name!r} has non-finite components")
        vectors[str(name)] = tuple(float(x) for x in arr)
    params = data.get("params") or {}
    if not isinstance(params, dict):
        raise ScenarioError("'params' must be an object")
    return Scenario(name=str(data.get("name", "unnamed")), command=command,
                    metric=metric, vectors=vectors, params=dict(params))


def load(path: str) -> Scenario:
    """Load and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}") \
            from None
    return from_dict(data)
