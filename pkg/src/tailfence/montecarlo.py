"""Replication studies for the tail-index estimators.

For every cell ``(distribution, n)`` the study draws ``m`` samples of size
``n``, applies the selected estimators and reports the mean and sample
standard deviation of the estimates that were defined.  Failed estimates
are excluded and tallied by reason.

Replication ``j`` of cell ``i`` draws from its own generator seeded with
``SeedSequence([seed, i, j])``, so a report does not depend on how the
replications were scheduled across worker processes.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .distributions import Distribution, parse_distribution
from .empirical import Sample
from .errors import DomainError, EstimatorUndefined
from .estimators import ALL_METHODS, Method, _DISPATCH, parse_methods, sample_statistics

__all__ = [
    "Cell",
    "StudyConfig",
    "MethodSummary",
    "CellReport",
    "StudyReport",
    "run_study",
    "best_method",
    "load_study",
]

VALIDITY_FLOOR = 0.9


@dataclass(frozen=True)
class Cell:
    model: Distribution
    n: int

    @property
    def label(self) -> str:
        return self.model.spec()


@dataclass(frozen=True)
class StudyConfig:
    cells: tuple[Cell, ...]
    replications: int
    seed: int
    methods: tuple[Method, ...] = ALL_METHODS

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "methods", parse_methods([Method(m).value for m in self.methods]))
        if not self.cells:
            raise DomainError("study needs at least one cell")
        for c in self.cells:
            if c.n < 3:
                raise DomainError(f"cell {c.label}: sample size must be at least 3, got {c.n}")
        if self.replications < 2:
            raise DomainError(f"replications must be at least 2, got {self.replications}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StudyConfig":
        try:
            cells = [Cell(parse_distribution(c["dist"]), int(c["n"])) for c in data["cells"]]
            return cls(
                cells=tuple(cells),
                replications=int(data["m"]),
                seed=int(data.get("seed", 0)),
                methods=parse_methods(data.get("methods", ["all"])),
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed study definition: missing or invalid field {exc}") from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "cells": [{"dist": c.label, "n": c.n} for c in self.cells],
            "m": self.replications,
            "seed": self.seed,
            "methods": [m.value for m in self.methods],
        }


def load_study(path: str | os.PathLike) -> StudyConfig:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: invalid JSON: {exc}") from None
    return StudyConfig.from_dict(data)


@dataclass
class MethodSummary:
    method: Method
    mean: float | None
    sd: float | None
    valid_count: int
    failure_count: int
    failures: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "mean": self.mean,
            "sd": self.sd,
            "valid_count": self.valid_count,
            "failure_count": self.failure_count,
            "failures": dict(sorted(self.failures.items())),
            "reason": None if self.mean is not None else "no valid replications",
        }


@dataclass
class CellReport:
    dist: str
    n: int
    tail_index: float | None
    methods: dict[Method, MethodSummary]

    def as_dict(self, replications: int) -> dict[str, Any]:
        best = None
        if self.tail_index is not None:
            best = _best_of(self, self.tail_index, replications)
        return {
            "dist": self.dist,
            "n": self.n,
            "tail_index": self.tail_index,
            "best": best.value if best else None,
            "methods": {m.value: s.as_dict() for m, s in self.methods.items()},
        }


@dataclass
class StudyReport:
    config: StudyConfig
    cells: list[CellReport]

    def cell(self, key: int | tuple[str, int]) -> CellReport:
        """Look a cell up by position or by ``(dist spec, n)``."""
        if isinstance(key, int):
            if 0 <= key < len(self.cells):
                return self.cells[key]
        else:
            dist, n = key
            spec = parse_distribution(dist).spec() if isinstance(dist, str) else dist.spec()
            for c in self.cells:
                if c.dist == spec and c.n == n:
                    return c
        raise LookupError(f"no such cell in report: {key!r}")

    def to_dict(self) -> dict[str, Any]:
        m = self.config.replications
        return {"config": self.config.to_dict(), "cells": [c.as_dict(m) for c in self.cells]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _replicate(model: Distribution, n: int, seed: int, cell_index: int, j: int, methods: Sequence[Method]):
    rng = np.random.default_rng(np.random.SeedSequence([seed, cell_index, j]))
    xs = np.sort(np.asarray(model.sample(rng, n), dtype=np.float64))
    stats = sample_statistics(Sample._from_sorted(xs))
    row, reasons = [], []
    for k, m in enumerate(methods):
        try:
            row.append(_DISPATCH[m](stats))
        except EstimatorUndefined as exc:
            row.append(math.nan)
            reasons.append((k, exc.reason))
    return row, reasons


def _run_chunk(args):
    model, n, seed, cell_index, start, stop, methods = args
    values = np.empty((stop - start, len(methods)), dtype=np.float64)
    reasons: list[tuple[int, int, str]] = []
    for j in range(start, stop):
        row, rs = _replicate(model, n, seed, cell_index, j, methods)
        values[j - start] = row
        reasons.extend((j, k, r) for k, r in rs)
    return cell_index, start, values, reasons


def _summarize(method: Method, column: np.ndarray, reasons: list[str]) -> MethodSummary:
    valid = column[~np.isnan(column)]
    nv = int(valid.size)
    mean = float(np.mean(valid)) if nv else None
    sd = float(np.std(valid, ddof=1)) if nv >= 2 else None
    return MethodSummary(method, mean, sd, nv, int(column.size - nv), dict(Counter(reasons)))


def run_study(config: StudyConfig, workers: int = 1) -> StudyReport:
    """Execute every cell of ``config``; ``workers > 1`` spreads replications over processes."""
    m = config.replications
    methods = config.methods
    if workers < 1:
        raise DomainError(f"workers must be positive, got {workers}")
    chunk = max(1, math.ceil(m / (workers * 4))) if workers > 1 else m
    jobs = [
        (cell.model, cell.n, config.seed, i, start, min(m, start + chunk), methods)
        for i, cell in enumerate(config.cells)
        for start in range(0, m, chunk)
    ]
    if workers == 1:
        results = map(_run_chunk, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_run_chunk, jobs)

    values = [np.empty((m, len(methods)), dtype=np.float64) for _ in config.cells]
    reasons: list[list[tuple[int, int, str]]] = [[] for _ in config.cells]
    try:
        for cell_index, start, vals, rs in results:
            values[cell_index][start : start + vals.shape[0]] = vals
            reasons[cell_index].extend(rs)
    finally:
        if workers > 1:
            pool.shutdown()

    cells = []
    for i, cell in enumerate(config.cells):
        by_method: dict[Method, MethodSummary] = {}
        for k, meth in enumerate(methods):
            rs = [r for (_, kk, r) in sorted(reasons[i]) if kk == k]
            by_method[meth] = _summarize(meth, values[i][:, k], rs)
        tail = getattr(cell.model, "tail_index", None)
        cells.append(CellReport(cell.label, cell.n, tail, by_method))
    return StudyReport(config, cells)


def _best_of(cell: CellReport, true_alpha: float, replications: int) -> Method | None:
    floor = VALIDITY_FLOOR * replications
    eligible = [s for s in cell.methods.values() if s.mean is not None and s.valid_count >= floor]
    if not eligible:
        return None
    best = min(eligible, key=lambda s: (abs(s.mean - true_alpha), s.sd if s.sd is not None else math.inf))
    return best.method


def best_method(report: StudyReport, cell: int | tuple[str, int], true_alpha: float | None = None) -> Method | None:
    """Method whose mean lies closest to ``true_alpha``, among those defined in >= 90% of replications.

    Ties go to the smaller standard deviation.  ``true_alpha`` defaults to the
    cell distribution's tail index.  Returns ``None`` when no method qualifies.
    """
    c = report.cell(cell)
    if true_alpha is None:
        if c.tail_index is None:
            raise DomainError(f"cell {c.dist} has no tail index; pass true_alpha explicitly")
        true_alpha = c.tail_index
    return _best_of(c, true_alpha, report.config.replications)
