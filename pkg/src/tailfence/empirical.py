"""Order statistics, empirical quartiles and fences, outlier counting.

Empirical quantiles interpolate linearly between neighbouring order
statistics at position ``h = (n + 1) p``::

    Q(p) = X[k] + (h - k) * (X[k+1] - X[k]),    k = floor(h)

which is valid for ``1/(n+1) <= p <= n/(n+1)``.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import DomainError, InsufficientDataError, SampleFormatError
from .measures import DEFAULT_CONSTANTS, BoxPlotSummary, FenceConstants

__all__ = [
    "Sample",
    "OutlierCounts",
    "empirical_quantile",
    "empirical_boxplot",
    "count_outliers",
    "read_sample",
]


class Sample:
    """Immutable collection of finite observations with its order statistics."""

    __slots__ = ("_values", "_sorted")

    def __init__(self, values: Iterable[float]):
        arr = np.array(values, dtype=np.float64).ravel()
        if arr.size == 0:
            raise InsufficientDataError("sample is empty")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise DomainError(f"sample contains a non-finite value at position {bad}")
        arr.flags.writeable = False
        srt = np.sort(arr, kind="stable")
        srt.flags.writeable = False
        self._values = arr
        self._sorted = srt

    @classmethod
    def _from_sorted(cls, srt: np.ndarray) -> "Sample":
        # trusted fast path for already sorted, finite arrays
        obj = cls.__new__(cls)
        srt = np.asarray(srt, dtype=np.float64)
        srt.flags.writeable = False
        obj._values = srt
        obj._sorted = srt
        return obj

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def sorted_view(self) -> np.ndarray:
        return self._sorted

    @property
    def n(self) -> int:
        return int(self._sorted.size)

    def __len__(self) -> int:
        return self.n

    def order_statistic(self, i: int) -> float:
        """``X_(i,n)``, 1-based."""
        if not 1 <= i <= self.n:
            raise DomainError(f"order statistic index {i} outside 1..{self.n}")
        return float(self._sorted[i - 1])

    def shifted(self, c: float) -> "Sample":
        return Sample(self._values + c)

    def scaled(self, s: float) -> "Sample":
        return Sample(self._values * s)

    def __repr__(self) -> str:
        return f"Sample(n={self.n})"


@dataclass(frozen=True)
class OutlierCounts:
    mild_left: int
    extreme_left: int
    mild_right: int
    extreme_right: int
    n: int

    @property
    def freq_mild_left(self) -> float:
        return self.mild_left / self.n

    @property
    def freq_extreme_left(self) -> float:
        return self.extreme_left / self.n

    @property
    def freq_mild_right(self) -> float:
        return self.mild_right / self.n

    @property
    def freq_extreme_right(self) -> float:
        return self.extreme_right / self.n

    @property
    def total(self) -> int:
        return self.mild_left + self.extreme_left + self.mild_right + self.extreme_right

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "mild_left": self.mild_left,
            "extreme_left": self.extreme_left,
            "mild_right": self.mild_right,
            "extreme_right": self.extreme_right,
            "p_mL": self.freq_mild_left,
            "p_eL": self.freq_extreme_left,
            "p_mR": self.freq_mild_right,
            "p_eR": self.freq_extreme_right,
            "p_m2": (self.mild_left + self.mild_right) / self.n,
            "p_e2": (self.extreme_left + self.extreme_right) / self.n,
        }


def _quantile_sorted(xs: np.ndarray, p: float) -> float:
    n = xs.size
    h = (n + 1) * p
    k = math.floor(h)
    frac = h - k
    lo = float(xs[k - 1])
    if frac == 0.0 or k >= n:
        return lo
    return lo + frac * (float(xs[k]) - lo)


def empirical_quantile(sample: Sample, p: float) -> float:
    """Interpolated empirical ``p``-quantile; exact order statistic when ``(n+1)p`` is integral."""
    n = sample.n
    lo, hi = 1.0 / (n + 1), n / (n + 1)
    if not lo <= p <= hi:
        raise DomainError(f"p={p!r} outside the admissible interval [1/(n+1), n/(n+1)] = [{lo:.6g}, {hi:.6g}]")
    return _quantile_sorted(sample.sorted_view, p)


def empirical_boxplot(sample: Sample, constants: FenceConstants = DEFAULT_CONSTANTS) -> BoxPlotSummary:
    if sample.n < 3:
        raise InsufficientDataError(f"box-plot needs at least 3 observations, got {sample.n}")
    xs = sample.sorted_view
    return BoxPlotSummary.from_quartiles(
        _quantile_sorted(xs, 0.25), _quantile_sorted(xs, 0.5), _quantile_sorted(xs, 0.75), constants
    )


def count_outliers(sample: Sample, summary: BoxPlotSummary) -> OutlierCounts:
    """Count observations beyond the fences of ``summary``.

    Values sitting exactly on a fence are classified inward: a value equal
    to an inner fence is not an outlier, one equal to an outer fence is mild.
    """
    xs = sample.sorted_view
    below_outer = int(np.searchsorted(xs, summary.outer_left, side="left"))
    below_inner = int(np.searchsorted(xs, summary.inner_left, side="left"))
    upto_inner = int(np.searchsorted(xs, summary.inner_right, side="right"))
    upto_outer = int(np.searchsorted(xs, summary.outer_right, side="right"))
    n = xs.size
    return OutlierCounts(
        mild_left=below_inner - below_outer,
        extreme_left=below_outer,
        mild_right=upto_outer - upto_inner,
        extreme_right=n - upto_outer,
        n=n,
    )


def _parse_float(text: str, lineno: int) -> float:
    try:
        v = float(text)
    except ValueError:
        raise SampleFormatError(f"line {lineno}: not a number: {text.strip()!r}") from None
    if not math.isfinite(v):
        raise SampleFormatError(f"line {lineno}: non-finite value {text.strip()!r}")
    return v


def read_sample(source: str | os.PathLike | TextIO, column: str | None = None) -> Sample:
    """Read a sample from a path or open text stream.

    Without ``column`` every non-blank line holds one number (lines starting
    with ``#`` are skipped).  With ``column`` the input is CSV with a header
    row and that column is used.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as fh:
            return read_sample(fh, column)
    text = source.read()
    values: list[float] = []
    if column is None:
        for lineno, line in enumerate(io.StringIO(text), start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            values.append(_parse_float(s, lineno))
    else:
        reader = csv.reader(io.StringIO(text))
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SampleFormatError("empty input; expected a CSV header row") from None
        if column not in header:
            raise SampleFormatError(f"line 1: column {column!r} not found in header {header}")
        idx = header.index(column)
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if idx >= len(row):
                raise SampleFormatError(f"line {lineno}: missing column {column!r}")
            values.append(_parse_float(row[idx], lineno))
    if not values:
        raise SampleFormatError("input contains no observations")
    return Sample(values)
