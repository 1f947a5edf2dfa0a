"""Match an observed sample against the catalog by its outlier frequencies.

The procedure:

1. empirical box-plot (plus a scale-free comparison with each candidate's
   theoretical box-plot, reported but never used for ranking);
2. relative frequencies of mild/extreme, left/right outliers;
3. and 4. Wilson score intervals for those frequencies; a catalog entry is
   compatible on a measure when its theoretical value lies in the interval;
5. if a shortlisted candidate has a heavy right tail, all tail-index
   estimators are run on the sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from statistics import NormalDist
from typing import Sequence

from .empirical import OutlierCounts, Sample, count_outliers, empirical_boxplot
from .errors import DomainError, EstimatorUndefined
from .estimators import EstimateResult, Method, estimate_all
from .measures import (
    DEFAULT_CONSTANTS,
    BoxPlotSummary,
    CatalogEntry,
    FenceConstants,
    catalog,
    theoretical_boxplot,
)

__all__ = [
    "ProportionCI",
    "CandidateMatch",
    "DiagnosisReport",
    "proportion_ci",
    "diagnose",
    "ONE_SIDED",
    "HEAVY_RIGHT_THRESHOLD",
]

ONE_SIDED = ("mild_left", "extreme_left", "mild_right", "extreme_right")
HEAVY_RIGHT_THRESHOLD = 0.02


@dataclass(frozen=True)
class ProportionCI:
    point: float
    lower: float
    upper: float
    confidence: float
    n: int

    def __contains__(self, p: float) -> bool:
        return self.lower <= p <= self.upper

    def as_dict(self) -> dict:
        return {"point": self.point, "lower": self.lower, "upper": self.upper, "confidence": self.confidence, "n": self.n}


def proportion_ci(successes: int, n: int, confidence: float = 0.95) -> ProportionCI:
    """Wilson score interval for a binomial proportion."""
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    if not 0 <= successes <= n:
        raise DomainError(f"successes must lie in 0..{n}, got {successes}")
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence}")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    p = successes / n
    z2n = z * z / n
    denom = 1.0 + z2n
    center = (p + z2n / 2.0) / denom
    half = z / denom * math.sqrt(p * (1.0 - p) / n + z2n / (4.0 * n))
    lower = 0.0 if successes == 0 else max(0.0, min(p, center - half))
    upper = 1.0 if successes == n else min(1.0, max(p, center + half))
    return ProportionCI(p, lower, upper, confidence, n)


def _standardized_quartiles(box: BoxPlotSummary) -> tuple[float, float] | None:
    if box.iqr <= 0:
        return None
    return (box.q1 - box.q2) / box.iqr, (box.q3 - box.q2) / box.iqr


@lru_cache(maxsize=256)
def _theoretical_standardized(model, constants: FenceConstants) -> tuple[float, float] | None:
    return _standardized_quartiles(theoretical_boxplot(model, constants))


@dataclass(frozen=True)
class CandidateMatch:
    entry: CatalogEntry
    compatible: dict[str, bool]
    deviation: float
    quartile_discrepancy: tuple[float, float] | None

    @property
    def n_compatible(self) -> int:
        return sum(self.compatible.values())

    def as_dict(self) -> dict:
        qd = self.quartile_discrepancy
        return {
            "dist": self.entry.label,
            "profile": self.entry.profile.as_dict(),
            "compatible": dict(self.compatible),
            "n_compatible": self.n_compatible,
            "deviation": self.deviation,
            "quartile_discrepancy": None if qd is None else {"q1": qd[0], "q3": qd[1]},
        }


@dataclass(frozen=True)
class DiagnosisReport:
    boxplot: BoxPlotSummary
    counts: OutlierCounts
    intervals: dict[str, ProportionCI]
    ranking: list[CandidateMatch]
    shortlist: list[CandidateMatch]
    heavy_right: bool
    estimates: dict[Method, EstimateResult | EstimatorUndefined] | None

    def as_dict(self) -> dict:
        est = None
        if self.estimates is not None:
            est = {
                m.value: (
                    {"alpha_hat": r.alpha_hat, "reason": None}
                    if isinstance(r, EstimateResult)
                    else {"alpha_hat": None, "reason": r.reason}
                )
                for m, r in self.estimates.items()
            }
        return {
            "boxplot": self.boxplot.as_dict(),
            "counts": self.counts.as_dict(),
            "intervals": {a: ci.as_dict() for a, ci in self.intervals.items()},
            "shortlist": [c.as_dict() for c in self.shortlist],
            "ranking": [c.as_dict() for c in self.ranking],
            "heavy_right": self.heavy_right,
            "estimates": est,
        }


def _match(
    entry: CatalogEntry,
    intervals: dict[str, ProportionCI],
    emp_std: tuple[float, float] | None,
    constants: FenceConstants,
) -> CandidateMatch:
    prof = entry.profile
    compatible = {a: prof.get(a) in intervals[a] for a in ONE_SIDED}
    deviation = sum(abs(prof.get(a) - intervals[a].point) for a in ONE_SIDED)
    disc = None
    theo_std = _theoretical_standardized(entry.model, constants)
    if emp_std is not None and theo_std is not None:
        disc = (emp_std[0] - theo_std[0], emp_std[1] - theo_std[1])
    return CandidateMatch(entry, compatible, deviation, disc)


def diagnose(
    sample: Sample,
    confidence: float = 0.95,
    entries: Sequence[CatalogEntry] | None = None,
    *,
    min_compatible: int = len(ONE_SIDED),
    constants: FenceConstants = DEFAULT_CONSTANTS,
) -> DiagnosisReport:
    """Rank catalog entries by agreement with the sample's outlier frequencies.

    The shortlist keeps entries compatible on at least ``min_compatible`` of
    the four one-sided measures, ordered by the number of compatible measures
    (descending) and then by the summed absolute deviation between catalog
    values and observed frequencies.  ``ranking`` holds every entry in that
    order.
    """
    if entries is None:
        entries = catalog(constants)
    if not 0 <= min_compatible <= len(ONE_SIDED):
        raise DomainError(f"min_compatible must lie in 0..{len(ONE_SIDED)}, got {min_compatible}")
    box = empirical_boxplot(sample, constants)
    counts = count_outliers(sample, box)
    intervals = {a: proportion_ci(getattr(counts, a), counts.n, confidence) for a in ONE_SIDED}
    emp_std = _standardized_quartiles(box)

    ranking = sorted(
        (_match(e, intervals, emp_std, constants) for e in entries),
        key=lambda c: (-c.n_compatible, c.deviation),
    )
    shortlist = [c for c in ranking if c.n_compatible >= min_compatible]
    heavy = any(c.entry.profile.p_extreme_right > HEAVY_RIGHT_THRESHOLD for c in shortlist)
    estimates = estimate_all(sample) if heavy else None
    return DiagnosisReport(box, counts, intervals, ranking, shortlist, heavy, estimates)
