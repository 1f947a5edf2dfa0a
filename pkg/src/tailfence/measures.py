"""Theoretical box-plots and the fence-based tail-heaviness measures.

For a law ``F`` with quartiles ``Q1 <= Q2 <= Q3`` and ``IQR = Q3 - Q1`` the
fences are ``Q1 - 1.5 IQR`` / ``Q1 - 3 IQR`` (inner/outer left) and
``Q3 + 1.5 IQR`` / ``Q3 + 3 IQR`` (inner/outer right).  The six measures
are the probabilities of the mild and extreme outlier regions, one-sided
and two-sided.  All are obtained by composing ``F`` with its own fences,
so they are invariant under shifts and positive rescaling of ``X``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable

from .distributions import (
    Distribution,
    Exponential,
    Frechet,
    Gamma,
    Gumbel,
    NegExponential,
    NegWeibull,
    Normal,
    Pareto,
    StudentT,
    Uniform,
)
from .errors import DomainError

__all__ = [
    "FenceConstants",
    "DEFAULT_CONSTANTS",
    "BoxPlotSummary",
    "TailProfile",
    "ASPECTS",
    "Comparison",
    "CatalogEntry",
    "theoretical_boxplot",
    "tail_profile",
    "lighter_than",
    "catalog",
    "sort_catalog",
]

EQUALITY_TOL = 1e-9


def _frechet_threshold(multiplier: float) -> float:
    # Frechet shape at which Q1 - multiplier*IQR crosses 0, i.e. Q1/Q3 = m/(1+m)
    base = 1.0 - math.log(3.0) / math.log(4.0)
    return 1.0 / math.log(multiplier / (1.0 + multiplier), base)


@dataclass(frozen=True)
class FenceConstants:
    mild_multiplier: float = 1.5
    extreme_multiplier: float = 3.0
    c_mild_frechet: float = field(init=False)
    c_extreme_frechet: float = field(init=False)

    def __post_init__(self):
        if not 0 < self.mild_multiplier < self.extreme_multiplier:
            raise DomainError("fence multipliers must satisfy 0 < mild < extreme")
        object.__setattr__(self, "c_mild_frechet", _frechet_threshold(self.mild_multiplier))
        object.__setattr__(self, "c_extreme_frechet", _frechet_threshold(self.extreme_multiplier))


DEFAULT_CONSTANTS = FenceConstants()


@dataclass(frozen=True)
class BoxPlotSummary:
    q1: float
    q2: float
    q3: float
    iqr: float
    inner_left: float
    outer_left: float
    inner_right: float
    outer_right: float

    @classmethod
    def from_quartiles(
        cls, q1: float, q2: float, q3: float, constants: FenceConstants = DEFAULT_CONSTANTS
    ) -> "BoxPlotSummary":
        if not q1 <= q2 <= q3:
            raise DomainError(f"quartiles out of order: {q1}, {q2}, {q3}")
        iqr = q3 - q1
        return cls(
            q1=q1,
            q2=q2,
            q3=q3,
            iqr=iqr,
            inner_left=q1 - constants.mild_multiplier * iqr,
            outer_left=q1 - constants.extreme_multiplier * iqr,
            inner_right=q3 + constants.mild_multiplier * iqr,
            outer_right=q3 + constants.extreme_multiplier * iqr,
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "q1": self.q1,
            "q2": self.q2,
            "q3": self.q3,
            "iqr": self.iqr,
            "inner_left": self.inner_left,
            "outer_left": self.outer_left,
            "inner_right": self.inner_right,
            "outer_right": self.outer_right,
        }


ASPECTS = ("mild_left", "extreme_left", "mild_right", "extreme_right", "mild_two", "extreme_two")

# short keys used in JSON and tables
SHORT_KEYS = {
    "mild_left": "p_mL",
    "extreme_left": "p_eL",
    "mild_right": "p_mR",
    "extreme_right": "p_eR",
    "mild_two": "p_m2",
    "extreme_two": "p_e2",
}


@dataclass(frozen=True)
class TailProfile:
    """Probabilities of the four one-sided outlier regions; two-sided ones are sums."""

    p_mild_left: float
    p_extreme_left: float
    p_mild_right: float
    p_extreme_right: float

    @property
    def p_mild_two(self) -> float:
        return self.p_mild_left + self.p_mild_right

    @property
    def p_extreme_two(self) -> float:
        return self.p_extreme_left + self.p_extreme_right

    def get(self, aspect: str) -> float:
        if aspect not in ASPECTS:
            raise DomainError(f"unknown aspect {aspect!r}; expected one of {', '.join(ASPECTS)}")
        return getattr(self, "p_" + aspect)

    def as_dict(self) -> dict[str, float]:
        return {SHORT_KEYS[a]: self.get(a) for a in ASPECTS}


def theoretical_boxplot(model: Distribution, constants: FenceConstants = DEFAULT_CONSTANTS) -> BoxPlotSummary:
    """Quartiles of ``model`` and the fences built on them."""
    return BoxPlotSummary.from_quartiles(
        model.quantile(0.25), model.quantile(0.5), model.quantile(0.75), constants
    )


def tail_profile(model: Distribution, constants: FenceConstants = DEFAULT_CONSTANTS) -> TailProfile:
    """Mild/extreme, left/right outlier probabilities of ``model``.

    Continuous laws only, so ``P(X < t) = F(t)``.  Differences are clipped at
    zero to absorb rounding when both fences fall in a region of negligible mass.
    """
    box = theoretical_boxplot(model, constants)
    F = model.cdf
    f_ol, f_il = F(box.outer_left), F(box.inner_left)
    f_ir, f_or = F(box.inner_right), F(box.outer_right)
    return TailProfile(
        p_mild_left=max(0.0, f_il - f_ol),
        p_extreme_left=f_ol,
        p_mild_right=max(0.0, (1.0 - f_ir) - (1.0 - f_or)),
        p_extreme_right=1.0 - f_or,
    )


class Comparison(enum.Enum):
    LIGHTER = "lighter"
    EQUAL = "equal"
    HEAVIER = "heavier"


def lighter_than(x: TailProfile, y: TailProfile, aspect: str, tol: float = EQUALITY_TOL) -> Comparison:
    """Compare ``x`` against ``y`` on one aspect: is ``x``'s tail lighter?"""
    a, b = x.get(aspect), y.get(aspect)
    if abs(a - b) <= tol:
        return Comparison.EQUAL
    return Comparison.LIGHTER if a < b else Comparison.HEAVIER


@dataclass(frozen=True)
class CatalogEntry:
    model: Distribution
    profile: TailProfile

    @property
    def label(self) -> str:
        return self.model.spec()

    def as_dict(self) -> dict:
        return {"family": self.model.family, "params": self.model.params, **self.profile.as_dict()}


# the distributions with numeric rows in the classification tables
CATALOG_MODELS: tuple[Distribution, ...] = (
    Uniform(0.0, 1.0),
    Normal(0.0, 1.0),
    Gamma(2.0, 1.0),
    Gamma(0.5, 1.0),
    Gumbel(),
    Exponential(1.0),
    NegExponential(1.0),
    NegWeibull(0.5),
    NegWeibull(1.0),
    NegWeibull(2.0),
    StudentT(1),
    StudentT(2),
    Frechet(0.5),
    Frechet(1.0),
    Frechet(2.0),
    Pareto(0.5, 1.0),
    Pareto(1.0, 1.0),
    Pareto(2.0, 1.0),
)


def catalog(
    constants: FenceConstants = DEFAULT_CONSTANTS, models: Iterable[Distribution] = CATALOG_MODELS
) -> list[CatalogEntry]:
    """Built-in roster paired with runtime-computed profiles, in roster order."""
    return [CatalogEntry(m, tail_profile(m, constants)) for m in models]


def sort_catalog(entries: Iterable[CatalogEntry], aspect: str) -> list[CatalogEntry]:
    """Entries ordered from lightest to heaviest on ``aspect`` (stable)."""
    return sorted(entries, key=lambda e: e.profile.get(aspect))
