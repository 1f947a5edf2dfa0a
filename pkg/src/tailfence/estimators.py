"""Quartile- and fence-based estimators of the index of regular variation.

Each estimator is matched to one family, on whose exact theoretical
quartiles (or fences) it returns the true index:

* ``par-fence``: ``-log p_eR / log O_R`` (Pareto with unit scale)
* ``par-quartile``: ``log 3 / (log Q3 - log Q1)`` (Pareto)
* ``frech-fence``: ``-log(-log(1 - p_eR)) / log O_R`` (Frechet)
* ``frech-quartile``: ``(log log 4 - log log(4/3)) / (log Q3 - log Q1)`` (Frechet)
* ``hillhorror-quartile``: ``log 3 / (log Q3 + log log(4/3) - log Q1 - log log 4)``
  (Hill-Horror)

Here ``p_eR`` is the relative frequency of extreme right outliers and
``O_R`` the right outer fence.  Preconditions are checked per method and a
violation raises :class:`~tailfence.errors.EstimatorUndefined`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Callable

from .empirical import Sample, count_outliers, empirical_boxplot
from .errors import DomainError, EstimatorUndefined

__all__ = [
    "Method",
    "EstimatorInputs",
    "EstimateResult",
    "ALL_METHODS",
    "par_fence",
    "par_quartile",
    "frech_fence",
    "frech_quartile",
    "hillhorror_quartile",
    "sample_statistics",
    "estimate",
    "estimate_from_inputs",
    "estimate_all",
    "parse_methods",
]

LOG3 = math.log(3.0)
LOGLOG4 = math.log(math.log(4.0))
LOGLOG43 = math.log(math.log(4.0 / 3.0))


class Method(str, enum.Enum):
    PAR_FENCE = "par-fence"
    PAR_QUARTILE = "par-quartile"
    FRECH_FENCE = "frech-fence"
    FRECH_QUARTILE = "frech-quartile"
    HILLHORROR_QUARTILE = "hillhorror-quartile"

    def __str__(self) -> str:
        return self.value


ALL_METHODS: tuple[Method, ...] = tuple(Method)


@dataclass(frozen=True)
class EstimatorInputs:
    q1_hat: float
    q3_hat: float
    outer_right_hat: float
    p_extreme_right_hat: float


@dataclass(frozen=True)
class EstimateResult:
    method: Method
    alpha_hat: float
    inputs: EstimatorInputs

    def as_dict(self) -> dict:
        return {"method": self.method.value, "alpha_hat": self.alpha_hat, "inputs": asdict(self.inputs)}


def _quartile_log_spread(q1: float, q3: float) -> float:
    if not q1 > 0:
        raise EstimatorUndefined("first quartile is not positive")
    if not q3 > q1:
        raise EstimatorUndefined("third quartile does not exceed first quartile")
    return math.log(q3) - math.log(q1)


def _log_outer_fence(p_er: float, o_r: float) -> float:
    if not p_er > 0:
        raise EstimatorUndefined("no extreme right outliers in sample")
    if not p_er < 1:
        raise EstimatorUndefined("every observation is an extreme right outlier")
    if not o_r > 0:
        raise EstimatorUndefined("right outer fence is not positive")
    if o_r == 1:
        raise EstimatorUndefined("right outer fence equals 1")
    return math.log(o_r)


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise EstimatorUndefined("estimate is not finite")
    return value


def par_fence(p_extreme_right: float, outer_right: float) -> float:
    log_or = _log_outer_fence(p_extreme_right, outer_right)
    return _finite(-math.log(p_extreme_right) / log_or)


def par_quartile(q1: float, q3: float) -> float:
    return _finite(LOG3 / _quartile_log_spread(q1, q3))


def frech_fence(p_extreme_right: float, outer_right: float) -> float:
    log_or = _log_outer_fence(p_extreme_right, outer_right)
    # -log(1 - p) is the Frechet tail exponent O_R**-alpha evaluated at the fence
    return _finite(-math.log(-math.log1p(-p_extreme_right)) / log_or)


def frech_quartile(q1: float, q3: float) -> float:
    return _finite((LOGLOG4 - LOGLOG43) / _quartile_log_spread(q1, q3))


def hillhorror_quartile(q1: float, q3: float) -> float:
    spread = _quartile_log_spread(q1, q3)
    denom = spread + LOGLOG43 - LOGLOG4
    # cancellation noise counts as zero
    if abs(denom) <= 1e-12 * (LOGLOG4 - LOGLOG43):
        raise EstimatorUndefined("adjusted quartile spread is zero")
    return _finite(LOG3 / denom)


_DISPATCH: dict[Method, Callable[[EstimatorInputs], float]] = {
    Method.PAR_FENCE: lambda s: par_fence(s.p_extreme_right_hat, s.outer_right_hat),
    Method.PAR_QUARTILE: lambda s: par_quartile(s.q1_hat, s.q3_hat),
    Method.FRECH_FENCE: lambda s: frech_fence(s.p_extreme_right_hat, s.outer_right_hat),
    Method.FRECH_QUARTILE: lambda s: frech_quartile(s.q1_hat, s.q3_hat),
    Method.HILLHORROR_QUARTILE: lambda s: hillhorror_quartile(s.q1_hat, s.q3_hat),
}


def sample_statistics(sample: Sample) -> EstimatorInputs:
    """Quartiles, right outer fence and extreme-right frequency of ``sample``."""
    box = empirical_boxplot(sample)
    counts = count_outliers(sample, box)
    return EstimatorInputs(
        q1_hat=box.q1,
        q3_hat=box.q3,
        outer_right_hat=box.outer_right,
        p_extreme_right_hat=counts.freq_extreme_right,
    )


def estimate_from_inputs(method: Method | str, inputs: EstimatorInputs) -> EstimateResult:
    method = Method(method)
    return EstimateResult(method, _DISPATCH[method](inputs), inputs)


def estimate(method: Method | str, sample: Sample) -> EstimateResult:
    """Apply one estimator to ``sample``; raises ``EstimatorUndefined`` on a failed precondition."""
    return estimate_from_inputs(method, sample_statistics(sample))


def estimate_all(
    sample: Sample, methods: tuple[Method, ...] = ALL_METHODS
) -> dict[Method, EstimateResult | EstimatorUndefined]:
    """Run several estimators; per-method failures are returned in place of a result."""
    inputs = sample_statistics(sample)
    out: dict[Method, EstimateResult | EstimatorUndefined] = {}
    for m in methods:
        try:
            out[m] = estimate_from_inputs(m, inputs)
        except EstimatorUndefined as exc:
            out[m] = exc
    return out


def parse_methods(names) -> tuple[Method, ...]:
    """Turn names such as ``["all"]`` or ``"par-quartile"`` into methods, keeping order."""
    if isinstance(names, str):
        names = [names]
    result: list[Method] = []
    for name in names:
        if name == "all":
            picked = ALL_METHODS
        else:
            try:
                picked = (Method(name),)
            except ValueError:
                valid = ", ".join([m.value for m in Method] + ["all"])
                raise DomainError(f"unknown estimator {name!r} (valid: {valid})") from None
        for m in picked:
            if m not in result:
                result.append(m)
    if not result:
        raise DomainError("no estimator selected")
    return tuple(result)
