"""Catalog distributions: CDF, quantile, support and inverse-transform sampling.

Every family is a frozen dataclass.  ``cdf`` and ``quantile`` are scalar
operations; ``transform`` maps an array of uniforms through the quantile
function and is what ``sample`` uses.

Conventions for the families whose parameterization is not universal:

* ``Pareto(alpha, delta)``: ``F(x) = 1 - (x/delta)**-alpha`` for ``x >= delta``.
* ``Frechet(alpha)``: unit Frechet, ``F(x) = exp(-x**-alpha)`` for ``x > 0``.
* ``Gumbel``: standard maximum Gumbel, ``F(x) = exp(-exp(-x))``.
* ``NegWeibull(alpha)``: reflected Weibull, ``F(x) = exp(-(-x)**alpha)`` for ``x <= 0``.
* ``HillHorror(alpha)``: defined through its quantile
  ``(1 - p)**(-1/alpha) * -log(1 - p)``; the CDF is obtained by bisection.
"""

from __future__ import annotations

import dataclasses
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from scipy.optimize import brentq

from .errors import DistSpecError, DomainError
from .special import gammainc_lower, gammainc_upper, std_normal_cdf

__all__ = [
    "SupportBounds",
    "Distribution",
    "Uniform",
    "Normal",
    "Exponential",
    "NegExponential",
    "Gamma",
    "Pareto",
    "Frechet",
    "Gumbel",
    "NegWeibull",
    "StudentT",
    "HillHorror",
    "FAMILIES",
    "parse_distribution",
    "open_uniform",
]

_ROOT_XTOL = 1e-15
_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class SupportBounds:
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"empty support [{self.lower}, {self.upper}]")

    def __contains__(self, x: float) -> bool:
        return self.lower <= x <= self.upper


def open_uniform(rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` uniforms strictly inside (0, 1) on a 2**-53 grid."""
    k = rng.integers(0, 2**53, size=count, dtype=np.int64)
    return (k.astype(np.float64) + 0.5) / 2.0**53


def _pow(x: float, y: float) -> float:
    try:
        return math.pow(x, y)
    except OverflowError:
        return math.inf


def _exp_neg(t: float) -> float:
    # exp(-t) for t >= 0, tolerant of t = inf
    return 0.0 if t > 745.0 else math.exp(-t)


def _fmt_param(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _finite(name: str, v: float) -> None:
    _require(isinstance(v, (int, float)) and math.isfinite(v), f"{name} must be a finite real, got {v!r}")


def _expanding_root(f, lo: float, hi: float, *, lower_fixed: bool = False) -> float:
    # f nondecreasing; grow [lo, hi] geometrically until it brackets a sign change
    width = hi - lo
    for _ in range(2000):
        if f(hi) >= 0:
            break
        lo, width = hi, width * 2.0
        hi = hi + width
    if not lower_fixed:
        width = hi - lo
        for _ in range(2000):
            if f(lo) <= 0:
                break
            hi, width = lo, width * 2.0
            lo = lo - width
    return brentq(f, lo, hi, xtol=_ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=500)


class Distribution(ABC):
    """Common surface of every catalog family."""

    family: ClassVar[str]

    @abstractmethod
    def _cdf(self, x: float) -> float: ...

    @abstractmethod
    def _ppf(self, p):
        """Quantile function on a scalar or ndarray of probabilities in (0, 1)."""

    @abstractmethod
    def support(self) -> SupportBounds: ...

    def cdf(self, x: float) -> float:
        """``P(X <= x)``.  Arguments outside the support map to 0 or 1."""
        if isinstance(x, float) and math.isnan(x):
            raise DomainError("cdf argument is NaN")
        x = float(x)
        s = self.support()
        if x < s.lower:
            return 0.0
        if x >= s.upper:
            return 1.0
        return self._cdf(x)

    def quantile(self, p: float) -> float:
        """Generalized inverse of the CDF for ``0 < p < 1``."""
        p = float(p)
        if not 0.0 < p < 1.0:
            raise DomainError(f"quantile level must lie in (0, 1), got {p!r}")
        return float(self._ppf(p))

    def transform(self, u) -> np.ndarray:
        """Vectorized quantile: push uniforms in (0, 1) through ``quantile``."""
        u = np.asarray(u, dtype=np.float64)
        if u.size and not (np.all(u > 0.0) and np.all(u < 1.0)):
            raise DomainError("uniforms must lie strictly inside (0, 1)")
        return np.asarray(self._ppf(u), dtype=np.float64)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """``count`` independent draws by inverse transform from ``rng``."""
        if count < 1:
            raise DomainError(f"sample count must be positive, got {count}")
        return self.transform(open_uniform(rng, count))

    @property
    def params(self) -> dict[str, float]:
        return dataclasses.asdict(self)

    @property
    def tail_index(self) -> float | None:
        """Index of regular variation of the right tail, if the family has one."""
        return None

    def spec(self) -> str:
        """Round-trippable specification string, e.g. ``pareto(1,1)``."""
        values = list(self.params.values())
        if not values:
            return self.family
        return f"{self.family}({','.join(_fmt_param(v) for v in values)})"

    def __str__(self) -> str:
        return self.spec()


def _vectorized(scalar_fn):
    vec = np.vectorize(scalar_fn, otypes=[np.float64])

    def ppf(p):
        if np.ndim(p) == 0:
            return scalar_fn(float(p))
        return vec(p)

    return ppf


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0
    family: ClassVar[str] = "uniform"

    def __post_init__(self):
        _finite("a", self.a)
        _finite("b", self.b)
        _require(self.a < self.b, f"uniform requires a < b, got a={self.a}, b={self.b}")

    def _cdf(self, x):
        return (x - self.a) / (self.b - self.a)

    def _ppf(self, p):
        return self.a + p * (self.b - self.a)

    def support(self):
        return SupportBounds(self.a, self.b)


@dataclass(frozen=True)
class Normal(Distribution):
    """Normal law parameterized by mean and *variance*."""

    mu: float = 0.0
    var: float = 1.0
    family: ClassVar[str] = "normal"

    def __post_init__(self):
        _finite("mu", self.mu)
        _finite("var", self.var)
        _require(self.var > 0, f"normal variance must be positive, got {self.var}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.var)

    def _cdf(self, x):
        return std_normal_cdf((x - self.mu) / self.sigma)

    @staticmethod
    def _std_ppf(p: float) -> float:
        if p == 0.5:
            return 0.0
        if p > 0.5:
            return -Normal._std_ppf(1.0 - p)
        return _expanding_root(lambda z: std_normal_cdf(z) - p, -2.0, 0.0)

    def _ppf(self, p):
        z = _vectorized(self._std_ppf)(p)
        return self.mu + self.sigma * z

    def support(self):
        return SupportBounds(-math.inf, math.inf)


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float = 1.0
    family: ClassVar[str] = "exp"

    def __post_init__(self):
        _finite("rate", self.rate)
        _require(self.rate > 0, f"exponential rate must be positive, got {self.rate}")

    def _cdf(self, x):
        return -math.expm1(-self.rate * x)

    def _ppf(self, p):
        return -np.log1p(-p) / self.rate

    def support(self):
        return SupportBounds(0.0, math.inf)


@dataclass(frozen=True)
class NegExponential(Distribution):
    """Law of ``-X`` for ``X ~ Exponential(rate)``."""

    rate: float = 1.0
    family: ClassVar[str] = "negexp"

    def __post_init__(self):
        _finite("rate", self.rate)
        _require(self.rate > 0, f"exponential rate must be positive, got {self.rate}")

    def _cdf(self, x):
        return math.exp(self.rate * x)

    def _ppf(self, p):
        return np.log(p) / self.rate

    def support(self):
        return SupportBounds(-math.inf, 0.0)


@dataclass(frozen=True)
class Gamma(Distribution):
    """Gamma law with shape and *rate*."""

    shape: float
    rate: float = 1.0
    family: ClassVar[str] = "gamma"

    def __post_init__(self):
        _finite("shape", self.shape)
        _finite("rate", self.rate)
        _require(self.shape > 0, f"gamma shape must be positive, got {self.shape}")
        _require(self.rate > 0, f"gamma rate must be positive, got {self.rate}")

    def _cdf(self, x):
        return gammainc_lower(self.shape, self.rate * x)

    def _std_ppf(self, p: float) -> float:
        a = self.shape
        if p <= 0.5:
            f = lambda z: gammainc_lower(a, z) - p  # noqa: E731
        else:
            q = 1.0 - p
            f = lambda z: q - gammainc_upper(a, z)  # noqa: E731
        return _expanding_root(f, 0.0, max(a, 1.0), lower_fixed=True)

    def _ppf(self, p):
        return _vectorized(self._std_ppf)(p) / self.rate

    def support(self):
        return SupportBounds(0.0, math.inf)


@dataclass(frozen=True)
class Pareto(Distribution):
    alpha: float
    delta: float = 1.0
    family: ClassVar[str] = "pareto"

    def __post_init__(self):
        _finite("alpha", self.alpha)
        _finite("delta", self.delta)
        _require(self.alpha > 0, f"pareto alpha must be positive, got {self.alpha}")
        _require(self.delta > 0, f"pareto delta must be positive, got {self.delta}")

    def _cdf(self, x):
        return 1.0 - _pow(x / self.delta, -self.alpha)

    def _ppf(self, p):
        return self.delta * (1.0 - p) ** (-1.0 / self.alpha)

    def support(self):
        return SupportBounds(self.delta, math.inf)

    @property
    def tail_index(self):
        return self.alpha


@dataclass(frozen=True)
class Frechet(Distribution):
    alpha: float
    family: ClassVar[str] = "frechet"

    def __post_init__(self):
        _finite("alpha", self.alpha)
        _require(self.alpha > 0, f"frechet alpha must be positive, got {self.alpha}")

    def _cdf(self, x):
        if x <= 0:
            return 0.0
        return _exp_neg(_pow(x, -self.alpha))

    def _ppf(self, p):
        return (-np.log(p)) ** (-1.0 / self.alpha)

    def support(self):
        return SupportBounds(0.0, math.inf)

    @property
    def tail_index(self):
        return self.alpha


@dataclass(frozen=True)
class Gumbel(Distribution):
    family: ClassVar[str] = "gumbel"

    def _cdf(self, x):
        if x < -700.0:
            return 0.0
        return math.exp(-math.exp(-x))

    def _ppf(self, p):
        return -np.log(-np.log(p))

    def support(self):
        return SupportBounds(-math.inf, math.inf)


@dataclass(frozen=True)
class NegWeibull(Distribution):
    """Reflected Weibull: ``F(x) = exp(-(-x)**alpha)`` on ``x <= 0``."""

    alpha: float
    family: ClassVar[str] = "negweibull"

    def __post_init__(self):
        _finite("alpha", self.alpha)
        _require(self.alpha > 0, f"weibull shape must be positive, got {self.alpha}")

    def _cdf(self, x):
        return _exp_neg(_pow(-x, self.alpha))

    def _ppf(self, p):
        return -((-np.log(p)) ** (1.0 / self.alpha))

    def support(self):
        return SupportBounds(-math.inf, 0.0)


@dataclass(frozen=True)
class StudentT(Distribution):
    """Student t with one (Cauchy) or two degrees of freedom, both closed form."""

    df: int
    family: ClassVar[str] = "t"

    def __post_init__(self):
        _require(self.df in (1, 2), f"student t supports df in {{1, 2}} only, got {self.df}")

    def _cdf(self, x):
        if self.df == 1:
            return 0.5 + math.atan(x) / math.pi
        if abs(x) > 1e150:
            return 0.5 + 0.5 * math.copysign(1.0, x) / math.sqrt(1.0 + 2.0 / (x * x))
        return 0.5 + x / (2.0 * math.sqrt(2.0 + x * x))

    def _ppf(self, p):
        if self.df == 1:
            return np.tan(np.pi * (p - 0.5))
        return (2.0 * p - 1.0) / np.sqrt(2.0 * p * (1.0 - p))

    def support(self):
        return SupportBounds(-math.inf, math.inf)

    @property
    def params(self):
        return {"df": int(self.df)}

    @property
    def tail_index(self):
        return float(self.df)


@dataclass(frozen=True)
class HillHorror(Distribution):
    alpha: float
    family: ClassVar[str] = "hillhorror"

    def __post_init__(self):
        _finite("alpha", self.alpha)
        _require(self.alpha > 0, f"hill-horror alpha must be positive, got {self.alpha}")

    def _ppf(self, p):
        return (1.0 - p) ** (-1.0 / self.alpha) * -np.log1p(-p)

    def _cdf(self, x):
        # quantile is strictly increasing, so bisect on the probability
        lo, hi = 0.0, 1.0
        for _ in range(_BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                break
            if self._ppf(mid) <= x:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def support(self):
        return SupportBounds(0.0, math.inf)

    @property
    def tail_index(self):
        return self.alpha


FAMILIES: dict[str, type[Distribution]] = {
    "uniform": Uniform,
    "u": Uniform,
    "normal": Normal,
    "n": Normal,
    "exp": Exponential,
    "exponential": Exponential,
    "negexp": NegExponential,
    "-exp": NegExponential,
    "negexponential": NegExponential,
    "gamma": Gamma,
    "pareto": Pareto,
    "frechet": Frechet,
    "gumbel": Gumbel,
    "negweibull": NegWeibull,
    "weibull-": NegWeibull,
    "t": StudentT,
    "studentt": StudentT,
    "hillhorror": HillHorror,
    "hill-horror": HillHorror,
}

_SPEC_RE = re.compile(r"^\s*([A-Za-z_\-]+)\s*(?:\((.*)\))?\s*$")


def parse_distribution(text: str) -> Distribution:
    """Parse ``family(p1,p2,...)``, case-insensitively, into a distribution.

    Trailing parameters with defaults may be omitted (``pareto(2)`` is
    ``pareto(2,1)``).  Errors name the offending token.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise DistSpecError(f"malformed distribution spec {text!r}; expected family(p1,p2,...)")
    name, arglist = m.group(1).lower(), m.group(2)
    cls = FAMILIES.get(name)
    if cls is None:
        known = ", ".join(sorted({c.family for c in FAMILIES.values()}))
        raise DistSpecError(f"unknown distribution family {m.group(1)!r} (known: {known})")
    tokens = [] if arglist is None or not arglist.strip() else [t.strip() for t in arglist.split(",")]
    args: list[float] = []
    for tok in tokens:
        try:
            args.append(float(tok))
        except ValueError:
            raise DistSpecError(f"invalid parameter {tok!r} in {text!r}") from None
    fields = dataclasses.fields(cls)
    if len(args) > len(fields):
        raise DistSpecError(
            f"{cls.family} takes at most {len(fields)} parameter(s), got {len(args)} in {text!r}"
        )
    if cls is StudentT and args:
        if not args[0].is_integer():
            raise DistSpecError(f"invalid parameter {tokens[0]!r} in {text!r}: df must be 1 or 2")
        args[0] = int(args[0])
    try:
        return cls(*args)
    except TypeError:
        names = ",".join(f.name for f in fields)
        raise DistSpecError(f"{cls.family} requires parameters ({names}), got {text!r}") from None
    except DomainError as exc:
        raise DistSpecError(f"{text!r}: {exc}") from None
