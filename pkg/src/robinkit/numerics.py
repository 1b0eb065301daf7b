"""Outward-rounded real intervals on top of MPFR (via gmpy2).

Every bound is produced by an MPFR operation under an explicit rounding
mode (down for lower bounds, up for upper bounds), so an interval always
encloses the exact real it stands for. There is no global precision state:
each interval carries its own precision and every operation passes an
explicit context.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError

DEFAULT_START_PRECISION = 64
DEFAULT_MAX_PRECISION = 4096


@lru_cache(maxsize=None)
def _down(prec: int) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


@lru_cache(maxsize=None)
def _up(prec: int) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


def _lo(x, prec: int) -> mpfr:
    return mpfr(x, prec, _down(prec))


def _hi(x, prec: int) -> mpfr:
    return mpfr(x, prec, _up(prec))


def _check(lo, hi) -> None:
    if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
        raise DomainError("operation left the real domain")


Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] with MPFR endpoints at ``prec`` bits."""

    lo: mpfr
    hi: mpfr
    prec: int

    def __post_init__(self):
        _check(self.lo, self.hi)
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # -- construction ---------------------------------------------------

    @classmethod
    def exact(cls, x: Scalar, prec: int = DEFAULT_START_PRECISION) -> "RealInterval":
        """Tightest enclosure of an integer or rational."""
        if isinstance(x, RealInterval):
            return x
        return cls(_lo(x, prec), _hi(x, prec), prec)

    @classmethod
    def hull(cls, a: Scalar, b: Scalar, prec: int = DEFAULT_START_PRECISION) -> "RealInterval":
        """Enclosure of every real between a and b (a <= b)."""
        return cls(_lo(a, prec), _hi(b, prec), prec)

    def _coerce(self, other) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        if isinstance(other, (int, Fraction)):
            return RealInterval.exact(other, self.prec)
        return NotImplemented

    # -- queries --------------------------------------------------------

    @property
    def lower(self) -> mpfr:
        return self.lo

    @property
    def upper(self) -> mpfr:
        return self.hi

    def width(self) -> mpfr:
        return _up(self.prec).sub(self.hi, self.lo)

    def contains(self, x) -> bool:
        """True when the exact value x (int, Fraction, mpfr or mpmath number) lies inside."""
        if isinstance(x, RealInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, (int, Fraction)):
            return Fraction(*self.lo.as_integer_ratio()) <= x <= Fraction(*self.hi.as_integer_ratio())
        if hasattr(x, "_mpf_"):  # mpmath value: compare exactly via its binary form
            sign, man, exp, _ = x._mpf_
            if not man and exp:
                return False  # inf or nan
            v = (-1) ** sign * Fraction(int(man)) * (Fraction(2) ** int(exp))
            return self.contains(v)
        return self.lo <= x <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def midpoint(self) -> mpfr:
        return _down(self.prec + 1).div(_down(self.prec + 1).add(self.lo, self.hi), 2)

    def __float__(self) -> float:
        return float(self.midpoint())

    def __repr__(self) -> str:
        return f"RealInterval([{self.lo}, {self.hi}], prec={self.prec})"

    # -- arithmetic -----------------------------------------------------

    def _prec_with(self, other: "RealInterval") -> int:
        return max(self.prec, other.prec)

    def __neg__(self) -> "RealInterval":
        # negation is exact at the operand's precision; the bare operator would
        # round to the global context instead
        p = self.prec
        return RealInterval(_down(p).minus(self.hi), _up(p).minus(self.lo), p)

    def __add__(self, other) -> "RealInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec_with(other)
        return RealInterval(_down(p).add(self.lo, other.lo), _up(p).add(self.hi, other.hi), p)

    __radd__ = __add__

    def __sub__(self, other) -> "RealInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec_with(other)
        return RealInterval(_down(p).sub(self.lo, other.hi), _up(p).sub(self.hi, other.lo), p)

    def __rsub__(self, other) -> "RealInterval":
        return (-self) + other

    def __mul__(self, other) -> "RealInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec_with(other)
        d, u = _down(p), _up(p)
        a, b, c, e = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c >= 0:
            return RealInterval(d.mul(a, c), u.mul(b, e), p)
        lows = (d.mul(a, c), d.mul(a, e), d.mul(b, c), d.mul(b, e))
        highs = (u.mul(a, c), u.mul(a, e), u.mul(b, c), u.mul(b, e))
        return RealInterval(min(lows), max(highs), p)

    __rmul__ = __mul__

    def reciprocal(self) -> "RealInterval":
        if self.lo <= 0 <= self.hi:
            raise DomainError("division by an interval containing zero")
        p = self.prec
        return RealInterval(_down(p).div(1, self.hi), _up(p).div(1, self.lo), p)

    def __truediv__(self, other) -> "RealInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec_with(other)
        if other.lo <= 0 <= other.hi:
            raise DomainError("division by an interval containing zero")
        d, u = _down(p), _up(p)
        a, b, c, e = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c > 0:
            return RealInterval(d.div(a, e), u.div(b, c), p)
        lows = (d.div(a, c), d.div(a, e), d.div(b, c), d.div(b, e))
        highs = (u.div(a, c), u.div(a, e), u.div(b, c), u.div(b, e))
        return RealInterval(min(lows), max(highs), p)

    def __rtruediv__(self, other) -> "RealInterval":
        return RealInterval.exact(other, self.prec) / self

    def square(self) -> "RealInterval":
        if self.lo >= 0:
            return self * self
        if self.hi <= 0:
            return (-self) * (-self)
        m = max(_up(self.prec).minus(self.lo), self.hi)
        return RealInterval(mpfr(0), _up(self.prec).mul(m, m), self.prec)

    # -- elementary functions (monotone, so endpoints map to endpoints) --

    def exp(self) -> "RealInterval":
        p = self.prec
        return RealInterval(_down(p).exp(self.lo), _up(p).exp(self.hi), p)

    def log(self) -> "RealInterval":
        if self.lo <= 0:
            raise DomainError(f"log of an interval reaching {self.lo}")
        p = self.prec
        return RealInterval(_down(p).log(self.lo), _up(p).log(self.hi), p)

    def sqrt(self) -> "RealInterval":
        if self.lo < 0:
            raise DomainError(f"sqrt of an interval reaching {self.lo}")
        p = self.prec
        return RealInterval(_down(p).sqrt(self.lo), _up(p).sqrt(self.hi), p)

    def to_float_bounds(self) -> tuple[float, float]:
        """Outward-rounded binary64 bounds."""
        return float(_down(53).plus(self.lo)), float(_up(53).plus(self.hi))


# ---------------------------------------------------------------------------
# constants and standard enclosures
# ---------------------------------------------------------------------------

def _check_prec(prec: int) -> None:
    if prec < 32:
        raise ValueError("precision must be at least 32 bits")


@lru_cache(maxsize=64)
def gamma_enclosure(prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """Euler's constant, correctly rounded down and up."""
    _check_prec(prec)
    return RealInterval(_down(prec).const_euler(), _up(prec).const_euler(), prec)


@lru_cache(maxsize=64)
def exp_gamma_enclosure(prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    return gamma_enclosure(prec).exp()


@lru_cache(maxsize=64)
def exp_neg_gamma_enclosure(prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    return (-gamma_enclosure(prec)).exp()


def as_interval(x: Scalar | RealInterval, prec: int) -> RealInterval:
    return x if isinstance(x, RealInterval) else RealInterval.exact(x, prec)


def log_enclosure(x: Scalar | RealInterval, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    return as_interval(x, prec).log()


def log_log_enclosure(n: Scalar | RealInterval, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """Enclosure of log log n.

    Values 1 < n <= e are allowed (log log n is then <= 0); n <= 1 is a
    domain error since log n <= 0.
    """
    x = as_interval(n, prec)
    if x.lo <= 1:
        raise DomainError(f"log log undefined: log n <= 0 for n = {n}")
    inner = x.log()
    if inner.lo <= 0:
        # x.lo > 1 but rounding can still put the lower log at 0; tighten.
        raise DomainError(f"log n not separated from 0 at {prec} bits")
    return inner.log()


# ---------------------------------------------------------------------------
# certified comparison
# ---------------------------------------------------------------------------

class Ordering3(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    UNDECIDED = "Undecided"

    def flip(self) -> "Ordering3":
        if self is Ordering3.LESS:
            return Ordering3.GREATER
        if self is Ordering3.GREATER:
            return Ordering3.LESS
        return self


Operand = Union[int, Fraction, RealInterval, Callable[[int], RealInterval]]


def precision_ladder(start: int = DEFAULT_START_PRECISION,
                     max_precision: int = DEFAULT_MAX_PRECISION) -> list[int]:
    """64, 128, 256, ... up to and including the cap."""
    out, p = [], start
    while p < max_precision:
        out.append(p)
        p *= 2
    out.append(max_precision)
    return out


def _evaluate(x: Operand, prec: int) -> RealInterval:
    if callable(x):
        return x(prec)
    return as_interval(x, prec)


@dataclass(frozen=True)
class Comparison:
    order: Ordering3
    precision: int
    lhs: RealInterval
    rhs: RealInterval

    def difference(self) -> RealInterval:
        """Enclosure of rhs - lhs at the final precision."""
        return self.rhs - self.lhs


def compare_detail(lhs: Operand, rhs: Operand, max_precision: int = DEFAULT_MAX_PRECISION,
                   start_precision: int = DEFAULT_START_PRECISION) -> Comparison:
    """Compare two reals, escalating precision until their enclosures separate.

    An operand is either a fixed value (rational or interval) or a callable
    mapping a precision to an enclosure, re-evaluated on every rung.
    Overlapping enclosures are never reported as ordered.
    """
    fixed = not callable(lhs) and not callable(rhs) and (
        isinstance(lhs, RealInterval) and isinstance(rhs, RealInterval))
    for prec in precision_ladder(start_precision, max_precision):
        a, b = _evaluate(lhs, prec), _evaluate(rhs, prec)
        if a.hi < b.lo:
            return Comparison(Ordering3.LESS, prec, a, b)
        if a.lo > b.hi:
            return Comparison(Ordering3.GREATER, prec, a, b)
        if fixed:
            break
    return Comparison(Ordering3.UNDECIDED, prec, a, b)


def compare(lhs: Operand, rhs: Operand, max_precision: int = DEFAULT_MAX_PRECISION) -> Ordering3:
    return compare_detail(lhs, rhs, max_precision).order
