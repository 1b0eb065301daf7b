"""Domination thresholds M(k) and M_k(q), with the bounds they imply for a counterexample.

log N_k is always the exact sum of per-prime log enclosures, and f(N_k) the
product of per-prime enclosures of p/(p-1); both are cached as prefix
arrays per precision.
"""

from __future__ import annotations

import csv
import io
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpfr

from .arith import prime_table
from .errors import DomainError, PrecisionError
from .numerics import (
    DEFAULT_MAX_PRECISION,
    DEFAULT_START_PRECISION,
    Ordering3,
    RealInterval,
    _down,
    _up,
    compare_detail,
    exp_neg_gamma_enclosure,
    log_enclosure,
)

# Exponent of e^{.} bounding M(k)/log N_k from above; exceeds 2.51 e^{-gamma} = 1.40926...
EPSILON_EXPONENT = Fraction(141, 100)
SUPPORTED_DIVISORS = (2, 3, 14)
JK_START = {2: 18, 3: 39, 14: 969_672_728}
REFERENCE_OMEGA_LOWER = 969_672_728

# Dusart: pi(x) >= x/log x * (1 + 1/log x + 1.8/log^2 x) for x >= 32299.
DUSART_PI_CONSTANT = Fraction(18, 10)
DUSART_PI_VALID_FROM = 32299


class _Prefix:
    """Cumulative lo/hi bounds of log N_k and f(N_k) at one precision."""

    def __init__(self, prec: int):
        self.prec = prec
        self.log_lo = [mpfr(0)]
        self.log_hi = [mpfr(0)]
        self.f_lo = [mpfr(1)]
        self.f_hi = [mpfr(1)]
        self.lock = threading.Lock()

    def extend(self, k: int) -> None:
        if k < len(self.log_lo):
            return
        primes = prime_table(count=k).first(k)
        d, u = _down(self.prec), _up(self.prec)
        with self.lock:
            for i in range(len(self.log_lo), k + 1):
                p = primes[i - 1]
                self.log_lo.append(d.add(self.log_lo[-1], d.log(p)))
                self.log_hi.append(u.add(self.log_hi[-1], u.log(p)))
                self.f_lo.append(d.mul(self.f_lo[-1], d.div(p, p - 1)))
                self.f_hi.append(u.mul(self.f_hi[-1], u.div(p, p - 1)))


_prefixes: dict[int, _Prefix] = {}


def _prefix(k: int, prec: int) -> _Prefix:
    if k < 0:
        raise DomainError("primorial index must be >= 0")
    pre = _prefixes.get(prec)
    if pre is None:
        pre = _prefixes.setdefault(prec, _Prefix(prec))
    pre.extend(k)
    return pre


def log_primorial(k: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """Enclosure of log N_k as a sum of per-prime logs."""
    pre = _prefix(k, prec)
    return RealInterval(pre.log_lo[k], pre.log_hi[k], prec)


def primorial_phi_ratio(k: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """Enclosure of f(N_k) = prod_{i<=k} p_i/(p_i - 1)."""
    pre = _prefix(k, prec)
    return RealInterval(pre.f_lo[k], pre.f_hi[k], prec)


def big_m(k: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """M(k) = exp(e^{-gamma} f(N_k)) - log N_k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return (exp_neg_gamma_enclosure(prec) * primorial_phi_ratio(k, prec)).exp() - log_primorial(k, prec)


def m_k_q(k: int, q: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """M_k(q) = 1 + M(k)/log q."""
    if q < 2:
        raise DomainError("q must be >= 2")
    return 1 + big_m(k, prec) / log_enclosure(q, prec)


def _check_divisor(d: int) -> None:
    if d not in SUPPORTED_DIVISORS:
        raise DomainError(f"divisor must be one of {SUPPORTED_DIVISORS}, got {d}")


def epsilon(k: int, d: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """Closed form eps_k = e^{1.41/log(dk log dk)} - 1 - k log k / (T (log T + log log T)), T = dk + d - 1.

    Every sub-expression is monotone in positive arguments, so each bound is
    assembled directly with the matching rounding direction.
    """
    _check_divisor(d)
    if k < 13:
        raise DomainError("epsilon_k is only defined for k >= 13")
    lo, hi = _epsilon_bounds(k, d, prec)
    return RealInterval(lo, hi, prec)


def _epsilon_bounds(k: int, d: int, prec: int) -> tuple[mpfr, mpfr]:
    D, U = _down(prec), _up(prec)
    c_lo = D.div(EPSILON_EXPONENT.numerator, EPSILON_EXPONENT.denominator)
    c_hi = U.div(EPSILON_EXPONENT.numerator, EPSILON_EXPONENT.denominator)
    K, T = d * k, d * k + d - 1

    def first(ctx, other, c):
        # e^{c / log(K log K)}: decreasing in the denominator
        denom = other.log(other.mul(K, other.log(K)))
        return ctx.sub(ctx.exp(ctx.div(c, denom)), 1)

    def second(ctx, other):
        # k log k / (T (log T + log log T)): increasing in numerator, decreasing in denominator
        num = ctx.mul(k, ctx.log(k))
        den = other.mul(T, other.add(other.log(T), other.log(other.log(T))))
        return ctx.div(num, den)

    lo = D.sub(first(D, U, c_lo), second(U, D))
    hi = U.sub(first(U, D, c_hi), second(D, U))
    return lo, hi


def epsilon_chain_bound(k: int, d: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """e^{1.41/log log N_{dk}} - 1 - log N_k / log N_{dk+d-1}, the quantity eps_k dominates."""
    _check_divisor(d)
    c = RealInterval.exact(EPSILON_EXPONENT, prec)
    first = (c / log_primorial(d * k, prec).log()).exp() - 1
    return first - log_primorial(k, prec) / log_primorial(d * k + d - 1, prec)



def epsilon_chain_failures(d: int, k_from: int, k_to: int,
                           max_precision: int = DEFAULT_MAX_PRECISION) -> list[int]:
    """k in [k_from, k_to] where eps_k > epsilon_chain_bound(k) is not certified."""
    bad = []
    for k in range(max(13, k_from), k_to + 1):
        comp = compare_detail(lambda p, k=k: epsilon_chain_bound(k, d, p),
                              lambda p, k=k: epsilon(k, d, p), max_precision)
        if comp.order is not Ordering3.LESS:
            bad.append(k)
    return bad

@dataclass(frozen=True)
class JkReport:
    d: int
    k_from: int
    k_to: int
    method: str
    failures: tuple[int, ...]
    undecided: tuple[int, ...] = ()
    max_precision_used: int = DEFAULT_START_PRECISION

    @property
    def passed(self) -> bool:
        return not self.failures and not self.undecided


def verify_jk(d: int, k_from: int, k_to: int, *, method: str | None = None,
              max_precision: int = DEFAULT_MAX_PRECISION) -> JkReport:
    """Check M(k) <= log N_{floor(k/d)} for every k in [k_from, k_to].

    ``direct`` compares the two enclosures for each k; ``closed-form`` checks
    eps_k < 0 instead (the only option once p_k is out of table range, and
    the default for d = 14).
    """
    _check_divisor(d)
    if k_from < 1 or k_to < k_from:
        raise DomainError(f"bad k range [{k_from}, {k_to}]")
    if method is None:
        method = "closed-form" if d == 14 else "direct"
    failures, undecided, used = [], [], DEFAULT_START_PRECISION
    for k in range(k_from, k_to + 1):
        if method == "direct":
            comp = compare_detail(lambda p, k=k: big_m(k, p),
                                  lambda p, k=k: log_primorial(k // d, p), max_precision)
        elif method == "closed-form":
            comp = compare_detail(lambda p, k=k: epsilon(k, d, p), 0, max_precision)
        else:
            raise ValueError(f"unknown method {method!r}")
        used = max(used, comp.precision)
        if comp.order is Ordering3.GREATER:
            failures.append(k)
        elif comp.order is Ordering3.UNDECIDED:
            undecided.append(k)
    return JkReport(d, k_from, k_to, method, tuple(failures), tuple(undecided), used)


def massias_bounds(k: int, prec: int = DEFAULT_START_PRECISION) -> tuple[RealInterval, RealInterval, RealInterval]:
    """(k log k, log N_k, k (log k + log log k)) as enclosures."""
    if k < 2:
        raise DomainError("k must be >= 2")
    lk = log_enclosure(k, prec)
    return k * lk, log_primorial(k, prec), k * (lk + lk.log())


def massias_check(k: int, max_precision: int = DEFAULT_MAX_PRECISION) -> bool:
    """k log k < log N_k < k (log k + log log k); asserted by the literature only for k >= 13."""
    lower = compare_detail(lambda p: massias_bounds(k, p)[0], lambda p: log_primorial(k, p), max_precision)
    upper = compare_detail(lambda p: log_primorial(k, p), lambda p: massias_bounds(k, p)[2], max_precision)
    for comp in (lower, upper):
        if comp.order is Ordering3.UNDECIDED:
            raise PrecisionError(f"Massias bound undecided at k={k}", n=k, precision=comp.precision)
    return lower.order is Ordering3.LESS and upper.order is Ordering3.LESS


def massias_sweep(k_from: int, k_to: int, max_precision: int = DEFAULT_MAX_PRECISION) -> list[int]:
    """Indices in [k_from, k_to] where either Massias bound fails."""
    prec = DEFAULT_START_PRECISION
    pre = _prefix(k_to, prec)
    D, U = _down(prec), _up(prec)
    bad = []
    for k in range(max(2, k_from), k_to + 1):
        lk_lo, lk_hi = D.log(k), U.log(k)
        fast = U.mul(k, lk_hi) < pre.log_lo[k] and pre.log_hi[k] < D.mul(k, D.add(lk_lo, D.log(lk_lo)))
        if not fast and not massias_check(k, max_precision):
            bad.append(k)
    return bad


def epsilon_decreasing(d: int, k_from: int, k_to: int) -> list[int]:
    """Return every k in [k_from, k_to) where eps_{k+1} < eps_k is not certified."""
    prec = DEFAULT_START_PRECISION
    bad = []
    prev_lo, _ = _epsilon_bounds(k_from, d, prec)
    for k in range(k_from, k_to):
        lo, hi = _epsilon_bounds(k + 1, d, prec)
        if not hi < prev_lo:
            strong = compare_detail(lambda p, k=k: epsilon(k + 1, d, p), lambda p, k=k: epsilon(k, d, p))
            if strong.order is not Ordering3.LESS:
                bad.append(k)
        prev_lo = lo
    return bad


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdRow:
    k: int
    m: RealInterval
    log_nk: RealInterval
    m_k_q: dict[int, RealInterval] = field(default_factory=dict)
    log_nk_d: RealInterval | None = None  # log N_{floor(k/d)}
    eps: RealInterval | None = None  # epsilon(k, d), for k >= 13


@dataclass(frozen=True)
class ThresholdTable:
    rows: tuple[ThresholdRow, ...]
    qs: tuple[int, ...] = ()
    d: int | None = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["k", "M_lo", "M_hi", "logNk_lo", "logNk_hi"]
        for q in self.qs:
            header += [f"Mk{q}_lo", f"Mk{q}_hi"]
        if self.d is not None:
            header += [f"logNk{self.d}_lo", f"logNk{self.d}_hi", f"eps{self.d}_lo", f"eps{self.d}_hi"]
        w.writerow(header)
        for r in self.rows:
            line = [r.k, *_fmt(r.m), *_fmt(r.log_nk)]
            for q in self.qs:
                line += _fmt(r.m_k_q[q])
            if self.d is not None:
                line += _fmt(r.log_nk_d) + (_fmt(r.eps) if r.eps is not None else ["", ""])
            w.writerow(line)
        return buf.getvalue()

    def to_json(self) -> list[dict]:
        out = []
        for r in self.rows:
            d = {"k": r.k, "M": list(r.m.to_float_bounds()), "logNk": list(r.log_nk.to_float_bounds())}
            if self.qs:
                d["Mk"] = {str(q): list(r.m_k_q[q].to_float_bounds()) for q in self.qs}
            if self.d is not None:
                d["d"] = self.d
                d["logNk_d"] = list(r.log_nk_d.to_float_bounds())
                d["eps"] = list(r.eps.to_float_bounds()) if r.eps is not None else None
            out.append(d)
        return out


def _fmt(x: RealInterval) -> list[str]:
    lo, hi = x.to_float_bounds()
    return [repr(lo), repr(hi)]


def threshold_table(ks, qs=(), prec: int = DEFAULT_START_PRECISION, d: int | None = None) -> ThresholdTable:
    """M(k) and log N_k for each k, with M_k(q) per q and, given d, log N_{floor(k/d)} and eps_k."""
    if d is not None:
        _check_divisor(d)
    rows = []
    for k in sorted(set(ks)):
        m = big_m(k, prec)
        extra = {}
        if d is not None:
            extra = {"log_nk_d": log_primorial(k // d, prec), "eps": epsilon(k, d, prec) if k >= 13 else None}
        rows.append(ThresholdRow(k, m, log_primorial(k, prec),
                                 {q: 1 + m / log_enclosure(q, prec) for q in qs}, **extra))
    return ThresholdTable(tuple(rows), tuple(qs), d)


# ---------------------------------------------------------------------------
# properties of a hypothetical least counterexample c
# ---------------------------------------------------------------------------

def log_log_lower_from_digits(decimal_exponent: int, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """Enclosure of log log 10^E = log E + log log 10, for c > 10^E."""
    return log_enclosure(decimal_exponent, prec) + log_enclosure(10, prec).log()


@dataclass(frozen=True)
class CounterexampleBounds:
    log_log_c_lower: RealInterval
    log_p_lower: RealInterval
    pi_lower: RealInterval
    omega_lower: int
    ratio_window: tuple[RealInterval, int]
    reference_omega_lower: int = REFERENCE_OMEGA_LOWER

    @property
    def relative_gap(self) -> float:
        return abs(self.omega_lower - self.reference_omega_lower) / self.reference_omega_lower


def largest_prime_log_lower(log_log_c: RealInterval) -> RealInterval:
    """Lower root of x + 1/x = L: any admissible log p_omega(c) exceeds (L + sqrt(L^2 - 4))/2."""
    if log_log_c.lo < 2:
        raise DomainError("log log c must be at least 2")
    disc = log_log_c.square() - 4
    if disc.lo < 0:  # rounding below the double root at L = 2
        disc = RealInterval(mpfr(0), disc.hi, disc.prec)
    return (log_log_c + disc.sqrt()) / 2


def dusart_pi_lower(x: RealInterval) -> RealInterval:
    """Lower bound x/log x (1 + 1/log x + 1.8/log^2 x) for pi(x), valid for x >= 32299."""
    if x.lo < DUSART_PI_VALID_FROM:
        raise DomainError(f"Dusart bound needs x >= {DUSART_PI_VALID_FROM}")
    lx = x.log()
    return x / lx * (1 + 1 / lx + DUSART_PI_CONSTANT / lx.square())


def counterexample_bounds(log_log_c_lower: RealInterval | None = None,
                          prec: int = DEFAULT_START_PRECISION) -> CounterexampleBounds:
    """Bounds on omega(c) and log p_omega(c) implied by log log c > L.

    Defaults to L = log log 10^(10^10). p_omega(c) > e^x with x the lower
    root of x + 1/x = L, so omega(c) >= pi(e^x) + 1.
    """
    if log_log_c_lower is None:
        log_log_c_lower = log_log_lower_from_digits(10**10, prec)
    if log_log_c_lower.lo < math.e:
        raise DomainError("log log c lower bound must be at least e")
    x = largest_prime_log_lower(log_log_c_lower)
    # only the lower end is justified for p_omega(c); work from it
    x_lo = RealInterval(x.lo, x.lo, x.prec)
    pi_low = dusart_pi_lower(x_lo.exp())
    omega_lower = int(math.ceil(Fraction(*map(int, pi_low.lo.as_integer_ratio())))) + 1
    return CounterexampleBounds(
        log_log_c_lower=log_log_c_lower,
        log_p_lower=x,
        pi_lower=pi_low,
        omega_lower=omega_lower,
        ratio_window=ratio_window_from_log(x_lo),
    )


def ratio_window_from_log(log_p: RealInterval) -> tuple[RealInterval, int]:
    return (-(1 / log_p)).exp(), 1


def ratio_window(p: int, prec: int = DEFAULT_START_PRECISION) -> tuple[RealInterval, int]:
    """Admissible window e^{-1/log p} < p/log c < 1 for a counterexample with largest prime p."""
    if p < 3:
        raise DomainError("p must be >= 3")
    return ratio_window_from_log(log_enclosure(p, prec))


def log_c_window(p: int, prec: int = DEFAULT_START_PRECISION) -> tuple[int, RealInterval]:
    """Equivalent form: log c lies in (p, p e^{1/log p})."""
    lp = log_enclosure(p, prec)
    return p, p * (1 / lp).exp()


def exponent_caps(c1: int, omega: int, i: int, prec: int = DEFAULT_START_PRECISION) -> tuple[int, RealInterval]:
    """Caps on p_i^{c_i}: 2^{c1+2} and p_i e^{M(omega)}."""
    if c1 < 1:
        raise DomainError("c1 must be >= 1")
    if not 1 < i <= omega:
        raise DomainError(f"need 1 < i <= omega, got i={i}, omega={omega}")
    p_i = prime_table(count=omega).prime(i)
    return 2 ** (c1 + 2), p_i * big_m(omega, prec).exp()
