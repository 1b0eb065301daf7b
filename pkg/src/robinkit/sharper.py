"""Explicit upper bounds for s and f, with their refinements on primorials and odd n."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import prime_table, sieve_segment
from .errors import DomainError
from .numerics import (
    DEFAULT_MAX_PRECISION,
    DEFAULT_START_PRECISION,
    Ordering3,
    RealInterval,
    compare_detail,
    exp_gamma_enclosure,
    log_log_enclosure,
)
from .sweep import SweepFailure, certify_below, chunk_ranges, flatten, run_chunks
from .thresholds import log_primorial

ROBIN_CONSTANT = Fraction("0.6483")
ROSSER_CONSTANT = Fraction("2.51")
ODD_SIGMA_FROM = 17
DEFAULT_SWEEP_CEILING = 10**6
_CHUNK = 1 << 16


def _bound(y: RealInterval, c: Fraction) -> RealInterval:
    return exp_gamma_enclosure(y.prec) * y + c / y


def robin_upper(n, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """e^gamma log log n + 0.6483 / log log n, an upper bound on s(n) for n >= 3."""
    if isinstance(n, int) and n < 3:
        raise DomainError("bound stated for n >= 3")
    return _bound(log_log_enclosure(n, prec), ROBIN_CONSTANT)


def rosser_upper(n, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    """e^gamma log log n + 2.51 / log log n, an upper bound on f(n) for n >= 3."""
    if isinstance(n, int) and n < 3:
        raise DomainError("bound stated for n >= 3")
    return _bound(log_log_enclosure(n, prec), ROSSER_CONSTANT)


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of lhs < rhs with lhs exact and rhs an enclosure."""

    n: int
    lhs: Fraction
    rhs: RealInterval
    holds: bool
    margin: RealInterval  # encloses rhs - lhs

    def csv_row(self) -> list:
        lo, hi = self.rhs.to_float_bounds()
        return [self.n, self.lhs.numerator, self.lhs.denominator, repr(lo), repr(hi), self.holds]


BOUNDCHECK_HEADER = ["n", "lhs_num", "lhs_den", "rhs_lo", "rhs_hi", "holds"]


def bound_checks_csv(checks) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUNDCHECK_HEADER)
    for c in checks:
        w.writerow(c.csv_row())
    return buf.getvalue()


def _bound_check(n: int, lhs: Fraction, rhs, max_precision: int) -> BoundCheck:
    comp = compare_detail(lhs, rhs, max_precision)
    return BoundCheck(n, lhs, comp.rhs, comp.order is Ordering3.LESS, comp.difference())


# ---------------------------------------------------------------------------
# primorials
# ---------------------------------------------------------------------------

def alpha(i: int) -> Fraction:
    """prod_{j<=i} (1 - 1/p_j^2)."""
    if i < 1:
        raise DomainError("i must be >= 1")
    out = Fraction(1)
    for p in prime_table(count=i).first(i):
        out *= Fraction(p * p - 1, p * p)
    return out


def three_quarters_failures(k_from: int = 2, k_to: int = 2000) -> list[int]:
    """k in [k_from, k_to] with s(N_k) > (3/4) f(N_k), decided with exact integers.

    s(N_k) <= (3/4) f(N_k)  <=>  4 prod(p^2 - 1) <= 3 prod(p^2).
    """
    if k_from < 1:
        raise DomainError("k must be >= 1")
    num = den = 1
    bad = []
    for k, p in enumerate(prime_table(count=k_to).first(k_to), start=1):
        num *= p * p - 1
        den *= p * p
        if k >= k_from and 4 * num > 3 * den:
            bad.append(k)
    return bad


def primorial_abundancy(k: int) -> Fraction:
    """s(N_k) = prod_{i<=k} (1 + 1/p_i)."""
    num = den = 1
    for p in prime_table(count=k).first(k):
        num *= p + 1
        den *= p
    return Fraction(num, den)


def _primorial_rosser(k: int, prec: int) -> RealInterval:
    y = log_primorial(k, prec).log()
    return _bound(y, ROSSER_CONSTANT)


def primorial_sharp_check(n_index: int, i: int, max_precision: int = DEFAULT_MAX_PRECISION,
                          *, lhs: Fraction | None = None) -> BoundCheck:
    """s(N_n) < alpha_i (e^gamma log log N_n + 2.51 / log log N_n).

    ``i = 1`` gives the 3/4 factor used for every primorial with n >= 2.
    """
    if not 1 <= i <= n_index or n_index < 2:
        raise DomainError(f"need 1 <= i <= n and n >= 2, got n={n_index}, i={i}")
    a = alpha(i)
    lhs = primorial_abundancy(n_index) if lhs is None else lhs
    return _bound_check(n_index, lhs, lambda p: a * _primorial_rosser(n_index, p), max_precision)


def primorial_robin_check(k: int, max_precision: int = DEFAULT_MAX_PRECISION,
                          *, lhs: Fraction | None = None) -> BoundCheck:
    """s(N_k) < e^gamma log log N_k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    lhs = primorial_abundancy(k) if lhs is None else lhs
    return _bound_check(k, lhs, lambda p: exp_gamma_enclosure(p) * log_primorial(k, p).log(), max_precision)


def primorial_sweep(k_from: int, k_to: int, i: int | None = None,
                    max_precision: int = DEFAULT_MAX_PRECISION) -> list[int]:
    """Indices whose check fails: the alpha_i bound if ``i`` is given, else plain Robin."""
    bad = []
    lhs = primorial_abundancy(k_from - 1) if k_from > 1 else Fraction(1)
    primes = prime_table(count=k_to).first(k_to)
    for k in range(k_from, k_to + 1):
        p = primes[k - 1]
        lhs *= Fraction(p + 1, p)
        if i is None:
            c = primorial_robin_check(k, max_precision, lhs=lhs)
        else:
            c = primorial_sharp_check(k, i, max_precision, lhs=lhs)
        if not c.holds:
            bad.append(k)
    return bad


# ---------------------------------------------------------------------------
# odd numbers
# ---------------------------------------------------------------------------

def _rhs_sigma_double(x, prec):
    return exp_gamma_enclosure(prec) * log_log_enclosure(2 * _as_iv(x, prec), prec)


def _rhs_sigma(x, prec):
    return Fraction(2, 3) * _rhs_sigma_double(x, prec)


def _rhs_phi(x, prec):
    return Fraction(1, 2) * rosser_upper(2 * _as_iv(x, prec), prec)


def _as_iv(x, prec) -> RealInterval:
    return x if isinstance(x, RealInterval) else RealInterval.exact(x, prec)


@dataclass(frozen=True)
class OddBounds:
    """The three odd-number bounds; the sigma ones are None below n = 17."""

    sigma_double: BoundCheck | None  # sigma(2n) < 2 e^gamma n log log 2n
    sigma: BoundCheck | None  # sigma(n) < (2/3) e^gamma n log log 2n
    phi: BoundCheck  # n/phi(n) <= (e^gamma log log 2n + 2.51/log log 2n)/2

    def __iter__(self):
        return iter((self.sigma_double, self.sigma, self.phi))

    @property
    def holds(self) -> bool:
        return all(c is None or c.holds for c in self)


def odd_bounds_check(n: int, max_precision: int = DEFAULT_MAX_PRECISION) -> OddBounds:
    if n < 3 or n % 2 == 0:
        raise DomainError(f"need an odd n >= 3, got {n}")
    from .arith import abundancy, phi_ratio

    phi = _bound_check(n, phi_ratio(n), lambda p: _rhs_phi(n, p), max_precision)
    if n < ODD_SIGMA_FROM:
        return OddBounds(None, None, phi)
    doubled = _bound_check(n, abundancy(2 * n), lambda p: _rhs_sigma_double(n, p), max_precision)
    single = _bound_check(n, abundancy(n), lambda p: _rhs_sigma(n, p), max_precision)
    return OddBounds(doubled, single, phi)


def _odd_chunk(a: int, b: int, max_precision: int) -> list[tuple[str, int, str]]:
    odd = sieve_segment(a, b)
    keep = odd.n % 2 == 1
    ns, sig, phi = odd.n[keep], odd.sigma[keep], odd.phi[keep]
    doubled = sieve_segment(2 * a, 2 * b)
    dkeep = doubled.n % 4 == 2
    out = []
    for name, num, den, rhs in (
        ("sigma_double", doubled.sigma[dkeep], doubled.n[dkeep], _rhs_sigma_double),
        ("sigma", sig, ns, _rhs_sigma),
    ):
        sel = ns >= ODD_SIGMA_FROM
        out += [(name, f.n, f.order.value) for f in
                certify_below(ns[sel], num[sel], den[sel], rhs, max_precision=max_precision)]
    out += [("phi", f.n, f.order.value) for f in
            certify_below(ns, ns, phi, _rhs_phi, max_precision=max_precision)]
    return out


def odd_bounds_sweep(start: int = 3, stop: int = DEFAULT_SWEEP_CEILING, *,
                     max_precision: int = DEFAULT_MAX_PRECISION, workers: int = 1) -> list[tuple[str, int, str]]:
    """Failures (bound name, n, order) over odd n in [start, stop]."""
    if start < 3:
        raise DomainError("odd sweep starts at n >= 3")
    parts = run_chunks(_odd_chunk, [(a, b, max_precision) for a, b in chunk_ranges(start, stop, _CHUNK)],
                       workers)
    return sorted(flatten(parts), key=lambda t: (t[1], t[0]))


# ---------------------------------------------------------------------------
# Robin / Rosser-Schoenfeld domination sweeps
# ---------------------------------------------------------------------------

def _domination_chunk(kind: str, a: int, b: int, max_precision: int) -> list[tuple[int, str]]:
    seg = sieve_segment(a, b)
    if kind == "robin":
        fails = certify_below(seg.n, seg.sigma, seg.n, robin_upper, max_precision=max_precision)
    elif kind == "rosser":
        fails = certify_below(seg.n, seg.n, seg.phi, rosser_upper, max_precision=max_precision)
    else:
        raise DomainError(f"unknown bound {kind!r}")
    return [(f.n, f.order.value) for f in fails]


def domination_sweep(kind: str, start: int = 3, stop: int = DEFAULT_SWEEP_CEILING, *,
                     max_precision: int = DEFAULT_MAX_PRECISION, workers: int = 1) -> list[tuple[int, str]]:
    """n in [start, stop] where s(n) (kind='robin') or f(n) (kind='rosser') is not certified below its bound."""
    if start < 3:
        raise DomainError("bounds are stated for n >= 3")
    parts = run_chunks(_domination_chunk, [(kind, a, b, max_precision)
                                           for a, b in chunk_ranges(start, stop, _CHUNK)], workers)
    return sorted(flatten(parts))


# ---------------------------------------------------------------------------
# auxiliary g functions
# ---------------------------------------------------------------------------

# variant -> (coefficient, inner multiplier, outer multiplier):
#   g(x) = c (e^gamma ll(a x) + 0.6483/ll(a x)) - e^gamma ll(b x)
G_VARIANTS = {
    "odd": (Fraction(2, 3), 2, 1),
    "doubled": (Fraction(6, 7), 4, 2),
    "squarefree": (Fraction(6, 7), 2, 1),
}


def g_value(variant: str, x, prec: int = DEFAULT_START_PRECISION) -> RealInterval:
    try:
        c, a, b = G_VARIANTS[variant]
    except KeyError:
        raise DomainError(f"unknown g variant {variant!r}") from None
    xi = _as_iv(x, prec)
    bound = _bound(log_log_enclosure(a * xi, prec), ROBIN_CONSTANT)
    return c * bound - exp_gamma_enclosure(prec) * log_log_enclosure(b * xi, prec)


def g_sign(variant: str, x: int, max_precision: int = DEFAULT_MAX_PRECISION) -> Ordering3:
    """Sign of g(x) as an ordering against 0."""
    return compare_detail(lambda p: g_value(variant, x, p), 0, max_precision).order


@dataclass(frozen=True)
class GCrossover:
    variant: str
    last_positive: int
    first_negative: int
    single_crossover: bool  # every x up to last_positive is positive, every x after negative
    monotone_failures: tuple[tuple[int, int], ...]
    x_range: tuple[int, int]
    undecided: tuple[int, ...] = ()  # x whose sign stayed open at the precision cap

    def __iter__(self):
        return iter((self.last_positive, self.first_negative))


def g_crossover(variant: str, x_max: int = 5000, *, samples: int = 100, seed: int = 0,
                max_precision: int = DEFAULT_MAX_PRECISION) -> GCrossover:
    """Locate the sign change of g on the integers [2, x_max].

    Also checks g(x1) > g(x2) for ``samples`` random pairs x1 < x2.
    """
    if variant not in G_VARIANTS:
        raise DomainError(f"unknown g variant {variant!r}")
    x_min = 2
    signs = [g_sign(variant, x, max_precision) for x in range(x_min, x_max + 1)]
    pos = [x for x, s in zip(range(x_min, x_max + 1), signs) if s is Ordering3.GREATER]
    neg = [x for x, s in zip(range(x_min, x_max + 1), signs) if s is Ordering3.LESS]
    if not pos or not neg:
        raise DomainError(f"no sign change of g on [{x_min}, {x_max}]")
    open_x = tuple(x for x, s in zip(range(x_min, x_max + 1), signs) if s is Ordering3.UNDECIDED)
    last_pos, first_neg = max(pos), min(neg)
    single = (last_pos + 1 == first_neg and len(pos) == last_pos - x_min + 1
              and len(neg) == x_max - first_neg + 1)
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        x1, x2 = sorted(rng.sample(range(x_min, x_max + 1), 2))
        comp = compare_detail(lambda p: g_value(variant, x1, p), lambda p: g_value(variant, x2, p),
                              max_precision)
        if comp.order is not Ordering3.GREATER:
            bad.append((x1, x2))
    return GCrossover(variant, last_pos, first_neg, single, tuple(bad), (x_min, x_max), open_x)


__all__ = [
    "BoundCheck", "GCrossover", "OddBounds", "SweepFailure", "alpha", "bound_checks_csv",
    "domination_sweep", "g_crossover", "g_sign", "g_value", "odd_bounds_check", "odd_bounds_sweep",
    "primorial_abundancy", "primorial_robin_check", "primorial_sharp_check", "primorial_sweep",
    "robin_upper", "rosser_upper", "three_quarters_failures",
]
