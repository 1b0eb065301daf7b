"""Verdicts and range scans for Robin's inequality, grouped by category."""

from __future__ import annotations

import csv
import enum
import io
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import Factorization, as_factorization, divisor_sigma, primorial, primorials_upto, sieve_segment
from .errors import DomainError, PrecisionError
from .numerics import (
    DEFAULT_MAX_PRECISION,
    Ordering3,
    RealInterval,
    compare_detail,
    exp_gamma_enclosure,
    log_log_enclosure,
)
from .sweep import certify_below, chunk_ranges, flatten, run_chunks
from .thresholds import log_primorial, m_k_q, primorial_phi_ratio

log = logging.getLogger(__name__)

CLASSICAL_BOUND = 5040
DEFAULT_CHUNK = 1 << 16

EXCEPTIONS_BY_OMEGA = {
    1: (3, 4, 5, 8, 9, 16),
    2: (6, 10, 12, 18, 20, 24, 36, 48, 72),
    3: (30, 60, 84, 120, 180, 240, 360, 720),
    4: (840, 2520, 5040),
}
CLASSICAL_EXCEPTIONS = tuple(sorted(n for c in EXCEPTIONS_BY_OMEGA.values() for n in c))

ODD = "odd"
SQUARE_FREE = "square-free"
SQUARE_FULL = "square-full"
PRIMORIAL = "primorial"
OMEGA_LE_4 = "omega_le_4"
CATEGORIES = (ODD, SQUARE_FREE, SQUARE_FULL, PRIMORIAL, OMEGA_LE_4)

_EXPECTED = {
    ODD: (3, 5, 9),
    SQUARE_FREE: (2, 3, 5, 6, 10, 30),
    SQUARE_FULL: (4, 8, 9, 16, 36),
    PRIMORIAL: (2, 6, 30),
    OMEGA_LE_4: CLASSICAL_EXCEPTIONS,
}

# Ranges scanned by category_report; each covers the finite part of the
# corresponding argument (odd: 15, square-free: 418, omega <= 4: 116144).
DEFAULT_REPORT_RANGE = {
    ODD: 10**6,
    SQUARE_FREE: 10**6,
    SQUARE_FULL: 10**6,
    OMEGA_LE_4: 116144,
    PRIMORIAL: 200,  # primorial indices N_1 .. N_200
}


class Status(enum.Enum):
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class RobinVerdict:
    n: int
    status: Status
    margin: RealInterval  # encloses e^gamma log log n - s(n)
    precision_used: int

    @property
    def is_classical_exception(self) -> bool:
        return self.status is Status.VIOLATED and self.n <= CLASSICAL_BOUND

    @property
    def falsifies_rh(self) -> bool:
        return self.status is Status.VIOLATED and self.n > CLASSICAL_BOUND

    def to_json(self) -> dict:
        lo, hi = self.margin.to_float_bounds()
        return {
            "n": self.n,
            "status": self.status.value,
            "margin_lo": lo,
            "margin_hi": hi,
            "precision_bits": self.precision_used,
        }


def robin_rhs(x, prec: int) -> RealInterval:
    """e^gamma log log x, for an integer x or an interval of them."""
    return exp_gamma_enclosure(prec) * log_log_enclosure(x, prec)


_STATUS = {Ordering3.LESS: Status.SATISFIED, Ordering3.GREATER: Status.VIOLATED,
           Ordering3.UNDECIDED: Status.UNDECIDED}


def _verdict(f: Factorization, max_precision: int) -> RobinVerdict:
    n = f.value
    s = Fraction(divisor_sigma(f), n)
    comp = compare_detail(s, lambda p: robin_rhs(n, p), max_precision)
    return RobinVerdict(n, _STATUS[comp.order], comp.difference(), comp.precision)


def check(n: int | Factorization, max_precision: int = DEFAULT_MAX_PRECISION) -> RobinVerdict:
    """Rigorous verdict on s(n) < e^gamma log log n for n >= 3.

    Violated verdicts for n <= 5040 are the classical exceptions; anything
    else Violated would be a counterexample.
    """
    f = as_factorization(n)
    if f.value < 3:
        raise DomainError(f"Robin's inequality is checked for n >= 3, got {f.value}")
    v = _verdict(f, max_precision)
    if v.falsifies_rh:
        log.critical("Robin's inequality violated at n=%d > 5040", v.n)
    return v


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------

def classify(n: int | Factorization) -> frozenset[str]:
    f = as_factorization(n)
    tags = set()
    if f.value % 2 == 1:
        tags.add(ODD)
    if all(a == 1 for a in f.exponents):
        tags.add(SQUARE_FREE)
    if all(a >= 2 for a in f.exponents):
        tags.add(SQUARE_FULL)
    if f.omega >= 1 and f.value == primorial(f.omega):
        tags.add(PRIMORIAL)
    if f.omega <= 4:
        tags.add(OMEGA_LE_4)
    return frozenset(tags)


def _check_category(category: str | None) -> None:
    if category is not None and category not in CATEGORIES:
        raise DomainError(f"unknown category {category!r}; choose from {', '.join(CATEGORIES)}")


def _mask(seg, category: str | None, primorials: frozenset[int]) -> np.ndarray:
    if category is None:
        return np.ones(len(seg), dtype=bool)
    if category == ODD:
        return seg.n % 2 == 1
    if category == SQUARE_FREE:
        return seg.max_exp <= 1
    if category == SQUARE_FULL:
        return seg.min_exp >= 2
    if category == OMEGA_LE_4:
        return seg.omega <= 4
    if category == PRIMORIAL:
        return np.isin(seg.n, np.fromiter(primorials, dtype=np.int64, count=len(primorials)))
    raise DomainError(f"unknown category {category!r}")


def expected_exceptions(category: str, k: int | None = None) -> list[int]:
    """Exceptions to Robin's inequality within a category.

    ``omega_le_4`` with ``k`` given returns the set C_k of exceptions with
    exactly k prime factors.
    """
    _check_category(category)
    if category == OMEGA_LE_4 and k is not None:
        if k not in EXCEPTIONS_BY_OMEGA:
            raise DomainError(f"k must be 1..4, got {k}")
        return list(EXCEPTIONS_BY_OMEGA[k])
    return list(_EXPECTED[category])


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

def _scan_chunk(a: int, b: int, category: str | None, max_precision: int) -> list[tuple[int, str]]:
    seg = sieve_segment(a, b)
    keep = _mask(seg, category, frozenset(primorials_upto(b)))
    fails = certify_below(seg.n[keep], seg.sigma[keep], seg.n[keep], robin_rhs, max_precision=max_precision)
    return [(f.n, f.order.value) for f in fails]


def scan(start: int, stop: int, category: str | None = None, *,
         max_precision: int = DEFAULT_MAX_PRECISION, chunk_size: int = DEFAULT_CHUNK,
         workers: int = 1) -> list[int]:
    """All n in [start, stop] (in the category, if given) violating Robin's inequality.

    Raises PrecisionError if any n stays undecided at the precision cap.
    """
    if start < 3 or stop < start:
        raise DomainError(f"scan needs 3 <= start <= stop, got [{start}, {stop}]")
    _check_category(category)
    parts = run_chunks(_scan_chunk, [(a, b, category, max_precision)
                                     for a, b in chunk_ranges(start, stop, chunk_size)], workers)
    violated = []
    for n, order in sorted(flatten(parts)):
        if order == Ordering3.UNDECIDED.value:
            raise PrecisionError(f"verdict undecided at n={n} within {max_precision} bits",
                                 n=n, precision=max_precision)
        violated.append(n)
        if n > CLASSICAL_BOUND:
            log.critical("Robin's inequality violated at n=%d > 5040", n)
    return violated


def exceptions_csv(rows: list[int], category: str | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "status", "category"])
    for n in rows:
        w.writerow([n, Status.VIOLATED.value, category or "all"])
    return buf.getvalue()


@dataclass(frozen=True)
class CategoryReport:
    category: str
    scanned: tuple[int, int]
    found: tuple[int, ...]
    expected: tuple[int, ...]

    @property
    def match(self) -> bool:
        return self.found == self.expected

    def to_json(self) -> dict:
        return {"category": self.category, "scanned": list(self.scanned), "found": list(self.found),
                "expected": list(self.expected), "match": self.match}


def _violates_at_two(max_precision: int) -> bool:
    # log log 2 < 0 < s(2): outside check()'s contract but decidable directly
    comp = compare_detail(Fraction(3, 2), lambda p: robin_rhs(2, p), max_precision)
    return comp.order is Ordering3.GREATER


def category_report(category: str, upto: int | None = None, *,
                    max_precision: int = DEFAULT_MAX_PRECISION, workers: int = 1) -> CategoryReport:
    """Scan a category from n = 2 and compare its exceptions with the known list.

    For primorials ``upto`` is the largest index k checked; otherwise the
    largest n scanned.
    """
    _check_category(category)
    upto = upto or DEFAULT_REPORT_RANGE[category]
    if category == PRIMORIAL:
        found = []
        for k in range(1, upto + 1):
            n = primorial(k)
            if n == 2:
                bad = _violates_at_two(max_precision)
            else:
                v = _verdict(as_factorization(n), max_precision)
                if v.status is Status.UNDECIDED:
                    raise PrecisionError(f"undecided at N_{k}", n=n, precision=max_precision)
                bad = v.status is Status.VIOLATED
            if bad:
                found.append(n)
        return CategoryReport(category, (2, primorial(upto)), tuple(found), tuple(_EXPECTED[category]))
    found = []
    # the omega <= 4 exception sets are stated for n >= 3
    if category != OMEGA_LE_4 and category in classify(2) and _violates_at_two(max_precision):
        found.append(2)
    found += scan(3, upto, category, max_precision=max_precision, workers=workers)
    return CategoryReport(category, (2, upto), tuple(found), tuple(_EXPECTED[category]))


def omega4_tail_certified(bound: int = 116144, max_precision: int = DEFAULT_MAX_PRECISION) -> bool:
    """f(N_4) = 35/8 < e^gamma log log n for every n > bound (monotone in n)."""
    comp = compare_detail(Fraction(35, 8), lambda p: robin_rhs(bound + 1, p), max_precision)
    return comp.order is Ordering3.LESS


def squarefull_tail_failures(k_from: int = 5, k_to: int = 2000,
                             max_precision: int = DEFAULT_MAX_PRECISION) -> list[int]:
    """k in range where f(N_k) < e^gamma log log N_k^2 is not certified.

    A square-full n with omega(n) = k has n >= N_k^2 and s(n) < f(N_k).
    """
    bad = []
    for k in range(k_from, k_to + 1):
        comp = compare_detail(
            lambda p, k=k: primorial_phi_ratio(k, p),
            lambda p, k=k: exp_gamma_enclosure(p) * (2 * log_primorial(k, p)).log(),
            max_precision,
        )
        if comp.order is not Ordering3.LESS:
            bad.append(k)
    return bad


# ---------------------------------------------------------------------------
# sufficient conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaCertificate:
    omega: int
    holds: bool
    margin: RealInterval  # encloses e^gamma log log N_omega - f(N_omega)
    precision_used: int

    def __bool__(self) -> bool:
        return self.holds


def sufficient_by_omega(omega: int, max_precision: int = DEFAULT_MAX_PRECISION) -> OmegaCertificate:
    """Does f(N_omega) <= e^gamma log log N_omega hold (then every n with that omega satisfies Robin)?"""
    if omega < 1:
        raise DomainError("omega must be >= 1")
    comp = compare_detail(
        lambda p: primorial_phi_ratio(omega, p),
        lambda p: exp_gamma_enclosure(p) * log_primorial(omega, p).log(),
        max_precision,
    )
    if comp.order is Ordering3.UNDECIDED:
        raise PrecisionError(f"sufficient_by_omega undecided at omega={omega}", n=omega,
                             precision=comp.precision)
    return OmegaCertificate(omega, comp.order is Ordering3.LESS, comp.difference(), comp.precision)


def sufficient_by_domination(n: int | Factorization, max_precision: int = DEFAULT_MAX_PRECISION) -> int | None:
    """1-based index i with a_i >= M_{omega(n)}(q_i), or None."""
    f = as_factorization(n)
    if f.value < 2:
        raise DomainError("n must be >= 2")
    k = f.omega
    for i, (q, a) in enumerate(f.pairs, start=1):
        comp = compare_detail(a, lambda p, q=q: m_k_q(k, q, p), max_precision)
        if comp.order is Ordering3.UNDECIDED:
            raise PrecisionError(f"a_{i} vs M_{k}({q}) undecided", n=f.value, precision=comp.precision)
        if comp.order is Ordering3.GREATER:
            return i
    return None


FRACTION_CLAUSES = ((18, 2), (39, 3), (969_672_728, 14))


def sufficient_by_fraction(n: int | Factorization) -> bool:
    """At least omega(n)/d multiplicities differ from 1, with omega(n) past the clause threshold."""
    f = as_factorization(n)
    if f.value < 2:
        raise DomainError("n must be >= 2")
    w = f.omega
    big = sum(1 for a in f.exponents if a != 1)
    return any(w >= start and d * big >= w for start, d in FRACTION_CLAUSES)
