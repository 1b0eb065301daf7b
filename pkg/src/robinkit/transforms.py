"""Exponent-rearranging transforms of n, and superabundant numbers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import (
    Factorization,
    abundancy,
    as_factorization,
    divisor_sigma,
    prime_power_abundancy,
    prime_table,
    sieve_segment,
)
from .errors import DomainError
from .sweep import chunk_ranges

DEFAULT_SA_CUTOFF = 10**6
_CHUNK = 1 << 16


class Relation(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    @classmethod
    def of(cls, a, b) -> "Relation":
        if a < b:
            return cls.LESS
        if a > b:
            return cls.GREATER
        return cls.EQUAL


@dataclass(frozen=True)
class SwapOutcome:
    original: Factorization
    transformed: Factorization
    size_relation: Relation
    abundancy_relation: Relation


def swap_multiplicities(n: int | Factorization, p: int, q: int) -> SwapOutcome:
    """Exchange the multiplicities of primes p < q in n.

    Relations compare the transformed number against the original, exactly.
    """
    f = as_factorization(n)
    if p >= q:
        raise DomainError(f"need p < q, got p={p}, q={q}")
    a, b = f.multiplicity(p), f.multiplicity(q)
    if a == 0 or b == 0:
        raise DomainError(f"{p} and {q} must both divide {f.value}")
    swapped = {r: (b if r == p else a if r == q else e) for r, e in f.pairs}
    g = Factorization.from_dict(swapped)
    return SwapOutcome(
        original=f,
        transformed=g,
        size_relation=Relation.of(g.value, f.value),
        abundancy_relation=Relation.of(abundancy(g), abundancy(f)),
    )


def _sorted_exponents(f: Factorization) -> list[int]:
    return sorted(f.exponents, reverse=True)


def sort_exponents(n: int | Factorization) -> Factorization:
    """A(n): keep the primes, reorder multiplicities non-increasing."""
    f = as_factorization(n)
    return Factorization(tuple(zip(f.primes, _sorted_exponents(f))))


def hr_compress(n: int | Factorization) -> Factorization:
    """H(n): first omega(n) primes carrying the multiplicities of n, non-increasing."""
    f = as_factorization(n)
    primes = prime_table(count=f.omega).first(f.omega)
    return Factorization(tuple(zip(primes, _sorted_exponents(f))))


def is_hardy_ramanujan(n: int | Factorization) -> bool:
    f = as_factorization(n)
    if f.primes != tuple(prime_table(count=f.omega).first(f.omega)):
        return False
    e = f.exponents
    return all(e[i] >= e[i + 1] for i in range(len(e) - 1))


def least_dominator(n: int | Factorization) -> int | None:
    """B(n): the least m < n with s(m) >= s(n); None exactly when n is superabundant."""
    f = as_factorization(n)
    v, sv = f.value, divisor_sigma(f)
    if v <= 1:
        return None
    for a, b in chunk_ranges(1, v - 1, _CHUNK):
        seg = sieve_segment(a, b)
        # s(m) >= s(n)  <=>  sigma(m) * n >= sigma(n) * m
        if int(seg.sigma.max()) * v < 1 << 62 and sv * b < 1 << 62:
            hits = np.flatnonzero(seg.sigma * v >= sv * seg.n)
            if len(hits):
                return int(seg.n[hits[0]])
        else:
            for m, s in zip(seg.n.tolist(), seg.sigma.tolist()):
                if s * v >= sv * m:
                    return m
    return None


@dataclass(frozen=True)
class SARecord:
    value: int
    abundancy: Fraction
    is_hr: bool

    @property
    def sigma(self) -> int:
        return self.abundancy.numerator * self.value // self.abundancy.denominator

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "sigma": self.sigma,
            "s_num": self.abundancy.numerator,
            "s_den": self.abundancy.denominator,
            "is_hr": self.is_hr,
        }


def _record(value: int, s: Fraction) -> SARecord:
    return SARecord(value, s, is_hardy_ramanujan(value))


def superabundant_bruteforce(limit: int) -> list[SARecord]:
    """Running strict maxima of s(m) over 1..limit."""
    if limit < 1:
        raise DomainError("limit must be >= 1")
    if limit >= 1 << 40:
        raise DomainError("brute-force SA search is limited to limits below 2^40")
    out = [_record(1, Fraction(1))]
    best_num, best_den = 1, 1
    best_float = 1.0
    for a, b in chunk_ranges(2, limit, _CHUNK):
        seg = sieve_segment(a, b)
        s = seg.sigma / seg.n
        # A float value clearly below the exact running maximum cannot be a record.
        prefix = np.maximum.accumulate(np.concatenate(([best_float], s[:-1])))
        cand = np.flatnonzero(s >= prefix * (1 - 1e-9))
        for i in cand.tolist():
            m, sm = int(seg.n[i]), int(seg.sigma[i])
            if sm * best_den > best_num * m:
                best_num, best_den = sm, m
                best_float = max(best_float, sm / m)
                out.append(_record(m, Fraction(sm, m)))
        best_float = max(best_float, float(s.max()))
    return out


def hardy_ramanujan_numbers(limit: int) -> list[tuple[int, tuple[int, ...]]]:
    """All HR numbers <= limit with their exponent vectors, ascending by value."""
    out: list[tuple[int, tuple[int, ...]]] = [(1, ())]
    primes: list[int] = []

    def prime(i: int) -> int:
        while len(primes) <= i:
            primes.append(prime_table(count=len(primes) + 1).prime(len(primes) + 1))
        return primes[i]

    def rec(i: int, cap: int, value: int, exps: tuple[int, ...]) -> None:
        p = prime(i)
        v = value
        for e in range(1, cap + 1):
            v *= p
            if v > limit:
                return
            cur = exps + (e,)
            out.append((v, cur))
            rec(i + 1, e, v, cur)

    if limit >= 2:
        rec(0, limit.bit_length(), 1, ())
    out.sort()
    return out


def superabundant_hr_search(limit: int) -> list[SARecord]:
    """SA numbers as the running records of s over HR numbers.

    Complete because s(m) <= s(H(m)) with H(m) <= m, so any m beating all
    smaller HR numbers beats all smaller integers too.
    """
    if limit < 1:
        raise DomainError("limit must be >= 1")
    out = []
    best = Fraction(0)
    for value, exps in hardy_ramanujan_numbers(limit):
        s = Fraction(1)
        for i, e in enumerate(exps):
            s *= prime_power_abundancy(prime_table(count=i + 1).prime(i + 1), e)
        if s > best:
            best = s
            out.append(SARecord(value, s, True))
    return out


def generate_superabundant(limit: int, cutoff: int = DEFAULT_SA_CUTOFF) -> list[SARecord]:
    """All superabundant numbers <= limit, ascending.

    Brute force up to ``cutoff``, HR-pattern search above it.
    """
    if limit <= cutoff:
        return superabundant_bruteforce(limit)
    return superabundant_hr_search(limit)
