"""Finite-range property checks for the abundancy and its transforms.

Every function returns the list of counterexamples it found; an empty list
means the property held on the whole range. Comparisons are exact.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .arith import (
    Factorization,
    abundancy,
    factorize,
    prime_power_abundancy,
    prime_table,
    primorial,
    sieve_segment,
    smallest_prime_factors,
)
from .transforms import Relation, swap_multiplicities

DEFAULT_SEED = 20240229


def _primes(upto: int) -> list[int]:
    return prime_table(limit=upto).upto(upto)


def prime_power_monotone(p_max: int = 10**4, k_max: int = 64) -> list[tuple[int, int]]:
    """s(p^{k+1}) > s(p^k), and the step ratio strictly decreasing in k, for p <= p_max, k < k_max."""
    bad = []
    for p in _primes(p_max):
        prev_s = prime_power_abundancy(p, 1)
        prev_ratio = None
        for k in range(1, k_max):
            s = prime_power_abundancy(p, k + 1)
            ratio = s / prev_s
            if not s > prev_s or (prev_ratio is not None and not ratio < prev_ratio):
                bad.append((p, k))
            prev_s, prev_ratio = s, ratio
    return bad


def prime_power_ordering(p_max: int = 10**4, e_max: int = 64) -> list[tuple[int, int]]:
    """s(p^a) > s(q^b) for all primes p < q <= p_max and 1 <= a, b <= e_max.

    With s(p^a) increasing in a (see ``prime_power_monotone``) the worst case
    for a pair is a = 1, b = e_max, and with s(q^e_max) decreasing in q the
    worst q is the next prime, so consecutive primes settle every pair.
    Returns failing (p, q) pairs, where q = p marks a failure of the
    decrease in q.
    """
    ps = _primes(p_max)
    bad = []
    top = [prime_power_abundancy(q, e_max) for q in ps]
    for i in range(len(ps) - 1):
        p, q = ps[i], ps[i + 1]
        if not prime_power_abundancy(p, 1) > top[i + 1]:
            bad.append((p, q))
        if not top[i + 1] < top[i]:
            bad.append((q, q))
    return bad


def ratio_decreasing_in_p(p_max: int = 10**3, e_max: int = 32) -> list[tuple[int, int, int]]:
    """For a > b, s(p^a)/s(p^b) strictly decreases as p runs over primes <= p_max."""
    ps = _primes(p_max)
    bad = []
    for a in range(2, e_max + 1):
        for b in range(1, a):
            prev = None
            for p in ps:
                r = prime_power_abundancy(p, a) / prime_power_abundancy(p, b)
                if prev is not None and not r < prev:
                    bad.append((p, a, b))
                prev = r
    return bad


def step_below_prime_power(p_max: int = 10**3, e_max: int = 32, full_grid: int = 30) -> list[tuple[int, int]]:
    """s(p^{a+1})/s(p^a) < s(q^b) whenever q < p(p+1), p, q <= p_max, a, b <= e_max.

    The step ratio is largest at a = 1 and s(q^b) smallest at b = 1, so the
    a = b = 1 case covers the grid; primes up to ``full_grid`` are also
    checked over every (a, b) directly.
    """
    ps = _primes(p_max)
    bad = []
    for p in ps:
        step = prime_power_abundancy(p, 2) / prime_power_abundancy(p, 1)
        for q in ps:
            if q < p * (p + 1) and not step < 1 + Fraction(1, q):
                bad.append((p, q))
    small = [p for p in ps if p <= full_grid]
    for p in small:
        steps = [prime_power_abundancy(p, a + 1) / prime_power_abundancy(p, a) for a in range(1, e_max + 1)]
        for q in small:
            if q >= p * (p + 1):
                continue
            floor_q = min(prime_power_abundancy(q, b) for b in range(1, e_max + 1))
            if not max(steps) < floor_q:
                bad.append((p, q))
    return bad


def submultiplicative(pairs: int = 10**4, upper: int = 10**6, seed: int = DEFAULT_SEED) -> list[tuple[int, int]]:
    """s(mn) <= s(m)s(n) with equality iff gcd(m, n) = 1, on random pairs in [2, upper]."""
    rng = random.Random(seed)
    bad = []
    for _ in range(pairs):
        m, n = rng.randint(2, upper), rng.randint(2, upper)
        lhs, rhs = abundancy(m * n), abundancy(m) * abundancy(n)
        if lhs > rhs or (lhs == rhs) != (math.gcd(m, n) == 1):
            bad.append((m, n))
    return bad


def abundancy_below_primorial_ratio(upper: int = 10**6, chunk: int = 1 << 18) -> list[int]:
    """2 <= n <= upper with s(n) >= f(N_omega(n))."""
    f = []
    k = 0
    while primorial(k) <= upper:
        num = den = 1
        for p in prime_table(count=max(k, 1)).first(k):
            num *= p
            den *= p - 1
        g = math.gcd(num, den)
        f.append((num // g, den // g))
        k += 1
    bad: list[int] = []
    for a in range(2, upper + 1, chunk):
        seg = sieve_segment(a, min(a + chunk - 1, upper))
        num = np.array([f[w][0] for w in range(len(f))], dtype=np.int64)[seg.omega]
        den = np.array([f[w][1] for w in range(len(f))], dtype=np.int64)[seg.omega]
        # s(n) < num/den  <=>  sigma * den < num * n
        bad += seg.n[~(seg.sigma * den < num * seg.n)].tolist()
    return bad


def _random_multi_prime(rng: random.Random, upper: int) -> Factorization:
    while True:
        f = factorize(rng.randint(6, upper))
        if f.omega >= 2:
            return f


def swap_contract(instances: int = 10**4, upper: int = 10**9, seed: int = DEFAULT_SEED) -> list[tuple[int, int, int]]:
    """Exchanging the multiplicities a of p and b of q (p < q) moves n and s(n) oppositely.

    Every valid pair of each random n is tried.
    """
    rng = random.Random(seed)
    bad = []
    for _ in range(instances):
        f = _random_multi_prime(rng, upper)
        for i, (p, a) in enumerate(f.pairs):
            for q, b in f.pairs[i + 1:]:
                out = swap_multiplicities(f, p, q)
                # a < b moves n down and s(n) up
                if out.size_relation is not Relation.of(a, b) or out.abundancy_relation is not Relation.of(b, a):
                    bad.append((f.value, p, q))
    return bad


def _sigma_from(primes, exps) -> int:
    out = 1
    for p, e in zip(primes, exps):
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def hr_chain(upper: int = 10**6) -> list[int]:
    """n <= upper failing H(n) <= A(n) <= n or s(H(n)) >= s(A(n)) >= s(n)."""
    spf = smallest_prime_factors(upper).tolist()
    first = prime_table(count=16).first(16)
    h_cache: dict[tuple[int, ...], tuple[int, int]] = {}
    bad = []
    for n in range(2, upper + 1):
        primes, exps = [], []
        m = n
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            primes.append(p)
            exps.append(e)
        sig = _sigma_from(primes, exps)
        srt = tuple(sorted(exps, reverse=True))
        if tuple(exps) == srt:
            a_val, a_sig = n, sig
        else:
            a_val = math.prod(p**e for p, e in zip(primes, srt))
            a_sig = _sigma_from(primes, srt)
        if srt not in h_cache:
            h_cache[srt] = (math.prod(p**e for p, e in zip(first, srt)), _sigma_from(first, srt))
        h_val, h_sig = h_cache[srt]
        # s(x) >= s(y)  <=>  sigma(x) * y >= sigma(y) * x
        if not (h_val <= a_val <= n and h_sig * a_val >= a_sig * h_val and a_sig * n >= sig * a_val):
            bad.append(n)
    return bad


__all__ = [
    "abundancy_below_primorial_ratio", "hr_chain", "prime_power_monotone", "prime_power_ordering",
    "ratio_decreasing_in_p", "step_below_prime_power", "submultiplicative", "swap_contract",
]
