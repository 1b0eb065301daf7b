"""Independent reference implementations used to freeze expected values.

Nothing here imports robinkit: divisors are enumerated, phi is a gcd
count, primes come from trial division and transcendental values from
mpmath at 50 digits.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

mpmath.mp.dps = 50
EG = mpmath.exp(mpmath.euler)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def sigma(n: int) -> int:
    return sum(divisors(n))


def phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def first_primes(k: int) -> list[int]:
    out, c = [], 1
    while len(out) < k:
        c += 1
        if is_prime(c):
            out.append(c)
    return out


def factor(n: int) -> dict[int, int]:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def s(n: int) -> Fraction:
    return Fraction(sigma(n), n)


def loglog(x) -> mpmath.mpf:
    return mpmath.log(mpmath.log(x))


def robin_rhs(n) -> mpmath.mpf:
    return EG * loglog(n)


def robin_violators(lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi + 1) if mpmath.mpf(sigma(n)) / n >= robin_rhs(n)]


def primorial(k: int) -> int:
    return math.prod(first_primes(k))


def f_primorial(k: int) -> mpmath.mpf:
    out = mpmath.mpf(1)
    for p in first_primes(k):
        out *= mpmath.mpf(p) / (p - 1)
    return out


def big_m(k: int) -> mpmath.mpf:
    return mpmath.exp(f_primorial(k) / EG) - mpmath.log(primorial(k))


def epsilon(k: int, d: int) -> mpmath.mpf:
    big_k, t = d * k, d * k + d - 1
    return (mpmath.exp(mpmath.mpf("1.41") / mpmath.log(big_k * mpmath.log(big_k))) - 1
            - k * mpmath.log(k) / (t * (mpmath.log(t) + mpmath.log(mpmath.log(t)))))
