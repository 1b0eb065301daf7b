"""Exact integer arithmetic: prime tables plus multiplicative functions of factorizations.

Everything here is exact. Ratios are :class:`fractions.Fraction`, which is
always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import CapacityError, DomainError

ExactRatio = Fraction

DEFAULT_PRIME_LIMIT = 10**8

# Trial division bound used by factorize(); larger cofactors go to Pollard rho.
_TRIAL_LIMIT = 1 << 16

# Deterministic Miller-Rabin witness set, valid below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


# ---------------------------------------------------------------------------
# prime tables
# ---------------------------------------------------------------------------

def _sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


class PrimeTable:
    """All primes up to ``limit``, ascending. Immutable once built."""

    __slots__ = ("limit", "primes", "_list")

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("prime table limit must be at least 2")
        primes = _sieve(limit)
        primes.setflags(write=False)
        object.__setattr__(self, "limit", int(limit))
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "_list", None)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeTable is immutable")

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_list())

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit}, count={len(self)})"

    def as_list(self) -> list[int]:
        if self._list is None:
            object.__setattr__(self, "_list", self.primes.tolist())
        return self._list

    def prime(self, i: int) -> int:
        """Return p_i (1-based)."""
        if i < 1:
            raise ValueError("prime index is 1-based")
        if i > len(self.primes):
            raise CapacityError(f"p_{i} is beyond the table (limit {self.limit})")
        return int(self.primes[i - 1])

    def first(self, k: int) -> list[int]:
        if k > len(self.primes):
            raise CapacityError(f"p_{k} is beyond the table (limit {self.limit})")
        return self.as_list()[:k]

    def upto(self, x: int) -> list[int]:
        if x > self.limit:
            raise CapacityError(f"primes up to {x} requested, table limit is {self.limit}")
        return self.as_list()[: self.count_upto(x)]

    def count_upto(self, x: int) -> int:
        return int(np.searchsorted(self.primes, x, side="right"))

    def index_of(self, p: int) -> int:
        """1-based index of the prime p."""
        i = int(np.searchsorted(self.primes, p))
        if i == len(self.primes) or self.primes[i] != p:
            if p > self.limit:
                raise CapacityError(f"{p} is beyond the table (limit {self.limit})")
            raise DomainError(f"{p} is not prime")
        return i + 1

    def contains(self, n: int) -> bool:
        if n > self.limit:
            raise CapacityError(f"{n} is beyond the table (limit {self.limit})")
        i = int(np.searchsorted(self.primes, n))
        return i < len(self.primes) and int(self.primes[i]) == n


_table_lock = threading.Lock()
_table_cap = DEFAULT_PRIME_LIMIT
_shared_table: PrimeTable | None = None


def set_prime_limit(limit: int) -> None:
    """Set the largest prime-table limit the shared table may grow to."""
    global _table_cap
    if limit < 100:
        raise ValueError("prime limit must be at least 100")
    _table_cap = int(limit)


def prime_limit() -> int:
    return _table_cap


def nth_prime_upper(k: int) -> int:
    """An integer >= p_k (Rosser: p_k < k(log k + log log k) for k >= 6)."""
    if k < 6:
        return 13
    lk = math.log(k)
    return int(k * (lk + math.log(lk))) + 2


def prime_table(limit: int | None = None, count: int | None = None) -> PrimeTable:
    """Return a shared table covering all primes <= limit and at least ``count`` primes.

    Tables are rebuilt (never mutated) when a larger one is needed, up to the
    configured cap; beyond it a CapacityError is raised.
    """
    global _shared_table
    cap = _table_cap
    if limit is not None and limit > cap:
        raise CapacityError(f"need primes up to {limit}, prime limit is {cap}")
    need = min(cap, max(limit or 2, nth_prime_upper(count) if count else 2))
    table = _shared_table
    if table is None or table.limit < need:
        with _table_lock:
            table = _shared_table
            if table is None or table.limit < need:
                grow = max(need, 1 << 16, 2 * table.limit if table else 0)
                table = PrimeTable(min(grow, cap))
                _shared_table = table
    if count and (len(table) < count or table.prime(count) > cap):
        raise CapacityError(f"p_{count} is beyond the prime limit {cap}")
    return table


# ---------------------------------------------------------------------------
# primality and factorization
# ---------------------------------------------------------------------------

def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, BPSW-strength beyond."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n >= _MR_DETERMINISTIC_BOUND:
        import gmpy2

        return bool(gmpy2.is_bpsw_prp(n))
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition ``n = prod p**a``.

    ``pairs`` is a tuple of (prime, multiplicity), strictly increasing in the
    prime; the empty tuple is n = 1.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for p, a in self.pairs:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if a < 1:
                raise ValueError("multiplicities must be >= 1")
            last = p
        object.__setattr__(self, "pairs", tuple((int(p), int(a)) for p, a in self.pairs))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, a) for p, a in d.items() if a)))

    @property
    def value(self) -> int:
        return math.prod(p**a for p, a in self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.pairs)

    @property
    def omega(self) -> int:
        return len(self.pairs)

    def multiplicity(self, p: int) -> int:
        for q, a in self.pairs:
            if q == p:
                return a
        return 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{a}" for p, a in self.pairs)


def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by trial division, then Pollard-Brent on the cofactor."""
    n = int(n)
    if n < 1:
        raise DomainError(f"cannot factor {n}: need n >= 1")
    out: dict[int, int] = {}
    rem = n
    for p in prime_table(_TRIAL_LIMIT).as_list():
        if p * p > rem:
            break
        if rem % p == 0:
            a = 0
            while rem % p == 0:
                rem //= p
                a += 1
            out[p] = a
    if rem > 1:
        if rem < _TRIAL_LIMIT * _TRIAL_LIMIT:
            out[rem] = out.get(rem, 0) + 1
        else:
            # seeded: factorizations must be reproducible run to run
            _split(rem, out, random.Random(rem))
    return Factorization.from_dict(out)


def as_factorization(n: int | Factorization) -> Factorization:
    return n if isinstance(n, Factorization) else factorize(n)


# ---------------------------------------------------------------------------
# multiplicative functions
# ---------------------------------------------------------------------------

def divisor_sigma(n: int | Factorization) -> int:
    f = as_factorization(n)
    return math.prod((p ** (a + 1) - 1) // (p - 1) for p, a in f.pairs)


def euler_phi(n: int | Factorization) -> int:
    f = as_factorization(n)
    return math.prod(p**a - p ** (a - 1) for p, a in f.pairs)


def abundancy(n: int | Factorization) -> Fraction:
    """s(n) = sigma(n)/n."""
    f = as_factorization(n)
    return Fraction(divisor_sigma(f), f.value)


def phi_ratio(n: int | Factorization) -> Fraction:
    """f(n) = n/phi(n); depends only on the primes dividing n."""
    f = as_factorization(n)
    return Fraction(math.prod(f.primes), math.prod(p - 1 for p in f.primes))


def radical(n: int | Factorization) -> Factorization:
    f = as_factorization(n)
    return Factorization(tuple((p, 1) for p in f.primes))


def omega(n: int | Factorization) -> int:
    return as_factorization(n).omega


def prime_power_abundancy(p: int, a: int) -> Fraction:
    """s(p^a) = (p^(a+1) - 1) / (p^a (p - 1))."""
    if a < 1:
        raise DomainError("multiplicity must be >= 1")
    if p < 2:
        raise DomainError(f"{p} is not prime")
    return Fraction(p ** (a + 1) - 1, p**a * (p - 1))


def primorial(k: int, table: PrimeTable | None = None) -> int:
    """N_k, the product of the first k primes (N_0 = 1)."""
    if k < 0:
        raise DomainError("primorial index must be >= 0")
    if k == 0:
        return 1
    table = table or prime_table(count=k)
    return math.prod(table.first(k))


def primorials_upto(x: int) -> list[int]:
    """All N_k <= x with k >= 1."""
    out, acc, i = [], 1, 1
    while True:
        acc *= prime_table(count=i).prime(i)
        if acc > x:
            return out
        out.append(acc)
        i += 1


# ---------------------------------------------------------------------------
# range sieves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """Multiplicative data for every n in [start, stop], as int64 arrays."""

    n: np.ndarray
    sigma: np.ndarray
    phi: np.ndarray
    omega: np.ndarray
    min_exp: np.ndarray
    max_exp: np.ndarray

    @property
    def start(self) -> int:
        return int(self.n[0])

    def __len__(self) -> int:
        return len(self.n)


def sieve_segment(start: int, stop: int) -> Segment:
    """Segmented sieve of sigma, phi, omega and exponent extremes over [start, stop]."""
    if start < 1 or stop < start:
        raise DomainError(f"bad segment [{start}, {stop}]")
    if stop > 1 << 40:
        raise CapacityError("segment values too large for int64 sieving")
    n = np.arange(start, stop + 1, dtype=np.int64)
    rem = n.copy()
    sigma = np.ones_like(n)
    phi = np.ones_like(n)
    om = np.zeros_like(n)
    min_exp = np.full_like(n, 1 << 62)
    max_exp = np.zeros_like(n)
    for p in prime_table(math.isqrt(stop) + 1).upto(math.isqrt(stop)):
        sl = slice((-start) % p, None, p)
        sub = rem[sl]
        if not len(sub):
            continue
        e = np.zeros_like(sub)
        pk = np.ones_like(sub)
        mask = np.ones(len(sub), dtype=bool)
        while mask.any():
            sub[mask] //= p
            e[mask] += 1
            pk[mask] *= p
            mask = sub % p == 0
        rem[sl] = sub
        sigma[sl] *= (pk * p - 1) // (p - 1)
        phi[sl] *= pk - pk // p
        om[sl] += 1
        np.minimum(min_exp[sl], e, out=min_exp[sl])
        np.maximum(max_exp[sl], e, out=max_exp[sl])
    big = rem > 1
    sigma[big] *= rem[big] + 1
    phi[big] *= rem[big] - 1
    om[big] += 1
    min_exp[big] = np.minimum(min_exp[big], 1)
    max_exp[big] = np.maximum(max_exp[big], 1)
    min_exp[om == 0] = 0
    return Segment(n, sigma, phi, om, min_exp, max_exp)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[n] for 0 <= n <= limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in prime_table(limit).upto(math.isqrt(limit)):
        block = spf[p * p::p]
        block[block == 0] = p
    spf[2:][spf[2:] == 0] = np.flatnonzero(spf[2:] == 0) + 2
    spf[: min(2, limit + 1)] = 0
    return spf


def iter_factorizations(start: int, stop: int) -> Iterator[Factorization]:
    """Factorizations of start..stop in order, via a smallest-prime-factor table."""
    spf = smallest_prime_factors(stop).tolist()
    for n in range(start, stop + 1):
        pairs = []
        while n > 1:
            p = spf[n]
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            pairs.append((p, a))
        yield Factorization(tuple(pairs))
