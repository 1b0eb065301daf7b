import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from robinkit import arith
from robinkit.arith import Factorization, factorize
from robinkit.errors import CapacityError, DomainError


@pytest.mark.parametrize("n, pairs", [(1, ()), (12, ((2, 2), (3, 1))), (5041, ((71, 2),))])
def test_factorize_examples(n, pairs):
    assert factorize(n).pairs == pairs


def test_factorize_zero_rejected():
    with pytest.raises(DomainError):
        factorize(0)


def test_factorization_text():
    assert str(factorize(12)) == "2^2 * 3^1"
    assert str(factorize(1)) == "1"


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        Factorization(((2, 0),))


@pytest.mark.parametrize("n", [2**61 - 1, (2**31 - 1) * (2**61 - 1), 600851475143, 10**18 + 9, 3**40 * 7])
def test_factorize_large(n):
    f = factorize(n)
    assert f.value == n
    assert all(arith.is_probable_prime(p) for p in f.primes)


@given(st.integers(1, 10**12))
@settings(max_examples=300, deadline=None)
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.value == n
    assert list(f.primes) == sorted(set(f.primes))
    assert all(a >= 1 for a in f.exponents)


@given(st.integers(1, 10**5))
def test_factorize_matches_trial_division(n):
    assert dict(factorize(n).pairs) == oracles.factor(n)


def test_is_probable_prime_small():
    ps = set(oracles.primes_upto(5000))
    assert [n for n in range(5001) if arith.is_probable_prime(n)] == sorted(ps)


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (2047, 3215031751, 3825123056546413051, 318665857834031151167461):
        assert not arith.is_probable_prime(n)


@pytest.mark.parametrize("n, sigma", [(1, 1), (12, 28), (5040, 19344)])
def test_divisor_sigma_examples(n, sigma):
    assert arith.divisor_sigma(n) == sigma == oracles.sigma(n)


@pytest.mark.parametrize("n, phi", [(1, 1), (12, 4), (30, 8)])
def test_euler_phi_examples(n, phi):
    assert arith.euler_phi(n) == phi == oracles.phi(n)


@pytest.mark.parametrize("n, s", [(1, Fraction(1)), (30, Fraction(12, 5)), (5040, Fraction(403, 105))])
def test_abundancy_examples(n, s):
    assert arith.abundancy(n) == s


def test_phi_ratio_examples():
    assert arith.phi_ratio(1) == 1
    assert arith.phi_ratio(210) == Fraction(35, 8)
    assert arith.phi_ratio(12) == arith.phi_ratio(6) == 3


@pytest.mark.parametrize("n, rad", [(1, 1), (12, 6), (5040, 210)])
def test_radical(n, rad):
    assert arith.radical(n).value == rad


@pytest.mark.parametrize("k, value", [(0, 1), (4, 210), (13, 304250263527210)])
def test_primorial(k, value):
    assert arith.primorial(k) == value == oracles.primorial(k)


@pytest.mark.parametrize("p, a, s", [(2, 1, Fraction(3, 2)), (2, 3, Fraction(15, 8)), (3, 2, Fraction(13, 9))])
def test_prime_power_abundancy(p, a, s):
    assert arith.prime_power_abundancy(p, a) == s == oracles.s(p**a)


def test_sieve_against_oracles():
    n = 10**5
    seg = arith.sieve_segment(1, n)
    brute = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        brute[d::d] += d
    assert np.array_equal(seg.sigma, brute[1:])
    # Gauss: sum over d | n of phi(d) equals n
    gauss = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        gauss[d::d] += seg.phi[d - 1]
    assert np.array_equal(gauss[1:], seg.n)
    for m in range(1, 2001):
        assert seg.phi[m - 1] == oracles.phi(m)


@given(st.integers(1, 10**9), st.integers(1, 5000))
@settings(max_examples=50, deadline=None)
def test_segment_matches_factorization(start, length):
    seg = arith.sieve_segment(start, start + length - 1)
    for i in range(0, length, max(1, length // 20)):
        n = start + i
        f = factorize(n)
        assert seg.sigma[i] == arith.divisor_sigma(f)
        assert seg.phi[i] == arith.euler_phi(f)
        assert seg.omega[i] == f.omega
        if n > 1:
            assert seg.min_exp[i] == min(f.exponents)
            assert seg.max_exp[i] == max(f.exponents)


def test_prime_table():
    t = arith.PrimeTable(100)
    assert t.prime(1) == 2 and t.first(4) == [2, 3, 5, 7]
    assert t.count_upto(100) == 25 and t.contains(97) and not t.contains(91)
    with pytest.raises(CapacityError):
        t.prime(26)
    assert not t.primes.flags.writeable


def test_prime_table_limit_cap():
    old = arith.prime_limit()
    try:
        arith.set_prime_limit(1000)
        with pytest.raises(CapacityError):
            arith.primorial(200)
    finally:
        arith.set_prime_limit(old)


def test_iter_factorizations():
    for f in arith.iter_factorizations(1, 500):
        assert dict(f.pairs) == oracles.factor(f.value)


def test_exact_ratio_reduced():
    s = arith.abundancy(5040)
    assert math.gcd(s.numerator, s.denominator) == 1 and s.denominator > 0
