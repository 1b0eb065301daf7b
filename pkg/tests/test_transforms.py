from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from robinkit import transforms as T
from robinkit.arith import abundancy, factorize
from robinkit.errors import DomainError
from robinkit.transforms import Relation


def test_swap_examples():
    out = T.swap_multiplicities(18, 2, 3)
    assert out.transformed.value == 12
    assert (out.size_relation, out.abundancy_relation) == (Relation.LESS, Relation.GREATER)
    assert oracles.s(12) == Fraction(7, 3) and oracles.s(18) == Fraction(13, 6)
    out = T.swap_multiplicities(12, 2, 3)
    assert out.transformed.value == 18
    assert (out.size_relation, out.abundancy_relation) == (Relation.GREATER, Relation.LESS)
    out = T.swap_multiplicities(6, 2, 3)
    assert out.transformed.value == 6
    assert (out.size_relation, out.abundancy_relation) == (Relation.EQUAL, Relation.EQUAL)


@pytest.mark.parametrize("n, p, q", [(18, 3, 2), (18, 2, 5), (10, 2, 3), (12, 3, 3)])
def test_swap_rejects(n, p, q):
    with pytest.raises(DomainError):
        T.swap_multiplicities(n, p, q)


@given(st.integers(6, 10**9), st.data())
@settings(max_examples=300, deadline=None)
def test_swap_contract_property(n, data):
    f = factorize(n)
    if f.omega < 2:
        return
    i, j = sorted(data.draw(st.lists(st.integers(0, f.omega - 1), min_size=2, max_size=2, unique=True)))
    (p, a), (q, b) = f.pairs[i], f.pairs[j]
    out = T.swap_multiplicities(f, p, q)
    # n* = n (p/q)^(b-a)
    assert out.transformed.value * q**b * p**a == n * p**b * q**a
    assert out.size_relation is Relation.of(a, b)
    assert out.abundancy_relation is Relation.of(b, a)


@pytest.mark.parametrize("n, a", [(18, 12), (12, 12), (750, 120)])
def test_sort_exponents(n, a):
    assert T.sort_exponents(n).value == a


@pytest.mark.parametrize("n, h", [(126, 60), (210, 210), (175, 12)])
def test_hr_compress(n, h):
    assert T.hr_compress(n).value == h


def test_sort_exponents_keeps_primes():
    f = T.sort_exponents(2 * 3**2 * 7**3)
    assert f.primes == (2, 3, 7) and f.exponents == (3, 2, 1)


@pytest.mark.parametrize("n, hr", [(360, True), (126, False), (1, True), (2, True), (3, False), (12, True), (18, False)])
def test_is_hardy_ramanujan(n, hr):
    assert T.is_hardy_ramanujan(n) is hr


@given(st.integers(1, 10**12))
@settings(max_examples=300, deadline=None)
def test_chain_property(n):
    a, h = T.sort_exponents(n), T.hr_compress(n)
    assert h.value <= a.value <= n
    assert abundancy(h) >= abundancy(a) >= abundancy(n)
    assert T.is_hardy_ramanujan(h)


def _dominator_oracle(n):
    sn = oracles.s(n)
    return next((m for m in range(1, n) if oracles.s(m) >= sn), None)


@pytest.mark.parametrize("n, b", [(3, 2), (9, 2), (12, None), (1, None)])
def test_least_dominator_examples(n, b):
    assert T.least_dominator(n) == b


def test_least_dominator_against_oracle():
    for n in range(1, 400):
        assert T.least_dominator(n) == _dominator_oracle(n)


def test_least_dominator_is_none_exactly_for_sa():
    sa = {r.value for r in T.superabundant_bruteforce(2000)}
    for n in range(1, 2001):
        assert (T.least_dominator(n) is None) == (n in sa)


def test_sa_small():
    recs = T.generate_superabundant(130)
    assert [r.value for r in recs] == [1, 2, 4, 6, 12, 24, 36, 48, 60, 120]
    assert [r.value for r in T.generate_superabundant(1)] == [1]
    assert all(r.is_hr for r in recs)
    assert all(r.abundancy == abundancy(r.value) for r in recs)


def test_sa_oracle_running_maxima():
    best, expect = Fraction(0), []
    for m in range(1, 5001):
        if oracles.s(m) > best:
            best = oracles.s(m)
            expect.append(m)
    assert [r.value for r in T.superabundant_bruteforce(5000)] == expect


def test_sa_paths_agree_small_cutoff():
    a = T.generate_superabundant(10**5, cutoff=10**5)
    b = T.generate_superabundant(10**5, cutoff=10)
    assert [r.value for r in a] == [r.value for r in b]


def test_sa_large_limit_uses_hr_search():
    recs = T.generate_superabundant(10**12)
    values = [r.value for r in recs]
    assert values == sorted(values)
    assert all(r.is_hr for r in recs)
    assert all(recs[i].abundancy < recs[i + 1].abundancy for i in range(len(recs) - 1))
    assert values[30:38] == [720720, 1441440, 2162160, 3603600, 4324320, 7207200, 8648640, 10810800]


def test_sarecord_json():
    r = T.generate_superabundant(12)[-1]
    assert r.to_json() == {"value": 12, "sigma": 28, "s_num": 7, "s_den": 3, "is_hr": True}


def test_hardy_ramanujan_numbers_complete():
    got = [v for v, _ in T.hardy_ramanujan_numbers(5000)]
    assert got == [n for n in range(1, 5001) if T.is_hardy_ramanujan(n)]
