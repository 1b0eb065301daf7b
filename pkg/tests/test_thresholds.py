from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from robinkit import thresholds as T
from robinkit.errors import DomainError
from robinkit.numerics import RealInterval

# Frozen from oracles.big_m / oracles.epsilon (mpmath, 50 digits).
M5_2 = "11.33672600719879744119109219434813337543"
M5_3 = "7.521747992457612443541580670453780129664"
M1 = "2.380666300980277612667136302625409539764"


def test_big_m_against_oracle():
    for k in (1, 2, 5, 13, 40):
        assert T.big_m(k, 128).contains(oracles.big_m(k))
    assert T.big_m(1, 64).contains(mpmath.mpf(M1))
    assert T.big_m(1, 64).lo > 0


def test_m_k_q():
    assert T.m_k_q(5, 2, 64).contains(mpmath.mpf(M5_2))
    assert T.m_k_q(5, 3, 64).contains(mpmath.mpf(M5_3))
    m = T.m_k_q(5, 2)
    assert m.width() < Fraction(1, 10**4)
    assert Fraction("11.3367") <= Fraction(*m.lo.as_integer_ratio()) and m.hi < Fraction("11.3368")


def test_m_width_shrinks():
    widths = [T.big_m(5, p).width() for p in (64, 128, 256)]
    assert widths[0] > widths[1] > widths[2]


def test_log_primorial_and_f():
    for k in (1, 4, 13, 100):
        assert T.log_primorial(k, 128).contains(mpmath.log(oracles.primorial(k)))
        assert T.primorial_phi_ratio(k, 128).contains(oracles.f_primorial(k))
    assert T.primorial_phi_ratio(4).contains(Fraction(35, 8))


def test_m_positive_on_table_range():
    # f(N_k) > e^gamma log log N_k for every k here, which makes M(k) > 0
    assert all(T.big_m(k).lo > 0 for k in range(1, 2001))
    assert all(T.m_k_q(k, 2).lo > 1 for k in range(1, 50))


@pytest.mark.parametrize("k, d, bound", [(28, 2, Fraction(-3, 1000)), (109, 3, Fraction(-3, 10000)),
                                         (969672728, 14, Fraction(-1, 1000))])
def test_epsilon_examples(k, d, bound):
    e = T.epsilon(k, d)
    assert e.contains(oracles.epsilon(k, d))
    assert e.hi < bound


def test_epsilon_sign_change_points():
    # oracle: eps_27 (d=2) and eps_108 (d=3) are still positive
    assert T.epsilon(27, 2).lo > 0 and T.epsilon(108, 3).lo > 0


def test_epsilon_domain():
    with pytest.raises(DomainError):
        T.epsilon(12, 2)
    with pytest.raises(DomainError):
        T.epsilon(20, 5)


@given(st.integers(13, 10**9), st.sampled_from([2, 3, 14]))
@settings(max_examples=200, deadline=None)
def test_epsilon_enclosure_sound(k, d):
    assert T.epsilon(k, d, 64).contains(oracles.epsilon(k, d))


def test_verify_jk_ranges():
    assert T.verify_jk(2, 18, 2000).passed
    assert T.verify_jk(3, 39, 2000).passed
    assert T.verify_jk(14, 969672728, 969672730).passed


def test_verify_jk_small_k_reports_failures():
    rep = T.verify_jk(2, 2, 17)
    assert not rep.passed and rep.failures == tuple(range(2, 18))
    assert not T.verify_jk(3, 2, 38).passed


def test_epsilon_decreasing_and_chain():
    assert T.epsilon_decreasing(2, 28, 10**5) == []
    assert T.epsilon_decreasing(3, 109, 10**5) == []
    for d in (2, 3, 14):
        assert T.epsilon_chain_failures(d, 13, 10**4) == []


def test_massias():
    b = T.massias_bounds(13)
    assert b[1].contains(mpmath.log(oracles.primorial(13)))
    assert abs(float(b[1]) - 33.35) < 0.01 and abs(float(b[0]) - 33.34) < 0.01 and abs(float(b[2]) - 45.6) < 0.1
    assert T.massias_check(13)
    T.massias_check(12)  # outside the cited range: evaluated, not asserted
    assert T.massias_sweep(13, 10**5) == []


def test_threshold_table():
    table = T.threshold_table([3, 1, 2], qs=(2, 3))
    assert [r.k for r in table.rows] == [1, 2, 3]
    lines = table.to_csv().splitlines()
    assert lines[0] == "k,M_lo,M_hi,logNk_lo,logNk_hi,Mk2_lo,Mk2_hi,Mk3_lo,Mk3_hi"
    assert len(lines) == 4
    js = table.to_json()
    assert js[0]["k"] == 1 and set(js[0]["Mk"]) == {"2", "3"}
    lo, hi = js[0]["M"]
    assert lo <= float(oracles.big_m(1)) <= hi


def test_counterexample_bounds():
    b = T.counterexample_bounds()
    assert b.log_log_c_lower.contains(10 * mpmath.log(10) + mpmath.log(mpmath.log(10)))
    assert b.log_log_c_lower.lo > Fraction("23.85988")
    assert b.log_p_lower.lo > Fraction("23.81789")
    assert round(float(b.log_log_c_lower), 5) == 23.85988
    assert round(float(b.log_p_lower), 5) == 23.81790
    assert b.omega_lower >= 960_000_000
    assert b.relative_gap < 0.01
    assert b.reference_omega_lower == 969_672_728


def test_largest_prime_degenerate():
    x = T.largest_prime_log_lower(RealInterval.exact(2, 64))
    assert x.contains(1)


def test_dusart_bound_vs_exact_pi():
    # pi(10^5) = 9592, pi(10^6) = 78498
    assert T.dusart_pi_lower(RealInterval.exact(10**5)).hi <= 9592
    assert T.dusart_pi_lower(RealInterval.exact(10**6)).hi <= 78498
    with pytest.raises(DomainError):
        T.dusart_pi_lower(RealInterval.exact(1000))


def test_ratio_window():
    lo, hi = T.ratio_window(1_000_003)
    assert hi == 1 and lo.hi < 1
    assert lo.contains(mpmath.exp(-1 / mpmath.log(1_000_003)))
    prev = None
    for p in (3, 101, 10007, 1_000_003):
        cur = T.ratio_window(p)[0]
        if prev is not None:
            assert cur.lo > prev.hi
        prev = cur
    with pytest.raises(DomainError):
        T.ratio_window(2)
    p, upper = T.log_c_window(101)
    assert p == 101 and upper.lo > 101


def test_exponent_caps():
    assert T.exponent_caps(3, 5, 2)[0] == 32
    assert T.exponent_caps(4, 5, 2)[0] == 2 * T.exponent_caps(3, 5, 2)[0]
    cap = T.exponent_caps(40, 5, 3)[1]
    assert cap.contains(5 * mpmath.exp(oracles.big_m(5)))
    assert cap.hi < 2**42  # the e^M cap is the binding one for large c1
    with pytest.raises(DomainError):
        T.exponent_caps(3, 5, 1)
