from robinkit import properties as P


def test_prime_power_properties():
    assert P.prime_power_monotone(2000, 40) == []
    assert P.prime_power_ordering(2000, 40) == []
    assert P.ratio_decreasing_in_p(300, 16) == []
    assert P.step_below_prime_power(200, 16) == []


def test_submultiplicative():
    assert P.submultiplicative(2000, 10**5) == []


def test_abundancy_below_primorial_ratio():
    assert P.abundancy_below_primorial_ratio(10**5) == []


def test_swap_and_chain():
    assert P.swap_contract(1000) == []
    assert P.hr_chain(10**5) == []
