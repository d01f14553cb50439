import pytest
from hypothesis import given, strategies as st

from cpbundles.arith import (Prime, Residue, atiyah_todd_valuation_bound, ceil_div,
                             floor_same_residue, is_metastable, is_prime, mod_rep,
                             p_valuation)
from cpbundles.errors import InvalidInput

primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def scan_floor(n, j, p):
    # walk down from n until the congruence holds
    m = n
    while (m - j) % (p - 1):
        m -= 1
    return m


def test_mod_rep_examples():
    assert mod_rep(7, 5) == 2
    assert mod_rep(-1, 5) == 4
    assert mod_rep(13, 3) == 1
    assert mod_rep(13, 3) == Residue(1, 3)


def test_mod_rep_rejects_zero_modulus():
    with pytest.raises(InvalidInput):
        mod_rep(3, 0)


def test_floor_same_residue_examples():
    assert floor_same_residue(13, 9, 3) == scan_floor(13, 9, 3) == 13
    assert floor_same_residue(13, 10, 3) == scan_floor(13, 10, 3) == 12
    for p in (2, 3, 5, 7):
        assert floor_same_residue(5, 5, p) == 5


def test_valuation_examples():
    assert p_valuation(15, 3) == 1
    assert p_valuation(9, 3) == 2
    assert p_valuation(7, 3) == 0
    with pytest.raises(InvalidInput):
        p_valuation(0, 3)


def test_atiyah_todd_bound():
    assert atiyah_todd_valuation_bound(5, 3) == 2
    assert atiyah_todd_valuation_bound(9, 5) == 2
    assert atiyah_todd_valuation_bound(1, 7) == 0
    with pytest.raises(InvalidInput):
        atiyah_todd_valuation_bound(0, 3)


def test_metastable_examples():
    assert is_metastable(9, 13)
    assert not is_metastable(5, 5)
    assert not is_metastable(2, 5)


def test_prime_validation():
    assert Prime(7) == 7
    assert str(Prime(7)) == "7"
    for bad in (0, 1, 4, 9, -3, 2.0, True):
        with pytest.raises(InvalidInput):
            Prime(bad)
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.integers(-10**6, 10**6), st.integers(1, 500))
def test_mod_rep_property(k, d):
    r = mod_rep(k, d).value
    assert 0 <= r < d and (k - r) % d == 0


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), primes)
def test_floor_same_residue_property(n, j, p):
    m = floor_same_residue(n, j, p)
    assert m == n - mod_rep(n - j, p - 1).value == scan_floor(n, j, p)
    assert (m - j) % (p - 1) == 0 and n - (p - 1) < m <= n


@given(st.integers(-10**9, 10**9).filter(bool), primes)
def test_valuation_property(n, p):
    e = p_valuation(n, p)
    assert n % p**e == 0 and n % p**(e + 1) != 0


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_metastable_property(r, n):
    assert is_metastable(r, n) == (2 * r >= n and r < n)


@given(st.integers(-100, 100), st.integers(1, 30))
def test_ceil_div(a, b):
    assert ceil_div(a, b) * b >= a > (ceil_div(a, b) - 1) * b
