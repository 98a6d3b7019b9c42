"""Exact-arithmetic properties of the Gaussian-integer core."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zihecke.gaussint import (
    I,
    LAMBDA,
    GaussInt,
    canonical_decomposition,
    factor,
    gcd,
    is_coprime,
    is_gaussian_prime,
    is_primary,
    primarize,
    prime_above,
    reduce_mod,
    residue_system,
    units,
)

small_ints = st.integers(min_value=-200, max_value=200)
gaussints = st.builds(GaussInt, small_ints, small_ints)
nonzero = gaussints.filter(lambda z: not z.is_zero())


@given(gaussints, gaussints)
def test_norm_multiplicative(z, w):
    assert (z * w).norm() == z.norm() * w.norm()


@given(gaussints, nonzero)
def test_euclid_divmod_contract(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert 2 * r.norm() <= b.norm()


@given(nonzero)
def test_associates_share_norm(z):
    assert {(u * z).norm() for u in units()} == {z.norm()}


@given(gaussints, gaussints)
def test_gcd_divides_both(z, w):
    if z.is_zero() and w.is_zero():
        return
    g = gcd(z, w)
    assert not g.is_zero()
    if not z.is_zero():
        assert (z % g).is_zero()
    if not w.is_zero():
        assert (w % g).is_zero()
    # canonical: unit, or (1+i)^m times a primary element
    j, m, n = canonical_decomposition(g)
    assert j == 0


@given(nonzero)
def test_primarize_of_odd(z):
    if not z.is_odd():
        return
    u, p = primarize(z)
    assert u.norm() == 1
    assert u * p == z
    assert is_primary(p)
    assert p.norm() == z.norm()


@given(nonzero)
def test_factor_reassembles(z):
    unit, m, fs = factor(z)
    acc = unit * LAMBDA**m
    for w, e in fs:
        assert is_primary(w)
        assert is_gaussian_prime(w)
        acc = acc * w**e
    assert acc == z


@given(nonzero)
def test_canonical_decomposition_roundtrip(z):
    j, m, n = canonical_decomposition(z)
    assert 0 <= j <= 3
    assert is_primary(n)
    assert I**j * LAMBDA**m * n == z


@given(gaussints, gaussints)
def test_is_coprime_matches_gcd(z, w):
    if z.is_zero() and w.is_zero():
        return
    assert is_coprime(z, w) == (gcd(z, w).norm() == 1)


def test_exactly_one_primary_associate():
    for z in (GaussInt(3, 2), GaussInt(-1, 2), GaussInt(5, 0), GaussInt(0, 7)):
        primary = [u * z for u in units() if is_primary(u * z)]
        assert len(primary) == 1


def test_prime_above_cases():
    # split, inert, ramified rational primes
    w5 = prime_above(5)
    assert w5.norm() == 5 and is_primary(w5)
    w3 = prime_above(3)
    assert w3.norm() == 9 and is_primary(w3)
    w2 = prime_above(2)
    assert w2.norm() == 2


@settings(max_examples=30)
@given(nonzero)
def test_residue_system_size_is_norm(n):
    if n.norm() > 60:
        return
    rs = residue_system(n)
    assert len(rs) == n.norm()
    seen = {reduce_mod(z, n) for z in rs}
    assert len(seen) == n.norm()


@given(gaussints, nonzero)
def test_reduce_mod_is_congruent(z, n):
    r = reduce_mod(z, n)
    assert ((z - r) % n).is_zero()


def test_gaussint_value_semantics():
    assert GaussInt(3, 2) == GaussInt(3, 2)
    assert hash(GaussInt(3, 2)) == hash(GaussInt(3, 2))
    with pytest.raises(AttributeError):
        GaussInt(1, 0).re = 5
    assert GaussInt(3, 2).conj() == GaussInt(3, -2)
    assert str(GaussInt(-1, 2)) == "-1+2i"


def test_known_factorizations():
    unit, m, fs = factor(GaussInt(5, 0))
    assert m == 0 and len(fs) == 2
    assert math.prod(w.norm() ** e for w, e in fs) == 25
    unit, m, fs = factor(GaussInt(0, 32))
    assert m == 10 and fs == []
