import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from epslab.epsilon import (
    AdditiveCharDescriptor as Psi,
    ResidueMultChar,
    TameLocalCharacter,
    galois_gauss_sum_tau,
    gamma_factor,
    gamma_star,
    gauss_product_check,
    gauss_sum,
    hasse_davenport_check,
    residue_characters,
    tame_epsilon,
    unramified_twist_epsilon,
)
from epslab.errors import DomainError, UnsupportedError
from epslab.exactnum import CyclotomicNumber, embed_complex
from epslab.finfield import finite_field
from epslab.localdata import TameExtensionDescriptor as D

Z = CyclotomicNumber.zeta


def _brute_prime(p, exponent, c=1):
    # independent: discrete logs by sympy, sum in floating point
    g = sympy.primitive_root(p)
    total = 0
    for x in range(1, p):
        n = sympy.discrete_log(p, x, g)
        total += cmath.exp(2j * math.pi * exponent * n / (p - 1)) * cmath.exp(2j * math.pi * (c * x % p) / p)
    return total


def test_quadratic_mod3():
    g = gauss_sum(ResidueMultChar.of_order(3, 2))
    assert g == Z(3) - Z(3, 2)
    assert g * g == -3


def test_quadratic_mod5():
    g = gauss_sum(ResidueMultChar.of_order(5, 2))
    assert g == Z(5) - Z(5, 2) - Z(5, 3) + Z(5, 4)
    assert abs(complex(embed_complex(g)) - math.sqrt(5)) < 1e-14


def test_trivial_character():
    for q in (3, 4, 5, 9):
        assert gauss_sum(ResidueMultChar.of_order(q, 1)) == -1


def test_bad_twist():
    with pytest.raises(DomainError):
        gauss_sum(ResidueMultChar.of_order(5, 2), 0)
    with pytest.raises(DomainError):
        ResidueMultChar.of_order(7, 4)


def test_gauss_sums_match_brute_force():
    for p in (3, 5, 7, 11, 13):
        for chi in residue_characters(p):
            for c in (1, 2):
                g = complex(embed_complex(gauss_sum(chi, c % p or 1)))
                assert abs(g - _brute_prime(p, chi.exponent, c % p or 1)) < 1e-9


def test_gauss_sums_prime_power_brute():
    for q in (4, 8, 9, 25):
        F = finite_field(q)
        for chi in residue_characters(q):
            brute = sum(
                cmath.exp(2j * math.pi * chi.exponent * F.log(x) / (q - 1)) * cmath.exp(2j * math.pi * F.trace(x) / F.p)
                for x in F.units()
            )
            assert abs(complex(embed_complex(gauss_sum(chi))) - brute) < 1e-9


def test_hasse_davenport_examples():
    rep = hasse_davenport_check(ResidueMultChar.of_order(3, 2), 2)
    assert rep["pass"] and rep["lhs"] == -3
    assert hasse_davenport_check(ResidueMultChar.of_order(5, 4), 2)["pass"]
    assert hasse_davenport_check(ResidueMultChar.of_order(7, 3), 1)["pass"]
    with pytest.raises(DomainError):
        hasse_davenport_check(ResidueMultChar.of_order(5, 1), 2)


def test_epsilon_examples():
    assert tame_epsilon(TameLocalCharacter.trivial(D(5)), Psi.psi_xi()) == 1
    d = D(5, e_K=2)
    assert tame_epsilon(TameLocalCharacter.trivial(d), Psi.psi_K(d)) == 5
    chi = TameLocalCharacter(D(5), ResidueMultChar.of_order(5, 2))
    eps = tame_epsilon(chi, Psi.psi_xi())
    assert eps == gauss_sum(ResidueMultChar.of_order(5, 2))
    assert abs(abs(complex(embed_complex(eps))) ** 2 - 5) < 1e-12


def test_epsilon_anchor_is_discriminant():
    for p in (3, 5, 7):
        for eK in (1, 2, 4):
            for fK in (1, 2):
                if eK % p == 0:
                    continue
                d = D(p, e_K=eK, f_K=fK)
                assert tame_epsilon(TameLocalCharacter.trivial(d), Psi.psi_K(d)) == p**d.m
                assert galois_gauss_sum_tau(TameLocalCharacter.trivial(d)) == 1


def test_wild_and_mismatched():
    with pytest.raises(UnsupportedError):
        Psi.psi_K(D(3, e_K=3, disc_exponent=4))
    with pytest.raises(UnsupportedError):
        TameLocalCharacter(D(5, f_K=2), ResidueMultChar.of_order(5, 2))


def test_tau_quadratic():
    chi = TameLocalCharacter(D(5), ResidueMultChar.of_order(5, 2))
    assert galois_gauss_sum_tau(chi) == gauss_sum(ResidueMultChar.of_order(5, 2))


def test_gamma_examples():
    assert gamma_star(1) == 1
    assert gamma_star(3) == 2
    assert gamma_star(-1) == -1
    assert gamma_star(0) == 1
    assert gamma_factor({-1: 1}) == 1
    assert gamma_factor({}) == 1
    assert gamma_factor({-2: 1}) == 1
    assert gamma_factor({-4: 1}) == Fraction(1, 6)
    assert gamma_factor({3: 1}) == -6


def test_twist_examples():
    base = Z(5) + 2
    assert unramified_twist_epsilon(base, 3, 1, 1, 1) == base
    assert unramified_twist_epsilon(base, 0, 2, 0, 7) == base
    assert unramified_twist_epsilon(base, 2, 1, 0, Fraction(3)) == base * 9


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9, 11, 13, 16, 25]), st.data())
def test_gauss_product(q, data):
    F = finite_field(q)
    j = data.draw(st.integers(1, q - 2))
    c = data.draw(st.integers(1, q - 1))
    chi = ResidueMultChar(F, j)
    assert gauss_product_check(chi, c)["pass"]
    # modulus^2 = q
    z = complex(embed_complex(gauss_sum(chi, c)))
    assert abs(abs(z) ** 2 - q) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13]), st.data())
def test_epsilon_modulus(p, data):
    eK = data.draw(st.integers(1, 3))
    if eK % p == 0:
        return
    d = D(p, e_K=eK)
    j = data.draw(st.integers(0, p - 2))
    t = data.draw(st.fractions(min_value=0, max_value=1, max_denominator=12))
    n = data.draw(st.integers(0, 3))
    rp = ResidueMultChar(finite_field(p), j) if j else None
    chi = TameLocalCharacter(d, rp, Z(t.denominator, t.numerator))
    eps = complex(embed_complex(tame_epsilon(chi, Psi(n))))
    f = p ** chi.conductor_exponent
    assert abs(abs(eps) ** 2 - f * p ** (2 * n)) < 1e-6 * f * p ** (2 * n)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(1, 3), st.integers(0, 3), st.fractions(max_denominator=9).filter(bool), st.fractions(max_denominator=9).filter(bool))
def test_twist_composes(a, dim, n, u, v):
    base = Z(7) - 3
    once = unramified_twist_epsilon(unramified_twist_epsilon(base, a, dim, n, u), a, dim, n, v)
    assert once == unramified_twist_epsilon(base, a, dim, n, u * v)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.data())
def test_lift_is_character_of_norm(p, deg, data):
    F = finite_field(p)
    chi = ResidueMultChar(F, data.draw(st.integers(1, p - 2)))
    big = chi.lift(deg)
    x = data.draw(st.integers(1, big.q - 1))
    assert big(x) == chi(big.field.norm_to(x, F))
