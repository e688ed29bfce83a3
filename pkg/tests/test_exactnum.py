import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from epslab.errors import DomainError
from epslab.exactnum import (
    CyclotomicNumber,
    cyclo_arith,
    cyclotomic_polynomial,
    embed_complex,
    galois_act,
    p_unit_check,
)

Z = CyclotomicNumber.zeta


def test_zeta3_sum():
    assert cyclo_arith(Z(3), Z(3, 2), "add") == -1


def test_i_squared():
    assert cyclo_arith(Z(4), Z(4), "mul") == -1


def test_phi5_at_one():
    acc = CyclotomicNumber.from_rational(1)
    for k in range(1, 5):
        acc = acc * (1 - Z(5, k))
    assert acc == 5


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        cyclo_arith(Z(5), CyclotomicNumber.from_rational(0, 5), "div")


def test_unknown_op():
    with pytest.raises(DomainError):
        cyclo_arith(Z(5), Z(5), "pow")


def test_order_is_lcm():
    assert cyclo_arith(Z(3), Z(4), "mul").order == 12


def test_cyclotomic_polynomials_brute_force():
    # Phi_n(x) divides x^n - 1 and has degree phi(n); check coefficients against roots
    for n in range(1, 31):
        coeffs = cyclotomic_polynomial(n)
        roots = [cmath.exp(2j * math.pi * k / n) for k in range(n) if math.gcd(k, n) == 1]
        assert len(coeffs) - 1 == len(roots)
        for r in roots:
            assert abs(sum(c * r**i for i, c in enumerate(coeffs))) < 1e-8


def test_galois_examples():
    x = Z(5, 3) + Z(5) * Fraction(1, 2)
    assert galois_act(1, x) == x
    assert galois_act(2, Z(5)) == Z(5, 2)
    period = Z(5) + Z(5, 4)
    assert galois_act(4, period) == period
    with pytest.raises(DomainError):
        galois_act(5, Z(10))


def test_embed_examples():
    assert abs(embed_complex(Z(4)) - 1j) < 1e-15
    assert abs(embed_complex(Z(3) + Z(3, 2)) + 1) < 1e-15
    g = Z(5) - Z(5, 2) - Z(5, 3) + Z(5, 4)
    brute = sum((1 if x in {y * y % 5 for y in range(1, 5)} else -1) * cmath.exp(2j * math.pi * x / 5) for x in range(1, 5))
    assert abs(complex(embed_complex(g)) - brute) < 1e-14
    assert abs(complex(embed_complex(g)) - math.sqrt(5)) < 1e-14
    with pytest.raises(DomainError):
        embed_complex(Z(5), 1, 32)


def test_p_unit_examples():
    one = CyclotomicNumber.from_rational(1, 7)
    assert p_unit_check(one, 3)
    assert not p_unit_check(CyclotomicNumber.from_rational(3, 7), 3)
    assert not p_unit_check(1 - Z(5), 5)
    assert p_unit_check(1 - Z(5), 7)
    with pytest.raises(DomainError):
        p_unit_check(CyclotomicNumber.from_rational(0, 5), 5)


def test_cross_order_equality_and_hash():
    a = Z(6, 2)
    b = Z(3)
    assert a == b and hash(a) == hash(b)
    assert CyclotomicNumber.from_rational(Fraction(3, 4), 12) == Fraction(3, 4)
    assert hash(CyclotomicNumber.from_rational(5, 8)) == hash(5)


def test_json_roundtrip():
    x = Z(12) * Fraction(2, 3) - Z(12, 5)
    data = x.to_json()
    assert data["order"] == 12
    assert len(data["coords"]) == 4
    assert CyclotomicNumber.from_json(data) == x


def test_coords_length_is_phi():
    assert len(Z(15).coords) == 8


# ---------------------------------------------------------------------- properties

ORDERS = st.sampled_from([1, 3, 4, 5, 7, 8, 9, 12])
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def cyclo(draw, order=None):
    n = draw(ORDERS) if order is None else order
    d = len(CyclotomicNumber.from_rational(0, n).coords)
    return CyclotomicNumber(n, draw(st.lists(small, min_size=d, max_size=d)))


@settings(max_examples=60, deadline=None)
@given(cyclo(), cyclo(), cyclo())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(cyclo(), cyclo())
def test_embedding_is_homomorphism(a, b):
    bound = 2 ** (1 - 53) * (sum(abs(x) for x in a.coords) + 1) * (sum(abs(x) for x in b.coords) + 1) * 64
    assert abs(embed_complex(a * b) - embed_complex(a) * embed_complex(b)) < bound
    assert abs(embed_complex(a + b) - embed_complex(a) - embed_complex(b)) < bound


@settings(max_examples=40, deadline=None)
@given(cyclo(order=12), st.sampled_from([1, 5, 7, 11]), st.sampled_from([1, 5, 7, 11]))
def test_galois_composition(x, k1, k2):
    assert galois_act(k1, galois_act(k2, x)) == galois_act(k1 * k2 % 12, x)
    assert galois_act(k1, x * x) == galois_act(k1, x) ** 2


@settings(max_examples=40, deadline=None)
@given(cyclo(), st.sampled_from([2, 3, 5, 7]))
def test_p_unit_galois_invariant_and_self_dual(x, p):
    if not x:
        return
    n = x.order
    base = p_unit_check(x, p)
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            assert p_unit_check(galois_act(k, x), p) == base
    assert (base and p_unit_check(x.inverse(), p)) == base
    assert p_unit_check(x.inverse(), p) == base


@settings(max_examples=30, deadline=None)
@given(cyclo())
def test_norm_is_product_of_conjugates(x):
    n = x.order
    prod = CyclotomicNumber.from_rational(1, n)
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            prod = prod * galois_act(k, x)
    assert prod == x.norm()
