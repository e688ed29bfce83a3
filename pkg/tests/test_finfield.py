import pytest
import sympy
from hypothesis import given, settings, strategies as st

from epslab.errors import DomainError
from epslab.finfield import FiniteField, finite_field

# Conway polynomials (constant term first), from the published tables
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def test_conway_agreement():
    for (p, k), poly in CONWAY.items():
        assert FiniteField(p, k).modulus == poly


def test_prime_field_generator_is_least_primitive_root():
    for p in (3, 5, 7, 11, 13, 17, 23, 41):
        F = FiniteField(p)
        assert F.generator == sympy.primitive_root(p)


def test_bad_inputs():
    with pytest.raises(DomainError):
        finite_field(12)
    with pytest.raises(DomainError):
        FiniteField(4)


def _sympy_mul(F, x, y):
    t = sympy.Symbol("t")
    dom = sympy.GF(F.p)
    digits = lambda z: [(z // F.p**i) % F.p for i in range(F.k)]
    px = sympy.Poly(list(reversed(digits(x))), t, domain=dom)
    py = sympy.Poly(list(reversed(digits(y))), t, domain=dom)
    mod = sympy.Poly(list(reversed(F.modulus)), t, domain=dom)
    r = (px * py).rem(mod)
    cs = [int(c) % F.p for c in reversed(r.all_coeffs())]
    return sum(c * F.p**i for i, c in enumerate(cs))


FIELDS = st.sampled_from([4, 8, 9, 25, 27, 49, 7, 16, 81])


@settings(max_examples=80, deadline=None)
@given(FIELDS, st.data())
def test_mul_matches_polynomial_oracle(q, data):
    F = finite_field(q)
    x = data.draw(st.integers(0, q - 1))
    y = data.draw(st.integers(0, q - 1))
    assert F.mul(x, y) == _sympy_mul(F, x, y)
    if x:
        assert F.mul(x, F.inv(x)) == 1
        assert F.exp(F.log(x)) == x


@settings(max_examples=40, deadline=None)
@given(FIELDS, st.data())
def test_trace_and_norm(q, data):
    F = finite_field(q)
    x = data.draw(st.integers(1, q - 1))
    y = data.draw(st.integers(0, q - 1))
    assert F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % F.p
    P = FiniteField(F.p)
    n = 1
    z = x
    for _ in range(F.k):
        n = F.mul(n, z)
        z = F.frobenius(z)
    assert F.norm_to(x, P) == F.subfield_element(n, P)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 1, 2), (2, 1, 4), (3, 1, 2), (2, 2, 4), (5, 1, 2)]), st.data())
def test_embedding_is_ring_map(t, data):
    p, a, b = t
    sub, big = FiniteField(p, a), FiniteField(p, b)
    x = data.draw(st.integers(0, sub.q - 1))
    y = data.draw(st.integers(0, sub.q - 1))
    assert big.embed(sub.mul(x, y), sub) == big.mul(big.embed(x, sub), big.embed(y, sub))
    assert big.embed(sub.add(x, y), sub) == big.add(big.embed(x, sub), big.embed(y, sub))
    assert big.subfield_element(big.embed(x, sub), sub) == x
