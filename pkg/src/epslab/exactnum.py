"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_n).

Elements of Q(zeta_n) are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1)
as an integer numerator vector over a common positive denominator, always
reduced modulo the n-th cyclotomic polynomial.  Binary operations between
different orders promote both sides to Q(zeta_lcm).
"""
from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

import mpmath

from .errors import DomainError
from .ntheory import divisors, euler_phi, lcm, mobius

Rational = Fraction

MAX_ORDER = int(os.environ.get("EPSLAB_MAX_ORDER", "256"))

Scalar = Union[int, Fraction, "CyclotomicNumber"]


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: Sequence[int]) -> list[int]:
    # b monic up to sign of leading coefficient +-1
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // lead
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial.

    Built as the Moebius product of the factors x^d - 1 over d | n.
    """
    num = [1]
    den = [1]
    for d in divisors(n):
        mu = mobius(n // d)
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        elif mu == -1:
            den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


def _reduce(coeffs: list[int], n: int) -> list[int]:
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    a = list(coeffs)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            base = i - d
            for j in range(d):
                if phi[j]:
                    a[base + j] -= c * phi[j]
            a[i] = 0
    a = a[:d]
    a.extend([0] * (d - len(a)))
    return a


@lru_cache(maxsize=None)
def _power_trace(n: int, i: int) -> int:
    # Tr_{Q(zeta_n)/Q}(zeta_n^i)
    m = n // gcd(i, n)
    return mobius(m) * (euler_phi(n) // euler_phi(m))


class CyclotomicNumber:
    """An exact element of Q(zeta_n)."""

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coords: Iterable[int | Fraction] = ()):
        if order < 1:
            raise DomainError(f"order must be positive, got {order}")
        if order > MAX_ORDER:
            raise DomainError(f"order {order} exceeds MAX_ORDER={MAX_ORDER}")
        fr = [Fraction(c) for c in coords]
        den = lcm(*(c.denominator for c in fr)) if fr else 1
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._set(order, _reduce(num, order), den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = den
        for x in num:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g != 1:
            num = [x // g for x in num]
            den //= g
        self.order = order
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj

    # ------------------------------------------------------------------ constructors
    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicNumber":
        """The root of unity zeta_n^k."""
        k %= n
        return cls._raw(n, _reduce([0] * k + [1], n), 1)

    @classmethod
    def from_rational(cls, r: int | Fraction, order: int = 1) -> "CyclotomicNumber":
        r = Fraction(r)
        d = euler_phi(order)
        return cls._raw(order, [r.numerator] + [0] * (d - 1), r.denominator)

    @classmethod
    def coerce(cls, x: Scalar, order: int = 1) -> "CyclotomicNumber":
        if isinstance(x, CyclotomicNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_rational(x, order)
        raise TypeError(f"cannot interpret {type(x).__name__} as a cyclotomic number")

    # ------------------------------------------------------------------ accessors
    @property
    def degree(self) -> int:
        return len(self._num)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # ------------------------------------------------------------------ order handling
    def promote(self, m: int) -> "CyclotomicNumber":
        """The same element seen inside Q(zeta_m); requires order | m."""
        if m == self.order:
            return self
        if m % self.order:
            raise DomainError(f"cannot promote order {self.order} to {m}")
        step = m // self.order
        big = [0] * ((len(self._num) - 1) * step + 1)
        for i, x in enumerate(self._num):
            big[i * step] = x
        return CyclotomicNumber._raw(m, _reduce(big, m), self._den)

    def _pair(self, other: Scalar) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other, self.order)
        m = lcm(self.order, other.order)
        return self.promote(m), other.promote(m)

    # ------------------------------------------------------------------ ring operations
    def __add__(self, other: Scalar) -> "CyclotomicNumber":
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        a, b = self._pair(other)
        den = a._den * b._den // gcd(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return CyclotomicNumber._raw(a.order, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber._raw(self.order, [-x for x in self._num], self._den)

    def __sub__(self, other: Scalar) -> "CyclotomicNumber":
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        return self + (-CyclotomicNumber.coerce(other, self.order))

    def __rsub__(self, other: Scalar) -> "CyclotomicNumber":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CyclotomicNumber._raw(
                self.order, [x * other.numerator for x in self._num], self._den * other.denominator
            )
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._pair(other)
        return CyclotomicNumber._raw(a.order, _reduce(_poly_mul(a._num, b._num), a.order), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Exact inverse through the Cayley-Hamilton relation of multiplication-by-self."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(1 / self.to_fraction(), self.order)
        coeffs, powers = self._charpoly_and_powers()
        d = self.degree
        # x^d + a1 x^(d-1) + ... + ad = 0
        acc = powers[d - 1]
        for k in range(1, d):
            if coeffs[k]:
                acc = acc + powers[d - 1 - k] * coeffs[k]
        return acc * (-1 / coeffs[d])

    def __truediv__(self, other: Scalar) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in a cyclotomic field")
            return self * (1 / Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "CyclotomicNumber":
        return CyclotomicNumber.coerce(other, self.order) * self.inverse()

    def __pow__(self, k: int) -> "CyclotomicNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ------------------------------------------------------------------ comparison
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._pair(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self) -> int:
        # Tr/[K:Q] does not depend on the ambient cyclotomic field.
        n = self.order
        t = sum(x * Fraction(_power_trace(n, i), euler_phi(n)) for i, x in enumerate(self._num) if x)
        return hash(Fraction(t) / self._den)

    # ------------------------------------------------------------------ field invariants
    def trace(self) -> Fraction:
        """Absolute trace Tr_{Q(zeta_order)/Q}."""
        n = self.order
        return Fraction(sum(x * _power_trace(n, i) for i, x in enumerate(self._num) if x), self._den)

    def _charpoly_and_powers(self) -> tuple[list[Fraction], list["CyclotomicNumber"]]:
        d = self.degree
        powers = [CyclotomicNumber.from_rational(1, self.order), self]
        while len(powers) <= d:
            powers.append(powers[-1] * self)
        traces = [p.trace() for p in powers]
        # Newton identities: k a_k = -(p_k + a_1 p_{k-1} + ... + a_{k-1} p_1)
        a = [Fraction(1)]
        for k in range(1, d + 1):
            s = traces[k] + sum(a[i] * traces[k - i] for i in range(1, k))
            a.append(-s / k)
        return a, powers

    def charpoly(self) -> list[Fraction]:
        """Characteristic polynomial X^d + a1 X^(d-1) + ... + ad of multiplication by self,
        returned as [1, a1, ..., ad]."""
        return self._charpoly_and_powers()[0]

    def norm(self) -> Fraction:
        d = self.degree
        return (-1) ** d * self.charpoly()[d]

    # ------------------------------------------------------------------ Galois action and embeddings
    def galois_act(self, k: int) -> "CyclotomicNumber":
        """Image under the automorphism zeta_n -> zeta_n^k."""
        n = self.order
        if gcd(k, n) != 1:
            raise DomainError(f"k={k} is not coprime to the order {n}")
        k %= n
        big = [0] * n
        for i, x in enumerate(self._num):
            if x:
                big[(i * k) % n] += x
        return CyclotomicNumber._raw(n, _reduce(big, n), self._den)

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois_act(-1)

    def embed_complex(self, k: int = 1, binary_precision: int = 53) -> mpmath.mpc:
        """Complex value under zeta_n -> exp(2 pi i k / n)."""
        return embed_complex(self, k, binary_precision)

    # ------------------------------------------------------------------ serialisation
    def to_json(self) -> dict:
        return {"order": self.order, "coords": [_fmt_fraction(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls(int(data["order"]), [Fraction(c) for c in data["coords"]])

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.order}, {[_fmt_fraction(c) for c in self.coords]})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else (f"z{self.order}" if i == 1 else f"z{self.order}^{i}")
            if not mono:
                terms.append(_fmt_fraction(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_fmt_fraction(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def as_cyclotomic(x: Scalar) -> CyclotomicNumber:
    return CyclotomicNumber.coerce(x)


def root_of_unity(num: int, den: int) -> CyclotomicNumber:
    """exp(2 pi i num/den) as an element of Q(zeta_den)."""
    return CyclotomicNumber.zeta(den, num)


# ---------------------------------------------------------------------- module-level operations


def cyclo_arith(a: Scalar, b: Scalar, op: str) -> CyclotomicNumber:
    a, b = as_cyclotomic(a), as_cyclotomic(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown operation {op!r}")


def galois_act(k: int, x: Scalar) -> CyclotomicNumber:
    return as_cyclotomic(x).galois_act(k)


def embed_complex(x: Scalar, k: int = 1, binary_precision: int = 53) -> mpmath.mpc:
    """Floating image of x under zeta_n -> exp(2 pi i k/n).

    The error is below 2^(1 - binary_precision) times the l1 norm of the coordinates.
    """
    x = as_cyclotomic(x)
    n = x.order
    if gcd(k, n) != 1:
        raise DomainError(f"embedding index {k} is not coprime to {n}")
    if binary_precision < 53:
        raise DomainError("binary_precision must be at least 53")
    with mpmath.workprec(binary_precision + 10):
        total = mpmath.mpc(0)
        for i, c in enumerate(x.coords):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * i * k) / n)
    with mpmath.workprec(binary_precision):
        return +total


def p_unit_check(x: Scalar, p: int) -> bool:
    """True iff x is a unit at every prime of Q(zeta_n) above p.

    Equivalent to: the characteristic polynomial of multiplication-by-x is
    p-integral and its constant term is prime to p.
    """
    x = as_cyclotomic(x)
    if x.is_zero():
        raise DomainError("p_unit_check of zero")
    cp = x.charpoly()
    if any(c.denominator % p == 0 for c in cp):
        return False
    return cp[-1].numerator % p != 0
