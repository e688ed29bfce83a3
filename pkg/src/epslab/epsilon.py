"""Gauss sums over residue fields, tame epsilon factors, Galois Gauss sums and Gamma* factors.

Reciprocity is normalised so that uniformisers correspond to geometric Frobenius.
The additive character psi_xi of Q_p satisfies psi_xi(p^{-1}) = exp(2 pi i / p) and has
conductor exponent n = 0; psi_K = psi_xi o Tr_{K/Q_p} has n(psi_K) = e_K - 1 for tame K.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Mapping, Optional, Union

from .errors import DomainError, UnsupportedError
from .exactnum import CyclotomicNumber
from .finfield import FiniteField, finite_field
from .localdata import TameExtensionDescriptor
from .ntheory import lcm
from .padic import PadicNumber


@dataclass(frozen=True)
class ResidueMultChar:
    """chi(g^n) = zeta_{q-1}^{exponent * n} for the fixed generator g of F_q^x."""

    field: FiniteField
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % (self.field.q - 1))

    @classmethod
    def of_order(cls, q: int, order: int, power: int = 1) -> "ResidueMultChar":
        if (q - 1) % order:
            raise DomainError(f"order {order} does not divide q-1 = {q - 1}")
        return cls(finite_field(q), power * ((q - 1) // order))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        return (self.q - 1) // gcd(self.exponent, self.q - 1)

    def is_trivial(self) -> bool:
        return self.exponent == 0

    def dlog_value(self, x: int) -> Fraction:
        """chi(x) = exp(2 pi i * dlog_value(x))."""
        return Fraction(self.exponent * self.field.log(x), self.q - 1)

    def __call__(self, x: int) -> CyclotomicNumber:
        if x == 0:
            raise DomainError("multiplicative character at 0")
        v = self.dlog_value(x)
        return CyclotomicNumber.zeta(v.denominator, v.numerator)

    def inverse(self) -> "ResidueMultChar":
        return ResidueMultChar(self.field, -self.exponent)

    def __mul__(self, other: "ResidueMultChar") -> "ResidueMultChar":
        if other.field != self.field:
            raise DomainError("characters of different fields")
        return ResidueMultChar(self.field, self.exponent + other.exponent)

    def lift(self, degree: int) -> "ResidueMultChar":
        """chi o N_{F_{q^degree}/F_q}, found by evaluating the norm of the big generator."""
        sub = self.field
        big = FiniteField(sub.p, sub.k * degree)
        r = sub.log(big.norm_to(big.generator, sub))
        return ResidueMultChar(big, self.exponent * r * ((big.q - 1) // (sub.q - 1)))

    def all_values(self) -> dict[int, CyclotomicNumber]:
        return {x: self(x) for x in self.field.units()}

    def to_json(self) -> dict:
        return {"q": self.q, "exponent": self.exponent, "order": self.order}


def residue_characters(q: int) -> list[ResidueMultChar]:
    F = finite_field(q)
    return [ResidueMultChar(F, j) for j in range(q - 1)]


def gauss_sum(chi: ResidueMultChar, c: int = 1) -> CyclotomicNumber:
    """sum_{x in F_q^x} chi(x) zeta_p^{Tr(c x)}; c is an element of F_q^x (integer encoding)."""
    F = chi.field
    if c == 0 or not 0 < c < F.q:
        raise DomainError("additive twist must be a nonzero field element")
    n = lcm(F.p, chi.order)
    coeffs = [0] * n
    step = n // chi.order
    for x in F.units():
        k = chi.exponent * F.log(x) % (F.q - 1)
        root = (k * chi.order // (F.q - 1)) * step
        tr = F.trace(F.mul(c, x))
        coeffs[(root + tr * (n // F.p)) % n] += 1
    return _from_exponent_counts(n, coeffs)


def _from_exponent_counts(n: int, counts: list[int]) -> CyclotomicNumber:
    acc = CyclotomicNumber.from_rational(0, n)
    for k, m in enumerate(counts):
        if m:
            acc = acc + CyclotomicNumber.zeta(n, k) * m
    return acc


# ---------------------------------------------------------------------- tame epsilon


@dataclass(frozen=True)
class AdditiveCharDescriptor:
    """An additive character through its conductor exponent n(psi) and residue twist c."""

    conductor_n: int = 0
    residue_twist: int = 1

    @classmethod
    def psi_xi(cls) -> "AdditiveCharDescriptor":
        return cls(0, 1)

    @classmethod
    def psi_K(cls, d: TameExtensionDescriptor) -> "AdditiveCharDescriptor":
        """psi_xi o Tr_{K/Q_p}, whose conductor exponent is the different exponent of K."""
        if d.e_K % d.p == 0:
            raise UnsupportedError("different exponent of a wild K is not tabulated")
        return cls(d.e_K - 1, 1)


@dataclass(frozen=True)
class TameLocalCharacter:
    """A tame character of K^x: its restriction to units through F_{q_K}^x and its value at pi_K."""

    field: TameExtensionDescriptor
    ramified_part: Optional[ResidueMultChar] = None
    uniformizer_value: CyclotomicNumber = CyclotomicNumber.from_rational(1)

    def __post_init__(self):
        rp = self.ramified_part
        if rp is not None and rp.q != self.field.q_K:
            raise UnsupportedError(f"ramified part lives on F_{rp.q}, not on the residue field F_{self.field.q_K}")
        object.__setattr__(self, "uniformizer_value", CyclotomicNumber.coerce(self.uniformizer_value))

    @classmethod
    def trivial(cls, d: TameExtensionDescriptor) -> "TameLocalCharacter":
        return cls(d, None)

    def is_ramified(self) -> bool:
        return self.ramified_part is not None and not self.ramified_part.is_trivial()

    @property
    def conductor_exponent(self) -> int:
        return 1 if self.is_ramified() else 0


def tame_epsilon(chi: TameLocalCharacter, psi: AdditiveCharDescriptor) -> CyclotomicNumber:
    """epsilon(chi, psi, dx) with O_K of measure 1."""
    q = chi.field.q_K
    n = psi.conductor_n
    w = chi.uniformizer_value
    if not chi.is_ramified():
        return w**n * Fraction(q) ** n
    g = gauss_sum(chi.ramified_part.inverse(), psi.residue_twist)
    return w ** (n + 1) * Fraction(q) ** n * g


def galois_gauss_sum_tau(chi: TameLocalCharacter, d: Optional[TameExtensionDescriptor] = None) -> CyclotomicNumber:
    """tau_K(chi) = epsilon(chi, psi_K, dx) d_{K/Q_p}^{-chi(1)} for linear tame chi."""
    d = d or chi.field
    eps = tame_epsilon(chi, AdditiveCharDescriptor.psi_K(d))
    return eps / Fraction(d.p) ** d.m


# ---------------------------------------------------------------------- Gamma factors


def gamma_star(j: int) -> Fraction:
    """Leading term of Gamma at j: (j-1)! for j > 0 and (-1)^j / (-j)! otherwise."""
    if j > 0:
        return Fraction(factorial(j - 1))
    return Fraction((-1) ** (-j), factorial(-j))


def gamma_factor(hodge: Mapping[int, int]) -> Fraction:
    """Gamma(V) = prod_j Gamma*(j)^{-h(-j)} with h(j) = dim gr^j."""
    out = Fraction(1)
    for j, h in hodge.items():
        if h:
            out *= gamma_star(-j) ** (-h)
    return out


Twist = Union[int, Fraction, PadicNumber, CyclotomicNumber]


def unramified_twist_epsilon(base_eps, a_W: int, dim_W: int, n_psi: int, u: Twist):
    """epsilon(W (x) eta) = u^{a(W) + dim(W) n(psi)} epsilon(W), u the value of eta on geometric Frobenius."""
    k = a_W + dim_W * n_psi
    if isinstance(u, (int, Fraction)):
        u = Fraction(u)
    return (u**k) * base_eps


def hasse_davenport_check(chi: ResidueMultChar, degree: int) -> dict:
    """-g(chi o N) = (-g(chi))^degree over F_{q^degree}."""
    if chi.is_trivial():
        raise DomainError("Hasse-Davenport needs a nontrivial character")
    lifted = chi.lift(degree)
    lhs = -gauss_sum(lifted)
    rhs = (-gauss_sum(chi)) ** degree
    return {"q": chi.q, "degree": degree, "character": chi.to_json(), "lhs": lhs, "rhs": rhs, "pass": lhs == rhs}


def gauss_product_check(chi: ResidueMultChar, c: int = 1) -> dict:
    """g(chi) g(chi^-1) = chi(-1) q."""
    F = chi.field
    lhs = gauss_sum(chi, c) * gauss_sum(chi.inverse(), c)
    rhs = chi(F.neg(1)) * F.q
    return {"lhs": lhs, "rhs": rhs, "pass": lhs == rhs}
