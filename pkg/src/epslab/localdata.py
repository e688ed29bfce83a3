"""Tame extensions L/K/Q_p: descriptors, the unramified character, conductors and
the cohomology bookkeeping for Q_p(chi^ur)(1)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConstructionError, DomainError, PrecisionError
from .groups import Character, MetacyclicGroup, fixed_space_dim, irr_table
from .ntheory import isprime, valuation
from .padic import DEFAULT_PRECISION, PadicMatrix, PadicNumber, padic_from_rational, smith_normal_form


@dataclass(frozen=True)
class TameExtensionDescriptor:
    p: int
    e_K: int = 1
    f_K: int = 1
    e: int = 1
    f: int = 1
    c: int = 0
    disc_exponent: Optional[int] = None

    def __post_init__(self):
        if not isprime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if min(self.e_K, self.f_K, self.e, self.f) < 1:
            raise DomainError("ramification and residue degrees must be positive")
        if self.e % self.p == 0:
            raise DomainError(f"L/K is wildly ramified: p={self.p} divides e={self.e}")
        if self.disc_exponent is None and self.e_K % self.p == 0:
            raise DomainError("K/Q_p is wild; supply disc_exponent explicitly")

    @property
    def q_K(self) -> int:
        return self.p**self.f_K

    @property
    def m(self) -> int:
        """Exponent of d_{K/Q_p} = p^m."""
        if self.disc_exponent is not None:
            return self.disc_exponent
        return self.f_K * (self.e_K - 1)

    @property
    def f_L(self) -> int:
        return self.f_K * self.f

    @property
    def e_L(self) -> int:
        return self.e_K * self.e

    @property
    def degree(self) -> int:
        """[L:Q_p]."""
        return self.e_K * self.e * self.f_K * self.f

    def to_json(self) -> dict:
        out = {"p": self.p, "eK": self.e_K, "fK": self.f_K, "e": self.e, "f": self.f, "c": self.c}
        if self.disc_exponent is not None:
            out["disc_exponent"] = self.disc_exponent
        return out

    @classmethod
    def from_mapping(cls, data: dict) -> "TameExtensionDescriptor":
        return cls(
            p=int(data["p"]),
            e_K=int(data.get("eK", 1)),
            f_K=int(data.get("fK", 1)),
            e=int(data.get("e", 1)),
            f=int(data.get("f", 1)),
            c=int(data.get("c", 0)),
            disc_exponent=data.get("disc_exponent"),
        )


@dataclass(frozen=True)
class UnramifiedCharacterData:
    """chi^ur through its value u on arithmetic Frobenius."""

    p: int
    u: Fraction
    precision: int = DEFAULT_PRECISION
    padic: PadicNumber = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        u = Fraction(self.u)
        object.__setattr__(self, "u", u)
        if u == 0 or valuation(u, self.p) != 0:
            raise DomainError(f"u = {u} is not a {self.p}-adic unit")
        object.__setattr__(self, "padic", padic_from_rational(u, self.p, self.precision))

    def check_nontrivial_on(self, d: TameExtensionDescriptor) -> PadicNumber:
        """1 - u^{f_L}; zero at precision means chi^ur(G_L) = 1 cannot be ruled out."""
        one = padic_from_rational(1, self.p, self.precision)
        w = one - self.padic ** d.f_L
        if w.is_zero():
            raise PrecisionError(
                f"1 - u^{d.f_L} vanishes modulo {self.p}^{w.valuation}; raise precision or change u"
            )
        return w


def galois_group(d: TameExtensionDescriptor) -> MetacyclicGroup:
    """Gal(L/K) with sigma generating inertia and tau sigma tau^-1 = sigma^{q_K}."""
    try:
        return MetacyclicGroup(d.e, d.f, d.q_K % d.e if d.e > 1 else 0, d.c)
    except ConstructionError as exc:
        raise ConstructionError(f"inconsistent extension data {d.to_json()}: {exc}") from exc


def artin_conductor(chi: Character, d: TameExtensionDescriptor) -> int:
    """a(chi) = codim V^I."""
    g = chi.group
    return chi.degree - fixed_space_dim(chi, [g.sigma])


def artin_conductor_exponent(chi: Character, d: TameExtensionDescriptor) -> int:
    """v_p(N_{K/Q_p} f(chi)) = f_K a(chi)."""
    return d.f_K * artin_conductor(chi, d)


def induced_conductor_exponent(chi: Character, d: TameExtensionDescriptor) -> int:
    """v_p of the conductor of Ind_{K/Q_p} chi: f_K a(chi) + m chi(1)."""
    return d.f_K * artin_conductor(chi, d) + d.m * chi.degree


def conductor_discriminant_exponent(d: TameExtensionDescriptor) -> int:
    """v_p(d_{L/Q_p}) from the tame different: f_L (e_L - 1)."""
    if d.disc_exponent is not None:
        raise DomainError("cross-check needs the tame discriminant of K")
    return d.f_L * (d.e_L - 1)


def conductor_discriminant_check(d: TameExtensionDescriptor) -> dict:
    """Compare sum_chi chi(1) v_p f(Ind chi) with the tame discriminant exponent of L.

    Ind_{K/Q_p} of the regular representation of G is the regular representation of
    Gal(L/Q_p) when L/Q_p is Galois, and in any case the conductor-discriminant formula
    v_p(d_L) = sum_chi chi(1) v_p f(Ind chi) holds.
    """
    g = galois_group(d)
    total = sum(ch.degree * induced_conductor_exponent(ch, d) for ch in irr_table(g))
    expected = conductor_discriminant_exponent(d)
    return {"sum_over_characters": total, "discriminant_exponent": expected, "pass": total == expected}


# ---------------------------------------------------------------------- cohomology


def frobenius_operator(d: TameExtensionDescriptor, uc: UnramifiedCharacterData) -> PadicMatrix:
    """Matrix of 1 - chi^ur(Fr_K)^{-1} Fr_K on Z_p[G/I], Fr_K acting as the cyclic shift."""
    f = d.f
    p, prec = uc.p, uc.precision
    w = padic_from_rational(1, p, prec) / (uc.padic ** d.f_K)
    one = padic_from_rational(1, p, prec)
    zero = PadicNumber.zero(p, prec)
    rows = [[zero] * f for _ in range(f)]
    for i in range(f):
        rows[i][i] = one
    for i in range(f):
        j = (i + 1) % f
        rows[j][i] = rows[j][i] - w
    return PadicMatrix(p, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class CohomologyProfile:
    h0: int
    h1_rank: int
    h2_order_exponent: int
    divisor_exponents: tuple[int, ...]
    omega: int

    @property
    def passed(self) -> bool:
        f = len(self.divisor_exponents)
        return self.divisor_exponents == (0,) * (f - 1) + (self.omega,)

    def to_json(self) -> dict:
        return {
            "h0": self.h0,
            "h1_rank": self.h1_rank,
            "h2_order_exponent": self.h2_order_exponent,
            "omega": self.omega,
            "divisor_exponents": list(self.divisor_exponents),
            "pass": self.passed,
        }


def cohomology_profile(d: TameExtensionDescriptor, uc: UnramifiedCharacterData) -> CohomologyProfile:
    """H^0 = 0, rank H^1 = [L:Q_p] and |H^2| = p^omega with omega = v_p(1 - u^{f_L})."""
    if uc.p != d.p:
        raise DomainError("prime mismatch between descriptor and character data")
    w = uc.check_nontrivial_on(d)
    snf = smith_normal_form(frobenius_operator(d, uc))
    return CohomologyProfile(
        h0=0,
        h1_rank=d.degree,
        h2_order_exponent=w.valuation,
        divisor_exponents=tuple(snf.exponents),
        omega=w.valuation,
    )
