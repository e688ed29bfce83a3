"""Gaussian periods as normal integral bases, norm resolvents and the Taylor unit check.

The tame abelian extension L/Q_p of degree e | p-1 is modelled by the degree-e
subfield of Q(zeta_p); its Galois group is generated by sigma_g: zeta_p -> zeta_p^g
with g the least primitive root mod p.  Under geometric-Frobenius reciprocity a unit
a of Z_p corresponds to sigma_a, so a character chi of Gal(L/Q_p) has residue
character a -> chi(sigma_a) and takes the value 1 at the uniformiser p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .epsilon import ResidueMultChar, TameLocalCharacter, galois_gauss_sum_tau
from .errors import ConstructionError, DomainError
from .exactnum import CyclotomicNumber, p_unit_check
from .finfield import finite_field
from .groups import Character, MetacyclicGroup, irr_table
from .localdata import TameExtensionDescriptor
from .ntheory import isprime, primitive_root


@dataclass(frozen=True)
class NormalBasisSpec:
    p: int
    e: int
    generator: int
    periods: tuple[CyclotomicNumber, ...]

    @property
    def group(self) -> MetacyclicGroup:
        return MetacyclicGroup(self.e, 1)

    def act(self, a: int, x: CyclotomicNumber) -> CyclotomicNumber:
        """sigma^a(x), sigma = sigma_g."""
        return x.galois_act(pow(self.generator, a, self.p))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "generator": self.generator, "periods": [x.to_json() for x in self.periods]}


def gaussian_periods(p: int, e: int) -> NormalBasisSpec:
    """eta_i = sum of zeta_p^x over the coset g^i H, H the index-e subgroup of F_p^x."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if e < 2 or (p - 1) % e:
        raise DomainError(f"e = {e} must be a divisor > 1 of p-1 = {p - 1}")
    g = primitive_root(p)
    periods = []
    for i in range(e):
        acc = CyclotomicNumber.from_rational(0, p)
        for k in range(i, p - 1, e):
            acc = acc + CyclotomicNumber.zeta(p, pow(g, k, p))
        periods.append(acc)
    spec = NormalBasisSpec(p, e, g, tuple(periods))
    if sum(periods, CyclotomicNumber.from_rational(0)) != -1:
        raise ConstructionError("periods do not sum to -1")  # pragma: no cover
    for i in range(e):
        if spec.act(1, periods[i]) != periods[(i + 1) % e]:
            raise ConstructionError("Galois action does not permute the periods cyclically")  # pragma: no cover
    if not periods_are_normal(spec):
        raise ConstructionError("periods do not form a normal basis")  # pragma: no cover
    return spec


def periods_are_normal(spec: NormalBasisSpec) -> bool:
    eta = spec.periods[0]
    m = [[spec.act(j, spec.act(i, eta)) for j in range(spec.e)] for i in range(spec.e)]
    return bool(linalg.det(m, CyclotomicNumber.from_rational(1)))


def period_discriminant(spec: NormalBasisSpec) -> Fraction:
    """disc of the basis {sigma^i eta_0} via the trace form Tr_{L/Q}(b_i b_j)."""
    basis = [spec.act(i, spec.periods[0]) for i in range(spec.e)]
    e = spec.e
    m = [[_trace_to_Q(spec, basis[i] * basis[j]) for j in range(e)] for i in range(e)]
    return linalg.det(m, Fraction(1))


def _trace_to_Q(spec: NormalBasisSpec, x: CyclotomicNumber) -> Fraction:
    acc = CyclotomicNumber.from_rational(0)
    for a in range(spec.e):
        acc = acc + spec.act(a, x)
    if not acc.is_rational():
        raise ConstructionError("element does not lie in the period field")
    return acc.to_fraction()


def norm_resolvent(spec: NormalBasisSpec, chi: Character, b: CyclotomicNumber | None = None) -> CyclotomicNumber:
    """Det_chi(sum_g g(b) g^{-1}) = sum_g g(b) chi(g)^{-1} for K = Q_p."""
    if chi.degree != 1 or chi.group != spec.group:
        raise DomainError("norm resolvent needs a linear character of Gal(L/Q_p)")
    b = spec.periods[0] if b is None else b
    acc = CyclotomicNumber.from_rational(0)
    for a in range(spec.e):
        acc = acc + spec.act(a, b) * chi((a % spec.e, 0)).inverse()
    return acc


def delta_K(basis: Sequence[CyclotomicNumber], embeddings: Sequence[int]) -> CyclotomicNumber:
    """det(sigma(a_j)) over embeddings zeta -> zeta^k and the given basis."""
    if len(basis) != len(embeddings):
        raise DomainError("basis and embedding counts differ")
    if not basis:
        return CyclotomicNumber.from_rational(1)
    m = [[a.galois_act(k) for a in basis] for k in embeddings]
    d = linalg.det(m, CyclotomicNumber.from_rational(1))
    if not d:
        raise ConstructionError("basis is singular")
    return d


def basis_discriminant(basis: Sequence[CyclotomicNumber], embeddings: Sequence[int]) -> CyclotomicNumber:
    """det(Tr(a_i a_j)) with Tr the sum over the given embeddings.

    For a full Galois orbit this is the rational discriminant; for a decomposition group
    it is the local discriminant, computed inside the global model.
    """
    n = len(basis)

    def tr(x):
        acc = CyclotomicNumber.from_rational(0)
        for k in embeddings:
            acc = acc + x.galois_act(k)
        return acc

    return linalg.det([[tr(basis[i] * basis[j]) for j in range(n)] for i in range(n)], CyclotomicNumber.from_rational(1))


def unramified_model(p: int, f: int) -> tuple[list[CyclotomicNumber], list[int]]:
    """Teichmüller-type basis of the degree-f unramified extension of Q_p inside Q(zeta_{p^f-1}).

    Returns the basis 1, zeta, ..., zeta^{f-1} with zeta = zeta_{p^f-1} and the f Frobenius
    embeddings zeta -> zeta^{p^i}.  This generates only the global cyclic subfield fixed by
    the decomposition group <p>, whose completion at a prime above p is unramified of degree f.
    """
    n = p**f - 1
    z = CyclotomicNumber.zeta(n)
    embs = [pow(p, i, n) for i in range(f)]
    return [z**i for i in range(f)], embs


def theta(spec: NormalBasisSpec, chi: Character, delta: CyclotomicNumber | None = None) -> CyclotomicNumber:
    """theta_chi = delta_K^{chi(1)} N(b|chi)."""
    delta = CyclotomicNumber.from_rational(1) if delta is None else delta
    return delta**chi.degree * norm_resolvent(spec, chi)


def local_character(spec: NormalBasisSpec, chi: Character) -> TameLocalCharacter:
    """The character of Q_p^x attached to chi: a -> chi(sigma_a) on units, p -> 1."""
    j = chi.label[0] % spec.e
    F = finite_field(spec.p)
    if F.generator != spec.generator:
        raise ConstructionError("residue field generator differs from the period generator")  # pragma: no cover
    step = (spec.p - 1) // spec.e
    d = TameExtensionDescriptor(spec.p)
    return TameLocalCharacter(d, ResidueMultChar(F, j * step), CyclotomicNumber.from_rational(1))


def taylor_unit_check(p: int, e: int) -> dict:
    """r_chi = N(b|chi) / tau(chi) for every chi of Gal(L/Q_p); each must be a p-adic unit."""
    spec = gaussian_periods(p, e)
    per_char = []
    ok = True
    for chi in irr_table(spec.group):
        res = norm_resolvent(spec, chi)
        tau = galois_gauss_sum_tau(local_character(spec, chi))
        ratio = res / tau
        unit = p_unit_check(ratio, p)
        ok &= unit
        per_char.append(
            {"chi": chi.label[0], "resolvent": res.to_json(), "tau": tau.to_json(), "ratio": ratio.to_json(), "unit": unit}
        )
    return {"case": {"p": p, "e": e, "generator": spec.generator}, "per_char": per_char, "pass": ok}
