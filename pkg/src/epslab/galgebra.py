"""Group rings F[G] and Z_p[G] of metacyclic groups.

Coefficients are either exact cyclotomic numbers (rationals included, as
order-1 elements) or truncated p-adic numbers.  The module provides the
character determinants Det_chi, the reduced-norm comparison Nr versus
nr(can(.)), the sharp operation on central vectors and unit testing in Z_p[G].
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from . import linalg
from .errors import DomainError, PrecisionError
from .exactnum import CyclotomicNumber
from .groups import Character, Element, MetacyclicGroup, irr_table
from .padic import DEFAULT_PRECISION, PadicMatrix, PadicNumber, determinant, padic_from_rational, teichmuller
from .ntheory import primitive_root, valuation

CYCLOTOMIC = "cyclotomic"
PADIC = "padic"

Scalar = Union[CyclotomicNumber, PadicNumber]


def _cyc(x) -> CyclotomicNumber:
    return CyclotomicNumber.coerce(x)


class GroupRingElement:
    """A finitely supported sum of group elements with uniform coefficient domain."""

    __slots__ = ("group", "coeffs", "domain")

    def __init__(self, group: MetacyclicGroup, coeffs: Mapping[Element, object]):
        self.group = group
        doms = {PADIC if isinstance(v, PadicNumber) else CYCLOTOMIC for v in coeffs.values()}
        if len(doms) > 1:
            raise DomainError("mixed coefficient domains")
        self.domain = doms.pop() if doms else CYCLOTOMIC
        out = {}
        for g, v in coeffs.items():
            if g not in group.elements():
                raise DomainError(f"{g} is not an element of {group}")
            if self.domain == CYCLOTOMIC:
                v = _cyc(v)
                if v:
                    out[g] = v
            else:
                out[g] = v
        self.coeffs = out

    # ------------------------------------------------------------------ constructors
    @classmethod
    def one(cls, group: MetacyclicGroup) -> "GroupRingElement":
        return cls(group, {group.identity: 1})

    @classmethod
    def of(cls, group: MetacyclicGroup, g: Element, scalar=1) -> "GroupRingElement":
        return cls(group, {g: scalar})

    @classmethod
    def scalar(cls, group: MetacyclicGroup, s) -> "GroupRingElement":
        return cls(group, {group.identity: s})

    def coefficient(self, g: Element):
        if g in self.coeffs:
            return self.coeffs[g]
        return CyclotomicNumber.from_rational(0)

    # ------------------------------------------------------------------ ring structure
    def _check(self, other: "GroupRingElement") -> None:
        if other.group != self.group:
            raise DomainError("elements of different group rings")

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            other = GroupRingElement.scalar(self.group, other)
        self._check(other)
        out = dict(self.coeffs)
        for g, v in other.coeffs.items():
            out[g] = out[g] + v if g in out else v
        return GroupRingElement(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {g: -v for g, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            other = GroupRingElement.scalar(self.group, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            return GroupRingElement(self.group, {g: v * other for g, v in self.coeffs.items()})
        self._check(other)
        mul = self.group.mul
        out: dict = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                k = mul(g, h)
                out[k] = out[k] + a * b if k in out else a * b
        return GroupRingElement(self.group, out)

    def __rmul__(self, other):
        return GroupRingElement(self.group, {g: other * v for g, v in self.coeffs.items()})

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GroupRingElement.one(self.group)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "GroupRingElement":
        """Inverse in F[G] by solving the left regular system x * y = 1."""
        if self.domain != CYCLOTOMIC:
            raise DomainError("inverse implemented for cyclotomic coefficients")
        els = self.group.elements()
        m = regular_matrix(self)
        rhs = [_cyc(1 if g == self.group.identity else 0) for g in els]
        sol = linalg.solve(m, rhs)
        return GroupRingElement(self.group, dict(zip(els, sol)))

    def __truediv__(self, other):
        if isinstance(other, GroupRingElement):
            return self * other.inverse()
        return self * (1 / other)

    def __rtruediv__(self, other):
        return GroupRingElement.scalar(self.group, other) * self.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.group != self.group:
            return False
        diff = self - other
        if diff.domain == PADIC:
            return all(v.is_zero() for v in diff.coeffs.values())
        return not diff.coeffs

    __hash__ = None

    def is_central(self) -> bool:
        return all(self * GroupRingElement.of(self.group, g) == GroupRingElement.of(self.group, g) * self
                   for g in self.group.generators())

    def to_padic(self, p: int, precision: int = DEFAULT_PRECISION) -> "GroupRingElement":
        if self.domain == PADIC:
            return self
        return GroupRingElement(self.group, {g: cyclotomic_to_padic(v, p, precision) for g, v in self.coeffs.items()})

    def to_json(self) -> dict:
        return {f"({a},{b})": v.to_json() for (a, b), v in sorted(self.coeffs.items())}

    def __repr__(self) -> str:
        terms = " + ".join(f"({v})*{g}" for g, v in sorted(self.coeffs.items()))
        return f"GroupRingElement({terms or '0'})"


def cyclotomic_to_padic(x, p: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Image of x in Q_p; zeta_n is sent to a Teichmüller root of unity, which needs n | p - 1.

    zeta_{p-1} is the Teichmüller lift of the least primitive root mod p.
    """
    x = _cyc(x)
    if x.is_rational():
        return padic_from_rational(x.to_fraction(), p, precision)
    n = x.order
    if (p - 1) % n:
        raise DomainError(f"Q(zeta_{n}) does not embed into Q_{p}")
    z = teichmuller(pow(primitive_root(p), (p - 1) // n, p), p, precision + 5)
    acc = padic_from_rational(0, p, precision + 5)
    zk = padic_from_rational(1, p, precision + 5)
    for c in x.coords:
        if c:
            acc = acc + zk * padic_from_rational(c, p, precision + 5)
        zk = zk * z
    return acc


# ---------------------------------------------------------------------- representations


def regular_matrix(x: GroupRingElement) -> list[list]:
    """Matrix of left multiplication by x in the basis G (column h holds x*h)."""
    els = x.group.elements()
    idx = {g: i for i, g in enumerate(els)}
    zero = PadicNumber.zero(next(iter(x.coeffs.values())).p, 10**9) if x.domain == PADIC else _cyc(0)
    m = [[zero] * len(els) for _ in els]
    for j, h in enumerate(els):
        for g, a in x.coeffs.items():
            i = idx[x.group.mul(g, h)]
            m[i][j] = m[i][j] + a
    return m


def right_regular_matrix(x: GroupRingElement) -> list[list[CyclotomicNumber]]:
    """Matrix of right multiplication by x in the basis G (column h holds h*x)."""
    els = x.group.elements()
    idx = {g: i for i, g in enumerate(els)}
    m = [[_cyc(0)] * len(els) for _ in els]
    for j, h in enumerate(els):
        for g, a in x.coeffs.items():
            i = idx[x.group.mul(h, g)]
            m[i][j] = m[i][j] + a
    return m


def representation_matrix(chi: Character, x: GroupRingElement) -> list[list]:
    """T_rho(x) = sum_g a_g rho_chi(g)."""
    d = chi.degree
    if x.domain == PADIC:
        p = next(iter(x.coeffs.values())).p
        prec = min(v.absolute_precision for v in x.coeffs.values())
        conv = lambda z: cyclotomic_to_padic(z, p, max(prec, 1))
        m = [[PadicNumber.zero(p, 10**9)] * d for _ in range(d)]
    else:
        conv = lambda z: z
        m = [[_cyc(0)] * d for _ in range(d)]
    for g, a in x.coeffs.items():
        rg = chi.matrix(g)
        for i in range(d):
            for j in range(d):
                if rg[i][j]:
                    m[i][j] = m[i][j] + a * conv(rg[i][j])
    return m


def det_chi(chi: Character, x: GroupRingElement):
    """Det_chi(x) = det(sum_g a_g rho_chi(g))."""
    if chi.group != x.group:
        raise DomainError("character and element belong to different groups")
    if x.domain == PADIC:
        return _det_chi_padic(chi, x)
    return linalg.det(representation_matrix(chi, x), _cyc(1))


def _det_chi_padic(chi: Character, x: GroupRingElement) -> PadicNumber:
    # Det_chi is a polynomial with coefficients in Z[zeta] in the a_g, so evaluating it
    # exactly on rational lifts is correct to the coefficients' common absolute precision
    # (shifted by the most negative valuation).  The value lies in Q(chi) and must embed.
    vals = list(x.coeffs.values())
    p = vals[0].p
    absolute = min(v.absolute_precision for v in vals)
    vmin = min(0, min(v.valuation for v in vals if not v.is_zero()) if any(not v.is_zero() for v in vals) else 0)
    absolute += (chi.degree - 1) * vmin
    lifted = GroupRingElement(x.group, {g: v.lift() for g, v in x.coeffs.items() if not v.is_zero()})
    z = linalg.det(representation_matrix(chi, lifted), _cyc(1))
    if absolute < 1:
        raise PrecisionError("coefficient precision too low for Det_chi")
    if z.is_rational():
        r = z.to_fraction()
        if r == 0:
            return PadicNumber.zero(p, absolute)
        v = valuation(r, p)
        if v >= absolute:
            return PadicNumber.zero(p, absolute)
        return padic_from_rational(r, p, absolute - v)
    return _truncate(cyclotomic_to_padic(z, p, absolute + 5), absolute)


def _truncate(x: PadicNumber, absolute: int) -> PadicNumber:
    if x.is_zero() or x.absolute_precision <= absolute:
        return x
    if x.valuation >= absolute:
        return PadicNumber.zero(x.p, absolute)
    prec = absolute - x.valuation
    return PadicNumber(x.p, x.valuation, x.unit % x.p**prec, prec)


def idempotent_inertia(
    group: MetacyclicGroup,
    inertia: Iterable[Element] | None = None,
    p: int | None = None,
    precision: int = DEFAULT_PRECISION,
) -> GroupRingElement:
    """e_I = (1/|I|) sum_{i in I} i, rational or (when p is given) p-adic."""
    sub = group.subgroup(inertia) if inertia is not None else group.inertia()
    n = len(sub)
    if p is None:
        return GroupRingElement(group, {i: Fraction(1, n) for i in sub})
    if n % p == 0:
        raise DomainError(f"|I| = {n} is not invertible in Z_{p}")
    c = padic_from_rational(Fraction(1, n), p, precision)
    return GroupRingElement(group, {i: c for i in sub})


# ---------------------------------------------------------------------- centre


@dataclass(frozen=True)
class CenterVector:
    """Components of a central element (or a reduced norm) indexed by position in irr_table."""

    components: dict[int, object]

    def __getitem__(self, i: int):
        return self.components[i]

    def __mul__(self, other: "CenterVector") -> "CenterVector":
        return CenterVector({i: v * other.components[i] for i, v in self.components.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CenterVector):
            return NotImplemented
        return self.components.keys() == other.components.keys() and all(
            _scalar_eq(v, other.components[k]) for k, v in self.components.items()
        )

    def to_json(self) -> dict:
        return {str(i): (v.to_json() if hasattr(v, "to_json") else str(v)) for i, v in sorted(self.components.items())}


def _scalar_eq(a, b) -> bool:
    if isinstance(a, PadicNumber) or isinstance(b, PadicNumber):
        pa = a if isinstance(a, PadicNumber) else None
        return (pa or b).equals_at_precision(b if pa else a)
    return _cyc(a) == _cyc(b)


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, (PadicNumber, CyclotomicNumber)) else v == 0


def central_components(z: GroupRingElement) -> CenterVector:
    """Scalars by which a central z acts on each irreducible representation."""
    if not z.is_central():
        raise DomainError("element is not central")
    out = {}
    for i, chi in enumerate(irr_table(z.group)):
        m = representation_matrix(chi, z)
        out[i] = m[0][0]
    return CenterVector(out)


def sharp(v: CenterVector) -> CenterVector:
    """Replace every zero component by 1."""
    one = lambda x: padic_from_rational(1, x.p, DEFAULT_PRECISION) if isinstance(x, PadicNumber) else _cyc(1)
    return CenterVector({i: (one(x) if _is_zero(x) else x) for i, x in v.components.items()})


# ---------------------------------------------------------------------- units of Z_p[G]


def is_unit_padic(x: GroupRingElement, p: int | None = None, precision: int = DEFAULT_PRECISION) -> bool:
    """Whether x is invertible in Z_p[G]: integral coefficients and a unit left-regular determinant."""
    if x.domain == CYCLOTOMIC:
        if p is None:
            raise DomainError("a prime is required for cyclotomic coefficients")
        x = x.to_padic(p, precision)
    if not x.coeffs:
        return False
    p = next(iter(x.coeffs.values())).p
    if any(not v.is_zero() and v.valuation < 0 for v in x.coeffs.values()):
        return False
    m = regular_matrix(x)
    d = determinant(PadicMatrix(p, tuple(tuple(r) for r in m)))
    if d.is_zero():
        raise PrecisionError(f"regular determinant is zero modulo {p}^{d.valuation}")
    return d.valuation == 0


# ---------------------------------------------------------------------- reduced norm diagram


def Nr(a: GroupRingElement) -> CenterVector:
    """Nr(a) = (det T_rho(a))_rho through the matrix representations."""
    return CenterVector({i: det_chi(chi, a) for i, chi in enumerate(irr_table(a.group))})


@lru_cache(maxsize=None)
def _hom_basis(group: MetacyclicGroup, index: int) -> tuple[list[list[CyclotomicNumber]], list[int]]:
    """Basis of Hom_A(V_rho, A) as |G| x d coefficient matrices, flattened column-major.

    Solves L_g Phi = Phi rho(g) for the generators g; each solution's columns lie in
    the chi-isotypic ideal A e_chi.
    """
    chi = irr_table(group)[index]
    els = group.elements()
    n, d = len(els), chi.degree
    zero, one = _cyc(0), _cyc(1)

    def var(h: int, k: int) -> int:
        return k * n + h

    rows = []
    for g in group.generators():
        lg = regular_matrix(GroupRingElement.of(group, g))
        rg = chi.matrix(g)
        for h in range(n):
            for k in range(d):
                row = [zero] * (n * d)
                for h2 in range(n):
                    if lg[h][h2]:
                        row[var(h2, k)] = row[var(h2, k)] + lg[h][h2]
                for l in range(d):
                    if rg[l][k]:
                        row[var(h, l)] = row[var(h, l)] - rg[l][k]
                rows.append(row)
    basis, free = linalg.nullspace(rows, zero, one)
    if len(basis) != d:
        raise DomainError(f"Hom space has dimension {len(basis)}, expected {d}")  # pragma: no cover
    e_chi = GroupRingElement(
        group, {g: chi(group.inv(g)) * Fraction(d, n) for g in els}
    )
    for vec in basis:
        for k in range(d):
            col = GroupRingElement(group, {g: vec[var(i, k)] for i, g in enumerate(els)})
            if col * e_chi != col:
                raise DomainError("Hom basis escapes the isotypic component")  # pragma: no cover
    return basis, free


def nr_can(a: GroupRingElement) -> CenterVector:
    """Reduced norm of [A, right multiplication by a], one determinant per Hom_A(V_rho, A)."""
    if a.domain != CYCLOTOMIC:
        raise DomainError("nr_can needs cyclotomic coefficients")
    group = a.group
    els = group.elements()
    n = len(els)
    ra = right_regular_matrix(a)
    out = {}
    for i, chi in enumerate(irr_table(group)):
        basis, free = _hom_basis(group, i)
        d = chi.degree
        m = [[None] * d for _ in range(d)]
        for j, vec in enumerate(basis):
            # (r_a o phi)(v_k) = phi(v_k) * a
            image = []
            for k in range(d):
                col = vec[k * n:(k + 1) * n]
                image.extend(
                    sum((ra[r][c] * col[c] for c in range(n) if col[c] and ra[r][c]), _cyc(0)) for r in range(n)
                )
            for r in range(d):
                m[r][j] = image[free[r]]
        out[i] = linalg.det(m, _cyc(1))
    return CenterVector(out)


def reduced_norm_diagram_check(a: GroupRingElement) -> bool:
    """nr(can(a)) == Nr(a); a must be invertible."""
    nr_direct = Nr(a)
    if any(_is_zero(v) for v in nr_direct.components.values()):
        raise DomainError("element is not invertible")
    return nr_can(a) == nr_direct


def random_invertible(group: MetacyclicGroup, rng: random.Random, bound: int = 2) -> GroupRingElement:
    """A random element of Q(zeta)[G] with small integer coordinates and all Det_chi nonzero."""
    n = group.value_order
    from .ntheory import euler_phi

    d = euler_phi(n)
    while True:
        coeffs = {g: CyclotomicNumber(n, [rng.randint(-bound, bound) for _ in range(d)]) for g in group.elements()}
        a = GroupRingElement(group, coeffs)
        if a.coeffs and all(det_chi(chi, a) for chi in irr_table(group)):
            return a
