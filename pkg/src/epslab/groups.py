"""Metacyclic groups <sigma, tau | sigma^e, tau^f = sigma^c, tau sigma tau^-1 = sigma^q>
and their exact irreducible character tables.

Every tamely ramified finite Galois group of a local field has this shape,
with sigma generating inertia.  Elements are pairs (a, b) for sigma^a tau^b.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import ConstructionError, DomainError
from .exactnum import CyclotomicNumber
from .ntheory import lcm

Element = tuple[int, int]
Matrix = tuple[tuple[CyclotomicNumber, ...], ...]

MAX_GROUP_ORDER = 10_000


@dataclass(frozen=True)
class MetacyclicGroup:
    e: int
    f: int
    q: int = 1
    c: int = 0

    def __post_init__(self):
        e, f = self.e, self.f
        if e < 1 or f < 1:
            raise ConstructionError("e and f must be positive")
        if e * f > MAX_GROUP_ORDER:
            raise ConstructionError(f"group order {e * f} exceeds {MAX_GROUP_ORDER}")
        object.__setattr__(self, "q", self.q % e)
        object.__setattr__(self, "c", self.c % e)
        if gcd(self.q, e) != 1 and e > 1:
            raise ConstructionError(f"q={self.q} must be a unit mod e={e}")
        if pow(self.q, f, e) != 1 % e:
            raise ConstructionError(f"q^f = {self.q}^{f} is not 1 mod {e}")
        if (self.c * (self.q - 1)) % e:
            raise ConstructionError(f"c(q-1) = {self.c}*({self.q}-1) is not 0 mod {e}")

    # ------------------------------------------------------------------ group law
    @property
    def order(self) -> int:
        return self.e * self.f

    @property
    def identity(self) -> Element:
        return (0, 0)

    @property
    def sigma(self) -> Element:
        return (1 % self.e, 0)

    @property
    def tau(self) -> Element:
        return (0, 1 % self.f) if self.f > 1 else (self.c, 0)

    def elements(self) -> list[Element]:
        return [(a, b) for b in range(self.f) for a in range(self.e)]

    def mul(self, x: Element, y: Element) -> Element:
        (a, b), (a2, b2) = x, y
        s = a + a2 * pow(self.q, b, self.e)
        t = b + b2
        if t >= self.f:
            t -= self.f
            s += self.c
        return (s % self.e, t)

    def inv(self, x: Element) -> Element:
        a, b = x
        if b == 0:
            return ((-a) % self.e, 0)
        # (sigma^a tau^b)^-1 = tau^(f-b) sigma^(-c) sigma^(-a) ... solved directly
        for y in self._tau_coset(self.f - b):
            if self.mul(x, y) == (0, 0):
                return y
        raise ConstructionError("inverse not found")  # pragma: no cover

    def _tau_coset(self, b: int) -> Iterable[Element]:
        return ((a, b % self.f) for a in range(self.e))

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def conjugate(self, x: Element, g: Element) -> Element:
        return self.mul(self.mul(g, x), self.inv(g))

    def is_abelian(self) -> bool:
        return self.q == 1 % self.e or self.f == 1

    def generators(self) -> list[Element]:
        return [self.sigma, self.tau]

    def subgroup(self, gens: Iterable[Element]) -> frozenset[Element]:
        """Closure of the given generators."""
        out = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def inertia(self) -> frozenset[Element]:
        return self.subgroup([self.sigma])

    def conjugacy_classes(self) -> list[tuple[Element, ...]]:
        return _conjugacy_classes(self)

    def class_of(self, x: Element) -> int:
        return _class_index(self)[x]

    @property
    def value_order(self) -> int:
        """Order n of the cyclotomic field Q(zeta_n) holding all character values."""
        return self.e * self.f if self.c else lcm(self.e, self.f)


@lru_cache(maxsize=None)
def _conjugacy_classes(g: MetacyclicGroup) -> list[tuple[Element, ...]]:
    seen: set[Element] = set()
    classes = []
    for x in g.elements():
        if x in seen:
            continue
        cls = sorted({g.conjugate(x, h) for h in g.elements()}, key=lambda t: (t[1], t[0]))
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


@lru_cache(maxsize=None)
def _class_index(g: MetacyclicGroup) -> dict[Element, int]:
    return {x: i for i, cls in enumerate(_conjugacy_classes(g)) for x in cls}


# ---------------------------------------------------------------------- characters


@dataclass(eq=False)
class Character:
    """An irreducible character with an explicit matrix representation.

    `values` is keyed by conjugacy-class representatives; `label` records the
    inducing datum (j, t): the linear character sigma -> zeta_e^j of inertia
    and the chosen extension to its stabiliser.
    """

    group: MetacyclicGroup
    degree: int
    values: dict[Element, CyclotomicNumber]
    label: tuple[int, int] = (0, 0)
    matrices: dict[Element, Matrix] = field(default_factory=dict, repr=False)

    def __call__(self, x: Element) -> CyclotomicNumber:
        reps = self.group.conjugacy_classes()
        return self.values[reps[self.group.class_of(x)][0]]

    def matrix(self, x: Element) -> Matrix:
        return self.matrices[x]

    def is_trivial(self) -> bool:
        return self.degree == 1 and all(v == 1 for v in self.values.values())

    def conjugate(self) -> "Character":
        """The contragredient character (complex conjugate values)."""
        g = self.group
        mats = {
            x: tuple(tuple(z.conjugate() for z in row) for row in m) for x, m in self.matrices.items()
        }
        return Character(g, self.degree, {k: v.conjugate() for k, v in self.values.items()}, self.label, mats)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "label": list(self.label),
            "values": {f"({a},{b})": v.to_json() for (a, b), v in sorted(self.values.items())},
        }


def _zeta(n: int, k: int) -> CyclotomicNumber:
    return CyclotomicNumber.zeta(n, k)


def _induced(g: MetacyclicGroup, j: int, s: int, t: int) -> Character:
    e, f, n = g.e, g.f, g.value_order
    zero = CyclotomicNumber.from_rational(0, n)

    # extension of sigma -> zeta_e^j to H = <sigma, tau^s>: tau^s -> lam,
    # with lam^(f/s) = zeta_e^(j c)
    def ext(h: Element) -> CyclotomicNumber:
        a, b = h
        k1 = j * a * (n // e)
        num = (b // s) * (j * g.c + e * t) * n * s
        if num % (e * f):
            raise ConstructionError("extension value outside Q(zeta_n)")  # pragma: no cover
        k2 = num // (e * f)
        return _zeta(n, k1 + k2)

    reps = [(0, i) for i in range(s)]
    mats = {}
    for x in g.elements():
        m = [[zero] * s for _ in range(s)]
        for i, r in enumerate(reps):
            y = g.mul(x, r)
            k = y[1] % s
            h = g.mul(g.inv(reps[k]), y)
            m[k][i] = ext(h)
        mats[x] = tuple(tuple(row) for row in m)
    values = {}
    for cls in g.conjugacy_classes():
        m = mats[cls[0]]
        tr = m[0][0]
        for i in range(1, s):
            tr = tr + m[i][i]
        values[cls[0]] = tr
    return Character(g, s, values, (j, t), mats)


def _inner(g: MetacyclicGroup, chi: Character, psi: Character) -> Fraction:
    total = CyclotomicNumber.from_rational(0, g.value_order)
    for cls in g.conjugacy_classes():
        total = total + chi.values[cls[0]] * psi.values[cls[0]].conjugate() * len(cls)
    return total.to_fraction() / g.order


@lru_cache(maxsize=None)
def _irr_table(g: MetacyclicGroup) -> tuple[Character, ...]:
    e, f = g.e, g.f
    seen: set[int] = set()
    chars = []
    for j in range(e):
        if j in seen:
            continue
        orbit = [j]
        k = (j * g.q) % e
        while k != j:
            orbit.append(k)
            k = (k * g.q) % e
        seen.update(orbit)
        s = len(orbit)
        for t in range(f // s):
            chars.append(_induced(g, j, s, t))
    if sum(ch.degree**2 for ch in chars) != g.order:
        raise ConstructionError("degrees do not account for the group order")
    for i, a in enumerate(chars):
        for b in chars[i:]:
            if _inner(g, a, b) != (1 if a is b else 0):
                raise ConstructionError(f"characters {a.label} and {b.label} fail orthogonality")
    return tuple(chars)


def irr_table(g: MetacyclicGroup) -> list[Character]:
    """All irreducible characters, trivial first, ordered by inducing datum."""
    return list(_irr_table(g))


def character_table_json(g: MetacyclicGroup) -> dict:
    return {
        "group": {"e": g.e, "f": g.f, "q": g.q, "c": g.c},
        "classes": [[list(x) for x in cls] for cls in g.conjugacy_classes()],
        "characters": [ch.to_json() for ch in irr_table(g)],
    }


def fixed_space_dim(chi: Character, h: Sequence[Element] | frozenset[Element]) -> int:
    """dim V^H computed as the average of chi over H; H is given by generators."""
    g = chi.group
    sub = g.subgroup(h)
    total = CyclotomicNumber.from_rational(0, g.value_order)
    for x in sub:
        total = total + chi(x)
    if not total.is_rational():
        raise ConstructionError("character average over a subgroup is not rational")
    avg = total.to_fraction() / len(sub)
    if avg.denominator != 1 or avg < 0:
        raise ConstructionError(f"average {avg} is not a nonnegative integer")
    return int(avg)


def linear_character_values(g: MetacyclicGroup, chi: Character) -> dict[Element, CyclotomicNumber]:
    if chi.degree != 1:
        raise DomainError("character is not linear")
    return {x: chi.matrix(x)[0][0] for x in g.elements()}
