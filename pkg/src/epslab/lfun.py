"""Dirichlet L-functions in floating point: Gauss sums, L(chi, s) via Hurwitz zeta by
Euler-Maclaurin summation, the functional equation residual and the class number of Q(i).

The completed function is Lambda(chi, s) = (N/pi)^{s/2} Gamma((s+k)/2) L(chi, s), k the
parity of chi.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

import mpmath

from .errors import DomainError, PrecisionError
from .ntheory import divisors, factorint, primitive_root

DEFAULT_BITS = 128
ComplexLike = Union[complex, float, int, str, mpmath.mpc, mpmath.mpf]


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"^(?:(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?[ij]?|(?P<only>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij])$")


def parse_complex(s: ComplexLike) -> mpmath.mpc:
    """'a', 'a+bi', 'bi' or a number; decimal strings are read at the working precision."""
    if not isinstance(s, str):
        return mpmath.mpc(s)
    t = s.replace(" ", "")
    m = _COMPLEX.match(t)
    if not m or not t:
        raise DomainError(f"not a complex number: {s!r}")
    if m.group("only") is not None:
        return mpmath.mpc(0, _coef(m.group("only")))
    if not t.endswith(("i", "j")):
        if m.group("im"):
            raise DomainError(f"not a complex number: {s!r}")
        return mpmath.mpc(mpmath.mpf(m.group("re")))
    if m.group("im") is None:  # '2i'
        return mpmath.mpc(0, _coef(m.group("re")))
    return mpmath.mpc(mpmath.mpf(m.group("re")), _coef(m.group("im")))


def _coef(x: str) -> mpmath.mpf:
    return mpmath.mpf(x + "1") if x in ("", "+", "-") else mpmath.mpf(x)


# ---------------------------------------------------------------------- characters


def _unit_group_generators(n: int) -> list[tuple[int, int]]:
    """Generators of (Z/n)^x with their orders, one cyclic factor per generator."""
    gens = []
    for p, k in sorted(factorint(n).items()):
        pk = p**k
        rest = n // pk
        if p == 2:
            if k == 1:
                continue
            local = [(pk - 1, 2)] + ([(5, pk // 4)] if k >= 3 else [])
        else:
            local = [(primitive_root(pk), (p - 1) * p ** (k - 1))]
        for g, order in local:
            # lift to Z/n: g mod p^k and 1 mod the rest
            x = g if rest == 1 else (g * rest * pow(rest, -1, pk) + pk * pow(pk, -1, rest)) % n
            gens.append((x, order))
    return gens


def _discrete_logs(n: int, gens: list[tuple[int, int]]) -> dict[int, tuple[int, ...]]:
    table = {1 % n: tuple(0 for _ in gens)}
    for i, (g, order) in enumerate(gens):
        new = {}
        for x, exps in table.items():
            y = x
            for k in range(order):
                new[y] = exps[:i] + (k,) + exps[i + 1:]
                y = y * g % n
        table = new
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    """chi mod N through phases: chi(g_i) = exp(2 pi i phases[i]) on the fixed generators."""

    modulus: int
    phases: tuple[Fraction, ...]

    @property
    def generators(self) -> list[tuple[int, int]]:
        return _unit_group_generators(self.modulus)

    def phase(self, a: int) -> Fraction | None:
        """chi(a) = exp(2 pi i phase); None when gcd(a, N) > 1."""
        n = self.modulus
        a %= n
        if gcd(a, n) != 1:
            return None
        exps = _logs(n)[a]
        return sum((e * ph for e, ph in zip(exps, self.phases)), Fraction(0)) % 1

    def value(self, a: int) -> mpmath.mpc:
        ph = self.phase(a)
        if ph is None:
            return mpmath.mpc(0)
        return _root_of_unity(ph)

    @property
    def parity(self) -> int:
        ph = self.phase(-1)
        return 0 if ph == 0 else 1

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple((-x) % 1 for x in self.phases))

    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.phases)

    @property
    def conductor(self) -> int:
        n = self.modulus
        for d in divisors(n):
            if all(self.phase(a) == 0 for a in range(1, n) if gcd(a, n) == 1 and a % d == 1 % d):
                return d
        return n  # pragma: no cover

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def order(self) -> int:
        o = 1
        for x in self.phases:
            o = o * x.denominator // gcd(o, x.denominator)
        return o

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "phases": [str(x) for x in self.phases], "parity": self.parity}


@lru_cache(maxsize=None)
def _logs(n: int) -> dict[int, tuple[int, ...]]:
    return _discrete_logs(n, _unit_group_generators(n))


def _root_of_unity(ph: Fraction) -> mpmath.mpc:
    if ph == 0:
        return mpmath.mpc(1)
    if ph == Fraction(1, 2):
        return mpmath.mpc(-1)
    if ph == Fraction(1, 4):
        return mpmath.mpc(0, 1)
    if ph == Fraction(3, 4):
        return mpmath.mpc(0, -1)
    return mpmath.expjpi(2 * mpmath.mpf(ph.numerator) / ph.denominator)


def dirichlet_characters(n: int) -> list[DirichletCharacter]:
    gens = _unit_group_generators(n)
    out = [()]
    for _, order in gens:
        out = [t + (Fraction(k, order),) for t in out for k in range(order)]
    return [DirichletCharacter(n, t) for t in out]


def primitive_characters(n: int) -> list[DirichletCharacter]:
    return [chi for chi in dirichlet_characters(n) if chi.is_primitive]


def character_from_values(n: int, values: dict[int, int]) -> DirichletCharacter:
    """The real character with the prescribed +-1 values, found by search."""
    for chi in dirichlet_characters(n):
        if all(chi.phase(a) == (0 if v == 1 else Fraction(1, 2)) for a, v in values.items()):
            return chi
    raise DomainError(f"no character mod {n} with values {values}")


# ---------------------------------------------------------------------- Gauss sums and L-values


def dirichlet_gauss_sum(chi: DirichletCharacter, bits: int = DEFAULT_BITS) -> mpmath.mpc:
    """tau(chi) = sum_nu chi(nu) exp(2 pi i nu / N)."""
    n = chi.modulus
    with mpmath.workprec(bits):
        acc = mpmath.mpc(0)
        for nu in range(n):
            ph = chi.phase(nu)
            if ph is not None:
                acc += _root_of_unity((ph + Fraction(nu, n)) % 1)
        return +acc


@dataclass(frozen=True)
class HurwitzPlan:
    terms: int
    order: int
    bound: mpmath.mpf


def _plan(s: mpmath.mpc, a: mpmath.mpf, target: mpmath.mpf, bits: int) -> HurwitzPlan:
    """Choose N terms and M Bernoulli corrections with the remainder bound
    |R| <= 4 |(s)_{2M}| / (2 pi)^{2M} * (N+a)^{-(sigma+2M-1)} / (sigma+2M-1).

    The bound decreases in a; a plan made for the smallest a covers all larger ones.
    """
    floor = mpmath.mpf(2) ** (-bits + 8)
    if target < floor:
        raise PrecisionError(f"target error {mpmath.nstr(target, 3)} below working precision {bits} bits")
    with mpmath.workprec(53):
        sigma = s.real
        n = int(abs(s.imag)) + 1
        two_pi = 2 * mpmath.pi
        while n < 1 << 20:
            best = None
            x = n + a
            poch = abs(s) * abs(s + 1)
            for m in range(1, 400):
                expo = sigma + 2 * m - 1
                if expo > 0:
                    b = 4 * poch / two_pi ** (2 * m) * x ** (-expo) / expo
                    if best is None or b < best.bound:
                        best = HurwitzPlan(n, m, b)
                    if b <= target:
                        return best
                    if b > 4 * best.bound:
                        break
                poch *= abs(s + 2 * m) * abs(s + 2 * m + 1)
            n *= 2
    raise PrecisionError("no Euler-Maclaurin plan meets the target")  # pragma: no cover


def hurwitz_zeta(
    s: ComplexLike,
    a,
    target_error: float = 1e-20,
    bits: int = DEFAULT_BITS,
    regularize: bool = False,
    plan: HurwitzPlan | None = None,
):
    """zeta(s, a) = sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin; returns (value, error bound).

    With regularize=True and s = 1 the pole is dropped: the term (N+a)^{1-s}/(s-1) is
    replaced by its constant part -log(N+a).
    """
    with mpmath.workprec(bits + 20):
        s = parse_complex(s)
        a = mpmath.mpf(a) if not isinstance(a, Fraction) else mpmath.mpf(a.numerator) / a.denominator
        if a <= 0:
            raise DomainError("Hurwitz parameter must be positive")
        at_pole = abs(s - 1) == 0
        if at_pole and not regularize:
            raise DomainError("zeta(s, a) has a pole at s = 1")
        if plan is None:
            plan = _plan(s, a, mpmath.mpf(target_error), bits)
        n, m = plan.terms, plan.order
        acc = mpmath.fsum((k + a) ** (-s) for k in range(n))
        x = n + a
        acc += -mpmath.log(x) if at_pole else x ** (1 - s) / (s - 1)
        acc += x ** (-s) / 2
        poch = s  # (s)_{2j-1}
        xp = x ** (-s - 1)
        for j in range(1, m + 1):
            acc += mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * poch * xp
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            xp /= x * x
        return +acc, plan.bound


def l_value(chi: DirichletCharacter, s: ComplexLike, target_error: float = 1e-20, bits: int = DEFAULT_BITS):
    """L(chi, s) = N^{-s} sum_a chi(a) zeta(s, a/N); returns (value, error bound)."""
    n = chi.modulus
    with mpmath.workprec(bits + 20):
        s = parse_complex(s)
        at_one = abs(s - 1) == 0
        if at_one and chi.is_trivial():
            raise DomainError("L(chi, s) has a pole at s = 1 for the principal character")
        acc = mpmath.mpc(0)
        err = mpmath.mpf(0)
        per = mpmath.mpf(target_error) / max(1, n)
        plan = _plan(s, mpmath.mpf(1) / n, per, bits)
        for a in range(1, n + 1):
            ph = chi.phase(a)
            if ph is None:
                continue
            z, b = hurwitz_zeta(s, Fraction(a, n), per, bits, regularize=at_one, plan=plan)
            acc += _root_of_unity(ph) * z
            err += b
        scale = mpmath.mpf(n) ** (-s)
        value = +(acc * scale)
        bound = err * abs(scale)
        if bound > target_error:
            raise PrecisionError("error bound exceeds the target")  # pragma: no cover
        return value, bound


def completed_l(chi: DirichletCharacter, s: ComplexLike, bits: int = DEFAULT_BITS) -> mpmath.mpc:
    """Lambda(chi, s) = (N/pi)^{s/2} Gamma((s+k)/2) L(chi, s)."""
    with mpmath.workprec(bits + 20):
        s = parse_complex(s)
        n, k = chi.modulus, chi.parity
        val, _ = l_value(chi, s, mpmath.mpf(2) ** (-bits // 2 - 16), bits)
        return +((mpmath.mpf(n) / mpmath.pi) ** (s / 2) * mpmath.gamma((s + k) / 2) * val)


def root_number(chi: DirichletCharacter, bits: int = DEFAULT_BITS) -> mpmath.mpc:
    """tau(chi) / (i^k sqrt(N))."""
    with mpmath.workprec(bits + 20):
        return dirichlet_gauss_sum(chi, bits) / (mpmath.mpc(0, 1) ** chi.parity * mpmath.sqrt(chi.modulus))


def functional_equation_residual(chi: DirichletCharacter, s: ComplexLike, bits: int = DEFAULT_BITS) -> float:
    """|Lambda(chi, s) - W(chi) Lambda(chi-bar, 1 - s)|."""
    if not chi.is_primitive:
        raise DomainError("functional equation needs a primitive character")
    with mpmath.workprec(bits + 20):
        s = parse_complex(s)
        lhs = completed_l(chi, s, bits)
        rhs = root_number(chi, bits) * completed_l(chi.conjugate(), 1 - s, bits)
        return float(abs(lhs - rhs))


def class_number_check_qi(bits: int = DEFAULT_BITS) -> dict:
    """h(Q(i)) = (#mu sqrt(N) / 2 pi) L(chi_1, 1) with chi_1 the character mod 4."""
    chi = character_from_values(4, {1: 1, 3: -1})
    with mpmath.workprec(bits + 20):
        val, bound = l_value(chi, 1, 1e-30, bits)
        mu, sqrt_n = 4, mpmath.sqrt(4)
        h = mu * sqrt_n / (2 * mpmath.pi) * val
        return {
            "L(chi_1,1)": mpmath.nstr(val.real, 25),
            "error_bound": float(bound),
            "mu": mu,
            "sqrt_N": float(sqrt_n),
            "class_number": float(h.real),
            "pass": abs(h - 1) < 1e-6,
            "bits": bits,
        }
