"""Truncated p-adic numbers with explicit precision, and Smith normal form over Z_p.

A nonzero value is p^valuation * unit with the unit known modulo p^precision
(relative precision).  A value that vanishes modulo the available absolute
precision N is kept as a distinct zero-at-precision state: valuation = N,
no digits, precision 0.  It is never treated as an exact zero.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError, PrecisionError
from .ntheory import isprime

DEFAULT_PRECISION = int(os.environ.get("EPSLAB_PRECISION", "40"))


def _split(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@dataclass(frozen=True)
class PadicNumber:
    p: int
    valuation: int
    unit: int
    precision: int

    # ------------------------------------------------------------------ constructors
    @classmethod
    def zero(cls, p: int, absolute_precision: int) -> "PadicNumber":
        return cls(p, absolute_precision, 0, 0)

    @classmethod
    def from_rational(cls, r: int | Fraction, p: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return padic_from_rational(r, p, precision)

    @classmethod
    def _make(cls, p: int, value: int, valuation: int, absolute: int) -> "PadicNumber":
        # value is an integer representative of p^valuation * (something) modulo p^absolute
        mod = p ** (absolute - valuation) if absolute > valuation else 1
        value %= mod
        if absolute <= valuation or value == 0:
            return cls.zero(p, absolute)
        v, u = _split(value, p)
        prec = absolute - valuation - v
        return cls(p, valuation + v, u % p**prec, prec)

    # ------------------------------------------------------------------ accessors
    def is_zero(self) -> bool:
        """True for the zero-at-precision state."""
        return self.unit == 0

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    @property
    def unit_digits(self) -> tuple[int, ...]:
        digits = []
        u = self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.p)
            digits.append(d)
        return tuple(digits)

    def is_unit(self) -> bool:
        if self.is_zero():
            raise PrecisionError(f"value is zero modulo p^{self.valuation}; unit status undecided")
        return self.valuation == 0

    def lift(self) -> Fraction:
        """A rational representative, p^valuation * unit."""
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise DomainError(f"mixing primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            prec = max(self.absolute_precision, 1) if not self.is_zero() else max(self.valuation, 1)
            r = Fraction(other)
            if r == 0:
                return PadicNumber.zero(self.p, 10**9)
            v = _rat_val(r, self.p)
            return padic_from_rational(r, self.p, max(prec - v, 1) + 1)
        raise TypeError(f"cannot combine PadicNumber with {type(other).__name__}")

    # ------------------------------------------------------------------ arithmetic
    def __add__(self, other) -> "PadicNumber":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        absolute = min(a.absolute_precision, b.absolute_precision)
        v = min(a.valuation, b.valuation)
        if v >= absolute:
            return PadicNumber.zero(a.p, absolute)
        if b.is_zero() or a.is_zero():
            nz = a if b.is_zero() else b
            if nz.absolute_precision == absolute:
                return nz
            return PadicNumber._make(nz.p, nz.unit, nz.valuation, absolute)
        p = a.p
        value = a.unit * p ** (a.valuation - v) + b.unit * p ** (b.valuation - v)
        return PadicNumber._make(p, value, v, absolute)

    __radd__ = __add__

    def __neg__(self) -> "PadicNumber":
        if self.is_zero():
            return self
        return PadicNumber(self.p, self.valuation, (-self.unit) % self.p**self.precision, self.precision)

    def __sub__(self, other) -> "PadicNumber":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other) -> "PadicNumber":
        return (-self) + other

    def __mul__(self, other) -> "PadicNumber":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = self
        if a.is_zero() and b.is_zero():
            return PadicNumber.zero(a.p, a.valuation + b.valuation)
        if a.is_zero() or b.is_zero():
            z, nz = (a, b) if a.is_zero() else (b, a)
            return PadicNumber.zero(a.p, z.valuation + nz.valuation)
        prec = min(a.precision, b.precision)
        return PadicNumber(a.p, a.valuation + b.valuation, (a.unit * b.unit) % a.p**prec, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_zero():
            raise PrecisionError("inverse of a value that is zero at working precision")
        mod = self.p**self.precision
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other) -> "PadicNumber":
        try:
            b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other) -> "PadicNumber":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "PadicNumber":
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_zero():
            return PadicNumber.zero(self.p, self.valuation * k) if k else padic_from_rational(1, self.p, 1)
        return PadicNumber(self.p, self.valuation * k, pow(self.unit, k, self.p**self.precision), self.precision)

    def equals_at_precision(self, other) -> bool:
        """True iff the difference vanishes at the common absolute precision."""
        return (self - other).is_zero()

    # ------------------------------------------------------------------ serialisation
    def to_json(self) -> dict:
        return {"p": self.p, "val": self.valuation, "digits": list(self.unit_digits), "prec": self.precision}

    @classmethod
    def from_json(cls, data: dict) -> "PadicNumber":
        p = int(data["p"])
        digits = data["digits"]
        unit = sum(int(d) * p**i for i, d in enumerate(digits))
        return cls(p, int(data["val"]), unit, int(data["prec"]))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.p}^{self.valuation})"
        return f"{self.p}^{self.valuation}*({self.unit} + O({self.p}^{self.precision}))"


def _rat_val(r: Fraction, p: int) -> int:
    vn, _ = _split(r.numerator, p)
    vd, _ = _split(r.denominator, p)
    return vn - vd


def padic_from_rational(r: int | Fraction, p: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Hensel expansion of r with `precision` digits of its unit part."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if precision < 1:
        raise DomainError("precision must be positive")
    r = Fraction(r)
    if r == 0:
        return PadicNumber.zero(p, precision)
    vn, un = _split(r.numerator, p)
    vd, ud = _split(r.denominator, p)
    mod = p**precision
    return PadicNumber(p, vn - vd, un * pow(ud, -1, mod) % mod, precision)


Entry = Union[PadicNumber, int, Fraction]


@dataclass(frozen=True)
class PadicMatrix:
    p: int
    entries: tuple[tuple[PadicNumber, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]], p: int, precision: int = DEFAULT_PRECISION) -> "PadicMatrix":
        out = []
        for row in rows:
            r = []
            for x in row:
                if isinstance(x, PadicNumber):
                    if x.p != p:
                        raise DomainError("matrix entries must share one prime")
                    r.append(x)
                else:
                    r.append(padic_from_rational(x, p, precision))
            out.append(tuple(r))
        if len({len(r) for r in out}) > 1:
            raise DomainError("matrix must be rectangular")
        return cls(p, tuple(out))

    @classmethod
    def identity(cls, n: int, p: int, precision: int = DEFAULT_PRECISION) -> "PadicMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], p, precision)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __matmul__(self, other: "PadicMatrix") -> "PadicMatrix":
        if self.cols != other.rows:
            raise DomainError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return PadicMatrix(self.p, tuple(out))

    def equals_at_precision(self, other: "PadicMatrix") -> bool:
        return all(
            a.equals_at_precision(b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )


@dataclass(frozen=True)
class SmithForm:
    exponents: tuple[int, ...]
    left: PadicMatrix
    right: PadicMatrix
    diagonal: PadicMatrix = field(repr=False)


def _pick_pivot(a: list[list[PadicNumber]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            x = a[i][j]
            if not x.is_zero() and (best is None or x.valuation < a[best[0]][best[1]].valuation):
                best = (i, j)
    return best


def smith_normal_form(m: PadicMatrix) -> SmithForm:
    """Diagonalise m over Z_p: left @ m @ right == diag(p^a_1, ..., p^a_r).

    Pivots are the minimal-valuation entries (row-major on ties).  If every
    remaining entry is zero at precision while rows and columns remain, a
    PrecisionError is raised: the rank cannot be certified.
    """
    p = m.p
    rows, cols = m.rows, m.cols
    prec = max((x.absolute_precision for r in m.entries for x in r if not x.is_zero()), default=DEFAULT_PRECISION)
    a = [list(r) for r in m.entries]
    left = [list(r) for r in PadicMatrix.identity(rows, p, prec).entries]
    right = [list(r) for r in PadicMatrix.identity(cols, p, prec).entries]
    exps = []
    for t in range(min(rows, cols)):
        piv = _pick_pivot(a, t)
        if piv is None:
            raise PrecisionError(
                f"pivot {t} of the Smith form is zero at working precision; raise the precision"
            )
        i, j = piv
        a[t], a[i] = a[i], a[t]
        left[t], left[i] = left[i], left[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        for r in right:
            r[t], r[j] = r[j], r[t]
        pivot = a[t][t]
        # normalise pivot to p^v
        scale = PadicNumber(p, 0, pivot.unit, pivot.precision).inverse()
        a[t] = [x * scale for x in a[t]]
        left[t] = [x * scale for x in left[t]]
        pivot = a[t][t]
        for i2 in range(t + 1, rows):
            x = a[i2][t]
            if x.is_zero():
                continue
            c = x / pivot
            a[i2] = [y - c * z for y, z in zip(a[i2], a[t])]
            left[i2] = [y - c * z for y, z in zip(left[i2], left[t])]
        for j2 in range(t + 1, cols):
            x = a[t][j2]
            if x.is_zero():
                continue
            c = x / pivot
            for r in a:
                r[j2] = r[j2] - c * r[t]
            for r in right:
                r[j2] = r[j2] - c * r[t]
        exps.append(pivot.valuation)
    diag = PadicMatrix.from_rows(
        [[(Fraction(p) ** exps[i] if i == j and i < len(exps) else 0) for j in range(cols)] for i in range(rows)],
        p,
        prec,
    )
    return SmithForm(
        tuple(exps),
        PadicMatrix(p, tuple(tuple(r) for r in left)),
        PadicMatrix(p, tuple(tuple(r) for r in right)),
        diag,
    )


def determinant(m: PadicMatrix) -> PadicNumber:
    """Determinant by elimination with minimal-valuation pivots; zero-at-precision if singular at precision."""
    if m.rows != m.cols:
        raise DomainError("determinant of a non-square matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    p = m.p
    det = None
    sign = 1
    for t in range(n):
        best = None
        for i in range(t, n):
            x = a[i][t]
            if not x.is_zero() and (best is None or x.valuation < a[best][t].valuation):
                best = i
        if best is None:
            bound = min(a[i][t].valuation for i in range(t, n))
            rest = det if det is not None else padic_from_rational(1, p, DEFAULT_PRECISION)
            return PadicNumber.zero(p, rest.valuation + bound) if not rest.is_zero() else rest
        if best != t:
            a[t], a[best] = a[best], a[t]
            sign = -sign
        pivot = a[t][t]
        det = pivot if det is None else det * pivot
        for i in range(t + 1, n):
            x = a[i][t]
            if x.is_zero():
                continue
            c = x / pivot
            a[i] = [y - c * z for y, z in zip(a[i], a[t])]
    if det is None:
        return padic_from_rational(1, p, DEFAULT_PRECISION)
    return det if sign == 1 else -det


def teichmuller(a: int, p: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Teichmüller lift of a mod p: the unique (p-1)-th root of unity congruent to a."""
    if a % p == 0:
        raise DomainError("Teichmüller lift of 0")
    mod = p**precision
    x = a % p
    for _ in range(precision.bit_length() + 2):
        # Newton step for x^(p-1) = 1
        x = (x - (pow(x, p - 1, mod) - 1) * pow((p - 1) * pow(x, p - 2, mod), -1, mod)) % mod
    return PadicNumber(p, 0, x, precision)
