"""Finite fields F_{p^k} by a fixed primitive polynomial, with discrete-log tables.

Elements are integers 0 <= x < q encoding polynomials in the root t by base-p
digits, constant term first.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import DomainError
from .ntheory import factorint, isprime


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, d = divmod(x, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


class FiniteField:
    """F_q with q = p^k, generated by a root of the Conway-style smallest primitive polynomial."""

    def __init__(self, p: int, k: int = 1):
        if not isprime(p):
            raise DomainError(f"{p} is not prime")
        if k < 1:
            raise DomainError("degree must be positive")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = _primitive_polynomial(p, k)
        self._exp, self._log = self._tables()

    def __repr__(self) -> str:
        return f"FiniteField({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    # ------------------------------------------------------------------ arithmetic
    def add(self, x: int, y: int) -> int:
        p, k = self.p, self.k
        return _undigits([(a + b) % p for a, b in zip(_digits(x, p, k), _digits(y, p, k))], p)

    def neg(self, x: int) -> int:
        p, k = self.p, self.k
        return _undigits([(-a) % p for a in _digits(x, p, k)], p)

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            if n <= 0:
                raise ZeroDivisionError("0 has no nonpositive powers")
            return 0
        return self._exp[(self._log[x] * n) % (self.q - 1)]

    def inv(self, x: int) -> int:
        return self.pow(x, -1)

    @property
    def generator(self) -> int:
        return self._exp[1]

    def log(self, x: int) -> int:
        if x == 0:
            raise DomainError("log of zero")
        return self._log[x]

    def exp(self, n: int) -> int:
        return self._exp[n % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of a rational integer."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p) if x else 0

    def trace(self, x: int) -> int:
        """Absolute trace to F_p, as an integer in [0, p)."""
        acc, y = 0, x
        for _ in range(self.k):
            acc = self.add(acc, y)
            y = self.frobenius(y)
        if acc >= self.p:
            raise AssertionError("trace left the prime field")  # pragma: no cover
        return acc

    def norm_to(self, x: int, sub: "FiniteField") -> int:
        """N_{F_q / F_sub}(x) as an element of `sub`."""
        if self.p != sub.p or self.k % sub.k:
            raise DomainError(f"{sub} is not a subfield of {self}")
        if x == 0:
            return 0
        e = (self.q - 1) // (sub.q - 1)
        return self.subfield_element(self.pow(x, e), sub)

    @lru_cache(maxsize=None)
    def _embedding(self, sub: "FiniteField") -> tuple[int, ...]:
        """Images of the elements of `sub` in this field, compatible with chosen generators."""
        # the image of sub's generator is some element of exact order sub.q-1 satisfying its polynomial
        e = (self.q - 1) // (sub.q - 1)
        for j in range(self.q - 1):
            if (j % e) or __import__("math").gcd(j // e, sub.q - 1) != 1:
                continue
            root = self.exp(j)
            if self._eval_poly(sub.modulus, root) == 0:
                return tuple(
                    self._image(sub, x, root) for x in range(sub.q)
                )
        raise DomainError("no embedding found")  # pragma: no cover

    def _eval_poly(self, coeffs: tuple[int, ...], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c % self.p)
        return acc

    def _image(self, sub: "FiniteField", x: int, root: int) -> int:
        acc, rk = 0, 1
        for d in _digits(x, sub.p, sub.k):
            if d:
                acc = self.add(acc, self.mul(d, rk))
            rk = self.mul(rk, root)
        return acc

    def embed(self, x: int, sub: "FiniteField") -> int:
        return self._embedding(sub)[x]

    def subfield_element(self, y: int, sub: "FiniteField") -> int:
        table = self._embedding(sub)
        try:
            return table.index(y)
        except ValueError:
            raise DomainError(f"{y} does not lie in {sub}") from None

    # ------------------------------------------------------------------ tables
    def _tables(self) -> tuple[list[int], dict[int, int]]:
        p, k, q = self.p, self.k, self.q
        mod = self.modulus  # monic, length k+1, constant term first
        exp = [0] * (q - 1)
        log: dict[int, int] = {}
        cur = [1] + [0] * (k - 1)
        for n in range(q - 1):
            x = _undigits(cur, p)
            if x in log:
                raise DomainError("modulus is not primitive")  # pragma: no cover
            exp[n] = x
            log[x] = n
            if k == 1:
                cur = [(cur[0] * (-mod[0])) % p]
            else:
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [(c - top * m) % p for c, m in zip(cur, mod[:-1])]
        return exp, log


def _poly_mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    return prod[:k]


def _poly_powmod(n: int, mod: tuple[int, ...], p: int) -> list[int]:
    k = len(mod) - 1
    result = [1] + [0] * (k - 1)
    base = [0, 1] + [0] * (k - 2) if k > 1 else [(-mod[0]) % p]
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _is_primitive(mod: tuple[int, ...], p: int) -> bool:
    k = len(mod) - 1
    q = p**k
    one = [1] + [0] * (k - 1)
    if mod[0] % p == 0:
        return False
    if _poly_powmod(q - 1, mod, p) != one:
        return False
    return all(_poly_powmod((q - 1) // r, mod, p) != one for r in factorint(q - 1))


@lru_cache(maxsize=None)
def _primitive_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of degree k in Conway's ordering.

    Coefficients are returned constant term first.  Candidates x^k + c_{k-1}x^{k-1} + ... + c_0
    are ordered lexicographically by ((-1)^{k-i} c_i) for i = k-1 down to 0, which for k = 1
    selects x - g with g the least primitive root.
    """
    for t in product(range(p), repeat=k):
        # t[0] corresponds to i = k-1, t[-1] to i = 0
        coeffs = [0] * k
        for pos, ti in enumerate(t):
            i = k - 1 - pos
            coeffs[i] = (ti * (-1) ** (k - i)) % p
        mod = tuple(coeffs) + (1,)
        if _is_primitive(mod, p):
            return mod
    raise DomainError(f"no primitive polynomial of degree {k} over F_{p}")  # pragma: no cover


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    """F_q for a prime power q."""
    fac = factorint(q)
    if len(fac) != 1:
        raise DomainError(f"{q} is not a prime power")
    (p, k), = fac.items()
    return FiniteField(p, k)
