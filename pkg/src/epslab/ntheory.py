"""Small integer helpers on top of sympy's factorisation routines."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy.ntheory import divisors, factorint, isprime, primitive_root

__all__ = [
    "divisors",
    "euler_phi",
    "factorint",
    "isprime",
    "lcm",
    "mobius",
    "primitive_root",
    "valuation",
]


@lru_cache(maxsize=None)
def _factors(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p, _ in _factors(n):
        result = result // p * (p - 1)
    return result


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    fs = _factors(n)
    if any(k > 1 for _, k in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def valuation(x: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v
