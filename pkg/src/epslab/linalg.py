"""Exact Gaussian elimination over any field whose elements support + - * / and bool."""
from __future__ import annotations

from typing import Any, Sequence


def det(m: Sequence[Sequence[Any]], one: Any = 1) -> Any:
    n = len(m)
    if n == 0:
        return one
    a = [list(r) for r in m]
    result = one
    for t in range(n):
        piv = next((i for i in range(t, n) if a[i][t]), None)
        if piv is None:
            return a[0][0] * 0
        if piv != t:
            a[t], a[piv] = a[piv], a[t]
            result = -result
        pv = a[t][t]
        result = result * pv
        inv = 1 / pv
        for i in range(t + 1, n):
            if a[i][t]:
                c = a[i][t] * inv
                a[i] = [x - c * y for x, y in zip(a[i], a[t])]
    return result


def rref(m: Sequence[Sequence[Any]]) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                k = a[i][c]
                a[i] = [x - k * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m: Sequence[Sequence[Any]], zero: Any, one: Any) -> tuple[list[list[Any]], list[int]]:
    """Basis of {x : m x = 0}; basis vector i is 1 at free column free[i] and 0 at the other free columns."""
    cols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis, free


def solve(m: Sequence[Sequence[Any]], b: Sequence[Any]) -> list[Any]:
    """Unique solution of the square nonsingular system m x = b."""
    n = len(m)
    aug = [list(r) + [b[i]] for i, r in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> list[list[Any]]:
    inner = len(b)
    return [[sum((a[i][k] * b[k][j] for k in range(1, inner)), a[i][0] * b[0][j]) for j in range(len(b[0]))] for i in range(len(a))]
