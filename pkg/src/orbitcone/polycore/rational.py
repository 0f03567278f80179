"""Exact rational vectors and small dense linear algebra over Q.

A ``RatVec`` is just a tuple of :class:`fractions.Fraction`.  Everything here
is exact; nothing is ever rounded.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

RatVec = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic; pass a string or Fraction")
    return Fraction(x)


def ratvec(entries: Iterable) -> RatVec:
    return tuple(frac(x) for x in entries)


def zero(n: int) -> RatVec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> RatVec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> RatVec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> RatVec:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> RatVec:
    return tuple(c * x for x in a)


def neg(a: Sequence) -> RatVec:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Sequence) -> RatVec:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    a = ratvec(a)
    if is_zero(a):
        return a
    den = reduce(lcm, (x.denominator for x in a), 1)
    ints = [int(x * den) for x in a]
    g = reduce(gcd, (abs(v) for v in ints), 0)
    return tuple(Fraction(v // g) for v in ints)


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(map(frac, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[RatVec]:
    """Basis of {x : row . x = 0 for every row}."""
    red, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def row_space_basis(rows: Sequence[Sequence]) -> list[RatVec]:
    return [tuple(r) for r in row_reduce(rows)[0]]


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> RatVec | None:
    """Unique solution of ``matrix @ x = rhs`` or None if singular/inconsistent."""
    n = len(matrix[0]) if matrix else 0
    aug = [list(map(frac, row)) + [frac(b)] for row, b in zip(matrix, rhs)]
    red, pivots = row_reduce(aug)
    if n in pivots or len(pivots) != n:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = [list(map(frac, r)) for r in matrix]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def project_onto_complement(v: Sequence, basis: Sequence[Sequence]) -> RatVec:
    """Orthogonal projection of ``v`` onto the complement of span(basis)."""
    v = ratvec(v)
    if not basis:
        return v
    gram = [[dot(a, b) for b in basis] for a in basis]
    coeffs = solve(gram, [dot(a, v) for a in basis])
    out = v
    for c, a in zip(coeffs, basis):
        out = sub(out, scale(c, a))
    return out


def matvec(matrix: Sequence[Sequence], v: Sequence) -> RatVec:
    return tuple(dot(row, v) for row in matrix)


def transpose(matrix: Sequence[Sequence]) -> list[RatVec]:
    return [tuple(col) for col in zip(*matrix)]


def fmt(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence) -> list[str]:
    return [fmt(x) for x in v]
