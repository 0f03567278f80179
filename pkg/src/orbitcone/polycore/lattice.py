"""Integer lattice tools: column Hermite reduction, Smith invariants, basis completion."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import NotExtendable
from .rational import det


def _as_int_rows(vectors: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for v in vectors:
        row = []
        for x in v:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            row.append(int(x))
        rows.append(row)
    return rows


def column_hermite(rows: Sequence[Sequence[int]], ncols: int):
    """Column-reduce an integer k x d matrix ``M`` to lower-triangular ``H = M U``.

    Returns ``(H, U)`` with ``U`` unimodular (d x d).  Rows of ``M`` must be
    linearly independent; the first k columns of ``H`` carry the pivots.
    """
    m = [list(r) for r in rows]
    k = len(m)
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(dst, src, f):
        # column dst -= f * column src
        for r in m:
            r[dst] -= f * r[src]
        for r in u:
            r[dst] -= f * r[src]

    def swap(a, b):
        for r in m:
            r[a], r[b] = r[b], r[a]
        for r in u:
            r[a], r[b] = r[b], r[a]

    for i in range(k):
        # Euclid across columns i..d-1 of row i
        while True:
            nz = [c for c in range(i, ncols) if m[i][c] != 0]
            if not nz:
                raise ValueError("rows are linearly dependent")
            p = min(nz, key=lambda c: abs(m[i][c]))
            if p != i:
                swap(i, p)
            done = True
            for c in range(i + 1, ncols):
                if m[i][c]:
                    colop(c, i, m[i][c] // m[i][i])
                    if m[i][c]:
                        done = False
            if done:
                break
        if m[i][i] < 0:
            for r in m:
                r[i] = -r[i]
            for r in u:
                r[i] = -r[i]
    return m, u


def smith_diagonal(vectors: Sequence[Sequence]) -> list[int]:
    """Invariant factors of the integer matrix whose rows are ``vectors``."""
    a = _as_int_rows(vectors)
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        i, j = min(nz, key=lambda ij: abs(a[ij[0]][ij[1]]))
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            for i in range(t + 1, rows):
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    changed = True
            for j in range(t + 1, cols):
                q = a[t][j] // a[t][t]
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    for r in a:
                        r[t], r[j] = r[j], r[t]
                    changed = True
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def lattice_index(vectors: Sequence[Sequence]) -> int:
    """Index of the sublattice spanned by ``vectors`` inside its saturation."""
    d = smith_diagonal(vectors)
    out = 1
    for x in d:
        out *= x
    return out


def complete_to_lattice_basis(vectors: Sequence[Sequence]) -> list[tuple]:
    """Extend integer vectors to a basis of Z^d, keeping the inputs first.

    Raises NotExtendable when the span is not saturated.
    """
    rows = _as_int_rows(vectors)
    if not rows:
        raise ValueError("need at least one vector to infer the ambient rank")
    d = len(rows[0])
    k = len(rows)
    h, u = column_hermite(rows, d)
    diag = [h[i][i] for i in range(k)]
    if any(x != 1 for x in diag):
        idx = 1
        for x in diag:
            idx *= x
        raise NotExtendable(f"sublattice has index {idx} in its saturation")
    # M = [H | 0] U^{-1}; rows k.. of U^{-1} complete M to a basis
    uinv = _unimodular_inverse(u)
    basis = [tuple(Fraction(x) for x in r) for r in rows]
    basis += [tuple(Fraction(x) for x in uinv[i]) for i in range(k, d)]
    assert abs(det(basis)) == 1
    return basis


def _unimodular_inverse(u: list[list[int]]) -> list[list[int]]:
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(u)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [[int(x) for x in row[n:]] for row in aug]


def extends_to_basis(vectors: Sequence[Sequence]) -> bool:
    try:
        complete_to_lattice_basis(vectors)
    except (NotExtendable, ValueError):
        return False
    return True


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
