"""Root systems of type A1^k and A(n-1), Weyl chambers, parabolic and Levi roots.

Coordinates are Euclidean and self-dual:

* ``A1^k`` lives in R^k with the fundamental weights as the standard basis.
  Roots are ``+-2 e_i``, coroots ``+-e_i``, so pairing a weight with a coroot
  is a plain dot product.
* ``A(n)`` is SL_n acting on R^n with roots ``e_i - e_j``.  The Cartan of SL_n
  is the sum-zero hyperplane; weights are taken modulo ``(1, ..., 1)``.

Every pairing ``<alpha, mu>`` in this module is a dot product in these
coordinates; only its sign matters for parabolic and Levi subsets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polycore import Cone
from .polycore.rational import fmt_vec, ratvec


@dataclass(frozen=True)
class RootSystem:
    kind: str  # "A1^k" or "A(n)"
    param: int
    ambient_rank: int
    roots: tuple
    coroots: tuple
    simple: tuple  # simple roots, in Weyl-word letter order

    @property
    def rank(self) -> int:
        return len(self.simple)

    @property
    def positive_roots(self) -> tuple:
        return tuple(r for r in self.roots if _is_positive(r, self.simple))

    def pairing(self, alpha: Sequence, mu: Sequence):
        return sum(a * m for a, m in zip(alpha, mu))

    def descriptor(self) -> dict:
        return {"type": self.kind.replace("k", str(self.param)) if self.kind == "A1^k"
                else f"A({self.param})"}

    def to_json(self) -> dict:
        return {**self.descriptor(), "roots": [fmt_vec(r) for r in self.roots]}


@dataclass(frozen=True)
class ChamberPoint:
    """A point of the negative Weyl chamber (exact or floating)."""

    coordinates: tuple
    root_system: RootSystem

    def __post_init__(self):
        exact = all(isinstance(v, Fraction) for v in self.coordinates)
        if not in_negative_chamber(self.root_system, self.coordinates, 0.0 if exact else 1e-9):
            raise ValueError("point is not in the negative chamber")

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)


def _is_positive(root, simple) -> bool:
    # express root in the simple basis; all simple roots here are orthogonal or A-type chains
    m = np.array([[float(x) for x in s] for s in simple]).T
    c, *_ = np.linalg.lstsq(m, np.array([float(x) for x in root]), rcond=None)
    return bool(np.all(c >= -1e-12))


def a1_power(k: int) -> RootSystem:
    """Root system of SL_2^k."""
    roots, coroots = [], []
    simple = []
    for i in range(k):
        e = [Fraction(0)] * k
        e[i] = Fraction(2)
        simple.append(tuple(e))
        roots += [tuple(e), tuple(-x for x in e)]
        c = [Fraction(0)] * k
        c[i] = Fraction(1)
        coroots += [tuple(c), tuple(-x for x in c)]
    return RootSystem("A1^k", k, k, tuple(roots), tuple(coroots), tuple(simple))


def type_a(n: int) -> RootSystem:
    """Root system of SL_n (n <= 5), roots e_i - e_j."""
    if not 2 <= n <= 5:
        raise ValueError("type A supported for 2 <= n <= 5")
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                r = [Fraction(0)] * n
                r[i], r[j] = Fraction(1), Fraction(-1)
                roots.append(tuple(r))
    simple = []
    for i in range(n - 1):
        r = [Fraction(0)] * n
        r[i], r[i + 1] = Fraction(1), Fraction(-1)
        simple.append(tuple(r))
    return RootSystem("A(n)", n, n, tuple(roots), tuple(roots), tuple(simple))


def from_descriptor(desc: dict | str) -> RootSystem:
    """Parse ``{"type": "A1^3"}`` or ``{"type": "A(3)"}``."""
    t = desc["type"] if isinstance(desc, dict) else desc
    m = re.fullmatch(r"\s*A1\^(\d+)\s*", t)
    if m:
        return a1_power(int(m.group(1)))
    m = re.fullmatch(r"\s*A\((\d+)\)\s*", t)
    if m:
        return type_a(int(m.group(1)))
    raise ValueError(f"unsupported root system type {t!r}")


def negative_chamber(rs: RootSystem) -> Cone:
    """``{x : alpha(x) <= 0 for positive alpha}``; for A(n) inside the sum-zero plane."""
    normals = [tuple(-a for a in r) for r in rs.simple]
    eqs = [(Fraction(1),) * rs.ambient_rank] if rs.kind == "A(n)" else []
    return Cone.from_inequalities(normals, rs.ambient_rank, equations=eqs)


def _reflect(rs: RootSystem, letter: int, x: list) -> list:
    if rs.kind == "A1^k":
        x = list(x)
        x[letter] = -x[letter]
        return x
    x = list(x)
    x[letter], x[letter + 1] = x[letter + 1], x[letter]
    return x


def _descent(rs: RootSystem, letter: int, x) -> bool:
    # s_letter strictly moves x towards the negative chamber
    if rs.kind == "A1^k":
        return x[letter] > 0
    return x[letter] > x[letter + 1]


def dominance_project(rs: RootSystem, x: Sequence, tol: float = 0.0):
    """Weyl-translate ``x`` into the negative chamber.

    Returns ``(point, word)`` where ``word`` lists simple reflections applied
    left to right.  The word is the lexicographically least reduced word, so
    points on walls always get the same answer.  Floats within ``tol`` of a
    wall are treated as lying on it.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    cur = list(ratvec(x)) if exact else [float(v) for v in x]
    word: list[int] = []
    while True:
        letter = next((i for i in range(rs.rank)
                       if _descent(rs, i, cur) and not _on_wall(rs, i, cur, tol)), None)
        if letter is None:
            return ChamberPoint(tuple(cur), rs), tuple(word)
        cur = _reflect(rs, letter, cur)
        word.append(letter)


def _on_wall(rs, letter, x, tol) -> bool:
    if not tol:
        return False
    gap = x[letter] if rs.kind == "A1^k" else x[letter] - x[letter + 1]
    return abs(gap) <= tol


def apply_word(rs: RootSystem, word: Sequence[int], x: Sequence):
    cur = list(x)
    for w in word:
        cur = _reflect(rs, w, cur)
    return tuple(cur)


def in_negative_chamber(rs: RootSystem, x: Sequence, tol: float = 0.0) -> bool:
    return all(rs.pairing(a, x) <= tol * max(1.0, float(max(map(abs, x), default=0)))
               for a in rs.simple)


def _sign(v, tol):
    if tol and abs(v) <= tol:
        return 0
    return (v > 0) - (v < 0)


def parabolic_roots(rs: RootSystem, mu: Sequence, tol: float = 0.0) -> frozenset:
    """Roots with ``<alpha, mu> >= 0``."""
    return frozenset(r for r in rs.roots if _sign(rs.pairing(r, mu), tol) >= 0)


def levi_roots(rs: RootSystem, mu: Sequence, tol: float = 0.0) -> frozenset:
    """Roots orthogonal to ``mu``."""
    return frozenset(r for r in rs.roots if _sign(rs.pairing(r, mu), tol) == 0)


def weyl_group(rs: RootSystem) -> list[tuple[int, ...]]:
    """All Weyl elements as reduced words (small ranks only)."""
    n = rs.ambient_rank
    probe = [Fraction(i + 1, 7) * (1 if rs.kind == "A(n)" else -1) for i in range(n)]
    seen = {tuple(probe): ()}
    frontier = [tuple(probe)]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(rs.rank):
                q = tuple(_reflect(rs, i, list(p)))
                if q not in seen:
                    seen[q] = seen[p] + (i,)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen.values(), key=lambda w: (len(w), w))
