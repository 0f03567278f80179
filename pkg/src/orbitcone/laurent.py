"""Exact Laurent polynomials in one variable ``t`` and 2x2 matrices over them.

Used to evaluate ``ord_{t=0} f(g . x(t))`` along one-parameter curves.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import IdenticallyZero, NonGeneric


class LaurentScalar:
    """Finite sum ``sum_k c_k t^k`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {int(k): Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def t(cls, k: int = 1, c=1) -> "LaurentScalar":
        return cls({k: c})

    @staticmethod
    def lift(x) -> "LaurentScalar":
        return x if isinstance(x, LaurentScalar) else LaurentScalar.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        if not self.terms:
            raise IdenticallyZero("the zero Laurent polynomial has no order")
        return min(self.terms)

    def leading(self) -> Fraction:
        return self.terms[self.order]

    def substitute_power(self, k: int) -> "LaurentScalar":
        """Reparametrise ``t -> t^k``."""
        return LaurentScalar({e * k: c for e, c in self.terms.items()})

    def __add__(self, other):
        other = LaurentScalar.lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentScalar.lift(other))

    def __rsub__(self, other):
        return LaurentScalar.lift(other) - self

    def __mul__(self, other):
        other = LaurentScalar.lift(other)
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.terms == LaurentScalar.lift(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{k}" for k, c in sorted(self.terms.items()))


Mat2 = tuple  # ((a, b), (c, d)) of LaurentScalar


def mat(a, b, c, d) -> Mat2:
    lift = LaurentScalar.lift
    return ((lift(a), lift(b)), (lift(c), lift(d)))


def matmul(x: Mat2, y: Mat2) -> Mat2:
    return tuple(tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)) for i in range(2))


def det(x: Mat2) -> LaurentScalar:
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def inv_sl2(x: Mat2) -> Mat2:
    """Inverse of a determinant-one matrix (the adjugate)."""
    if det(x) != LaurentScalar.const(1):
        raise ValueError("matrix is not in SL_2")
    return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))


def identity() -> Mat2:
    return mat(1, 0, 0, 1)


def diag(a, b) -> Mat2:
    return mat(a, 0, 0, b)


# -- generic group elements --------------------------------------------------

def random_sl2(rng: np.random.Generator, bound: int = 7) -> Mat2:
    """Integer entries in ``[-bound, bound]``, first row divided by the determinant."""
    while True:
        a, b, c, d = (int(v) for v in rng.integers(-bound, bound + 1, size=4))
        dt = a * d - b * c
        if dt != 0:
            return mat(Fraction(a, dt), Fraction(b, dt), c, d)


def random_upper(rng: np.random.Generator, bound: int = 7) -> Mat2:
    while True:
        a, b = (int(v) for v in rng.integers(-bound, bound + 1, size=2))
        if a != 0:
            return mat(a, b, 0, Fraction(1, a))


def valuation_from_curve(f: Callable, curve: Callable, act: Callable, sample_group: Callable,
                         seed: int = 0, samples: int = 3) -> int:
    """``ord_{t=0} f(g . x(t))`` for generic ``g``, by majority over independent samples.

    ``curve(rng)`` returns the point ``x(t)``; ``sample_group(rng)`` returns ``g``;
    ``act(g, x)`` applies the action.  Samples that disagree with every other
    sample raise ``NonGeneric``.
    """
    rng = np.random.default_rng(seed)
    orders = []
    for _ in range(samples):
        value = f(act(sample_group(rng), curve(rng)))
        orders.append(None if value.is_zero() else value.order)
    if all(o is None for o in orders):
        raise IdenticallyZero("f vanishes along the whole curve family")
    (best, count), = Counter(orders).most_common(1)
    if count < 2 or best is None:
        raise NonGeneric(f"sampled orders disagree: {orders}")
    return best
