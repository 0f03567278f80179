from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from orbitcone.errors import NotExtendable
from orbitcone.polycore import complete_to_lattice_basis, lattice_index, smith_diagonal
from orbitcone.polycore.rational import det, fmt, frac, nullspace, rank, ratvec, solve


def test_frac_parses_strings_and_ints():
    assert frac("3/4") == Fraction(3, 4)
    assert frac(-2) == Fraction(-2)
    assert fmt(Fraction(-1, 2)) == "-1/2"
    assert fmt(Fraction(3)) == "3"


def test_frac_rejects_float():
    with pytest.raises((TypeError, ValueError)):
        frac(0.5)


@pytest.mark.parametrize("vectors, expected", [
    ([(1, 0)], [(1, 0), (0, 1)]),
    ([(1, 1), (0, 1)], [(1, 1), (0, 1)]),
])
def test_complete_to_lattice_basis_examples(vectors, expected):
    out = complete_to_lattice_basis(vectors)
    assert [tuple(v) for v in out] == [tuple(Fraction(x) for x in v) for v in expected]


def test_non_saturated_span_is_not_extendable():
    with pytest.raises(NotExtendable):
        complete_to_lattice_basis([(2, 0)])


int_rows = st.integers(1, 3).flatmap(
    lambda k: st.integers(k, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                           min_size=k, max_size=k)))


@given(int_rows)
def test_smith_diagonal_matches_sympy(rows):
    ours = [d for d in smith_diagonal(rows) if d]
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    theirs = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert ours == theirs


@given(int_rows)
def test_completion_is_unimodular_or_refused(rows):
    if rank(rows) < len(rows):
        return
    index = lattice_index(rows)
    if index != 1:
        with pytest.raises(NotExtendable):
            complete_to_lattice_basis(rows)
        return
    basis = complete_to_lattice_basis(rows)
    assert [tuple(b) for b in basis[:len(rows)]] == [tuple(ratvec(r)) for r in rows]
    assert abs(det(basis)) == 1
    assert all(x.denominator == 1 for b in basis for x in b)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3))
def test_nullspace_is_orthogonal_and_complementary(rows):
    ns = nullspace(rows, 3)
    assert len(ns) + rank(rows) == 3
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve_exact():
    x = solve([[2, 1], [1, 3]], [3, 5])
    assert x == ratvec([Fraction(4, 5), Fraction(7, 5)])
