from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import approx_fprime

from orbitcone.errors import BoundaryPoint, NotUnimodular, RankDeficient, ZeroVector
from orbitcone.experiments import random_special_linear, random_special_unitary
from orbitcone.momentnum import (
    Divergent, MatrixGroupElement, MinimumFound, NumericConfig, SU2Representation,
    TorusRepresentation, WeightedVector, cartan_decompose, invert_toric_moment,
    kempf_ness_minimize, kirwan, moment_map, solve_toric_moment, spin_matrices,
    stabilizer_dimension, toric_moment, toric_potential, zero_in_relative_interior,
)

SEGMENT = WeightedVector(((0,), (1,)), (1.0, 1.0))
SQUARE = WeightedVector(((0, 0), (1, 0), (0, 1), (1, 1)), (1.0, 2.0, 0.5, 1.0))


# -- toric moment map --------------------------------------------------------------

def test_weighted_vector_merges_duplicates():
    w = WeightedVector(((1,), (0,), (1,)), (1.0, 2.0, 3.0))
    assert w.weights == ((0,), (1,)) and w.amplitudes == (2.0, 4.0)


@pytest.mark.parametrize("bad", [((), ()), (((0,),), (0.0,)), (((0.5,),), (1.0,))])
def test_weighted_vector_validation(bad):
    with pytest.raises(ValueError):
        WeightedVector(*bad)


@pytest.mark.parametrize("xi, mu", [(0.0, 0.5), (0.5 * np.log(3), 0.75)])
def test_logistic_closed_form(xi, mu):
    assert toric_moment(SEGMENT, [xi])[0] == pytest.approx(mu, abs=1e-15)


def test_single_weight_is_constant():
    w = WeightedVector(((2, -1),), (3.0,))
    assert np.allclose(toric_moment(w, [5.0, -7.0]), [2, -1])


def test_extreme_parameters_do_not_overflow():
    mu = toric_moment(SQUARE, [800.0, -900.0])
    assert np.all(np.isfinite(mu)) and np.allclose(mu, [1, 0])


@given(st.lists(st.floats(-3, 3), min_size=2, max_size=2))
def test_moment_is_gradient_of_potential(xi):
    grad = approx_fprime(np.array(xi), lambda x: toric_potential(SQUARE, x), 1e-7)
    assert np.allclose(grad, toric_moment(SQUARE, xi), atol=1e-5)


@given(st.lists(st.floats(-3, 3), min_size=2, max_size=2),
       st.lists(st.floats(-3, 3), min_size=2, max_size=2))
def test_potential_is_convex(a, b):
    a, b = np.array(a), np.array(b)
    mid = toric_potential(SQUARE, (a + b) / 2)
    assert mid <= (toric_potential(SQUARE, a) + toric_potential(SQUARE, b)) / 2 + 1e-12


# -- inversion -----------------------------------------------------------------------

def test_invert_at_centre():
    assert invert_toric_moment(SEGMENT, [0.5])[0] == pytest.approx(0.0, abs=1e-12)


def test_invert_closed_form():
    xi = invert_toric_moment(SEGMENT, [0.75])
    assert xi[0] == pytest.approx(0.5 * np.log(3), abs=1e-10)


@pytest.mark.parametrize("mu", [[0.0], [1.0], [1.5], [-0.2]])
def test_boundary_and_outside_points(mu):
    with pytest.raises(BoundaryPoint):
        invert_toric_moment(SEGMENT, mu)


def test_off_affine_hull_is_rank_deficient():
    w = WeightedVector(((0, 0), (1, 1)), (1.0, 1.0))
    with pytest.raises(RankDeficient):
        invert_toric_moment(w, [0.5, 0.2])


def test_degenerate_hull_inverts_inside_affine_hull():
    w = WeightedVector(((0, 0), (1, 1)), (1.0, 1.0))
    r = solve_toric_moment(w, [0.25, 0.25])
    assert np.allclose(toric_moment(w, r.xi), [0.25, 0.25], atol=1e-9)


@given(st.lists(st.floats(-2, 2), min_size=2, max_size=2))
def test_round_trip(xi):
    mu = toric_moment(SQUARE, xi)
    r = solve_toric_moment(SQUARE, mu)
    assert r.residual <= 1e-9 and r.iterations <= 50
    assert np.allclose(r.xi, xi, atol=1e-6)


# -- moment map and Kirwan map -----------------------------------------------------

def test_moment_map_rejects_zero():
    with pytest.raises(ZeroVector):
        moment_map(TorusRepresentation([[1], [-1]]).algebra_basis, [0, 0])


def test_torus_moment_matches_toric_formula(rng):
    weights = np.array([[0, 0], [1, 0], [0, 1], [1, 1]])
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    m = moment_map(TorusRepresentation(weights).algebra_basis, v)
    w = WeightedVector(tuple(map(tuple, weights)), tuple(np.abs(v) ** 2))
    assert np.allclose(m, toric_moment(w, [0, 0]), atol=1e-14)


def test_spin_matrices_commutator():
    jx, jy, jz = spin_matrices(3)
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz)


def test_su2_highest_weight_kirwan():
    rep = SU2Representation(1)
    assert kirwan(rep, [1, 0]) == pytest.approx((1.0,))


def test_su2_kirwan_is_invariant(rng):
    rep = SU2Representation(2)
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    base = np.array(kirwan(rep, v))
    for _ in range(10):
        assert np.allclose(kirwan(rep, rep.random_compact(rng) @ v), base, atol=1e-9)


# -- Kempf-Ness ----------------------------------------------------------------------

@pytest.mark.parametrize("weights, v, found", [
    ([[-1], [1]], [1, 1], True),
    ([[1], [2]], [1, 1], False),
    ([[-1], [1]], [1, 0], False),
    ([[0], [1]], [1, 1], False),
    ([[1, 0], [0, 1], [-1, -1]], [1, 2, 3], True),
    ([[1, 0], [-1, 0], [0, 1]], [1, 1, 1], False),
])
def test_kempf_ness_outcome(weights, v, found):
    rep = TorusRepresentation(weights)
    out = kempf_ness_minimize(rep, np.array(v, dtype=complex))
    assert isinstance(out, MinimumFound) is found
    assert zero_in_relative_interior([w for w, c in zip(weights, v) if c]) is found
    if found:
        assert np.linalg.norm(moment_map(rep.algebra_basis, out.point)) <= 1e-9
    else:
        assert isinstance(out, Divergent)


def test_kempf_ness_zero_vector():
    with pytest.raises(ZeroVector):
        kempf_ness_minimize(TorusRepresentation([[1]]), [0])


def test_stabilizer_dimension_of_torus_weights():
    rep = TorusRepresentation([[1, 0], [-1, 0]])
    assert stabilizer_dimension(rep.algebra_basis, np.array([1, 1]), 1e-8) == 1


def test_su2_flow_reaches_zero_moment(rng):
    rep = SU2Representation(2)
    # a nonzero vector with two distinct roots in Sym^2 is polystable
    out = kempf_ness_minimize(rep, np.array([1, 0, 1], dtype=complex))
    assert isinstance(out, MinimumFound)
    assert np.linalg.norm(moment_map(rep.algebra_basis, out.point)) <= 1e-9


def test_numeric_config_validation():
    with pytest.raises(ValueError):
        NumericConfig(residual_tol=0)


# -- Cartan decomposition ------------------------------------------------------------

def test_diagonal_example():
    r = cartan_decompose(np.diag([2.0, 0.5]))
    assert np.allclose(r.val.coordinates, [-np.log(2), np.log(2)])
    assert r.residual(np.diag([2.0, 0.5])) <= 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reconstruction_and_invariance(n, rng):
    for _ in range(10):
        h = random_special_linear(n, rng)
        r = cartan_decompose(h)
        assert r.residual(h) <= 1e-10
        assert list(r.val.coordinates) == sorted(r.val.coordinates)
        for k in (r.k1, r.k2):
            assert np.allclose(k.conj().T @ k, np.eye(n), atol=1e-12)
            assert abs(np.linalg.det(k) - 1) <= 1e-12
        u, w = random_special_unitary(n, rng), random_special_unitary(n, rng)
        moved = cartan_decompose(u @ h @ w)
        assert np.allclose(moved.val.coordinates, r.val.coordinates, atol=1e-9)


def test_non_unimodular_rejected():
    with pytest.raises(NotUnimodular):
        cartan_decompose(np.diag([2.0, 2.0]))
    with pytest.raises(NotUnimodular):
        MatrixGroupElement((np.eye(2) * 2,))


def test_compact_tag_checks_unitarity():
    with pytest.raises(ValueError):
        MatrixGroupElement((np.array([[1, 1], [0, 1]]),), tag="SU")
