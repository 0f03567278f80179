from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from orbitcone.errors import (
    IncompleteFan, InfeasibleOrbit, InvalidDatum, MissingRootSystem, NotToroidal, RemovedFace,
    Unbounded,
)
from orbitcone.examples import EXAMPLES, get_example
from orbitcone.polycore import Cone, Fan, is_smooth_simplicial_fan
from orbitcone.polycore.rational import ratvec
from orbitcone.rootsys import a1_power
from orbitcone.spherical import (
    DivisorRecord, SphericalDatum, is_horospherical, moment_polytope, orbit_face,
    orbit_space_model, stratification_report, stratify_all, valuation_cone,
    verify_toroidal_normal_fan,
)


def _face_vertices(pol, face):
    return sorted(pol.face_vertices(face))


# -- construction --------------------------------------------------------------------

def test_dependent_spherical_roots_rejected():
    with pytest.raises(InvalidDatum):
        SphericalDatum(2, [(1, 1), (2, 2)], (0, 0), ())


def test_negative_multiplicity_rejected():
    with pytest.raises(InvalidDatum):
        DivisorRecord("D", (1, 0), -1)


def test_stable_divisor_outside_valuation_cone_rejected():
    with pytest.raises(InvalidDatum):
        SphericalDatum(1, [(1,)], (0,), (DivisorRecord("D", (1,), 0, True),))


def test_duplicate_labels_rejected():
    with pytest.raises(InvalidDatum):
        SphericalDatum(1, [], (0,), (DivisorRecord("D", (1,), 0), DivisorRecord("D", (-1,), 0)))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_json_round_trip_preserves_digest(name):
    d = get_example(name).datum
    back = SphericalDatum.from_json(d.to_json())
    assert back.digest() == d.digest()


# -- valuation cone ------------------------------------------------------------------

def test_sl2cubed_valuation_cone_is_negative_octant(sl2cubed):
    val = valuation_cone(sl2cubed.datum)
    assert len(val.facet_normals) == 3
    assert {tuple(-x for x in n) for n in val.facet_normals} == \
        set(sl2cubed.datum.spherical_roots)
    stable = [dv.v for dv in sl2cubed.datum.g_stable_divisors]
    assert val == Cone.from_generators(stable, 3)


def test_horospherical_valuation_cone_is_full():
    d = get_example("horo-triangle").datum
    assert is_horospherical(d)
    assert valuation_cone(d) == Cone.full(2)


def test_flag_valuation_cone_is_zero(flag):
    assert valuation_cone(flag.datum) == Cone.zero(0)
    assert is_horospherical(flag.datum)


def test_sl2cubed_not_horospherical(sl2cubed):
    assert not is_horospherical(sl2cubed.datum)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_valuation_cone_is_cosimplicial(name):
    d = get_example(name).datum
    val = valuation_cone(d)
    assert val.dim == d.rank
    assert len(val.facet_normals) == len(d.spherical_roots)


# -- moment polytope -----------------------------------------------------------------

def test_toy_triangle_polytope(toy_triangle):
    pol = moment_polytope(toy_triangle.datum)
    assert pol.vertices == tuple(ratvec(v) for v in [(-1, -1), (-1, 1), (1, -1)])


def test_rank_zero_polytope_is_a_point(flag):
    pol = moment_polytope(flag.datum)
    assert pol.vertices == ((),)


def test_unbounded_datum():
    d = SphericalDatum(2, [], (0, 0), (DivisorRecord("A", (1, 0), 0),
                                       DivisorRecord("B", (0, 1), 0)))
    with pytest.raises(Unbounded):
        moment_polytope(d).vertices


@given(st.sampled_from(["toy-triangle", "sl2cubed", "toy-wedge", "horo-triangle"]),
       st.integers(1, 5))
def test_scaling_multiplicities_dilates_polytope(name, n):
    d = get_example(name).datum
    assert moment_polytope(d.scaled(n)).same_set(moment_polytope(d).dilate(n, d.kappa))


# -- orbit faces ---------------------------------------------------------------------

def test_toy_triangle_orbit_face_is_edge(toy_triangle):
    d = toy_triangle.datum
    pol = moment_polytope(d)
    face = orbit_face(d, ["D3"])
    assert _face_vertices(pol, face) == [ratvec((-1, 1)), ratvec((1, -1))]


def test_empty_orbit_set_gives_whole_polytope(toy_triangle):
    face = orbit_face(toy_triangle.datum, [])
    assert face.dimension == 2 and not face.active


def test_contradictory_equalities_are_infeasible():
    d = get_example("toy-wedge").datum
    with pytest.raises(InfeasibleOrbit):
        orbit_face(d, ["E1", "E2"])


def test_orbit_face_needs_stable_divisors(toy_triangle):
    with pytest.raises(InvalidDatum):
        orbit_face(toy_triangle.datum, ["D1"])


def test_smooth_orbit_face_cones_extend_to_basis():
    ex = get_example("toy-wedge")
    d = ex.datum
    assert d.smooth
    for labels in (["E1"], ["E3"], ["E1", "E3"], ["E2", "E3"]):
        cone = moment_polytope(d).normal_cone(orbit_face(d, labels))
        assert is_smooth_simplicial_fan(Fan.from_cones([cone]))


# -- toroidal fan --------------------------------------------------------------------

def test_toy_triangle_fan_verified_but_incomplete(toy_triangle):
    rep = verify_toroidal_normal_fan(toy_triangle.datum, toy_triangle.fan)
    assert rep.ok and not rep.complete


def test_sl2cubed_boundary_rays_match_faces(sl2cubed):
    rep = verify_toroidal_normal_fan(sl2cubed.datum, sl2cubed.fan)
    assert rep.ok and rep.complete
    ray_cones = [c for c, _ in rep.matches if c.dim == 1]
    assert {tuple(c.rays[0]) for c in ray_cones} == {
        ratvec(v) for v in [(-1, -1, 0), (-1, 0, -1), (0, -1, -1)]}


def test_empty_fan_complete_only_for_zero_cone(flag, toy_triangle):
    assert verify_toroidal_normal_fan(flag.datum, Fan((), 0)).complete
    rep = verify_toroidal_normal_fan(toy_triangle.datum, Fan((), 2))
    assert rep.ok and not rep.complete


def test_color_ray_is_not_toroidal(toy_triangle):
    with pytest.raises(NotToroidal):
        verify_toroidal_normal_fan(toy_triangle.datum, Fan.from_rays([[(1, 0)]], 2))


# -- orbit-space model ---------------------------------------------------------------

def test_horospherical_model_removes_all_proper_faces():
    ex = get_example("horo-triangle")
    model = orbit_space_model(ex.datum, ex.fan)
    assert [f.dimension for f in model.retained_faces] == [2]
    assert len(model.removed_faces) == 6


def test_toy_triangle_model_removes_one_edge(toy_triangle):
    model = orbit_space_model(toy_triangle.datum, toy_triangle.fan, require_complete=False)
    assert [f.dimension for f in model.removed_faces] == [1]
    assert sorted(f.dimension for f in model.retained_faces) == [0, 0, 0, 1, 1, 2]


def test_incomplete_fan_raises_by_default(toy_triangle):
    with pytest.raises(IncompleteFan):
        orbit_space_model(toy_triangle.datum, toy_triangle.fan)


def test_flag_model_is_a_point(flag):
    model = orbit_space_model(flag.datum, flag.fan)
    assert model.removed_faces == [] and len(model.retained_faces) == 1


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_removed_faces_are_exactly_fan_normal_cones(name):
    ex = get_example(name)
    model = orbit_space_model(ex.datum, ex.fan, require_complete=ex.require_complete)
    pol = model.polytope
    nonzero = [c for c in ex.fan.cones if c.dim > 0]
    for f in pol.faces:
        nc = pol.normal_cone(f)
        in_fan = nc.dim > 0 and any(nc == c for c in nonzero)
        assert model.is_removed(f) == in_fan
    assert len(model.removed_faces) + len(model.retained_faces) == len(pol.faces)


def test_contains_point_excludes_removed_faces(toy_triangle):
    model = orbit_space_model(toy_triangle.datum, toy_triangle.fan, require_complete=False)
    assert model.contains_point((0, 0)) is False  # on the removed edge
    assert model.contains_point((-1, 0))
    assert not model.contains_point((5, 5))


# -- stratification ------------------------------------------------------------------

@pytest.fixture(scope="module")
def sl2cubed_reports():
    ex = get_example("sl2cubed")
    return stratify_all(ex.datum, orbit_space_model(ex.datum, ex.fan))


def test_interior_face_is_most_degenerate(sl2cubed_reports):
    interior = [r for r in sl2cubed_reports if r.face.dimension == 3]
    assert len(interior) == 1
    r = interior[0]
    assert r.active_divisors == frozenset() and r.satellite_hint == "most_degenerate"
    assert r.chart_complement == {"D12", "D13", "D23"}


def test_orthogonal_point_is_general(sl2cubed_reports):
    general = [r for r in sl2cubed_reports if r.satellite_hint == "general"]
    assert len(general) == 1
    r = general[0]
    assert r.parabolic_roots == frozenset(a1_power(3).roots)
    assert all(x == 0 for x in r.mu_character)


def test_boundary_face_has_single_factor_levi(sl2cubed_reports):
    edge = next(r for r in sl2cubed_reports
                if r.face.dimension == 1 and r.active_divisors == {"D12", "D13"})
    assert edge.levi_roots == {ratvec((2, 0, 0)), ratvec((-2, 0, 0))}


def test_active_set_matches_equalities(sl2cubed_reports):
    d = get_example("sl2cubed").datum
    for r in sl2cubed_reports:
        tight = {dv.label for dv in d.divisors
                 if sum(a * b for a, b in zip(dv.v, r.mu)) ==
                 sum(a * b for a, b in zip(dv.v, d.kappa)) - dv.m}
        assert tight == r.active_divisors


def test_equal_data_share_type_key(sl2cubed_reports):
    by_key = {}
    for r in sl2cubed_reports:
        by_key.setdefault(r.type_key, set()).add((r.active_b_divisors, r.levi_roots))
    assert all(len(v) == 1 for v in by_key.values())
    assert len(by_key) < len(sl2cubed_reports)


def test_removed_face_is_refused(sl2cubed):
    model = orbit_space_model(sl2cubed.datum, sl2cubed.fan)
    with pytest.raises(RemovedFace):
        stratification_report(sl2cubed.datum, model.removed_faces[0], model)


def test_missing_root_system(toy_triangle):
    face = moment_polytope(toy_triangle.datum).faces[-1]
    with pytest.raises(MissingRootSystem):
        stratification_report(toy_triangle.datum, face)
