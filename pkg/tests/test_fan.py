from __future__ import annotations

import pytest

from orbitcone.errors import FanNotInsideCone
from orbitcone.polycore import Cone, Fan, fan_covers_cone, is_smooth_simplicial_fan

NEG_OCTANT = Cone.from_generators([(-1, 0, 0), (0, -1, 0), (0, 0, -1)])
QUADRANT = Cone.from_generators([(1, 0), (0, 1)])


def test_negative_octant_fan_is_smooth():
    fan = Fan.from_cones([NEG_OCTANT])
    assert len(fan.cones) == 8
    assert is_smooth_simplicial_fan(fan)


def test_determinant_two_cone_is_not_smooth():
    cert = is_smooth_simplicial_fan(Fan.from_rays([[(1, 0), (1, 2)]], 2))
    assert not cert
    assert "determinant 2" in cert.reason


def test_empty_fan_is_smooth():
    assert is_smooth_simplicial_fan(Fan((), 2))


def test_overlapping_cones_are_rejected():
    fan = Fan.from_rays([[(1, 0), (0, 1)], [(1, 1), (0, 1)]], 2)
    cert = is_smooth_simplicial_fan(fan)
    assert not cert
    assert "common face" in cert.reason


def test_non_simplicial_cone_is_rejected():
    fan = Fan.from_rays([[(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]], 3)
    assert "simplicial" in is_smooth_simplicial_fan(fan).reason


@pytest.mark.parametrize("fan, expected", [
    (Fan.from_cones([NEG_OCTANT]), True),
    (Fan.from_rays([[(-1, 0, 0), (0, -1, 0)]], 3), False),
])
def test_octant_coverage(fan, expected):
    assert fan_covers_cone(fan, NEG_OCTANT) is expected


def test_barycentric_split_covers_quadrant():
    fan = Fan.from_rays([[(1, 0), (1, 1)], [(1, 1), (0, 1)]], 2)
    assert fan_covers_cone(fan, QUADRANT)


def test_single_ray_does_not_cover():
    assert not fan_covers_cone(Fan.from_rays([[(1, 1)]], 2), QUADRANT)


def test_ray_outside_target_raises():
    with pytest.raises(FanNotInsideCone):
        fan_covers_cone(Fan.from_rays([[(-1, 0)]], 2), QUADRANT)


def test_maximal_cones_and_rays():
    fan = Fan.from_rays([[(1, 0), (1, 1)], [(1, 1), (0, 1)]], 2)
    assert len(fan.maximal_cones) == 2
    assert len(fan.rays) == 3
    assert fan.is_face_closed()


def test_full_space_covered_by_four_quadrants():
    fan = Fan.from_rays([[(1, 0), (0, 1)], [(0, 1), (-1, 0)],
                         [(-1, 0), (0, -1)], [(0, -1), (1, 0)]], 2)
    assert fan_covers_cone(fan, Cone.full(2))
    assert is_smooth_simplicial_fan(fan)


def test_json_round_trip():
    fan = Fan.from_cones([NEG_OCTANT])
    back = Fan.from_json(fan.to_json())
    assert len(back.cones) == len(fan.cones)
