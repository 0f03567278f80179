"""Fans of rational cones: smoothness certificates and coverage of a cone."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import FanNotInsideCone
from .cone import Cone
from .lattice import lattice_index
from .polytope import Polytope, polytope_volume
from .rational import neg, rank, row_reduce, unit


@dataclass(frozen=True, eq=False)
class Fan:
    cones: tuple
    ambient_rank: int

    @classmethod
    def from_cones(cls, cones: Sequence[Cone], ambient_rank: int | None = None,
                   close: bool = True) -> "Fan":
        """Build a fan from cones; with ``close`` every face is added as well."""
        cones = list(cones)
        if ambient_rank is None:
            if not cones:
                raise ValueError("ambient_rank required for an empty fan")
            ambient_rank = cones[0].ambient_rank
        out: list[Cone] = []
        for c in cones:
            for f in (c.faces() if close else [c]):
                if not any(f == g for g in out):
                    out.append(f)
        out.sort(key=lambda c: (c.dim, sorted(c.rays)))
        return cls(tuple(out), ambient_rank)

    @classmethod
    def from_rays(cls, ray_sets: Sequence[Sequence[Sequence]], ambient_rank: int) -> "Fan":
        return cls.from_cones([Cone.from_generators(rs, ambient_rank) for rs in ray_sets],
                              ambient_rank)

    @property
    def maximal_cones(self) -> list[Cone]:
        out = []
        for c in self.cones:
            if not any(c is not d and d.dim > c.dim and c.is_face_of(d) for d in self.cones):
                out.append(c)
        return out

    @property
    def rays(self) -> list:
        seen = []
        for c in self.cones:
            for r in c.rays:
                if r not in seen:
                    seen.append(r)
        return sorted(seen)

    def contains_cone(self, c: Cone) -> bool:
        return any(c == d for d in self.cones)

    def is_face_closed(self) -> bool:
        return all(self.contains_cone(f) for c in self.cones for f in c.faces())

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "cones": [c.to_json() for c in self.cones]}

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        return cls.from_cones([Cone.from_json(c) for c in data["cones"]], data["ambient_rank"])


@dataclass(frozen=True)
class Certificate:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_smooth_simplicial_fan(fan: Fan) -> Certificate:
    for i, c in enumerate(fan.cones):
        if c.lineality:
            return Certificate(False, f"cone {i} is not pointed")
        rays = list(c.rays)
        if rays and rank(rays) != len(rays):
            return Certificate(False, f"cone {i} is not simplicial")
        if rays:
            idx = lattice_index(rays)
            if idx != 1:
                return Certificate(False, f"cone {i} has determinant {idx}")
    for i, a in enumerate(fan.cones):
        for j in range(i + 1, len(fan.cones)):
            b = fan.cones[j]
            meet = a.intersection(b)
            if not (_is_simplicial_face(meet, a) and _is_simplicial_face(meet, b)):
                return Certificate(False, f"cones {i} and {j} meet outside a common face")
    if not fan.is_face_closed():
        return Certificate(False, "fan is not closed under taking faces")
    return Certificate(True)


def _is_simplicial_face(meet: Cone, c: Cone) -> bool:
    inside = [r for r in c.rays if meet.contains(r)]
    return meet == Cone.from_generators(inside, c.ambient_rank)


def fan_covers_cone(fan: Fan, cone: Cone) -> bool:
    """Exact check that the maximal cones of ``fan`` tile ``cone``.

    Volumes are compared after intersecting with the box [-1, 1]^d, in the
    pivot coordinates of the cone's linear span.
    """
    for c in fan.cones:
        if not cone.contains_cone(c):
            raise FanNotInsideCone("a fan cone leaves the target cone")
    k = cone.dim
    top = [c for c in fan.cones if c.dim == k]
    if not top:
        return False
    if k == 0:
        return True
    d = cone.ambient_rank
    span_rows = [g for g in cone.minimal_generators()]
    coords = row_reduce(span_rows)[1]
    target = polytope_volume(_box_section(cone, d).vertices, coords)
    covered = sum((polytope_volume(_box_section(c, d).vertices, coords) for c in top),
                  Fraction(0))
    return covered == target


def _box_section(c: Cone, d: int) -> Polytope:
    hs = [(n, 0) for n in c.facet_normals]
    hs += [(e, 0) for e in c.equations] + [(neg(e), 0) for e in c.equations]
    hs += [(unit(d, i), -1) for i in range(d)] + [(neg(unit(d, i)), -1) for i in range(d)]
    return Polytope.from_halfspaces(hs, d)
