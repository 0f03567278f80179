"""Bounded H-polytopes over Q: vertices, face lattice, normal cones, volume."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from ..errors import Unbounded
from .cone import Cone
from .dd import double_description
from .rational import (
    RatVec, det, dot, fmt, fmt_vec, frac, neg, rank, ratvec, row_reduce, sub,
)


@dataclass(frozen=True)
class FaceDescriptor:
    """One face of a polytope, identified by the halfspaces tight on it."""

    active: frozenset
    dimension: int
    point: RatVec  # barycentre of the face's vertices, a relative-interior point
    vertex_indices: frozenset

    def sort_key(self):
        return (self.dimension, tuple(sorted(self.active)))

    def to_json(self) -> dict:
        return {
            "active": sorted(self.active),
            "dimension": self.dimension,
            "point": fmt_vec(self.point),
            "vertices": sorted(self.vertex_indices),
        }


@dataclass(frozen=True, eq=False)
class Polytope:
    """``{mu : normal_i . mu >= offset_i}``; halfspace order is significant."""

    halfspaces: tuple
    ambient_rank: int

    @classmethod
    def from_halfspaces(cls, halfspaces: Sequence[tuple[Sequence, object]],
                        ambient_rank: int | None = None) -> "Polytope":
        hs = tuple((ratvec(n), frac(b)) for n, b in halfspaces)
        if ambient_rank is None:
            if not hs:
                raise ValueError("ambient_rank required without halfspaces")
            ambient_rank = len(hs[0][0])
        return cls(hs, ambient_rank)

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "Polytope":
        """H-description of the convex hull of finitely many points."""
        pts = [ratvec(p) for p in points]
        if not pts:
            raise ValueError("need at least one point")
        d = len(pts[0])
        lifted = [p + (Fraction(1),) for p in pts]
        cone = Cone.from_generators(lifted, d + 1)
        hs = []
        for n in cone.facet_normals:
            hs.append((n[:d], -n[d]))
        for e in cone.equations:
            hs.append((e[:d], -e[d]))
            hs.append((neg(e[:d]), e[d]))
        return cls(tuple(hs), d)

    # -- vertex enumeration ---------------------------------------------
    @cached_property
    def vertices(self) -> tuple:
        d = self.ambient_rank
        rows = [n + (-b,) for n, b in self.halfspaces]
        rows.append((Fraction(0),) * d + (Fraction(1),))
        lin, rays = double_description(rows, d + 1)
        verts = sorted(tuple(x / r[d] for x in r[:d]) for r in rays if r[d] > 0)
        if verts and (lin or any(r[d] == 0 for r in rays)):
            raise Unbounded("halfspace system has a recession direction")
        return tuple(verts)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def slack(self, x: Sequence) -> list:
        return [dot(n, x) - b for n, b in self.halfspaces]

    def contains(self, x: Sequence, tol: float = 0.0) -> bool:
        if tol:
            return all(float(sum(float(a) * float(v) for a, v in zip(n, x))) - float(b) >= -tol
                       for n, b in self.halfspaces)
        x = ratvec(x)
        return all(s >= 0 for s in self.slack(x))

    def active_at(self, x: Sequence) -> frozenset:
        x = ratvec(x)
        return frozenset(i for i, s in enumerate(self.slack(x)) if s == 0)

    @cached_property
    def dimension(self) -> int:
        return _affine_rank(self.vertices)

    # -- faces -------------------------------------------------------------
    @cached_property
    def faces(self) -> tuple:
        verts = self.vertices
        if not verts:
            return ()
        tight = [frozenset(j for j, v in enumerate(verts) if dot(n, v) == b)
                 for n, b in self.halfspaces]
        found = {frozenset(range(len(verts)))}
        frontier = list(found)
        while frontier:
            nxt = []
            for s in frontier:
                for t in tight:
                    u = s & t
                    if u and u not in found:
                        found.add(u)
                        nxt.append(u)
            frontier = nxt
        out = []
        for s in found:
            vs = [verts[j] for j in sorted(s)]
            active = frozenset(i for i, t in enumerate(tight) if s <= t)
            bary = tuple(sum(c) / len(vs) for c in zip(*vs)) if self.ambient_rank else ()
            out.append(FaceDescriptor(active, _affine_rank(vs), ratvec(bary), s))
        out.sort(key=FaceDescriptor.sort_key)
        return tuple(out)

    def face_with_active(self, active) -> FaceDescriptor | None:
        active = frozenset(active)
        for f in self.faces:
            if f.active == active:
                return f
        return None

    def face_vertices(self, face: FaceDescriptor) -> list[RatVec]:
        return [self.vertices[j] for j in sorted(face.vertex_indices)]

    def normal_cone(self, face: FaceDescriptor) -> Cone:
        """Minimising convention: cone of inward normals active on the face."""
        gens = [self.halfspaces[i][0] for i in sorted(face.active)]
        return Cone.from_generators(gens, self.ambient_rank)

    def dilate(self, factor, center: Sequence) -> "Polytope":
        """Image under ``mu -> center + factor * (mu - center)``."""
        factor = frac(factor)
        c = ratvec(center)
        hs = [(n, factor * b + (1 - factor) * dot(n, c)) for n, b in self.halfspaces]
        return Polytope(tuple(hs), self.ambient_rank)

    def same_set(self, other: "Polytope") -> bool:
        return sorted(self.vertices) == sorted(other.vertices)

    def volume(self) -> Fraction:
        """Volume in the affine hull, measured in pivot coordinates."""
        return polytope_volume(self.vertices)

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "halfspaces": [{"normal": fmt_vec(n), "offset": fmt(b)} for n, b in self.halfspaces],
            "vertices": [fmt_vec(v) for v in self.vertices],
            "faces": [f.to_json() for f in self.faces],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polytope":
        return cls.from_halfspaces([(h["normal"], h["offset"]) for h in data["halfspaces"]],
                                   data["ambient_rank"])


def face_lattice(p: Polytope) -> list[FaceDescriptor]:
    return list(p.faces)


def normal_cone(p: Polytope, f: FaceDescriptor) -> Cone:
    return p.normal_cone(f)


def _affine_rank(points: Sequence[Sequence]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]])


def _pivot_coordinates(points: Sequence[Sequence]) -> list[int]:
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    if not diffs:
        return []
    return row_reduce(diffs)[1]


def triangulate(points: Sequence[Sequence]) -> list[list[RatVec]]:
    """Pulling triangulation of conv(points) into simplices of its affine dimension."""
    pts = sorted(set(ratvec(p) for p in points))
    k = _affine_rank(pts)
    if len(pts) == k + 1:
        return [pts]
    coords = _pivot_coordinates(pts)
    proj = [tuple(p[c] for c in coords) for p in pts]
    hull = Polytope.from_points(proj)
    v0 = proj[0]
    out = []
    for n, b in hull.halfspaces:
        if dot(n, v0) == b:
            continue
        facet = [pts[j] for j, q in enumerate(proj) if dot(n, q) == b]
        if _affine_rank(facet) != k - 1:
            continue
        for simplex in triangulate(facet):
            out.append([pts[0]] + simplex)
    return out


def simplex_volume(simplex: Sequence[Sequence], coords: Sequence[int]) -> Fraction:
    k = len(simplex) - 1
    if k == 0:
        return Fraction(1)
    p0 = simplex[0]
    m = [[p[c] - p0[c] for c in coords] for p in simplex[1:]]
    return abs(det(m)) / factorial(k)


def polytope_volume(points: Sequence[Sequence], coords: Sequence[int] | None = None) -> Fraction:
    """k-volume of conv(points) after projecting to ``coords`` (pivot columns by default)."""
    pts = [ratvec(p) for p in points]
    if not pts:
        return Fraction(0)
    if coords is None:
        coords = _pivot_coordinates(pts)
    return sum((simplex_volume(s, coords) for s in triangulate(pts)), Fraction(0))

