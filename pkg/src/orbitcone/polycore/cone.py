"""Rational polyhedral cones with both descriptions kept in sync."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dd import double_description
from .rational import (
    RatVec, dot, fmt_vec, is_zero, matvec, neg, primitive, project_onto_complement,
    rank, ratvec,
)


@dataclass(frozen=True, eq=False)
class Cone:
    """A cone ``cone(generators)`` in Q^ambient_rank.

    ``facet_normals`` are irredundant inward normals (``n . x >= 0``) taken
    inside the linear span of the cone; ``equations`` span the orthogonal
    complement of that span.  ``rays`` and ``lineality`` give a minimal
    generating system.
    """

    ambient_rank: int
    generators: tuple
    rays: tuple = field(repr=False)
    lineality: tuple = field(repr=False)
    facet_normals: tuple
    equations: tuple = field(repr=False)

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence], ambient_rank: int | None = None) -> "Cone":
        gens = tuple(ratvec(g) for g in generators)
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient_rank required for an empty generator list")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise ValueError("generator length differs from ambient rank")
        # facets of cone(G) are the extreme rays of the dual cone {y : y.g >= 0}
        dual_lin, dual_rays = double_description(gens, ambient_rank)
        normals = []
        for r in dual_rays:
            p = primitive(project_onto_complement(r, dual_lin))
            if not is_zero(p) and p not in normals:
                normals.append(p)
        normals.sort()
        ineqs = list(normals) + list(dual_lin) + [neg(e) for e in dual_lin]
        lin, rays = double_description(ineqs, ambient_rank)
        return cls(ambient_rank, gens, tuple(sorted(rays)), tuple(lin),
                   tuple(normals), tuple(dual_lin))

    @classmethod
    def from_inequalities(cls, normals: Sequence[Sequence], ambient_rank: int,
                          equations: Sequence[Sequence] = ()) -> "Cone":
        """The cone ``{x : n . x >= 0, e . x = 0}``."""
        rows = [ratvec(n) for n in normals] + [ratvec(e) for e in equations] + \
            [neg(ratvec(e)) for e in equations]
        lin, rays = double_description(rows, ambient_rank)
        gens = list(rays) + list(lin) + [neg(l) for l in lin]
        return cls.from_generators(gens, ambient_rank)

    @classmethod
    def zero(cls, ambient_rank: int) -> "Cone":
        return cls.from_generators([], ambient_rank)

    @classmethod
    def full(cls, ambient_rank: int) -> "Cone":
        return cls.from_inequalities([], ambient_rank)

    # -- queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, x: Sequence) -> bool:
        x = ratvec(x)
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(n, x) >= 0 for n in self.facet_normals))

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.minimal_generators())

    def minimal_generators(self) -> list[RatVec]:
        return list(self.rays) + list(self.lineality) + [neg(l) for l in self.lineality]

    def relative_interior_point(self) -> RatVec:
        gens = self.minimal_generators()
        out = (0,) * self.ambient_rank
        for g in gens:
            out = tuple(a + b for a, b in zip(out, g))
        return ratvec(out)

    def in_relative_interior(self, x: Sequence) -> bool:
        x = ratvec(x)
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(n, x) > 0 for n in self.facet_normals))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank and self.dim == other.dim
                and self.contains_cone(other) and other.contains_cone(self))

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.dim, len(self.facet_normals)))

    def intersection(self, other: "Cone") -> "Cone":
        return Cone.from_inequalities(
            list(self.facet_normals) + list(other.facet_normals),
            self.ambient_rank,
            equations=list(self.equations) + list(other.equations),
        )

    def image(self, matrix: Sequence[Sequence]) -> "Cone":
        """Image under a linear map given by its matrix (rows = output coordinates)."""
        gens = [matvec(matrix, g) for g in self.minimal_generators()]
        return Cone.from_generators(gens, len(matrix))

    def faces(self) -> list["Cone"]:
        """All faces, ordered by dimension."""
        rays = list(self.rays)
        lin_gens = list(self.lineality) + [neg(l) for l in self.lineality]
        tight = [frozenset(i for i, r in enumerate(rays) if dot(n, r) == 0)
                 for n in self.facet_normals]
        found = {frozenset(range(len(rays)))}
        frontier = list(found)
        while frontier:
            nxt = []
            for s in frontier:
                for t in tight:
                    u = s & t
                    if u not in found:
                        found.add(u)
                        nxt.append(u)
            frontier = nxt
        out = [Cone.from_generators([rays[i] for i in sorted(s)] + lin_gens, self.ambient_rank)
               for s in found]
        out.sort(key=lambda c: (c.dim, sorted(c.rays)))
        return out

    def is_face_of(self, other: "Cone") -> bool:
        return any(self == f for f in other.faces())

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "dim": self.dim,
            "rays": [fmt_vec(r) for r in self.rays],
            "lineality": [fmt_vec(l) for l in self.lineality],
            "facet_normals": [fmt_vec(n) for n in self.facet_normals],
            "equations": [fmt_vec(e) for e in self.equations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cone":
        gens = [ratvec(r) for r in data["rays"]]
        for l in data.get("lineality", []):
            gens += [ratvec(l), neg(ratvec(l))]
        return cls.from_generators(gens, data["ambient_rank"])


def span_rank(vectors: Sequence[Sequence]) -> int:
    return rank(vectors) if vectors else 0
