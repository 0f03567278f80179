"""Combinatorial invariants of a spherical homogeneous space and its compactification.

Coordinates: ``mu - kappa`` and spherical roots are written in a basis of the
weight lattice of ``X``; valuation vectors and cones live in the dual basis,
so ``v(lambda)`` is a dot product.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    IncompleteFan, InfeasibleOrbit, InvalidDatum, MissingRootSystem, NotToroidal, RemovedFace,
)
from .polycore import Cone, FaceDescriptor, Fan, Polytope, fan_covers_cone
from .polycore.rational import RatVec, add, dot, fmt, fmt_vec, matvec, primitive, rank, ratvec, sub
from .rootsys import RootSystem, from_descriptor, levi_roots, parabolic_roots


@dataclass(frozen=True)
class DivisorRecord:
    label: str
    v: RatVec
    m: int
    g_stable: bool = False

    def __post_init__(self):
        object.__setattr__(self, "v", ratvec(self.v))
        if any(x.denominator != 1 for x in self.v):
            raise InvalidDatum(f"divisor {self.label}: valuation vector must be integral")
        if int(self.m) != self.m or self.m < 0:
            raise InvalidDatum(f"divisor {self.label}: multiplicity must be a nonnegative integer")


@dataclass(frozen=True)
class RootSystemLink:
    """Root system of G plus the map from lattice coordinates to character coordinates.

    ``embedding`` has one row per character coordinate and one column per
    lattice basis vector.  ``kappa_character`` is the weight of the chosen
    semi-invariant section; it need not lie in the span of the lattice.
    """

    root_system: RootSystem
    embedding: tuple
    kappa_character: RatVec

    def to_character(self, mu_minus_kappa: Sequence) -> RatVec:
        return add(matvec(self.embedding, mu_minus_kappa), self.kappa_character)


@dataclass(frozen=True)
class SphericalDatum:
    rank: int
    spherical_roots: tuple
    kappa: RatVec
    divisors: tuple
    root_system_link: RootSystemLink | None = None
    smooth: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "spherical_roots", tuple(ratvec(s) for s in self.spherical_roots))
        object.__setattr__(self, "kappa", ratvec(self.kappa))
        object.__setattr__(self, "divisors", tuple(self.divisors))
        n = self.rank
        if len(self.kappa) != n:
            raise InvalidDatum("kappa has wrong length")
        for s in self.spherical_roots:
            if len(s) != n or any(x.denominator != 1 for x in s):
                raise InvalidDatum("spherical roots must be integer vectors of the lattice rank")
        if self.spherical_roots and rank(self.spherical_roots) != len(self.spherical_roots):
            raise InvalidDatum("spherical roots must be linearly independent")
        labels = [d.label for d in self.divisors]
        if len(set(labels)) != len(labels):
            raise InvalidDatum("divisor labels must be unique")
        val = valuation_cone(self)
        for d in self.divisors:
            if len(d.v) != n:
                raise InvalidDatum(f"divisor {d.label}: vector has wrong length")
            if d.g_stable and not val.contains(d.v):
                raise InvalidDatum(f"G-stable divisor {d.label} lies outside the valuation cone")

    # -- helpers ---------------------------------------------------------
    def divisor(self, label: str) -> DivisorRecord:
        for d in self.divisors:
            if d.label == label:
                return d
        raise KeyError(label)

    @property
    def g_stable_divisors(self) -> list[DivisorRecord]:
        return [d for d in self.divisors if d.g_stable]

    @property
    def colors(self) -> list[DivisorRecord]:
        return [d for d in self.divisors if not d.g_stable]

    def scaled(self, n: int) -> "SphericalDatum":
        """Same datum with every multiplicity multiplied by ``n``."""
        divs = tuple(DivisorRecord(d.label, d.v, d.m * n, d.g_stable) for d in self.divisors)
        return SphericalDatum(self.rank, self.spherical_roots, self.kappa, divs,
                              self.root_system_link, self.smooth, self.name)

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "spherical_roots": [[int(x) for x in s] for s in self.spherical_roots],
            "kappa": fmt_vec(self.kappa),
            "divisors": [{"label": d.label, "v": [int(x) for x in d.v], "m": int(d.m),
                          "g_stable": d.g_stable} for d in self.divisors],
        }
        if self.name:
            out["name"] = self.name
        if self.smooth:
            out["smooth"] = True
        link = self.root_system_link
        if link is not None:
            out["root_system"] = {
                **link.root_system.descriptor(),
                "embedding": [fmt_vec(r) for r in link.embedding],
                "kappa_character": fmt_vec(link.kappa_character),
            }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SphericalDatum":
        divs = tuple(DivisorRecord(d["label"], d["v"], d["m"], d.get("g_stable", False))
                     for d in data["divisors"])
        link = None
        rs_data = data.get("root_system")
        if rs_data is not None:
            rs = from_descriptor(rs_data)
            emb = tuple(ratvec(r) for r in rs_data["embedding"])
            kappa = ratvec(data["kappa"])
            kc = rs_data.get("kappa_character")
            kc = ratvec(kc) if kc is not None else matvec(emb, kappa)
            link = RootSystemLink(rs, emb, kc)
        return cls(data["rank"], tuple(data["spherical_roots"]), ratvec(data["kappa"]), divs,
                   link, data.get("smooth", False), data.get("name", ""))

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


# -- operations --------------------------------------------------------------

def valuation_cone(d: SphericalDatum) -> Cone:
    """``{rho : rho(sigma) <= 0 for every spherical root sigma}``."""
    return Cone.from_inequalities([tuple(-x for x in s) for s in d.spherical_roots], d.rank)


def is_horospherical(d: SphericalDatum) -> bool:
    return not d.spherical_roots


def moment_polytope(d: SphericalDatum) -> Polytope:
    """Halfspaces ``v_i . mu >= v_i . kappa - m_i``, one per divisor in datum order."""
    hs = [(dv.v, dot(dv.v, d.kappa) - dv.m) for dv in d.divisors]
    return Polytope.from_halfspaces(hs, d.rank)


def _indices(d: SphericalDatum, labels: Iterable[str]) -> list[int]:
    index = {dv.label: i for i, dv in enumerate(d.divisors)}
    try:
        return sorted(index[l] for l in labels)
    except KeyError as exc:
        raise InvalidDatum(f"unknown divisor label {exc.args[0]!r}") from None


def orbit_face(d: SphericalDatum, orbit_divisors: Iterable[str],
               polytope: Polytope | None = None) -> FaceDescriptor:
    """Face of the moment polytope cut out by equality on ``orbit_divisors``."""
    labels = list(orbit_divisors)
    idx = _indices(d, labels)
    for i in idx:
        if not d.divisors[i].g_stable:
            raise InvalidDatum(f"divisor {d.divisors[i].label} is not G-stable")
    pol = polytope or moment_polytope(d)
    verts = [j for j, v in enumerate(pol.vertices)
             if all(dot(pol.halfspaces[i][0], v) == pol.halfspaces[i][1] for i in idx)]
    if not verts:
        raise InfeasibleOrbit(f"equalities {labels} cut the polytope empty")
    face = next(f for f in pol.faces if f.vertex_indices == frozenset(verts))
    expected = Cone.from_generators([d.divisors[i].v for i in idx], d.rank)
    if pol.normal_cone(face) != expected:
        raise InfeasibleOrbit(f"divisors {labels} do not define an orbit for this polarisation")
    return face


@dataclass
class ToroidalFanReport:
    ok: bool
    matches: list = field(default_factory=list)  # (cone, face) pairs
    unmatched: list = field(default_factory=list)
    inside_valuation_cone: bool = True
    complete: bool = False

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "inside_valuation_cone": self.inside_valuation_cone,
            "complete": self.complete,
            "matches": [{"cone": c.to_json(), "face": f.to_json()} for c, f in self.matches],
            "unmatched": [c.to_json() for c in self.unmatched],
        }


def verify_toroidal_normal_fan(d: SphericalDatum, fan: Fan,
                               polytope: Polytope | None = None) -> ToroidalFanReport:
    """Check that every fan cone is the normal cone of a face of the moment polytope."""
    stable = {primitive(dv.v) for dv in d.g_stable_divisors}
    for r in fan.rays:
        if primitive(r) not in stable:
            raise NotToroidal(f"fan ray {fmt_vec(r)} is not a G-stable divisor vector")
    pol = polytope or moment_polytope(d)
    val = valuation_cone(d)
    inside = all(val.contains_cone(c) for c in fan.cones)
    matches, unmatched = [], []
    normal_cones = [(f, pol.normal_cone(f)) for f in pol.faces]
    for c in fan.cones:
        if c.dim == 0:
            continue
        hit = next((f for f, nc in normal_cones if nc == c), None)
        if hit is None:
            unmatched.append(c)
        else:
            matches.append((c, hit))
    complete = inside and (fan_covers_cone(fan, val) if fan.cones else val.dim == 0)
    return ToroidalFanReport(not unmatched and inside, matches, unmatched, inside, complete)


@dataclass
class OrbitSpaceModel:
    """Moment polytope with the faces of boundary orbits marked as removed."""

    polytope: Polytope
    removed_faces: list
    retained_faces: list
    fan: Fan
    valuation_cone: Cone

    def is_removed(self, face: FaceDescriptor) -> bool:
        return face in self.removed_faces

    def contains_point(self, x: Sequence) -> bool:
        """Whether ``x`` lies in the polytope minus the closed removed faces."""
        pol = self.polytope
        if not pol.contains(x):
            return False
        act = pol.active_at(x)
        return not any(f.active <= act for f in self.removed_faces)

    def removed_union_connected(self) -> bool:
        faces = self.removed_faces
        if not faces:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j, g in enumerate(faces):
                if j not in seen and faces[i].vertex_indices & g.vertex_indices:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(faces)

    def to_json(self) -> dict:
        pol = self.polytope
        return {
            "polytope": pol.to_json(),
            "removed_faces": [f.to_json() for f in self.removed_faces],
            "retained_faces": [f.to_json() for f in self.retained_faces],
            "valuation_cone": self.valuation_cone.to_json(),
            "fan": self.fan.to_json(),
        }


def orbit_space_model(d: SphericalDatum, fan: Fan, require_complete: bool = True,
                      polytope: Polytope | None = None) -> OrbitSpaceModel:
    pol = polytope or moment_polytope(d)
    report = verify_toroidal_normal_fan(d, fan, pol)
    val = valuation_cone(d)
    if require_complete and not report.complete:
        raise IncompleteFan("fan does not cover the valuation cone")
    fan_cones = [c for c in fan.cones if c.dim > 0]
    removed, retained = [], []
    for f in pol.faces:
        nc = pol.normal_cone(f)
        if nc.dim > 0 and any(nc == c for c in fan_cones):
            removed.append(f)
        else:
            retained.append(f)
    return OrbitSpaceModel(pol, removed, retained, fan, val)


@dataclass
class StratificationReport:
    face: FaceDescriptor
    mu: RatVec
    mu_character: RatVec
    active_divisors: frozenset
    active_b_divisors: frozenset
    chart_complement: frozenset
    parabolic_roots: frozenset
    levi_roots: frozenset
    type_key: str
    satellite_hint: str | None

    def to_json(self) -> dict:
        return {
            "face": self.face.to_json(),
            "mu": fmt_vec(self.mu),
            "mu_character": fmt_vec(self.mu_character),
            "active_divisors": sorted(self.active_divisors),
            "active_b_divisors": sorted(self.active_b_divisors),
            "chart_complement": sorted(self.chart_complement),
            "parabolic_roots": sorted(fmt_vec(r) for r in self.parabolic_roots),
            "levi_roots": sorted(fmt_vec(r) for r in self.levi_roots),
            "type_key": self.type_key,
            "satellite_hint": self.satellite_hint,
        }


def type_key(active_b_labels: Iterable[str], levi: Iterable[Sequence]) -> str:
    blob = json.dumps([sorted(active_b_labels), sorted(fmt_vec(r) for r in levi)])
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def stratification_report(d: SphericalDatum, face: FaceDescriptor,
                          model: OrbitSpaceModel | None = None) -> StratificationReport:
    link = d.root_system_link
    if link is None:
        raise MissingRootSystem("datum carries no root system link")
    pol = model.polytope if model is not None else moment_polytope(d)
    if model is not None and model.is_removed(face):
        raise RemovedFace("face belongs to a boundary orbit")
    if model is None and face.active and all(d.divisors[i].g_stable for i in face.active):
        raise RemovedFace("face is cut out by G-stable divisors only")
    mu = face.point
    active = pol.active_at(mu)
    active_labels = frozenset(d.divisors[i].label for i in active)
    colors = [dv for dv in d.divisors if not dv.g_stable]
    active_b = frozenset(dv.label for dv in colors if dv.label in active_labels)
    chart = frozenset(dv.label for dv in colors if dv.label not in active_labels)
    mu_char = link.to_character(sub(mu, d.kappa))
    rs = link.root_system
    par = parabolic_roots(rs, mu_char)
    levi = levi_roots(rs, mu_char)
    if levi == frozenset(rs.roots):
        hint = "general"
    elif not active and face.dimension == d.rank:
        hint = "most_degenerate"
    else:
        hint = None
    return StratificationReport(face, mu, mu_char, active_labels, active_b, chart, par, levi,
                                type_key(active_b, levi), hint)


def stratify_all(d: SphericalDatum, model: OrbitSpaceModel) -> list[StratificationReport]:
    return [stratification_report(d, f, model) for f in model.retained_faces]


def face_point_fraction(x: Sequence) -> list[str]:
    return [fmt(Fraction(v)) for v in x]
