"""Reusable experiment drivers shared by scripts/ and the acceptance suite."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BoundaryPoint
from .examples import random_sum_zero_triple, sample_sl2cubed_orbit
from .momentnum import (
    MinimumFound, NumericConfig, TorusRepresentation, WeightedVector, _difference_span,
    kempf_ness_minimize, moment_map, solve_toric_moment, toric_moment, zero_in_relative_interior,
)
from .polycore import Polytope

TORIC_CONFIGURATIONS = {
    "segment": ((0,), (1,)),
    "square": ((0, 0), (1, 0), (0, 1), (1, 1)),
}


@dataclass(frozen=True)
class ToricGridConfig:
    pitch: Fraction = Fraction(1, 20)
    roundtrip_samples: int = 50
    seed: int = 0
    numeric: NumericConfig = field(default_factory=NumericConfig)


@dataclass
class ToricGridResult:
    name: str
    interior_points: int = 0
    failures: list = field(default_factory=list)
    max_residual: float = 0.0
    max_iterations: int = 0
    vertices: int = 0
    vertex_boundary_hits: int = 0
    max_roundtrip_error: float = 0.0

    @property
    def ok(self) -> bool:
        return (not self.failures and self.vertex_boundary_hits == self.vertices
                and self.interior_points > 0)


def random_hull_weights(seed: int = 0, rank: int = 3) -> tuple:
    """Random full-dimensional subset of the 0/1 cube plus one interior-ish point."""
    rng = np.random.default_rng(seed)
    cube = list(itertools.product((0, 1), repeat=rank))
    while True:
        idx = rng.choice(len(cube), size=rank + 2, replace=False)
        pts = [cube[i] for i in sorted(idx)]
        if np.linalg.matrix_rank(np.array(pts[1:]) - np.array(pts[0])) == rank:
            return tuple(pts)


def _grid(pol: Polytope, pitch: Fraction):
    verts = pol.vertices
    lo = [min(v[i] for v in verts) for i in range(pol.ambient_rank)]
    hi = [max(v[i] for v in verts) for i in range(pol.ambient_rank)]
    axes = []
    for a, b in zip(lo, hi):
        k0, k1 = int(np.ceil(a / pitch)), int(np.floor(b / pitch))
        axes.append([k * pitch for k in range(k0, k1 + 1)])
    return itertools.product(*axes)


def toric_grid_run(name: str, weights, cfg: ToricGridConfig = ToricGridConfig()) -> ToricGridResult:
    """Invert the toric moment map on every strictly interior grid point of the weight hull."""
    w = WeightedVector(tuple(weights), (1.0,) * len(weights))
    hull = Polytope.from_points(weights)
    out = ToricGridResult(name)
    for p in _grid(hull, cfg.pitch):
        if not all(s > 0 for s in hull.slack(p)):
            continue
        out.interior_points += 1
        try:
            r = solve_toric_moment(w, [float(x) for x in p], cfg.numeric)
        except BoundaryPoint as exc:
            out.failures.append((p, str(exc)))
            continue
        out.max_residual = max(out.max_residual, r.residual)
        out.max_iterations = max(out.max_iterations, r.iterations)
    for v in hull.vertices:
        out.vertices += 1
        try:
            solve_toric_moment(w, list(v), cfg.numeric)
        except BoundaryPoint:
            out.vertex_boundary_hits += 1
    rng = np.random.default_rng(cfg.seed)
    basis = _difference_span(w)
    for _ in range(cfg.roundtrip_samples):
        xi = basis @ rng.uniform(-2, 2, basis.shape[1])
        back = solve_toric_moment(w, toric_moment(w, xi), cfg.numeric).xi
        out.max_roundtrip_error = max(out.max_roundtrip_error, float(np.linalg.norm(back - xi)))
    return out


@dataclass(frozen=True)
class KempfNessCase:
    weights: np.ndarray
    vector: np.ndarray
    expected_found: bool


def random_kempf_ness_case(rng: np.random.Generator) -> KempfNessCase:
    """Random torus representation (rank <= 3, <= 8 weights) and vector."""
    rank = int(rng.integers(1, 4))
    m = int(rng.integers(2, 9))
    weights = rng.integers(-2, 3, size=(m, rank))
    v = rng.normal(size=m) + 1j * rng.normal(size=m)
    v[rng.random(m) < 0.3] = 0
    if not np.any(v):
        v[0] = 1.0
    support = [tuple(int(x) for x in weights[i]) for i in range(m) if v[i] != 0]
    return KempfNessCase(weights, v, zero_in_relative_interior(support))


@dataclass
class KempfNessResult:
    case: KempfNessCase
    found: bool
    moment_norm: float | None
    norm_gap: float | None

    @property
    def matches(self) -> bool:
        return self.found == self.case.expected_found


def kempf_ness_run(case: KempfNessCase, rng: np.random.Generator,
                   cfg: NumericConfig = NumericConfig()) -> KempfNessResult:
    """Minimise from ``v`` and from a random compact translate, compare norms."""
    rep = TorusRepresentation(case.weights)
    first = kempf_ness_minimize(rep, case.vector, cfg)
    if not isinstance(first, MinimumFound):
        return KempfNessResult(case, False, None, None)
    # a second start: random complex torus element (compact phase plus non-compact shift)
    xi = rng.normal(size=rep.rank)
    start = rep.random_compact(rng) @ rep.act_real(xi, case.vector)
    second = kempf_ness_minimize(rep, start, cfg)
    gap = abs(second.norm - first.norm) if isinstance(second, MinimumFound) else np.inf
    norm = float(np.linalg.norm(moment_map(rep.algebra_basis, first.point)))
    return KempfNessResult(case, True, norm, float(gap))


def sl2cubed_sampling(n: int, seed: int = 0) -> dict:
    """Sample sum-zero triples; count triangle-inequality violations and strata."""
    rng = np.random.default_rng(seed)
    violations, strata, faces = 0, {}, {}
    for i in range(n):
        s = sample_sl2cubed_orbit(*random_sum_zero_triple(rng, "generic"))
        a = s.invariants
        scale = max(a) or 1.0
        for k in range(3):
            if a[k] > a[(k + 1) % 3] + a[(k + 2) % 3] + 1e-12 * scale:
                violations += 1
        strata[s.stratum_class] = strata.get(s.stratum_class, 0) + 1
        faces[s.cone_face] = faces.get(s.cone_face, 0) + 1
    return {"samples": n, "violations": violations, "strata": strata, "faces": faces}


def random_special_linear(n: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian matrix rescaled to determinant 1."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return g / np.linalg.det(g) ** (1 / n)


def random_special_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of SU(n) via QR with phase correction."""
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.linalg.det(q) ** (1 / n)
