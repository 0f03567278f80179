"""Worked instances: flag, toric, SL2 as a group, SL2^3/SL2, plus small toy data.

Each builder returns an :class:`ExampleInstance` bundling the spherical datum,
a toroidal fan and, where available, a numeric representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import laurent as L
from .errors import DegenerateHull, SumNotZero
from .momentnum import NumericConfig, SU2Representation, TorusRepresentation, WeightedVector
from .polycore import Cone, Fan, Polytope, is_smooth_simplicial_fan
from .polycore.polytope import _affine_rank
from .polycore.rational import dot, matvec, neg, ratvec
from .rootsys import a1_power
from .spherical import DivisorRecord, RootSystemLink, SphericalDatum


@dataclass
class ExampleInstance:
    name: str
    datum: SphericalDatum
    fan: Fan
    representation: object = None
    reference_fixtures: dict = field(default_factory=dict)
    require_complete: bool = True
    orbit_space_map: Callable | None = None


# -- SL2^3 / diag SL2 ----------------------------------------------------------

# lattice basis w1+w2, w1+w3, w2+w3 as columns in fundamental-weight coordinates
SL2CUBED_EMBEDDING = ((1, 1, 0), (1, 0, 1), (0, 1, 1))


def sl2cubed_coroot_coordinates(rho: Sequence) -> tuple:
    """Convert a vector from dual lattice coordinates to coroot coordinates.

    ``rho`` lists the values on ``w1+w2, w1+w3, w2+w3``; the result ``c``
    satisfies ``rho = E^T c``.
    """
    a, b, c = ratvec(rho)
    # c1 + c2 = a, c1 + c3 = b, c2 + c3 = c
    half = Fraction(1, 2)
    return ((a + b - c) * half, (a - b + c) * half, (-a + b + c) * half)


def sl2cubed_from_coroots(c: Sequence) -> tuple:
    c1, c2, c3 = ratvec(c)
    return (c1 + c2, c1 + c3, c2 + c3)


def build_sl2cubed() -> ExampleInstance:
    e = tuple(ratvec(r) for r in SL2CUBED_EMBEDDING)
    sigma = [(1, 1, -1), (1, -1, 1), (-1, 1, 1)]  # alpha_i = 2 w_i in lattice coordinates
    colors = [DivisorRecord(lbl, v, 1) for lbl, v in
              (("D12", (1, 0, 0)), ("D13", (0, 1, 0)), ("D23", (0, 0, 1)))]
    stable = [DivisorRecord(f"D{i + 1}", sl2cubed_from_coroots(tuple(-int(j == i) for j in range(3))),
                            1, True) for i in range(3)]
    kappa = ratvec((1, 1, 1))
    link = RootSystemLink(a1_power(3), e, matvec(e, kappa))
    datum = SphericalDatum(3, sigma, kappa, colors + stable, link, smooth=False, name="sl2cubed")
    fan = Fan.from_rays([[d.v for d in stable]], 3)
    fixtures = {
        # compact dimension of the satellite attached to each face type of the valuation cone
        "satellite_compact_dim": {"vertex": 3, "edge": 1, "facet": 1, "interior": 0},
        "satellite_shapes": {
            "edge": "g_i lower triangular (s, 0; *, 1/s); g_j = g_k upper triangular (s, *; 0, 1/s)",
            "facet": "g_i lower triangular, g_j upper triangular, g_k diagonal, common s",
        },
        "cone_stratum_stabilizer_dim": {"vertex": 3, "boundary": 1, "interior": 0},
        "color_vectors_coroot": {"D12": ("1/2", "1/2", "-1/2"), "D13": ("1/2", "-1/2", "1/2"),
                                 "D23": ("-1/2", "1/2", "1/2")},
        "valuation_cone_faces": 8,
    }
    return ExampleInstance("sl2cubed", datum, fan, None, fixtures)


# curve oracle for SL2^3/SL2: points are triples (x1, x2, x3) with x1 x2 x3 = 1

def sl2cubed_act(g, x):
    g1, g2, g3 = g
    x1, x2, x3 = x
    inv = L.inv_sl2
    return (L.matmul(L.matmul(g2, x1), inv(g3)), L.matmul(L.matmul(g3, x2), inv(g1)),
            L.matmul(L.matmul(g1, x3), inv(g2)))


SL2CUBED_FUNCTIONS = {
    "f12": lambda x: x[2][1][0],
    "f13": lambda x: x[1][1][0],
    "f23": lambda x: x[0][1][0],
}


def _generic_g(rng):
    return tuple(L.random_sl2(rng) for _ in range(3))


def _generic_b(rng):
    return tuple(L.random_upper(rng) for _ in range(3))


def sl2cubed_boundary_curve(i: int, power: int = 1) -> Callable:
    """Curve tending to the G-stable divisor ``D_{i+1}`` (a one-parameter subgroup)."""
    t, ti = L.LaurentScalar.t(power), L.LaurentScalar.t(-power)
    up, down = L.diag(t, ti), L.diag(ti, t)
    triples = {0: (L.identity(), up, down), 1: (down, L.identity(), up), 2: (down, up, L.identity())}

    def curve(rng):
        return triples[i]
    return curve


def sl2cubed_color_curve(pair: str, power: int = 1) -> Callable:
    """Curve through a generic point of the color ``D_pair`` (``pair`` in 12, 13, 23)."""
    k = {"12": 2, "13": 1, "23": 0}[pair]

    def curve(rng):
        t = L.LaurentScalar.t(power)
        a = int(rng.integers(1, 8)) * (1 if rng.random() < 0.5 else -1)
        b = int(rng.integers(-7, 8))
        crossing = L.mat(a, b, t, (1 + b * t) * Fraction(1, a))
        other = L.random_sl2(rng)
        x = [None, None, None]
        x[k] = crossing
        # remaining two factors: one generic, the last fixed by x1 x2 x3 = 1
        j, l = _others(k)
        x[j] = other
        x[l] = _solve_last(x, l)
        return tuple(x)
    return curve


def _others(k: int) -> tuple[int, int]:
    rest = [i for i in range(3) if i != k]
    return rest[0], rest[1]


def _solve_last(x: list, l: int):
    inv = L.inv_sl2
    if l == 0:
        return inv(L.matmul(x[1], x[2]))
    if l == 1:
        return L.matmul(inv(x[0]), inv(x[2]))
    return inv(L.matmul(x[0], x[1]))


def sl2cubed_valuation(curve: Callable, group_sampler: Callable = _generic_g, seed: int = 0) -> tuple:
    """Orders of ``f12, f13, f23`` along ``curve``: the valuation in dual lattice coordinates."""
    return tuple(L.valuation_from_curve(f, curve, sl2cubed_act, group_sampler, seed=seed + k)
                 for k, f in enumerate(SL2CUBED_FUNCTIONS.values()))


def sl2cubed_boundary_valuation(i: int, seed: int = 0, power: int = 1) -> tuple:
    return sl2cubed_valuation(sl2cubed_boundary_curve(i, power), _generic_g, seed)


def sl2cubed_color_valuation(pair: str, seed: int = 0, power: int = 1) -> tuple:
    return sl2cubed_valuation(sl2cubed_color_curve(pair, power), _generic_b, seed)


# orbit sampler on the slice E = {(xi1, xi2, xi3) : sum zero} modulo SU2

PAULI = (np.array([[0, 1], [1, 0]], dtype=complex), np.array([[0, -1j], [1j, 0]]),
         np.array([[1, 0], [0, -1]], dtype=complex))


def hermitian_from_vector(x: Sequence[float]) -> np.ndarray:
    return sum(c * p for c, p in zip(x, PAULI))


def vector_from_hermitian(h: np.ndarray) -> np.ndarray:
    return np.array([np.trace(h @ p).real / 2 for p in PAULI])


@dataclass(frozen=True)
class OrbitSample:
    invariants: tuple
    stabilizer_dim: int
    stratum_class: str
    cone_face: str  # face of the invariant cone: apex, edge, facet or interior


_STRATUM = {3: "vertex", 1: "boundary", 0: "interior"}
_FACE_BY_TIGHT = {0: "interior", 1: "facet", 2: "edge", 3: "apex"}


def sample_sl2cubed_orbit(xi1, xi2, xi3, cfg: NumericConfig = NumericConfig()) -> OrbitSample:
    """Invariants and stabilizer class of the orbit through a sum-zero triple."""
    xs = [np.asarray(x, dtype=complex) for x in (xi1, xi2, xi3)]
    scale = max(1.0, max(np.abs(x).max() for x in xs))
    if np.abs(xs[0] + xs[1] + xs[2]).max() > 1e-12 * scale:
        raise SumNotZero("triple does not sum to zero")
    inv = tuple(float(np.sqrt(max(np.trace(x @ x).real, 0.0))) for x in xs)
    vecs = np.array([vector_from_hermitian(x) for x in xs])
    s = np.linalg.svd(vecs @ vecs.T, compute_uv=False)
    gram_rank = int(np.sum(s > cfg.rank_tol * max(1.0, s.max(initial=0.0))))
    stab = {0: 3, 1: 1}.get(gram_rank, 0)
    tight = 0
    if gram_rank > 0:
        total = max(inv)
        for i in range(3):
            j, k = [a for a in range(3) if a != i]
            if abs(inv[j] + inv[k] - inv[i]) <= 1e-9 * total:
                tight += 1
    else:
        tight = 3
    return OrbitSample(inv, stab, _STRATUM[stab], _FACE_BY_TIGHT[tight])


def random_sum_zero_triple(rng: np.random.Generator, kind: str = "generic") -> tuple:
    """Random triple of traceless Hermitian matrices with zero sum.

    ``kind`` is "generic", "collinear" or "zero".
    """
    if kind == "zero":
        return tuple(np.zeros((2, 2), dtype=complex) for _ in range(3))
    if kind == "collinear":
        d = rng.normal(size=3)
        a, b = rng.normal(size=2)
        v = [a * d, b * d, -(a + b) * d]
    elif kind == "generic":
        u, w = rng.normal(size=3), rng.normal(size=3)
        v = [u, w, -(u + w)]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return tuple(hermitian_from_vector(x) for x in v)


# -- toric ---------------------------------------------------------------------

def build_toric(weights: Sequence[Sequence[int]], amplitudes: Sequence[float] | None = None,
                name: str = "toric") -> ExampleInstance:
    """Torus acting with the given weights; the moment polytope is ``conv(-weights)``."""
    pts = [ratvec(w) for w in weights]
    if not pts:
        raise DegenerateHull("no weights")
    amplitudes = tuple(amplitudes) if amplitudes is not None else (1.0,) * len(pts)
    r = len(pts[0])
    rep = WeightedVector(tuple(tuple(int(x) for x in p) for p in pts), amplitudes)
    k = _affine_rank(pts)
    if k == 0:
        datum = SphericalDatum(0, (), (), (), None, smooth=True, name=name)
        return ExampleInstance(name, datum, Fan((), 0), rep)
    if k < r:
        raise DegenerateHull(f"weight hull has dimension {k} < {r}")
    negs = [neg(p) for p in pts]
    hull = Polytope.from_points(negs)
    kappa = ratvec((0,) * r) if hull.contains((0,) * r) else hull.vertices[0]
    divisors = [DivisorRecord(f"F{i}", n, int(dot(n, kappa) - b), True)
                for i, (n, b) in enumerate(hull.halfspaces)]
    datum = SphericalDatum(r, (), kappa, divisors, None, name=name)
    pol = Polytope.from_halfspaces([(d.v, dot(d.v, kappa) - d.m) for d in divisors], r)
    cones = [pol.normal_cone(f) for f in pol.faces if f.dimension == 0]
    fan = Fan.from_cones(cones, r)
    smooth = bool(is_smooth_simplicial_fan(fan))
    if smooth:
        datum = SphericalDatum(r, (), kappa, divisors, None, smooth=True, name=name)
    return ExampleInstance(name, datum, fan, rep, {"torus": TorusRepresentation(rep.matrix)})


# -- SL2 as a group under left and right multiplication ---------------------------

def sl2_group_act(g, x):
    h1, h2 = g
    return L.matmul(L.matmul(h1, x), L.inv_sl2(h2))


def _lower_times_upper(rng):
    lo = L.random_upper(rng)
    lower = ((lo[0][0], lo[1][0]), (lo[0][1], lo[1][1]))  # transpose: lower triangular
    return (lower, L.random_upper(rng))


def sl2_group_divisor_vectors(seed: int = 0) -> dict:
    """Valuations of the color and the boundary divisor on the eigenfunction ``x11``."""
    f = lambda x: x[0][0]
    t = L.LaurentScalar.t()
    color = L.valuation_from_curve(f, lambda rng: L.mat(t, 1, -1, 0), sl2_group_act,
                                   _lower_times_upper, seed=seed)
    boundary = L.valuation_from_curve(f, lambda rng: L.diag(L.LaurentScalar.t(-1), t),
                                      sl2_group_act,
                                      lambda rng: (L.random_sl2(rng), L.random_sl2(rng)),
                                      seed=seed + 1)
    return {"C": color, "D": boundary}


def build_sl2_group() -> ExampleInstance:
    vecs = sl2_group_divisor_vectors()
    divisors = [DivisorRecord("C", (vecs["C"],), 0), DivisorRecord("D", (vecs["D"],), 1, True)]
    link = RootSystemLink(a1_power(2), (ratvec((-1,)), ratvec((1,))), ratvec((0, 0)))
    datum = SphericalDatum(1, [(2,)], (0,), divisors, link, smooth=True, name="sl2-group")
    fan = Fan.from_rays([[(vecs["D"],)]], 1)
    from .momentnum import cartan_decompose
    return ExampleInstance("sl2-group", datum, fan, None,
                           {"divisor_vectors": vecs, "valuation_cone": "R<=0"},
                           orbit_space_map=cartan_decompose)


# -- flag variety P^1 = SL2/B ---------------------------------------------------------

def build_flag() -> ExampleInstance:
    link = RootSystemLink(a1_power(1), (ratvec(()),), ratvec((1,)))
    datum = SphericalDatum(0, (), (), (), link, smooth=True, name="flag")
    return ExampleInstance("flag", datum, Fan((), 0), SU2Representation(1),
                           {"orbit_types": 1})


# -- small test data -----------------------------------------------------------------

def build_toy_triangle() -> ExampleInstance:
    """Triangle with one G-stable side; the fan is a single ray and does not cover Val."""
    divs = [DivisorRecord("D1", (1, 0), 1), DivisorRecord("D2", (0, 1), 1),
            DivisorRecord("D3", (-1, -1), 0, True)]
    datum = SphericalDatum(2, [(1, 1)], (0, 0), divs, name="toy-triangle")
    return ExampleInstance("toy-triangle", datum, Fan.from_rays([[(-1, -1)]], 2),
                           require_complete=False)


def build_horo_triangle() -> ExampleInstance:
    """Horospherical triangle: every divisor G-stable, complete smooth fan."""
    vs = [(1, 0), (0, 1), (-1, -1)]
    divs = [DivisorRecord(f"D{i + 1}", v, m, True) for i, (v, m) in enumerate(zip(vs, (1, 1, 0)))]
    datum = SphericalDatum(2, [], (0, 0), divs, smooth=True, name="horo-triangle")
    fan = Fan.from_rays([[vs[0], vs[1]], [vs[1], vs[2]], [vs[2], vs[0]]], 2)
    return ExampleInstance("horo-triangle", datum, fan)


def build_toy_wedge() -> ExampleInstance:
    """Non-horospherical rank-2 datum whose smooth fan covers the half-plane Val."""
    divs = [DivisorRecord("E1", (1, -1), 1, True), DivisorRecord("E2", (-1, 1), 1, True),
            DivisorRecord("E3", (0, -1), 1, True), DivisorRecord("C", (0, 1), 1)]
    datum = SphericalDatum(2, [(1, 1)], (0, 0), divs, smooth=True, name="toy-wedge")
    fan = Fan.from_rays([[(1, -1), (0, -1)], [(0, -1), (-1, 1)]], 2)
    return ExampleInstance("toy-wedge", datum, fan)


EXAMPLES: dict[str, Callable[[], ExampleInstance]] = {
    "sl2cubed": build_sl2cubed,
    "flag": build_flag,
    "sl2-group": build_sl2_group,
    "toric-segment": lambda: build_toric([(0,), (1,)], [1.0, 1.0], "toric-segment"),
    "toric-square": lambda: build_toric([(0, 0), (1, 0), (0, 1), (1, 1)], None, "toric-square"),
    "toy-triangle": build_toy_triangle,
    "toy-wedge": build_toy_wedge,
    "horo-triangle": build_horo_triangle,
}


def get_example(name: str) -> ExampleInstance:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
