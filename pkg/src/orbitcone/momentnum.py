"""Floating-point moment maps, toric inversion, Kempf-Ness minimisation, Cartan decomposition.

Sign convention: ``toric_moment`` and ``moment_map`` return the native
values (the image is ``-Pol``); ``kirwan`` negates once so that its output is
directly comparable with :func:`orbitcone.spherical.moment_polytope`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Protocol, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp

from .errors import BoundaryPoint, NotUnimodular, RankDeficient, ZeroVector
from .polycore import Polytope
from .polycore.polytope import _pivot_coordinates
from .polycore.rational import rank as exact_rank
from .polycore.rational import ratvec, sub
from .rootsys import ChamberPoint, RootSystem, a1_power, dominance_project, type_a


@dataclass(frozen=True)
class NumericConfig:
    residual_tol: float = 1e-9
    max_newton_iters: int = 50
    divergence_norm: float = 1e6
    rank_tol: float = 1e-8
    max_flow_iters: int = 400

    def __post_init__(self):
        for name in ("residual_tol", "max_newton_iters", "divergence_norm", "rank_tol",
                     "max_flow_iters"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class WeightedVector:
    """Eigen-decomposition data ``v = v_1 + ... + v_m``: weights and ``(v_i|v_i)``."""

    weights: tuple
    amplitudes: tuple

    def __post_init__(self):
        if not self.weights:
            raise ValueError("weight list must be nonempty")
        if len(self.weights) != len(self.amplitudes):
            raise ValueError("one amplitude per weight")
        merged: dict = {}
        for w, c in zip(self.weights, self.amplitudes):
            if not c > 0:
                raise ValueError("amplitudes must be positive")
            key = tuple(int(x) for x in w)
            if list(key) != [float(x) for x in w]:
                raise ValueError("weights must be integral")
            merged[key] = merged.get(key, 0.0) + float(c)
        keys = sorted(merged)
        if len({len(k) for k in keys}) != 1:
            raise ValueError("weights must share one rank")
        object.__setattr__(self, "weights", tuple(keys))
        object.__setattr__(self, "amplitudes", tuple(merged[k] for k in keys))

    @property
    def rank(self) -> int:
        return len(self.weights[0])

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.weights, dtype=float).reshape(len(self.weights), self.rank)

    @property
    def log_amplitudes(self) -> np.ndarray:
        return np.log(np.array(self.amplitudes))

    @cached_property
    def exact_hull(self) -> tuple:
        """Pivot coordinates of the affine hull and the full-dimensional hull in them."""
        pts = [ratvec(p) for p in self.weights]
        coords = _pivot_coordinates(pts)
        return coords, Polytope.from_points([tuple(p[c] for c in coords) for p in pts])


# -- toric moment map -------------------------------------------------------

def _softmax(w: WeightedVector, xi) -> np.ndarray:
    z = 2.0 * w.matrix @ np.asarray(xi, dtype=float) + w.log_amplitudes
    z -= z.max()
    p = np.exp(z)
    return p / p.sum()


def toric_moment(w: WeightedVector, xi: Sequence[float]) -> np.ndarray:
    """``sum_i e^{2 lambda_i(xi)} c_i lambda_i / sum_i e^{2 lambda_i(xi)} c_i``."""
    xi = np.asarray(xi, dtype=float).reshape(w.rank)
    return _softmax(w, xi) @ w.matrix


def toric_potential(w: WeightedVector, xi: Sequence[float]) -> float:
    """``1/2 log sum_i c_i e^{2 lambda_i(xi)}``; its gradient is ``toric_moment``."""
    z = 2.0 * w.matrix @ np.asarray(xi, dtype=float).reshape(w.rank) + w.log_amplitudes
    return 0.5 * float(logsumexp(z))


def _covariance(w: WeightedVector, xi) -> np.ndarray:
    p = _softmax(w, xi)
    lam = w.matrix
    mean = p @ lam
    centred = lam - mean
    return (centred * p[:, None]).T @ centred


def _difference_span(w: WeightedVector) -> np.ndarray:
    """Orthonormal basis (columns) of the span of ``lambda_i - lambda_0``."""
    lam = w.matrix
    diffs = lam[1:] - lam[0]
    if diffs.size == 0:
        return np.zeros((w.rank, 0))
    u, s, _ = np.linalg.svd(diffs.T, full_matrices=False)
    return u[:, s > 1e-9 * max(1.0, s.max(initial=0.0))]


def _hull_position(w: WeightedVector, mu: Sequence) -> str:
    """Exact location of ``mu`` against the weight hull: interior, boundary, outside or off-hull.

    "interior" means the relative interior; a single weight is its own interior.
    """
    pts = [ratvec(p) for p in w.weights]
    x = ratvec([Fraction(v).limit_denominator(10 ** 12) if isinstance(v, float) else v for v in mu])
    diffs = [sub(p, pts[0]) for p in pts[1:]]
    k = exact_rank(diffs) if diffs else 0
    if (exact_rank(diffs + [sub(x, pts[0])]) if diffs else int(x != pts[0])) > k:
        return "off-hull"
    if k == 0:
        return "interior"
    coords, hull = w.exact_hull
    slacks = hull.slack(tuple(x[c] for c in coords))
    if any(s < 0 for s in slacks):
        return "outside"
    if any(s == 0 for s in slacks):
        return "boundary"
    return "interior"


@dataclass(frozen=True)
class InversionResult:
    xi: np.ndarray
    iterations: int
    residual: float


def solve_toric_moment(w: WeightedVector, mu: Sequence[float],
                       cfg: NumericConfig = NumericConfig()) -> InversionResult:
    """Damped Newton on ``F(xi) = toric_potential(xi) - mu(xi)``, reporting iterations.

    The solution is unique modulo the orthogonal complement of the weight
    difference span; the returned ``xi`` lies in that span.
    """
    mu = np.asarray(mu, dtype=float).reshape(w.rank)
    where = _hull_position(w, mu)
    if where == "off-hull":
        raise RankDeficient("mu leaves the affine hull of the weights")
    if where in ("boundary", "outside"):
        raise BoundaryPoint(f"mu is on the {where} of the weight hull")
    basis = _difference_span(w)
    xi = np.zeros(w.rank)

    def objective(x):
        return toric_potential(w, x) - float(mu @ x)

    for it in range(cfg.max_newton_iters + 1):
        grad = toric_moment(w, xi) - mu
        res = float(np.linalg.norm(grad))
        if res <= cfg.residual_tol:
            return InversionResult(xi, it, res)
        if it == cfg.max_newton_iters:
            break
        hess = 2.0 * basis.T @ _covariance(w, xi) @ basis
        step = -basis @ np.linalg.lstsq(hess, basis.T @ grad, rcond=None)[0]
        f0, slope, t = objective(xi), float(grad @ step), 1.0
        # near the solution the decrease drops below rounding of F; take the full step
        if -slope > 1e-12 * max(1.0, abs(f0)):
            while objective(xi + t * step) > f0 + 1e-4 * t * slope and t > 1e-12:
                t *= 0.5
        xi = xi + t * step
        if np.linalg.norm(xi) > cfg.divergence_norm:
            raise BoundaryPoint("Newton iterates diverged")
    raise BoundaryPoint("Newton iteration did not converge; mu is numerically on the boundary")


def invert_toric_moment(w: WeightedVector, mu: Sequence[float],
                        cfg: NumericConfig = NumericConfig()) -> np.ndarray:
    """Solve ``toric_moment(w, xi) = mu`` for ``xi`` in the weight-difference span."""
    return solve_toric_moment(w, mu, cfg).xi


# -- representations -----------------------------------------------------------

class Representation(Protocol):
    dim: int
    algebra_basis: list
    root_system: RootSystem

    def torus_part(self, m: np.ndarray) -> np.ndarray: ...
    def random_compact(self, rng: np.random.Generator) -> np.ndarray: ...


@dataclass
class TorusRepresentation:
    """Compact torus acting diagonally on ``C^m`` with integer weights (rows)."""

    weights: np.ndarray

    def __post_init__(self):
        self.weights = np.atleast_2d(np.asarray(self.weights, dtype=float))

    @property
    def dim(self) -> int:
        return self.weights.shape[0]

    @property
    def rank(self) -> int:
        return self.weights.shape[1]

    @property
    def algebra_basis(self) -> list:
        return [1j * np.diag(self.weights[:, j]) for j in range(self.rank)]

    @property
    def root_system(self) -> RootSystem:
        return a1_power(0)

    def torus_part(self, m):
        return np.asarray(m, dtype=float)

    def random_compact(self, rng):
        theta = rng.uniform(-np.pi, np.pi, self.rank)
        return np.diag(np.exp(1j * self.weights @ theta))

    def act_real(self, xi, v):
        """Action of ``exp(xi)`` for ``xi`` in the non-compact real Cartan."""
        return np.exp(self.weights @ np.asarray(xi, dtype=float)) * v


def spin_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``J_x, J_y, J_z`` on ``Sym^n C^2`` (spin ``n/2``), basis ordered by descending ``J_z``."""
    j = n / 2
    mvals = j - np.arange(n + 1)
    jz = np.diag(mvals)
    jp = np.zeros((n + 1, n + 1))
    for k in range(1, n + 1):
        m = mvals[k]
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m * (m + 1))
    jx = (jp + jp.T) / 2
    jy = (jp - jp.T) / 2j
    return jx, jy, jz


@dataclass
class SU2Representation:
    """``SU(2)`` on ``Sym^n C^2``; basis ``i 2J_x, i 2J_y, i 2J_z`` with the last spanning the torus."""

    n: int

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def algebra_basis(self) -> list:
        return [2j * m for m in spin_matrices(self.n)]

    @property
    def root_system(self) -> RootSystem:
        return a1_power(1)

    def torus_part(self, m):
        # the coadjoint orbit through m meets the torus in +-|m|
        return np.array([np.linalg.norm(m)])

    def random_compact(self, rng):
        a = rng.normal(size=3)
        return expm(sum(c * b for c, b in zip(a, self.algebra_basis)) * 0.5)


def moment_map(algebra_basis: Sequence[np.ndarray], v: Sequence[complex]) -> np.ndarray:
    """Component ``k`` is ``(1/i)(v|A_k v)/(v|v)``."""
    v = np.asarray(v, dtype=complex)
    nrm = np.vdot(v, v).real
    if nrm == 0:
        raise ZeroVector("moment map undefined at the zero vector")
    vals = np.array([np.vdot(v, a @ v) / 1j for a in algebra_basis]) / nrm
    if vals.size:
        assert np.max(np.abs(vals.imag)) <= 1e-12 * max(1.0, np.max(np.abs(vals.real))), \
            "moment map is not real; basis is not anti-Hermitian"
    return vals.real


def kirwan(rep, v: Sequence[complex], rs: RootSystem | None = None) -> ChamberPoint:
    """Chamber representative of the moment image, in ``+Pol`` coordinates.

    The returned point is ``-dominance_project(torus_part(moment_map(v)))``;
    its root system is the representation's.
    """
    rs = rs or rep.root_system
    m = moment_map(rep.algebra_basis, v)
    t = rep.torus_part(m)
    if rs.rank == 0:
        return tuple(-x for x in t)
    p, _ = dominance_project(rs, list(t), tol=1e-12)
    return tuple(-x for x in p.coordinates)


# -- Kempf-Ness ---------------------------------------------------------------

@dataclass(frozen=True)
class MinimumFound:
    point: np.ndarray
    stabilizer_dim: int
    parameter: np.ndarray
    moment_norm: float
    norm: float


@dataclass(frozen=True)
class Divergent:
    parameter_norm: float
    reason: str


def stabilizer_dimension(algebra_basis: Sequence[np.ndarray], v, rank_tol: float) -> int:
    """Real dimension of ``{xi : xi v = 0}`` by singular-value thresholding."""
    v = np.asarray(v, dtype=complex)
    if not algebra_basis:
        return 0
    cols = [a @ v for a in algebra_basis]
    m = np.vstack([np.column_stack([c.real for c in cols]), np.column_stack([c.imag for c in cols])])
    s = np.linalg.svd(m, compute_uv=False)
    scale = max(1.0, float(np.linalg.norm(v)))
    return len(algebra_basis) - int(np.sum(s > rank_tol * scale))


def zero_in_relative_interior(weights: Sequence[Sequence[int]]) -> bool:
    """Exact test that the origin lies in the relative interior of the weight hull."""
    w = WeightedVector(tuple(tuple(p) for p in weights), (1.0,) * len(weights))
    return _hull_position(w, [0] * w.rank) == "interior"


def kempf_ness_minimize(rep, v: Sequence[complex], cfg: NumericConfig = NumericConfig()):
    """Minimise ``log ||g v||^2`` over the non-compact directions.

    Torus representations use Newton steps on the convex potential with an
    expanding line search; other representations use steepest descent along
    ``-i * moment``.
    """
    v = np.asarray(v, dtype=complex)
    if not np.any(v):
        raise ZeroVector("Kempf-Ness undefined at the zero vector")
    if isinstance(rep, TorusRepresentation):
        return _kempf_ness_torus(rep, v, cfg)
    return _kempf_ness_flow(rep, v, cfg)


def _kempf_ness_torus(rep: TorusRepresentation, v: np.ndarray, cfg: NumericConfig):
    support = np.abs(v) > 0
    w = WeightedVector(tuple(tuple(int(round(x)) for x in row) for row in rep.weights[support]),
                       tuple(np.abs(v[support]) ** 2))
    basis = _difference_span(w)
    xi = np.zeros(rep.rank)
    for it in range(cfg.max_flow_iters):
        grad = toric_moment(w, xi)
        cov = basis.T @ _covariance(w, xi) @ basis
        min_eig = float(np.linalg.eigvalsh(cov).min()) if cov.size else np.inf
        if np.linalg.norm(grad) <= cfg.residual_tol:
            if not cov.size or 2 * min_eig >= cfg.rank_tol:
                return _found(rep, v, xi, cfg)
            # the moment only vanishes in the limit: the valley is flat at infinity
            return Divergent(float(np.linalg.norm(xi)), "moment vanishes only asymptotically")
        if not cov.size:
            # single weight: the norm scales without bound in the weight direction
            step = -grad
        else:
            step = -basis @ np.linalg.lstsq(2 * cov, basis.T @ grad, rcond=None)[0]
        xi = xi + _line_search(lambda x: toric_potential(w, x), xi, step, float(grad @ step))
        if np.linalg.norm(xi) > cfg.divergence_norm:
            return Divergent(float(np.linalg.norm(xi)), "parameter norm exceeded divergence_norm")
    return Divergent(float(np.linalg.norm(xi)), "iteration budget exhausted")


def _line_search(f, x, step, slope) -> np.ndarray:
    f0, t = f(x), 1.0
    if -slope <= 1e-12 * max(1.0, abs(f0)):
        return step
    if f(x + step) <= f0 + 1e-4 * slope:
        # expand while the objective keeps decreasing
        while t < 1e12 and f(x + 2 * t * step) < f(x + t * step):
            t *= 2
        return t * step
    while t > 1e-14 and f(x + t * step) > f0 + 1e-4 * t * slope:
        t *= 0.5
    return t * step


def _exact_line_min(f, cap: float) -> float:
    """Minimise a convex ``f`` on ``[0, cap]``: bracket by doubling, then bounded Brent."""
    hi = 1e-3
    while hi < cap and f(2 * hi) < f(hi):
        hi *= 2
    if hi >= cap:
        return cap
    return float(minimize_scalar(f, bounds=(0.0, 2 * hi), method="bounded",
                                 options={"xatol": 1e-14}).x)


def _found(rep: TorusRepresentation, v, xi, cfg) -> MinimumFound:
    vp = rep.act_real(xi, v)
    m = moment_map(rep.algebra_basis, vp)
    return MinimumFound(vp, stabilizer_dimension(rep.algebra_basis, vp, cfg.rank_tol), xi,
                        float(np.linalg.norm(m)), float(np.linalg.norm(vp)))


def _kempf_ness_flow(rep, v: np.ndarray, cfg: NumericConfig):
    basis = rep.algebra_basis
    herm = [-1j * a for a in basis]
    cur = v / np.linalg.norm(v)
    log_scale = float(np.log(np.vdot(v, v).real))
    travelled = 0.0
    for _ in range(cfg.max_flow_iters):
        m = moment_map(basis, cur)
        if np.linalg.norm(m) <= cfg.residual_tol:
            point = cur * np.exp(log_scale / 2)
            return MinimumFound(point, stabilizer_dimension(basis, cur, cfg.rank_tol),
                                np.array([travelled]), float(np.linalg.norm(m)),
                                float(np.exp(log_scale / 2)))
        h = sum(c * b for c, b in zip(m, herm))
        evals, q = np.linalg.eigh(h)
        with np.errstate(divide="ignore"):
            logc = np.log(np.abs(q.conj().T @ cur) ** 2)

        def f(s, evals=evals, logc=logc):
            return float(logsumexp(-2 * s[0] * evals + logc))

        s = _exact_line_min(lambda t: f(np.array([t])), cfg.divergence_norm / np.linalg.norm(m))
        shift = f(np.array([s]))
        log_scale += shift
        with np.errstate(over="ignore", invalid="ignore"):
            scale = np.where(np.isfinite(logc), np.exp(-s * evals - shift / 2), 0.0)
        cur = q @ (scale * (q.conj().T @ cur))
        travelled += abs(s) * float(np.linalg.norm(m))
        if travelled > cfg.divergence_norm:
            return Divergent(float(travelled), "parameter norm exceeded divergence_norm")
    return Divergent(travelled, "iteration budget exhausted")


# -- Cartan decomposition --------------------------------------------------------

@dataclass(frozen=True)
class MatrixGroupElement:
    factors: tuple
    tag: str = "SL"

    def __post_init__(self):
        facs = tuple(np.asarray(f, dtype=complex) for f in self.factors)
        object.__setattr__(self, "factors", facs)
        for f in facs:
            if f.shape[0] != f.shape[1] or not 1 <= f.shape[0] <= 5:
                raise ValueError("factors must be square of size at most 5")
            if abs(np.linalg.det(f) - 1) > 1e-10:
                raise NotUnimodular(f"determinant {np.linalg.det(f):.3g} is not 1")
            if self.tag == "SU" and np.linalg.norm(f.conj().T @ f - np.eye(len(f))) > 1e-12:
                raise ValueError("factor tagged compact is not unitary")


@dataclass(frozen=True)
class CartanResult:
    k1: np.ndarray
    a: np.ndarray
    k2: np.ndarray
    val: ChamberPoint

    def residual(self, h) -> float:
        return float(np.linalg.norm(self.k1 @ self.a @ self.k2 - np.asarray(h)))


def cartan_decompose(h) -> CartanResult:
    """``h = k1 exp(val) k2`` with ``k_i`` in ``SU(n)`` and ``val`` ascending (antidominant)."""
    if isinstance(h, MatrixGroupElement):
        if len(h.factors) != 1:
            raise ValueError("decompose factors one at a time")
        h = h.factors[0]
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if abs(np.linalg.det(h) - 1) > 1e-10:
        raise NotUnimodular(f"determinant {np.linalg.det(h):.3g} is not 1")
    u, s, vh = np.linalg.svd(h)
    u, s, vh = u[:, ::-1], s[::-1], vh[::-1, :]
    d1 = np.linalg.det(u)
    fix = np.ones(n, dtype=complex)
    fix[0] = np.conj(d1)
    k1 = u * fix
    k2 = (1 / fix)[:, None] * vh
    logs = np.log(s)
    logs -= logs.mean()
    val = ChamberPoint(tuple(float(x) for x in logs), type_a(n)) if n >= 2 else ()
    return CartanResult(k1, np.diag(s).astype(complex), k2, val)
