"""Core geometric primitives for Tverberg graphs.

A graph drawn on points in R^d is a Tverberg graph when the closed balls
spanned by its edges (each edge's segment taken as a ball diameter) have a
common point.  Membership of a point ``x`` in the ball over segment ``ab``
is equivalent to ``<a-x, b-x> <= 0``, so the whole intersection question
reduces to the convex minimax function

    H(x) = max over edges ab of <a-x, b-x>
         = max over edges of (||m - x||^2 - s^2),

where ``m`` is the edge midpoint and ``s`` half the edge length.  ``H`` is
strictly convex, its unique minimizer is the *power center* of the edge
balls, and the sign of the minimum certifies whether the balls intersect
(closed: <= 0, open: < 0).  This module provides that solver, the support
decomposition of the minimizer over tight-edge midpoints, and the verifier
used by every constructive module in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

# Tolerance bands used package-wide.  Values are in "squared coordinate"
# units unless noted; inputs at unit-box scale keep them meaningful.
EPS_EVAL = 1e-9        # acceptance band for witness values
EPS_TIGHT = 1e-7       # relative band for tight-edge extraction
EPS_SUPPORT = 1e-9     # strict-positivity cutoff for support coefficients
DEFAULT_SOLVER_TOL = 1e-10


class TverbergError(Exception):
    """Base class for all package errors."""


class GeneralPositionError(TverbergError):
    """A degeneracy was hit that a fresh perturbation can remove."""


class InvariantViolation(TverbergError):
    """An internal contract that theory guarantees failed numerically."""


@dataclass(frozen=True)
class Ball:
    """Closed ball given by center and radius."""

    center: np.ndarray
    radius: float


@dataclass
class Witness:
    """Candidate intersection point with its minimax value.

    ``tight`` lists the indices (into the edge list the witness was computed
    for) whose dot-product term reaches the maximum within the relative
    EPS_TIGHT band.
    """

    x: np.ndarray
    value: float
    tight: list[int] = field(default_factory=list)


@dataclass
class VerifyResult:
    """Outcome of a Tverberg verification: the witness doubles as a
    certificate of emptiness when ``ok`` is False (strict convexity)."""

    ok: bool
    mode: str
    witness: Witness


@dataclass
class PointSet:
    """Ordered points in R^d with optional red/blue labels ('r'/'b')."""

    points: np.ndarray
    colors: list[str] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError("points must be an (n, d) array with d >= 1")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        self.points = pts
        if self.colors is not None:
            colors = [_norm_color(c) for c in self.colors]
            if len(colors) != len(pts):
                raise ValueError("colors must label every point")
            self.colors = colors

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def red_indices(self) -> list[int]:
        self.require_colors()
        return [i for i, c in enumerate(self.colors) if c == "r"]

    @property
    def blue_indices(self) -> list[int]:
        self.require_colors()
        return [i for i, c in enumerate(self.colors) if c == "b"]

    def require_colors(self):
        if self.colors is None:
            raise ValueError("operation requires a red/blue colored point set")

    def require_balanced_colors(self):
        self.require_colors()
        if len(self.red_indices) != len(self.blue_indices):
            raise ValueError("red and blue point counts must be equal")

    def has_duplicates(self) -> bool:
        return len(np.unique(self.points, axis=0)) < self.n


def _norm_color(c) -> str:
    c = str(c).strip().lower()
    if c in ("r", "red"):
        return "r"
    if c in ("b", "blue"):
        return "b"
    raise ValueError(f"unknown color label {c!r}")


def as_pointset(obj) -> PointSet:
    if isinstance(obj, PointSet):
        return obj
    return PointSet(np.asarray(obj, dtype=float))


def coords(obj) -> np.ndarray:
    """Coordinate array of a PointSet or array-like."""
    if isinstance(obj, PointSet):
        return obj.points
    pts = np.asarray(obj, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected an (n, d) coordinate array")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def check_edges(points, edges, nonempty: bool = True) -> np.ndarray:
    """Validate an edge list against a point set; returns a (k, 2) int array."""
    pts = coords(points)
    arr = np.asarray(list(edges), dtype=int)
    if arr.size == 0:
        if nonempty:
            raise ValueError("edge list must be nonempty")
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs of point indices")
    if arr.min() < 0 or arr.max() >= pts.shape[0]:
        raise ValueError("edge index out of range")
    if np.any(arr[:, 0] == arr[:, 1]):
        raise ValueError("edge endpoints must be distinct indices")
    return arr


def check_perfect_matching(points, edges) -> np.ndarray:
    """Edge list must cover every point index exactly once."""
    pts = coords(points)
    arr = check_edges(points, edges)
    flat = arr.ravel()
    if len(set(flat.tolist())) != flat.size or flat.size != pts.shape[0]:
        raise ValueError("edges do not form a perfect matching")
    return arr


def cycle_edges(order) -> list[tuple[int, int]]:
    """Consecutive (wrapping) pairs of a cyclic vertex order."""
    order = list(order)
    if len(order) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if len(set(order)) != len(order):
        raise ValueError("cycle order repeats a vertex")
    return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


def edge_ball(a, b) -> Ball:
    """Ball whose diameter is the segment ab: midpoint center, half-length radius."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("endpoint dimensions differ")
    return Ball(center=(a + b) / 2.0, radius=float(np.linalg.norm(a - b) / 2.0))


def h_value(points, edges, x) -> float:
    """max over edges ab of <a-x, b-x>; <= 0 iff x lies in every closed edge ball."""
    pts = coords(points)
    arr = check_edges(points, edges)
    x = np.asarray(x, dtype=float)
    if x.shape != (pts.shape[1],):
        raise ValueError("query point dimension mismatch")
    A = pts[arr[:, 0]] - x
    B = pts[arr[:, 1]] - x
    return float(np.max(np.einsum("ij,ij->i", A, B)))


def _edge_dots(pts, arr, x):
    A = pts[arr[:, 0]] - x
    B = pts[arr[:, 1]] - x
    return np.einsum("ij,ij->i", A, B)


def _affine_face_min(M, c, S):
    """Affine minimization of lam' M M' lam - c' lam over sum(lam) = 1 on S.

    Returns (target, ray).  When the face is nondegenerate the KKT system
    [2G 1; 1' 0][lam; nu] = [c_S; 1] pins the minimizer (ray is None).  When
    the support midpoints are affinely dependent AND the linear term sees the
    dependence, the objective is unbounded along a null direction of
    [M_S'; 1']; that direction (scaled so <c, ray> > 0, descent for the dual
    objective, with sum(ray) = 0) is returned instead so the caller can walk
    to the simplex boundary.
    """
    k = len(S)
    Msub = M[S]
    B = np.vstack([Msub.T, np.ones((1, k))])
    sv = np.linalg.svd(B, compute_uv=True)
    s_vals, vt = sv[1], sv[2]
    rank_tol = max(B.shape) * (s_vals[0] if len(s_vals) else 1.0) * 1e-12
    rank = int(np.sum(s_vals > rank_tol))
    if rank < k:
        N = vt[rank:].T
        g = N @ (N.T @ c[S])
        if np.linalg.norm(g) > 1e-11 * (1.0 + np.abs(c[S]).max()):
            return None, g
    G = Msub @ Msub.T
    K = np.zeros((k + 1, k + 1))
    K[:k, :k] = 2.0 * G
    K[:k, k] = 1.0
    K[k, :k] = 1.0
    rhs = np.append(c[S], 1.0)
    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
    return sol[:k], None


def power_center(points, edges, tol: float = DEFAULT_SOLVER_TOL, start=None) -> Witness:
    """Unique minimizer of h_value over x, with its value and tight edges.

    Solves the equivalent convex program

        minimize  t + ||x||^2
        s.t.      ||m_i||^2 - s_i^2 - 2 <m_i, x> <= t   for every edge i

    through its dual: maximize <c, lam> - ||M' lam||^2 over the simplex,
    with x = M' lam.  A Wolfe-style simplicial descent keeps a feasible lam,
    alternates affine minimization over the current support with boundary
    line searches, and stops on the primal-dual gap

        max_i (c_i - 2 <m_i, x>) - <lam, c - 2 M x> <= tol,

    which certifies that the returned value is within ``tol`` of optimal.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    pts = coords(points)
    arr = check_edges(points, edges)
    A = pts[arr[:, 0]]
    B = pts[arr[:, 1]]
    mids = (A + B) / 2.0
    s2 = np.sum((A - B) ** 2, axis=1) / 4.0
    # Shift midpoints to their centroid; the minimax is translation-equivariant
    # and the face systems condition much better near the origin.
    mu = mids.mean(axis=0)
    M = mids - mu
    c = np.sum(M**2, axis=1) - s2
    k_edges = arr.shape[0]

    x0 = (np.asarray(start, dtype=float) - mu) if start is not None else np.zeros(pts.shape[1])
    j0 = int(np.argmax(c - 2.0 * M @ x0))
    lam = np.zeros(k_edges)
    lam[j0] = 1.0
    support = [j0]

    max_major = 200 + 10 * k_edges
    for _ in range(max_major):
        x = M.T @ lam
        v = c - 2.0 * M @ x
        gap = float(np.max(v) - lam @ v)
        if gap <= tol:
            break
        j = int(np.argmax(v))
        if j not in support:
            support.append(j)
        # Minor cycle: pull lam toward the affine face minimizer (or along an
        # unbounded face ray), dropping coordinates that hit zero, until the
        # face solution is feasible.
        for _ in range(k_edges + 2):
            target, ray = _affine_face_min(M, c, support)
            if ray is not None:
                cur = lam[support]
                direction = ray
                limit = None  # walk all the way to the boundary
            elif target.min() >= -1e-14:
                lam = np.zeros(k_edges)
                lam[support] = np.clip(target, 0.0, None)
                lam /= lam.sum()
                break
            else:
                cur = lam[support]
                direction = target - cur
                limit = 1.0
            neg = direction < -1e-18
            if not np.any(neg):
                raise InvariantViolation("boundary step has no exit coordinate")
            with np.errstate(divide="ignore"):
                steps = cur[neg] / -direction[neg]
            theta = float(np.min(steps))
            if limit is not None:
                theta = min(limit, theta)
            mixed = np.clip(cur + theta * direction, 0.0, None)
            # Zero the binding coordinates exactly so they leave the support.
            binder = np.zeros(len(cur), dtype=bool)
            binder[neg] = steps <= theta * (1.0 + 1e-12)
            mixed[binder] = 0.0
            lam = np.zeros(k_edges)
            lam[support] = mixed
            total = lam.sum()
            if total <= 0:
                raise InvariantViolation("dual iterate collapsed to zero")
            lam /= total
            support = [i for i in support if lam[i] > 0.0]
            if not support:
                raise InvariantViolation("dual support collapsed")
    else:
        x = M.T @ lam
        v = c - 2.0 * M @ x
        gap = float(np.max(v) - lam @ v)
        if gap > 1e3 * tol:
            raise InvariantViolation(
                f"power_center failed to close the duality gap ({gap:.3e})"
            )

    x_full = M.T @ lam + mu
    dots = _edge_dots(pts, arr, x_full)
    value = float(np.max(dots))
    band = EPS_TIGHT * (1.0 + abs(value))
    tight = [int(i) for i in np.nonzero(dots >= value - band)[0]]
    return Witness(x=x_full, value=value, tight=tight)


def support_coefficients(midpoints, x_star, tol: float = 1e-7) -> list[tuple[int, float]]:
    """Convex coefficients placing ``x_star`` in the hull of ``midpoints``.

    Returns (index, lambda) pairs restricted to the strictly positive support
    (lambda > EPS_SUPPORT), renormalized to sum to one.  Raises
    InvariantViolation when no nonnegative combination reproduces ``x_star``
    within ``tol`` — with tight midpoints from :func:`power_center` that
    would mean the optimality certificate is broken.
    """
    K = np.atleast_2d(np.asarray(midpoints, dtype=float))
    x = np.asarray(x_star, dtype=float)
    if K.shape[1] != x.shape[0]:
        raise ValueError("midpoint/point dimension mismatch")
    k = K.shape[0]
    A = np.vstack([(K - x).T, np.ones((1, k))])
    b = np.zeros(A.shape[0])
    b[-1] = 1.0
    lam, _ = nnls(A, b)
    scale = 1.0 + float(np.abs(K - x).max(initial=0.0))
    resid = np.linalg.norm(A @ lam - b)
    if resid > tol * scale:
        raise InvariantViolation(
            f"x_star is not in the convex hull of the midpoints (residual {resid:.3e})"
        )
    support = [(int(i), float(v)) for i, v in enumerate(lam) if v > EPS_SUPPORT]
    if not support:
        raise InvariantViolation("support of the convex combination is empty")
    total = sum(v for _, v in support)
    return [(i, v / total) for i, v in support]


def verify_tverberg(points, edges, mode: str = "closed", tol: float = EPS_EVAL) -> VerifyResult:
    """Decide whether all edge balls share a point, with a witness either way.

    closed mode succeeds when the minimax value is <= tol; open mode demands
    strict negativity below -tol.  Values inside [-tol, tol] are boundary
    cases: closed accepts them, open rejects them.  On failure the witness
    still certifies emptiness, since a positive minimum of the strictly
    convex H proves the closed balls have no common point.
    """
    if mode not in ("closed", "open"):
        raise ValueError("mode must be 'closed' or 'open'")
    wit = power_center(points, edges)
    ok = wit.value <= tol if mode == "closed" else wit.value < -tol
    return VerifyResult(ok=ok, mode=mode, witness=wit)
