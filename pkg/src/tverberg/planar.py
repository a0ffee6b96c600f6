"""Planar constructions: bisecting lines, quadrant sweeps, and the two
2-D builders (Hamiltonian Tverberg cycle, red-blue Tverberg matching).

Both constructions hinge on one observation: if two orthogonal bisecting
lines meet at ``o``, then ``o`` lies in the diameter ball of any segment
whose endpoints sit in opposite (closed) quadrants.  Building a cycle or a
matching all of whose edges straddle opposite quadrants therefore yields a
witness for free.  Degenerate inputs are handled by a seeded rotation plus,
on retry, a tiny perturbation; the output graph is always re-verified on
the original coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .geometry import (
    EPS_EVAL,
    GeneralPositionError,
    InvariantViolation,
    PointSet,
    Witness,
    as_pointset,
    coords,
    cycle_edges,
    h_value,
    power_center,
)

RETRY_BUDGET = 32
PERTURB_SCALE = 1e-9       # noise magnitude relative to bounding-box diameter
ANGLE_DEDUP = 1e-12
SIDE_TOL = 1e-12           # exact side tests on perturbed coordinates


@dataclass(frozen=True)
class DirectedLine:
    """Line {p : <p, v> = offset} where v = (cos angle, sin angle) is the unit normal."""

    angle: float
    offset: float

    @property
    def normal(self) -> np.ndarray:
        return np.array([math.cos(self.angle), math.sin(self.angle)])

    @property
    def direction(self) -> np.ndarray:
        return np.array([-math.sin(self.angle), math.cos(self.angle)])

    def signed_distance(self, p) -> float:
        return float(np.dot(np.asarray(p, dtype=float), self.normal) - self.offset)


@dataclass
class SweepState:
    """Orthogonal line pair at direction alpha with quadrant bookkeeping.

    Quadrant 1 is bounded by the rays from ``o`` in directions v_alpha and
    v_{alpha+pi/2}; numbering proceeds counterclockwise.  ``r``/``b`` hold
    per-quadrant red/blue counts for colored input, ``s`` total counts
    otherwise.  Points lying on a line (within tolerance) are reported in
    ``on_ell`` / ``on_ell_perp`` and excluded from the open-quadrant counts.
    """

    alpha: float
    ell: DirectedLine
    ell_perp: DirectedLine
    o: np.ndarray
    s: np.ndarray | None = None
    r: np.ndarray | None = None
    b: np.ndarray | None = None
    quadrant_indices: list | None = None
    on_ell: list | None = None
    on_ell_perp: list | None = None


def _require_planar(pts: np.ndarray):
    if pts.shape[1] != 2:
        raise ValueError("operation requires 2-D input")


def _scale(pts: np.ndarray) -> float:
    return float(1.0 + np.abs(pts).max(initial=0.0))


def line_intersection(l1: DirectedLine, l2: DirectedLine) -> np.ndarray:
    A = np.vstack([l1.normal, l2.normal])
    rhs = np.array([l1.offset, l2.offset])
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det) < 1e-12:
        raise ValueError("lines are (nearly) parallel")
    return np.linalg.solve(A, rhs)


def plank_midline(points, alpha: float) -> DirectedLine:
    """Midline of the strip of bisecting lines with normal v_alpha.

    Projections onto the normal are sorted; for even n the strip spans the
    two middle order statistics and the midline sits at their mean, for odd
    n the strip collapses onto the median projection.
    """
    pts = coords(points)
    _require_planar(pts)
    n = pts.shape[0]
    if n < 2:
        raise ValueError("plank midline needs at least 2 points")
    v = np.array([math.cos(alpha), math.sin(alpha)])
    proj = np.sort(pts @ v)
    if n % 2 == 0:
        offset = 0.5 * (proj[n // 2 - 1] + proj[n // 2])
    else:
        offset = proj[n // 2]
    return DirectedLine(angle=float(alpha) % (2 * math.pi), offset=float(offset))


def bisecting_check(points, line: DirectedLine, tol: float | None = None) -> bool:
    """True iff each open half-plane of the line holds at most floor(n/2) points."""
    pts = coords(points)
    _require_planar(pts)
    if tol is None:
        tol = 1e-12 * _scale(pts)
    d = pts @ line.normal - line.offset
    above = int(np.sum(d > tol))
    below = int(np.sum(d < -tol))
    half = pts.shape[0] // 2
    return above <= half and below <= half


def pair_bisecting_line(points) -> tuple[DirectedLine, int, int]:
    """Bisecting line through exactly two points of an even-size set.

    Takes the lexicographic minimum point p (a hull vertex), radially sorts
    the remaining points around it, and pairs p with the median-rank point;
    (n-2)/2 points are left strictly on each side.  Radial ties or stray
    points on the line signal residual collinearity and raise
    GeneralPositionError so the caller can re-perturb.
    """
    pts = coords(points)
    _require_planar(pts)
    n = pts.shape[0]
    if n % 2 != 0:
        raise ValueError("pair bisecting line needs an even point count")
    if n < 2:
        raise ValueError("need at least 2 points")

    order = np.lexsort((pts[:, 1], pts[:, 0]))
    p_idx = int(order[0])
    p = pts[p_idx]
    others = [i for i in range(n) if i != p_idx]
    if n == 2:
        q_idx = others[0]
    else:
        rel = pts[others] - p
        angles = np.arctan2(rel[:, 1], rel[:, 0])
        rank = np.argsort(angles, kind="stable")
        sorted_angles = angles[rank]
        if np.any(np.diff(sorted_angles) < ANGLE_DEDUP):
            raise GeneralPositionError("radial ties around the pivot point")
        q_idx = others[int(rank[(n - 2) // 2])]

    q = pts[q_idx]
    direction = q - p
    direction = direction / np.linalg.norm(direction)
    normal = np.array([-direction[1], direction[0]])
    line = DirectedLine(
        angle=math.atan2(normal[1], normal[0]) % (2 * math.pi),
        offset=float(p @ normal),
    )
    # Confirm the balanced split with exact orientation counts.
    d = pts @ normal - line.offset
    tol = 1e-12 * _scale(pts)
    on = np.nonzero(np.abs(d) <= tol)[0]
    if len(on) != 2:
        raise GeneralPositionError("extra points on the candidate bisecting line")
    left = int(np.sum(d > tol))
    right = int(np.sum(d < -tol))
    if left != right:
        raise GeneralPositionError("radial median did not balance the sides")
    return line, p_idx, q_idx


def orthogonal_clear_bisecting_line(points, ell: DirectedLine) -> DirectedLine:
    """Bisecting line orthogonal to ell that avoids every point.

    Projects onto ell's direction vector and places the line at the mean of
    the two middle order statistics; if those coincide within tolerance no
    clear orthogonal bisector exists and GeneralPositionError asks for a
    fresh perturbation.
    """
    pts = coords(points)
    _require_planar(pts)
    n = pts.shape[0]
    if n % 2 != 0:
        raise ValueError("clear orthogonal bisector needs an even point count")
    u = ell.direction
    proj = np.sort(pts @ u)
    lo, hi = proj[n // 2 - 1], proj[n // 2]
    if hi - lo <= 1e-12 * _scale(pts):
        raise GeneralPositionError("middle projections coincide; re-perturb")
    angle = math.atan2(u[1], u[0]) % (2 * math.pi)
    return DirectedLine(angle=angle, offset=float(0.5 * (lo + hi)))


def classify_quadrants(points, state: SweepState) -> SweepState:
    """Fill the quadrant counts of a sweep state.

    Coordinates relative to o in the rotated frame (v_alpha, v_{alpha+pi/2})
    decide the open quadrant; points within tolerance of a line are listed
    as incident to it instead of being counted.
    """
    ps = as_pointset(points)
    pts = ps.points
    _require_planar(pts)
    tol = 1e-12 * _scale(pts)
    a = pts @ state.ell.normal - state.ell.offset
    b = pts @ state.ell_perp.normal - state.ell_perp.offset
    on_ell = [int(i) for i in np.nonzero(np.abs(a) <= tol)[0]]
    on_perp = [int(i) for i in np.nonzero(np.abs(b) <= tol)[0]]
    off = np.ones(len(pts), dtype=bool)
    off[on_ell] = False
    off[on_perp] = False
    quad = np.zeros(len(pts), dtype=int)
    quad[(a > 0) & (b > 0)] = 1
    quad[(a < 0) & (b > 0)] = 2
    quad[(a < 0) & (b < 0)] = 3
    quad[(a > 0) & (b < 0)] = 4
    quad[~off] = 0
    indices = [sorted(int(i) for i in np.nonzero(quad == q)[0]) for q in (1, 2, 3, 4)]
    s = np.array([len(ix) for ix in indices])
    r_counts = b_counts = None
    if ps.colors is not None:
        red = set(ps.red_indices)
        r_counts = np.array([sum(1 for i in ix if i in red) for ix in indices])
        b_counts = s - r_counts
    return replace(
        state,
        s=s,
        r=r_counts,
        b=b_counts,
        quadrant_indices=indices,
        on_ell=on_ell,
        on_ell_perp=on_perp,
    )


def sweep_state(points, alpha: float) -> SweepState:
    """Plank midlines at alpha and alpha+pi/2, their crossing o, and counts."""
    ell = plank_midline(points, alpha)
    ell_perp = plank_midline(points, alpha + math.pi / 2)
    o = line_intersection(ell, ell_perp)
    state = SweepState(alpha=float(alpha), ell=ell, ell_perp=ell_perp, o=o)
    return classify_quadrants(points, state)


def critical_angles(points) -> np.ndarray:
    """Sorted finite superset of the directions where line incidences change.

    For every point pair the four angles at which the pair direction aligns
    with v_alpha or v_{alpha+pi/2}; between consecutive entries the
    projection orders (hence the midline pairs) are constant.
    """
    pts = coords(points)
    _require_planar(pts)
    n = pts.shape[0]
    if n < 2:
        return np.zeros(0)
    diffs = pts[:, None, :] - pts[None, :, :]
    iu = np.triu_indices(n, k=1)
    d = diffs[iu]
    base = np.mod(np.arctan2(d[:, 1], d[:, 0]), math.pi / 2)
    base = np.unique(base)
    if len(base) > 1:
        keep = np.concatenate([[True], np.diff(base) > ANGLE_DEDUP])
        base = base[keep]
        if base[-1] + ANGLE_DEDUP >= math.pi / 2 and base[0] < ANGLE_DEDUP:
            base = base[:-1]
    full = np.concatenate([base + k * (math.pi / 2) for k in range(4)])
    return np.sort(full)


def _sample_angles(pts: np.ndarray) -> np.ndarray:
    """Midpoints of consecutive critical angles, one full turn, sorted."""
    crit = critical_angles(pts)
    base = crit[crit < math.pi / 2 - ANGLE_DEDUP]
    if len(base) == 0:
        base = np.array([0.0])
    mids = (base[:-1] + base[1:]) / 2.0 if len(base) > 1 else np.zeros(0)
    wrap = (base[-1] + base[0] + math.pi / 2) / 2.0
    base_samples = np.append(mids, wrap)
    full = np.concatenate([base_samples + k * (math.pi / 2) for k in range(4)])
    return np.sort(full)


def sweep_values(points, alphas) -> np.ndarray:
    """Vectorized F(alpha) = r_1(alpha) - b_3(alpha) over many directions.

    Raises GeneralPositionError if any sample has a point on one of its two
    midlines (the sample left the valid direction set).
    """
    ps = as_pointset(points)
    ps.require_balanced_colors()
    pts = ps.points
    _require_planar(pts)
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    m = pts.shape[0]
    if m % 2 != 0:
        raise ValueError("colored sweep needs an even total point count")
    half = m // 2
    tol = 1e-12 * _scale(pts)

    V = np.stack([np.cos(alphas), np.sin(alphas)], axis=1)
    W = np.stack([-np.sin(alphas), np.cos(alphas)], axis=1)
    pa = V @ pts.T                       # (k, m) projections onto v_alpha
    pb = W @ pts.T
    sa = np.sort(pa, axis=1)
    sb = np.sort(pb, axis=1)
    off_a = 0.5 * (sa[:, half - 1] + sa[:, half])
    off_b = 0.5 * (sb[:, half - 1] + sb[:, half])
    a = pa - off_a[:, None]
    b = pb - off_b[:, None]
    if min(np.abs(a).min(), np.abs(b).min()) <= tol:
        raise GeneralPositionError("a sample direction has a point on a midline")

    red = np.zeros(m, dtype=bool)
    red[ps.red_indices] = True
    q1 = (a > 0) & (b > 0)
    q3 = (a < 0) & (b < 0)
    r1 = np.sum(q1 & red, axis=1)
    b3 = np.sum(q3 & ~red, axis=1)
    return (r1 - b3).astype(int)


def sweep_F(points) -> list[tuple[float, int]]:
    """F evaluated at the midpoint of every consecutive critical-angle pair."""
    ps = as_pointset(points)
    samples = _sample_angles(ps.points)
    values = sweep_values(ps, samples)
    return [(float(a), int(v)) for a, v in zip(samples, values)]


# ---------------------------------------------------------------------------
# seeded perturbation shared by both planar constructors
# ---------------------------------------------------------------------------

def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _perturbed(pts: np.ndarray, rng: np.random.Generator, with_noise: bool):
    """Random rotation, plus bounded noise on retries only.

    The first attempt rotates exactly, which keeps witnesses computed from
    the rotated frame valid to machine precision on the originals; noise is
    reserved for inputs whose degeneracy survives rotation.
    """
    theta = rng.uniform(0.0, 2 * math.pi)
    R = _rotation(theta)
    out = pts @ R.T
    if with_noise:
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        diam = float(np.linalg.norm(hi - lo))
        delta = PERTURB_SCALE * (diam if diam > 0 else 1.0)
        out = out + rng.uniform(-delta, delta, out.shape)
    return out, R


def _interleave(first: list[int], second: list[int]) -> list[int]:
    """first[0], second[0], first[1], second[1], ... with any leftover tail."""
    out: list[int] = []
    for i in range(max(len(first), len(second))):
        if i < len(first):
            out.append(first[i])
        if i < len(second):
            out.append(second[i])
    return out


def _quadrant_buckets(a: np.ndarray, b: np.ndarray, skip: set[int], tol: float):
    buckets: dict[int, list[int]] = {1: [], 2: [], 3: [], 4: []}
    for i in range(len(a)):
        if i in skip:
            continue
        if abs(a[i]) <= tol or abs(b[i]) <= tol:
            raise GeneralPositionError("interior point on a construction line")
        if a[i] > 0:
            buckets[1 if b[i] > 0 else 4].append(i)
        else:
            buckets[2 if b[i] > 0 else 3].append(i)
    return buckets


def _even_cycle_order(pts: np.ndarray) -> tuple[list[int], np.ndarray]:
    """Even n: bisecting line through two points plus a clear orthogonal
    bisector; the cycle alternates between opposite quadrants along two
    runs joined at the two on-line points."""
    ell, ix, iy = pair_bisecting_line(pts)
    ell_perp = orthogonal_clear_bisecting_line(pts, ell)
    o = line_intersection(ell, ell_perp)
    tol = SIDE_TOL * _scale(pts)

    a = pts @ ell.normal - ell.offset
    b = pts @ ell_perp.normal - ell_perp.offset
    if abs(b[ix]) <= tol or abs(b[iy]) <= tol:
        raise GeneralPositionError("on-line point too close to the orthogonal bisector")

    separated = b[ix] * b[iy] < 0
    if separated:
        # Normalize so x sits on the negative side (closed Q3/Q4 boundary).
        if b[ix] > 0:
            ix, iy = iy, ix
        buckets = _quadrant_buckets(a, b, {ix, iy}, tol)
        q1, q2, q3, q4 = (buckets[k] for k in (1, 2, 3, 4))
        if len(q1) != len(q3) or len(q2) != len(q4):
            raise GeneralPositionError("quadrant counts out of balance (case 1.1)")
        run1 = [ix] + _interleave(q1, q3) + [iy]
        run2 = _interleave(q4, q2)
        order = run1 + run2
    else:
        # Same side: flip the frame so both sit on the positive side
        # (closed Q1/Q2 boundary).
        flip = b[ix] < 0
        if flip:
            b = -b
        buckets = _quadrant_buckets(a, b, {ix, iy}, tol)
        q1, q2, q3, q4 = (buckets[k] for k in (1, 2, 3, 4))
        if len(q3) != len(q1) + 1 or len(q4) != len(q2) + 1:
            raise GeneralPositionError("quadrant counts out of balance (case 1.2)")
        run1 = [ix] + _interleave(q3, q1) + [iy]
        run2 = _interleave(q4, q2)
        order = run1 + run2
    return order, o


def _odd_cycle_try(pts: np.ndarray, alpha: float) -> tuple[list[int], np.ndarray]:
    """Odd n at a fixed direction: two orthogonal median lines, each through
    exactly one point, medians distinct."""
    n = pts.shape[0]
    tol = SIDE_TOL * _scale(pts)
    ell = plank_midline(pts, alpha)
    ell_perp = plank_midline(pts, alpha + math.pi / 2)

    def only_point_on(line: DirectedLine) -> int:
        d = np.abs(pts @ line.normal - line.offset)
        on = np.nonzero(d <= tol)[0]
        if len(on) != 1:
            raise GeneralPositionError("median line meets more than one point")
        return int(on[0])

    ix = only_point_on(ell)
    iy = only_point_on(ell_perp)
    if ix == iy:
        raise GeneralPositionError("median lines meet at an input point")
    o = line_intersection(ell, ell_perp)

    a = pts @ ell.normal - ell.offset
    b = pts @ ell_perp.normal - ell_perp.offset
    # Flip the frame so x lands on the closed Q3/Q4 boundary and y on Q2/Q3.
    if b[ix] > 0:
        b = -b
    if a[iy] > 0:
        a = -a
    if abs(b[ix]) <= tol or abs(a[iy]) <= tol:
        raise GeneralPositionError("median points too close to the opposite line")
    buckets = _quadrant_buckets(a, b, {ix, iy}, tol)
    q1, q2, q3, q4 = (buckets[k] for k in (1, 2, 3, 4))
    if len(q1) != len(q3) + 1 or len(q2) != len(q4):
        raise GeneralPositionError("quadrant counts out of balance (case 2)")
    run1 = [ix] + _interleave(q1, q3) + [iy]
    run2 = _interleave(q4, q2)
    assert len(run1) + len(run2) == n
    return run1 + run2, o


def _odd_cycle_order(pts: np.ndarray) -> tuple[list[int], np.ndarray]:
    """Odd n: rotate the orthogonal median-line pair until the two median
    points separate (for near-degenerate clouds the along-cloud median owns
    almost every direction, so the direction pair is swept over the sample
    angles, where the projection orders reshuffle)."""
    try:
        return _odd_cycle_try(pts, 0.0)
    except GeneralPositionError:
        pass
    last: GeneralPositionError | None = None
    for alpha in _sample_angles(pts):
        try:
            return _odd_cycle_try(pts, float(alpha))
        except GeneralPositionError as exc:
            last = exc
    raise last if last is not None else GeneralPositionError("no usable direction")


def build_tverberg_cycle(points, seed: int = 0) -> tuple[list[int], Witness]:
    """Hamiltonian cycle whose edge balls all contain the returned witness.

    The construction runs on rotated (and, after a failed attempt, slightly
    perturbed) coordinates; the cycle is reported on the original indices.
    The returned witness is the power center of the constructed edges on the
    original coordinates (warm-started at the bisecting-line crossing), so
    its value round-trips exactly through an independent verification; if it
    fails the closed-mode band the perturbation is re-drawn.
    """
    ps = as_pointset(points)
    pts = ps.points
    _require_planar(pts)
    if ps.n < 3:
        raise ValueError("a Tverberg cycle needs at least 3 points")
    if ps.has_duplicates():
        raise ValueError("points must be distinct")

    rng = np.random.default_rng(seed)
    for attempt in range(RETRY_BUDGET):
        rotated, R = _perturbed(pts, rng, with_noise=attempt > 0)
        try:
            if ps.n % 2 == 0:
                order, o_rot = _even_cycle_order(rotated)
            else:
                order, o_rot = _odd_cycle_order(rotated)
        except GeneralPositionError:
            continue
        o = R.T @ o_rot
        wit = power_center(pts, cycle_edges(order), start=o)
        if wit.value <= EPS_EVAL:
            return order, wit
    raise InvariantViolation("perturbation retry budget exhausted")


def build_redblue_matching_2d(points, seed: int = 0) -> tuple[list[tuple[int, int]], Witness]:
    """Perfect red-blue matching whose edge balls share a point.

    Sweeps the direction alpha over midpoints between consecutive critical
    angles, finds the smallest sample where F(alpha) = r_1 - b_3 vanishes
    (the step function changes by at most 1, and its quarter-turn shifts sum
    to zero, so a zero sample exists), then matches red points of each
    quadrant to blue points of the opposite one.  The witness is the power
    center of the matching on the original coordinates, seeded by the line
    crossing o of the zero sample.
    """
    ps = as_pointset(points)
    ps.require_balanced_colors()
    pts = ps.points
    _require_planar(pts)
    if len(ps.red_indices) < 1:
        raise ValueError("need at least one red-blue pair")
    if ps.has_duplicates():
        raise ValueError("points must be distinct")
    red_set = set(ps.red_indices)

    rng = np.random.default_rng(seed)
    for attempt in range(RETRY_BUDGET):
        rotated, R = _perturbed(pts, rng, with_noise=attempt > 0)
        rps = PointSet(rotated, ps.colors)
        try:
            samples = _sample_angles(rotated)
            values = sweep_values(rps, samples)
            steps = np.abs(np.diff(np.append(values, values[0])))
            if steps.max(initial=0) > 1:
                raise GeneralPositionError("F stepped by more than 1; re-perturb")
            zeros = np.nonzero(values == 0)[0]
            if len(zeros) == 0:
                raise GeneralPositionError("no zero sample of F; re-perturb")
            alpha = float(samples[zeros[0]])
            state = sweep_state(rps, alpha)
            if state.on_ell or state.on_ell_perp:
                raise GeneralPositionError("zero sample touches a midline")
            if not (
                state.r[0] == state.b[2]
                and state.r[1] == state.b[3]
                and state.r[2] == state.b[0]
                and state.r[3] == state.b[1]
            ):
                raise GeneralPositionError("opposite-quadrant counts disagree at the zero")
            edges = _match_opposite_quadrants(pts, state.quadrant_indices, red_set)
        except GeneralPositionError:
            continue
        start = R.T @ state.o
        wit = power_center(pts, edges, start=start)
        if wit.value <= EPS_EVAL:
            return edges, wit
    raise InvariantViolation("perturbation retry budget exhausted")


def _match_opposite_quadrants(pts, quadrant_indices, red_set):
    """Pair reds of quadrant i with blues of quadrant i+2 in coordinate order."""
    def lex(ixs):
        return sorted(ixs, key=lambda i: (pts[i][0], pts[i][1]))

    edges = []
    for qi in range(4):
        qo = (qi + 2) % 4
        reds = lex([i for i in quadrant_indices[qi] if i in red_set])
        blues = lex([i for i in quadrant_indices[qo] if i not in red_set])
        if len(reds) != len(blues):
            raise GeneralPositionError("quadrant pairing counts disagree")
        edges.extend((min(r, b), max(r, b)) for r, b in zip(reds, blues))
    return sorted(edges)
