"""Red-blue Tverberg matchings in R^d via exact assignment.

Among all perfect red-blue matchings, one maximizing the total squared edge
length Q(M) = sum ||r - b||^2 is automatically a Tverberg matching: if its
minimax witness were positive, two tight pairs could be cross-swapped to
increase Q, contradicting maximality.  The solver therefore computes an
exact maximum-weight assignment (Hungarian method on negated costs) with
ties broken toward the lexicographically smallest permutation, and keeps
the proof's 2-swap exchange only as a numerical backstop that is never
expected to run.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from .geometry import (
    EPS_EVAL,
    InvariantViolation,
    Witness,
    as_pointset,
    power_center,
)


def cost_matrix(red, blue) -> np.ndarray:
    """Squared Euclidean distances: entry (i, j) = ||red_i - blue_j||^2."""
    R = np.atleast_2d(np.asarray(red, dtype=float))
    B = np.atleast_2d(np.asarray(blue, dtype=float))
    if R.shape[0] != B.shape[0]:
        raise ValueError("red and blue counts differ")
    if R.shape[1] != B.shape[1]:
        raise ValueError("red and blue dimensions differ")
    diff = R[:, None, :] - B[None, :, :]
    return np.sum(diff**2, axis=2)


def assignment_value(costs: np.ndarray, perm) -> float:
    """Exactly rounded total cost of an assignment (order-independent)."""
    return math.fsum(float(costs[i, j]) for i, j in enumerate(perm))


def max_weight_assignment(costs) -> list[int]:
    """Exact maximizer of sum costs[i, perm[i]], lexicographically smallest.

    The Hungarian solve fixes the optimal value; a sequential pass then
    pins each row to the smallest column that still completes to that value
    (totals compared with fsum, so exact real ties stay ties).
    """
    C = np.asarray(costs, dtype=float)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError("cost matrix must be square")
    if not np.all(np.isfinite(C)):
        raise ValueError("cost matrix must be finite")
    n = C.shape[0]
    if n == 0:
        return []
    rows, cols = linear_sum_assignment(C, maximize=True)
    best = assignment_value(C, cols[np.argsort(rows)])

    perm: list[int] = []
    avail = list(range(n))
    for i in range(n):
        fixed_cost = [C[r, perm[r]] for r in range(i)]
        # Cheap upper bound: per-row maxima of the remaining block.
        chosen = None
        for j in avail:
            rest = [c for c in avail if c != j]
            if rest:
                tail = C[np.ix_(range(i + 1, n), rest)]
                bound = math.fsum(fixed_cost) + C[i, j] + float(tail.max(axis=1).sum())
                # Slack keeps rounding in the bound from pruning a true tie.
                if bound < best - 1e-9 * (1.0 + abs(best)):
                    continue
                rr, cc = linear_sum_assignment(C[np.ix_(range(i + 1, n), rest)], maximize=True)
                total = math.fsum(
                    fixed_cost + [C[i, j]] + [C[i + 1 + r, rest[c]] for r, c in zip(rr, cc)]
                )
            else:
                total = math.fsum(fixed_cost + [C[i, j]])
            if total == best:
                chosen = j
                break
        if chosen is None:
            raise InvariantViolation("lexicographic refinement lost the optimum")
        perm.append(chosen)
        avail.remove(chosen)
    return perm


def redblue_tverberg_matching(points) -> tuple[list[tuple[int, int]], Witness]:
    """Q-maximal red-blue perfect matching and its minimax witness (<= 0).

    The witness value is asserted against EPS_EVAL; if numerical noise ever
    pushed it above, the proof's exchange step (swap two tight pairs whose
    crossed dot products beat their own) strictly increases Q and is
    retried, at most n^2 times.
    """
    ps = as_pointset(points)
    ps.require_balanced_colors()
    red_idx = ps.red_indices
    blue_idx = ps.blue_indices
    n = len(red_idx)
    if n < 1:
        raise ValueError("need at least one red-blue pair")
    pts = ps.points
    C = cost_matrix(pts[red_idx], pts[blue_idx])
    perm = max_weight_assignment(C)

    for _ in range(n * n + 1):
        edges = sorted(
            (min(red_idx[i], blue_idx[perm[i]]), max(red_idx[i], blue_idx[perm[i]]))
            for i in range(n)
        )
        wit = power_center(pts, edges)
        if wit.value <= EPS_EVAL:
            return edges, wit
        swapped = _exchange_improve(pts, red_idx, blue_idx, perm, edges, wit)
        if not swapped:
            raise InvariantViolation(
                "positive witness but no improving exchange exists"
            )
    raise InvariantViolation("exchange backstop exceeded its iteration budget")


def _exchange_improve(pts, red_idx, blue_idx, perm, edges, wit: Witness) -> bool:
    """Apply the first tight-pair cross swap that strictly increases Q."""
    x = wit.x
    edge_to_row = {}
    for i in range(len(perm)):
        e = (
            min(red_idx[i], blue_idx[perm[i]]),
            max(red_idx[i], blue_idx[perm[i]]),
        )
        edge_to_row[e] = i
    tight_rows = sorted(edge_to_row[edges[k]] for k in wit.tight)
    for a in range(len(tight_rows)):
        for b in range(a + 1, len(tight_rows)):
            i, j = tight_rows[a], tight_rows[b]
            ri = pts[red_idx[i]] - x
            rj = pts[red_idx[j]] - x
            bi = pts[blue_idx[perm[i]]] - x
            bj = pts[blue_idx[perm[j]]] - x
            if float(ri @ bj + rj @ bi) < float(ri @ bi + rj @ bj):
                perm[i], perm[j] = perm[j], perm[i]
                return True
    return False


def two_swap_certificate(points, matching, tol: float = 1e-9) -> bool:
    """Check 2-swap optimality of a red-blue matching: no pair swap increases Q.

    Implied by global Q-optimality; O(n^2) over all pairs with a relative
    tolerance band.
    """
    ps = as_pointset(points)
    pts = ps.points
    red = set(ps.red_indices)
    pairs = []
    for i, j in matching:
        r, b = (i, j) if i in red else (j, i)
        pairs.append((r, b))
    q = math.fsum(float(np.sum((pts[r] - pts[b]) ** 2)) for r, b in pairs)
    band = tol * (1.0 + abs(q))
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            r1, b1 = pairs[a]
            r2, b2 = pairs[b]
            delta = (
                float(np.sum((pts[r1] - pts[b2]) ** 2))
                + float(np.sum((pts[r2] - pts[b1]) ** 2))
                - float(np.sum((pts[r1] - pts[b1]) ** 2))
                - float(np.sum((pts[r2] - pts[b2]) ** 2))
            )
            if delta > band:
                return False
    return True
