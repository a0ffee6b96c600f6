"""Shared independent oracles for the test suite.

These deliberately avoid the package's dual solver: the minimax oracle is a
dense grid scan followed by derivative-free simplex refinement, so any
agreement with power_center is a genuine cross-check.
"""

import numpy as np
from scipy.optimize import minimize


def h_at(pts, edges, x):
    pts = np.asarray(pts, dtype=float)
    x = np.asarray(x, dtype=float)
    return max(float((pts[a] - x) @ (pts[b] - x)) for a, b in edges)


def grid_refine_min_h(pts, edges, grid=101):
    """Brute-force minimizer of the edge-ball minimax for 2-D instances."""
    pts = np.asarray(pts, dtype=float)
    span = pts.max(axis=0) - pts.min(axis=0)
    lo = pts.min(axis=0) - 0.5 * span - 0.1
    hi = pts.max(axis=0) + 0.5 * span + 0.1
    gx = np.linspace(lo[0], hi[0], grid)
    gy = np.linspace(lo[1], hi[1], grid)
    GX, GY = np.meshgrid(gx, gy)
    G = np.stack([GX.ravel(), GY.ravel()], axis=1)
    vals = np.full(len(G), -np.inf)
    for a, b in edges:
        vals = np.maximum(vals, np.einsum("ij,ij->i", pts[a] - G, pts[b] - G))
    x0 = G[int(np.argmin(vals))]
    best_val, best_x = np.inf, x0
    # Restarts rebuild the simplex: plain Nelder-Mead can stall on the kinks
    # of a minimax objective when its simplex collapses along one.
    for _ in range(4):
        res = minimize(
            lambda x: h_at(pts, edges, x),
            best_x,
            method="Nelder-Mead",
            options=dict(xatol=1e-12, fatol=1e-14, maxiter=20000, maxfev=20000),
        )
        if res.fun >= best_val - 1e-15:
            best_val, best_x = min(best_val, float(res.fun)), np.asarray(res.x)
            break
        best_val, best_x = float(res.fun), np.asarray(res.x)
    return best_val, best_x
