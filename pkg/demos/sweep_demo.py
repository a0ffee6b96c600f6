"""Rotating-sweep red-blue matching in the plane.

For each direction alpha, two orthogonal midlines of the bisecting-line
strips cross at a point o_alpha and cut the plane into four quadrants.  The
step function F(alpha) = (# reds in Q1) - (# blues in Q3) moves by at most
one between consecutive sample directions and its quarter-turn shifts sum
to zero, so it must vanish somewhere; at a zero, reds of each quadrant pair
off with blues of the opposite quadrant and every edge's disk contains
o_alpha.  The alternately colored square is the tight case: the disks of
any red-blue matching meet in exactly one point.
"""

import numpy as np

from tverberg import PointSet, build_redblue_matching_2d, sweep_F, verify_tverberg

rng = np.random.default_rng(5)
n = 12
pts = rng.random((2 * n, 2))
ps = PointSet(pts, ["r", "b"] * n)

profile = sweep_F(ps)
values = [f for _, f in profile]
print(f"sweep over {len(profile)} sample directions")
print("F range:", min(values), "..", max(values))
print("max |step| between consecutive samples:",
      int(np.max(np.abs(np.diff(values + values[:1])))))

edges, witness = build_redblue_matching_2d(ps, seed=5)
print("matching:", edges)
print("witness value:", witness.value)

# the tight case: alternately colored unit square
square = PointSet([[0, 0], [1, 0], [1, 1], [0, 1]], ["r", "b", "r", "b"])
sq_edges, sq_wit = build_redblue_matching_2d(square, seed=0)
print("\nsquare matching:", sq_edges)
print("square witness value (a single touching point):", sq_wit.value)
print("open-mode verification fails as it must:",
      not verify_tverberg(square, sq_edges, mode="open").ok)
