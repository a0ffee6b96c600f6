"""Brute-force ground truth and seeded instance generation.

Everything here is an independent check on the constructive modules: small
instances are solved by exhaustive enumeration (perfect matchings, red-blue
assignments, Hamiltonian tours), and ball intersection is decided by the
direct center-distance test.  Instances are generated with numpy's PCG64
generator seeded explicitly, so identical specs reproduce identical points
on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

import numpy as np

from .geometry import PointSet, as_pointset, coords, power_center, Ball

MAX_MATCHING_POINTS = 12
MAX_BRUTE_POINTS = 8


@dataclass(frozen=True)
class InstanceSpec:
    """Seeded description of a random instance; equal specs generate equal points."""

    dim: int
    n: int
    colors: str = "none"       # "none" | "rb"
    seed: int = 0
    dist: str = "cube"         # "cube" | "sphere" | "collinear"
    noise: float = 0.0         # only used by the collinear distribution


def generate(spec: InstanceSpec) -> PointSet:
    if spec.n < 1:
        raise ValueError("n must be >= 1")
    if spec.dim < 1:
        raise ValueError("dim must be >= 1")
    if spec.colors not in ("none", "rb"):
        raise ValueError("colors must be 'none' or 'rb'")
    if spec.colors == "rb" and spec.n % 2 != 0:
        raise ValueError("red-blue instances need an even point count")
    rng = np.random.default_rng(spec.seed)
    if spec.dist == "cube":
        pts = rng.random((spec.n, spec.dim))
    elif spec.dist == "sphere":
        g = rng.standard_normal((spec.n, spec.dim))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        pts = g / norms
    elif spec.dist == "collinear":
        direction = rng.standard_normal(spec.dim)
        direction /= np.linalg.norm(direction)
        t = rng.random(spec.n)
        pts = np.outer(t, direction)
        if spec.noise:
            pts = pts + rng.uniform(-spec.noise, spec.noise, pts.shape)
    else:
        raise ValueError(f"unknown distribution {spec.dist!r}")
    colors = None
    if spec.colors == "rb":
        colors = ["r" if i % 2 == 0 else "b" for i in range(spec.n)]
    return PointSet(pts, colors)


def enumerate_perfect_matchings(n: int) -> Iterator[list[tuple[int, int]]]:
    """All (n-1)!! perfect matchings on indices 0..n-1, in deterministic order.

    Always pairs the lowest free index first, with partners in ascending
    order, so matchings stream out in a fixed lexicographic sequence.
    """
    if n % 2 != 0:
        raise ValueError("perfect matchings need an even n")
    if n > MAX_MATCHING_POINTS:
        raise ValueError(f"n={n} exceeds the enumeration cap {MAX_MATCHING_POINTS}")

    def rec(free: list[int]):
        if not free:
            yield []
            return
        a = free[0]
        for j in range(1, len(free)):
            b = free[j]
            rest = free[1:j] + free[j + 1:]
            for tail in rec(rest):
                yield [(a, b)] + tail

    yield from rec(list(range(n)))


def enumerate_cycles(n: int) -> Iterator[list[int]]:
    """All (n-1)!/2 undirected Hamiltonian tours, canonical orientation."""
    if n < 3:
        raise ValueError("cycles need n >= 3")
    if n > MAX_BRUTE_POINTS:
        raise ValueError(f"n={n} exceeds the enumeration cap {MAX_BRUTE_POINTS}")
    for rest in permutations(range(1, n)):
        if rest[0] < rest[-1]:  # quotient out reversal
            yield [0] + list(rest)


def _q_sum(pts: np.ndarray, edges) -> float:
    terms = [float(np.sum((pts[i] - pts[j]) ** 2)) for i, j in edges]
    return math.fsum(terms)


def brute_force_best(points, objective: str, structure: str):
    """Exhaustive optimum over all graphs of the requested structure.

    objective 'minimax-H' minimizes the power-center value (per-candidate
    convex solve); 'max-Q' maximizes the sum of squared edge lengths.  Ties
    keep the earliest candidate in enumeration order.  Returns
    (best_object, best_value) where the object is an edge list (or a vertex
    order for cycles).
    """
    ps = as_pointset(points)
    pts = ps.points
    n = ps.n
    if objective not in ("minimax-H", "max-Q"):
        raise ValueError("objective must be 'minimax-H' or 'max-Q'")

    if structure == "matching":
        if n > MAX_BRUTE_POINTS:
            raise ValueError(f"n={n} exceeds the brute-force cap {MAX_BRUTE_POINTS}")
        candidates = ((m, m) for m in enumerate_perfect_matchings(n))
    elif structure == "rb-matching":
        ps.require_balanced_colors()
        red = ps.red_indices
        blue = ps.blue_indices
        if len(red) > 8:
            raise ValueError("rb brute force capped at 8 pairs")
        candidates = (
            ([(r, b) for r, b in zip(red, perm)],) * 2
            for perm in permutations(blue)
        )
    elif structure == "cycle":
        if n > MAX_BRUTE_POINTS:
            raise ValueError(f"n={n} exceeds the brute-force cap {MAX_BRUTE_POINTS}")
        candidates = (
            (order, [(order[i], order[(i + 1) % n]) for i in range(n)])
            for order in enumerate_cycles(n)
        )
    else:
        raise ValueError("structure must be 'matching', 'rb-matching' or 'cycle'")

    best_obj = None
    best_val = None
    for obj, edges in candidates:
        if objective == "minimax-H":
            val = power_center(pts, edges).value
            better = best_val is None or val < best_val
        else:
            val = _q_sum(pts, edges)
            better = best_val is None or val > best_val
        if better:
            best_obj, best_val = obj, val
    return best_obj, best_val


def two_ball_intersect(b1: Ball, b2: Ball, mode: str = "closed") -> bool:
    """Analytic two-ball test: centers within the radius sum."""
    c1 = np.asarray(b1.center, dtype=float)
    c2 = np.asarray(b2.center, dtype=float)
    if c1.shape != c2.shape:
        raise ValueError("ball dimensions differ")
    gap = float(np.linalg.norm(c1 - c2))
    if mode == "closed":
        return gap <= b1.radius + b2.radius
    if mode == "open":
        return b1.radius > 0 and b2.radius > 0 and gap < b1.radius + b2.radius
    raise ValueError("mode must be 'closed' or 'open'")
