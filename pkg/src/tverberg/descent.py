"""Open Tverberg matchings in R^d by infinite descent.

Starting from any perfect matching, the minimax witness of the current
matching either certifies strictly intersecting open balls (done) or sits
at level m >= 0.  In the latter case the tight-edge midpoints admit a
convex combination hitting the witness, so the translated endpoints of that
submatching form a dependent set.  The *obtuse graph* on a dependent set
(edges exactly at negative dot products) has at most one isolated vertex
(only the origin can be isolated) and orthogonal cross-component pairs;
joining its components through a star at one vertex makes every matching
edge non-cutting, which guarantees an alternating cycle.  Swapping the
cycle's matching edges for its non-matching edges strictly decreases the
lexicographic measure (witness level, number of tight pairs), so the walk
terminates at a strictly negative witness.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from .geometry import (
    EPS_TIGHT,
    InvariantViolation,
    Witness,
    as_pointset,
    check_perfect_matching,
    coords,
    power_center,
    support_coefficients,
)

EPS_NEG = 1e-9    # threshold below which a dot product counts as negative
EPS_PROG = 1e-10  # minimum decrease recognized as value progress


@dataclass
class ObtuseGraph:
    """Graph on a dependent translated point set: edge iff <u, w> < -EPS_NEG."""

    vertices: np.ndarray
    edges: list[tuple[int, int]]
    components: list[list[int]]

    @property
    def isolated(self) -> list[int]:
        touched = {i for e in self.edges for i in e}
        return [i for i in range(len(self.vertices)) if i not in touched]


@dataclass
class DescentState:
    matching: list[tuple[int, int]]
    witness: Witness
    tight_count: int


@dataclass
class DescentRun:
    """Result of the full descent; unpacks as (matching, witness)."""

    matching: list[tuple[int, int]]
    witness: Witness
    iterations: int
    boundary: bool

    def __iter__(self):
        return iter((self.matching, self.witness))


def build_obtuse_graph(translated_points) -> ObtuseGraph:
    """Adjacency of the negative-dot-product graph plus its components.

    The caller is responsible for the input being a dependent set (here:
    endpoints of the support submatching translated by the witness).
    """
    V = np.atleast_2d(np.asarray(translated_points, dtype=float))
    m = V.shape[0]
    dots = V @ V.T
    edges = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if dots[i, j] < -EPS_NEG
    ]
    adj = {i: [] for i in range(m)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * m
    components = []
    for i in range(m):
        if seen[i]:
            continue
        comp = []
        stack = [i]
        seen[i] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        components.append(sorted(comp))
    return ObtuseGraph(vertices=V, edges=edges, components=components)


def star_edges(graph: ObtuseGraph, m_prime_edges) -> list[tuple[int, int]]:
    """Orthogonal star joining the hub's component to every other component.

    The hub v1 is the vertex at the origin if one exists (only it can be
    isolated), otherwise the lowest index.  Each other component contributes
    its lowest-index vertex that is not v1's matching partner; such a vertex
    exists because every non-hub component has at least two vertices.  All
    returned pairs are orthogonal within EPS_NEG by the cross-component
    property of obtuse graphs.
    """
    matched = {tuple(sorted(e)) for e in m_prime_edges}
    V = graph.vertices
    norms = np.linalg.norm(V, axis=1)
    at_origin = np.nonzero(norms <= EPS_NEG)[0]
    v1 = int(at_origin[0]) if len(at_origin) else 0
    home = next(c for c in graph.components if v1 in c)
    star = []
    for comp in graph.components:
        if comp is home:
            continue
        pick = None
        for w in comp:
            if tuple(sorted((v1, w))) not in matched:
                pick = w
                break
        if pick is None:
            raise InvariantViolation("component offers no non-matching star partner")
        dot = float(V[v1] @ V[pick])
        if abs(dot) > EPS_NEG:
            raise InvariantViolation(
                f"star edge not orthogonal: <v1, v{pick}> = {dot:.3e}"
            )
        star.append((min(v1, pick), max(v1, pick)))
    return star


def alternating_cycle(blue, red) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Simple cycle alternating between matching (blue) and non-matching (red) edges.

    Searches the contracted multigraph (one super-node per blue edge) by
    lowest-index-first depth-first search over (super-node, entry endpoint)
    states; a cycle closes only when the returning red edge re-enters the
    start node at its original entry endpoint, which is exactly the
    condition for the expansion to alternate.  Returns the red edges R and
    blue edges B of the first cycle found, with |R| = |B| >= 2.  Raises
    InvariantViolation when no alternating cycle exists.
    """
    blue = [tuple(sorted(e)) for e in blue]
    red = sorted(tuple(sorted(e)) for e in red)
    blue_set = set(blue)
    if set(red) & blue_set:
        raise ValueError("red and blue edge sets must be disjoint")
    partner: dict[int, int] = {}
    node_of: dict[int, int] = {}
    for k, (a, b) in enumerate(blue):
        if a in partner or b in partner:
            raise ValueError("blue edges must form a matching")
        partner[a] = b
        partner[b] = a
        node_of[a] = node_of[b] = k
    for u, w in red:
        if u not in partner or w not in partner:
            raise ValueError("red edge endpoint not covered by the blue matching")
        if node_of[u] == node_of[w]:
            raise ValueError("red edge inside a blue pair")

    adj: dict[int, list[int]] = {v: [] for v in partner}
    for u, w in red:
        adj[u].append(w)
        adj[w].append(u)
    for v in adj:
        adj[v].sort()

    n_nodes = len(blue)
    for start in range(n_nodes):
        for entry0 in blue[start]:
            # Frame: (node, entry vertex, neighbor iterator, red edge used to enter).
            frames = [(start, entry0, iter(adj[partner[entry0]]), None)]
            used = {start}
            while frames:
                node, entry, it, _ = frames[-1]
                exit_v = partner[entry]
                advanced = False
                for w in it:
                    j = node_of[w]
                    if j == start and w == entry0 and len(frames) >= 2:
                        reds = [f[3] for f in frames[1:]] + [
                            (min(exit_v, w), max(exit_v, w))
                        ]
                        blues = [blue[f[0]] for f in frames]
                        return reds, blues
                    if j not in used:
                        used.add(j)
                        e = (min(exit_v, w), max(exit_v, w))
                        frames.append((j, w, iter(adj[partner[w]]), e))
                        advanced = True
                        break
                if not advanced:
                    used.discard(node)
                    frames.pop()
    raise InvariantViolation(
        "no alternating cycle found; contracted graph dump: "
        + json.dumps({"blue": blue, "red": red})
    )


def _tight_count(witness: Witness) -> int:
    return len(witness.tight)


def make_descent_state(points, matching) -> DescentState:
    matching = sorted(tuple(sorted(e)) for e in matching)
    check_perfect_matching(points, matching)
    wit = power_center(points, matching)
    return DescentState(matching=matching, witness=wit, tight_count=_tight_count(wit))


def descent_step(points, state: DescentState, trace: IO | None = None) -> DescentState:
    """One exchange along an alternating cycle, with verified progress.

    Either the witness level drops by more than EPS_PROG, or it stays put
    (within EPS_PROG) and the number of tight pairs strictly decreases;
    anything else raises InvariantViolation.
    """
    pts = coords(points)
    M = state.matching
    wit = state.witness

    tight_edges = [M[i] for i in wit.tight]
    mids = np.array([(pts[i] + pts[j]) / 2.0 for i, j in tight_edges])
    support = support_coefficients(mids, wit.x)
    m3 = [tight_edges[i] for i, _ in support]
    if len(m3) < 2:
        raise InvariantViolation("support submatching has a single pair")

    local_of = {}
    verts = []
    for a, b in m3:
        local_of[a] = len(verts)
        verts.append(a)
        local_of[b] = len(verts)
        verts.append(b)
    translated = pts[verts] - wit.x
    graph = build_obtuse_graph(translated)
    blue_local = [(2 * k, 2 * k + 1) for k in range(len(m3))]
    star = star_edges(graph, blue_local)
    blue_set = set(blue_local)
    red_local = sorted((set(graph.edges) | set(star)) - blue_set)

    R_loc, B_loc = alternating_cycle(blue_local, red_local)
    to_global = lambda e: (min(verts[e[0]], verts[e[1]]), max(verts[e[0]], verts[e[1]]))
    R = [to_global(e) for e in R_loc]
    B = [to_global(e) for e in B_loc]

    new_matching = sorted((set(M) - set(B)) | set(R))
    check_perfect_matching(points, new_matching)
    new_wit = power_center(pts, new_matching)
    new_tc = _tight_count(new_wit)

    drop = wit.value - new_wit.value
    if not (drop > EPS_PROG or (abs(drop) <= EPS_PROG and new_tc < state.tight_count)):
        raise InvariantViolation(
            f"descent made no progress: value {wit.value:.3e} -> {new_wit.value:.3e}, "
            f"tight {state.tight_count} -> {new_tc}"
        )
    if trace is not None:
        trace.write(
            json.dumps(
                {
                    "value": new_wit.value,
                    "tight_count": new_tc,
                    "matching": [list(e) for e in new_matching],
                    "removed": [list(e) for e in B],
                    "added": [list(e) for e in R],
                }
            )
            + "\n"
        )
    return DescentState(matching=new_matching, witness=new_wit, tight_count=new_tc)


def initial_matching(points) -> list[tuple[int, int]]:
    """Greedy nearest-neighbor perfect matching, lowest index first."""
    pts = coords(points)
    n = pts.shape[0]
    free = list(range(n))
    edges = []
    while free:
        a = free.pop(0)
        d = np.linalg.norm(pts[free] - pts[a], axis=1)
        k = int(np.argmin(d))  # argmin takes the lowest index on ties
        b = free.pop(k)
        edges.append((a, b))
    return sorted(edges)


def open_tverberg_matching(
    points, seed: int = 0, tol: float = 1e-12, trace: IO | None = None
) -> DescentRun:
    """Perfect matching whose OPEN edge balls all share a point.

    Coordinates are normalized to the unit bounding box for the descent
    (dot-product signs are similarity-invariant) and the final witness is
    re-solved on the original coordinates.  The iteration cap n^2 + 64 is a
    safety net only: each step strictly decreases a lexicographic measure
    over finitely many matchings.  For degenerate inputs whose optimum sits
    inside [-tol, tol] the run stops there and flags the boundary.
    """
    ps = as_pointset(points)
    pts = ps.points
    n = ps.n
    if n < 2 or n % 2 != 0:
        raise ValueError("need an even number of points (>= 2)")
    if ps.has_duplicates():
        raise ValueError("points must be distinct")
    del seed  # deterministic construction; kept for interface stability

    lo = pts.min(axis=0)
    span = float((pts.max(axis=0) - lo).max())
    if span <= 0:
        raise ValueError("points must be distinct")
    norm = (pts - lo) / span
    tol_norm = tol / span**2

    state = make_descent_state(norm, initial_matching(norm))
    cap = n * n + 64
    iterations = 0
    boundary = False
    while state.witness.value >= -tol_norm:
        if iterations >= cap:
            raise InvariantViolation("descent iteration cap exceeded")
        try:
            state = descent_step(norm, state, trace=trace)
        except InvariantViolation:
            if abs(state.witness.value) <= tol_norm:
                boundary = True
                break
            raise
        iterations += 1

    wit = power_center(pts, state.matching)
    if not boundary and wit.value >= -tol:
        boundary = abs(wit.value) <= tol
        if not boundary:
            raise InvariantViolation("final witness failed strict re-verification")
    return DescentRun(
        matching=state.matching, witness=wit, iterations=iterations, boundary=boundary
    )
