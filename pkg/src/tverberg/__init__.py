"""Tverberg graphs: cycles and matchings whose edge-diameter balls intersect.

Constructions:
  - :func:`build_tverberg_cycle` — Hamiltonian cycle for any planar point set
    (closed balls share a point).
  - :func:`build_redblue_matching_2d` — planar red-blue perfect matching via
    a rotating halving-line sweep.
  - :func:`open_tverberg_matching` — perfect matching in R^d with strictly
    intersecting open balls, by descent over obtuse-graph exchanges.
  - :func:`redblue_tverberg_matching` — red-blue matching in R^d by exact
    maximization of the total squared edge length.

Every construction returns a witness point together with its minimax value,
and :func:`verify_tverberg` re-certifies any graph independently.
"""

from .geometry import (
    EPS_EVAL,
    EPS_SUPPORT,
    EPS_TIGHT,
    Ball,
    GeneralPositionError,
    InvariantViolation,
    PointSet,
    TverbergError,
    VerifyResult,
    Witness,
    as_pointset,
    cycle_edges,
    edge_ball,
    h_value,
    power_center,
    support_coefficients,
    verify_tverberg,
)
from .planar import (
    DirectedLine,
    SweepState,
    bisecting_check,
    build_redblue_matching_2d,
    build_tverberg_cycle,
    classify_quadrants,
    critical_angles,
    orthogonal_clear_bisecting_line,
    pair_bisecting_line,
    plank_midline,
    sweep_F,
    sweep_state,
    sweep_values,
)
from .descent import (
    DescentRun,
    DescentState,
    ObtuseGraph,
    alternating_cycle,
    build_obtuse_graph,
    descent_step,
    initial_matching,
    make_descent_state,
    open_tverberg_matching,
    star_edges,
)
from .assignment import (
    cost_matrix,
    max_weight_assignment,
    redblue_tverberg_matching,
    two_swap_certificate,
)
from .oracle import (
    InstanceSpec,
    brute_force_best,
    enumerate_perfect_matchings,
    generate,
    two_ball_intersect,
)

__version__ = "0.1.0"
