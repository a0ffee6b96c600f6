"""Open Tverberg matching in R^d by infinite descent, with a step trace.

Starting from a greedy matching, each step finds the tight edges of the
minimax witness, builds the obtuse graph on their translated endpoints,
joins its components with an orthogonal star, and swaps along an
alternating cycle.  The pair (witness value, tight-edge count) decreases
lexicographically every step until the open balls strictly intersect.
"""

import io
import json

import numpy as np

from tverberg import h_value, open_tverberg_matching

rng = np.random.default_rng(99)
pts = rng.random((16, 4))  # 8 pairs in R^4

trace = io.StringIO()
run = open_tverberg_matching(pts, seed=1, trace=trace)

print("start: greedy nearest-neighbor matching")
for k, line in enumerate(trace.getvalue().splitlines(), start=1):
    rec = json.loads(line)
    print(f"step {k}: value={rec['value']:+.6f}  tight={rec['tight_count']}  "
          f"swapped out {rec['removed']} for {rec['added']}")

print("\nfinal matching:", run.matching)
print("witness value (strictly negative = open balls share the point):",
      run.witness.value)
print("re-evaluated on the raw inputs:", h_value(pts, run.matching, run.witness.x))

# the classic warm-up: four collinear points
run2 = open_tverberg_matching([[0, 0], [1, 0], [2, 0], [3, 0]], seed=0)
print("\ncollinear 0,1,2,3 ->", run2.matching,
      "value", run2.witness.value, "in", run2.iterations, "step(s)")
