"""Point-file and report formats shared by the CLI and tests.

Text instance format: a header line ``dim n`` followed by one point per
line (d floats, optional trailing color token ``r``/``b``).  The same data
as a JSON object (keys dim, n, points, colors) is autodetected by the
``.json`` extension.  All numeric output is printed with 17 significant
digits so values round-trip exactly through the text form.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import PointSet, Witness


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps17(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(k)}: {dumps17(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(isinstance(v, (int, float, str, bool, type(None))) for v in seq)
        if flat:
            return "[" + ", ".join(dumps17(v) for v in seq) + "]"
        items = [f"{pad}  {dumps17(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    return json.dumps(obj)


def instance_to_text(ps: PointSet) -> str:
    lines = [f"{ps.dim} {ps.n}"]
    for i in range(ps.n):
        row = " ".join(fmt(v) for v in ps.points[i])
        if ps.colors is not None:
            row += f" {ps.colors[i]}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def instance_to_json(ps: PointSet) -> str:
    payload = {
        "dim": ps.dim,
        "n": ps.n,
        "points": [[float(v) for v in row] for row in ps.points],
        "colors": ps.colors,
    }
    return dumps17(payload) + "\n"


def parse_instance_text(text: str) -> PointSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty instance file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("header must be 'dim n'")
    dim, n = int(head[0]), int(head[1])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} point lines, found {len(lines) - 1}")
    pts = []
    colors: list[str] = []
    for ln in lines[1:]:
        tok = ln.split()
        if len(tok) == dim + 1:
            colors.append(tok[-1])
            tok = tok[:-1]
        elif len(tok) != dim:
            raise ValueError(f"bad point line: {ln!r}")
        pts.append([float(t) for t in tok])
    if colors and len(colors) != n:
        raise ValueError("either every point carries a color or none does")
    return PointSet(np.array(pts, dtype=float), colors or None)


def parse_instance_json(text: str) -> PointSet:
    obj = json.loads(text)
    pts = np.asarray(obj["points"], dtype=float)
    return PointSet(pts, obj.get("colors"))


def load_instance(path) -> PointSet:
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".json":
        return parse_instance_json(text)
    return parse_instance_text(text)


def save_instance(ps: PointSet, path) -> None:
    p = Path(path)
    if p.suffix.lower() == ".json":
        p.write_text(instance_to_json(ps))
    else:
        p.write_text(instance_to_text(ps))


def instance_digest(ps: PointSet) -> str:
    return hashlib.sha256(instance_to_text(ps).encode()).hexdigest()


def graph_to_payload(graph) -> dict:
    """Graph payload: {'type': 'cycle', 'order': [...]} or {'type': 'matching', 'edges': [...]}"""
    if isinstance(graph, dict):
        return graph
    first = graph[0] if len(graph) else None
    if isinstance(first, (tuple, list)):
        return {"type": "matching", "edges": [list(map(int, e)) for e in graph]}
    return {"type": "cycle", "order": [int(i) for i in graph]}


def payload_to_edges(payload: dict) -> list[tuple[int, int]]:
    if "graph" in payload:  # accept a full run report
        payload = payload["graph"]
    kind = payload.get("type")
    if kind == "cycle":
        order = [int(i) for i in payload["order"]]
        if len(order) < 3:
            raise ValueError("cycle order too short")
        return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]
    if kind == "matching":
        return [tuple(int(v) for v in e) for e in payload["edges"]]
    raise ValueError("graph payload must have type 'cycle' or 'matching'")


def load_graph(path) -> dict:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed graph file: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError("graph file must hold a JSON object")
    return payload


@dataclass
class RunReport:
    """Structured record of one CLI run; deterministic apart from wall time."""

    command: str
    instance_digest: str
    graph: dict
    witness_x: list[float]
    witness_value: float
    mode: str
    iterations: int | None = None
    wall_time_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_text(self) -> str:
        payload = {
            "command": self.command,
            "instance_digest": self.instance_digest,
            "graph": self.graph,
            "witness": {"x": self.witness_x, "value": self.witness_value},
            "mode": self.mode,
        }
        if self.iterations is not None:
            payload["iterations"] = self.iterations
        payload.update(self.extra)
        payload["wall_time_ms"] = self.wall_time_ms
        return dumps17(payload) + "\n"


def report_from_witness(command, ps, graph, witness: Witness, mode, iterations=None, wall_ms=0.0, **extra):
    return RunReport(
        command=command,
        instance_digest=instance_digest(ps),
        graph=graph_to_payload(graph),
        witness_x=[float(v) for v in witness.x],
        witness_value=float(witness.value),
        mode=mode,
        iterations=iterations,
        wall_time_ms=wall_ms,
        extra=extra,
    )
