"""Minimal SVG rendering of 2-D instances: diameter disks under edges under
points under the witness cross, in a fixed 800x800 viewport with 5% margin."""

from __future__ import annotations

import numpy as np

from .geometry import PointSet, Witness, as_pointset

SIZE = 800
MARGIN = 0.05


def _transform(pts: np.ndarray, witness_x=None):
    all_pts = pts if witness_x is None else np.vstack([pts, witness_x])
    lo = all_pts.min(axis=0)
    hi = all_pts.max(axis=0)
    span = float(max((hi - lo).max(), 1e-12))
    scale = SIZE * (1 - 2 * MARGIN) / span
    pad = SIZE * MARGIN
    center_off = (SIZE * (1 - 2 * MARGIN) - scale * (hi - lo)) / 2.0

    def to_screen(p):
        x = pad + center_off[0] + scale * (p[0] - lo[0])
        y = SIZE - (pad + center_off[1] + scale * (p[1] - lo[1]))  # flip y
        return x, y

    return to_screen, scale


def render_svg(points, edges, witness: Witness | None = None) -> str:
    ps = as_pointset(points) if not isinstance(points, PointSet) else points
    if ps.dim != 2:
        raise ValueError("SVG rendering requires 2-D points")
    pts = ps.points
    wx = None if witness is None else np.asarray(witness.x, dtype=float)
    to_screen, scale = _transform(pts, wx)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for i, j in edges:
        mid = (pts[i] + pts[j]) / 2.0
        r = float(np.linalg.norm(pts[i] - pts[j]) / 2.0)
        cx, cy = to_screen(mid)
        parts.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r * scale:.2f}" '
            f'fill="#4a7fb5" fill-opacity="0.3"/>'
        )
    for i, j in edges:
        x1, y1 = to_screen(pts[i])
        x2, y2 = to_screen(pts[j])
        parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="#333333" stroke-width="1.5"/>'
        )
    for i in range(ps.n):
        x, y = to_screen(pts[i])
        color = "#222222"
        if ps.colors is not None:
            color = "#cc2222" if ps.colors[i] == "r" else "#2244cc"
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{color}"/>')
    if wx is not None:
        x, y = to_screen(wx)
        arm = 8
        parts.append(
            f'<line x1="{x - arm:.2f}" y1="{y:.2f}" x2="{x + arm:.2f}" y2="{y:.2f}" '
            f'stroke="#118811" stroke-width="2.5"/>'
        )
        parts.append(
            f'<line x1="{x:.2f}" y1="{y - arm:.2f}" x2="{x:.2f}" y2="{y + arm:.2f}" '
            f'stroke="#118811" stroke-width="2.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
