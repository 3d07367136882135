"""Scatter of (n, d) for every gap d in the delta set of n, as SVG plus a CSV sidecar."""
from __future__ import annotations

from pathlib import Path

from .core import SemigroupPresentation
from .invariants import delta_table


def delta_points(sgp: SemigroupPresentation, horizon: int) -> list[tuple[int, int]]:
    deltas = delta_table(sgp, horizon)
    return [(n, d) for n, ds in enumerate(deltas) if ds for d in ds]


def render_svg(points: list[tuple[int, int]], horizon: int, title: str = "") -> str:
    width, height, pad = 800, 300, 40
    top = max((d for _, d in points), default=1)
    sx = (width - 2 * pad) / max(horizon, 1)
    sy = (height - 2 * pad) / max(top, 1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{pad}" y="{pad // 2}" font-size="12">{title}</text>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
    ]
    for d in range(1, top + 1):
        y = height - pad - d * sy
        out.append(f'<text x="{pad - 15}" y="{y + 4:.1f}" font-size="10">{d}</text>')
    for n, d in points:
        out.append(f'<circle cx="{pad + n * sx:.2f}" cy="{height - pad - d * sy:.2f}" r="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_delta(sgp: SemigroupPresentation, horizon: int, out_path: str | Path) -> list[tuple[int, int]]:
    """Write ``out_path`` (SVG) and ``out_path`` with a ``.csv`` suffix; return the points."""
    sgp.numbers
    points = delta_points(sgp, horizon)
    out_path = Path(out_path)
    out_path.write_text(render_svg(points, horizon, f"delta sets of {sgp}"), encoding="utf-8")
    csv_lines = ["n,d"] + [f"{n},{d}" for n, d in points]
    out_path.with_suffix(".csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8", newline="\n")
    return points
