"""SVG drawings of admissible polygons.

Conventions follow the usual figures: dashed circumcircle, thin unit sides,
bold t sides, an arrowhead on every side giving its winding direction.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .polygons import AdmissiblePolygon, polygon_vertices

SIZE = 400
CENTRE = SIZE / 2
DRAW_RADIUS = 160.0

UNIT_STROKE = 1.2
T_STROKE = 3.5


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def to_canvas(z: complex, radius: float) -> tuple[float, float]:
    scale = DRAW_RADIUS / radius
    return CENTRE + scale * z.real, CENTRE - scale * z.imag


def polygon_svg(P: AdmissiblePolygon, caption: str | None = None) -> str:
    m, n = P.params.m, P.params.n
    pts = [to_canvas(v, P.radius) for v in polygon_vertices(P)]
    path = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + " Z"

    lines = []
    for j in range(m + n):
        x1, y1 = pts[j]
        x2, y2 = pts[(j + 1) % (m + n)]
        is_t = j >= n
        cls = "t-side" if is_t else "unit-side"
        width = T_STROKE if is_t else UNIT_STROKE
        lines.append(
            f'  <line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="black" '
            f'stroke-width="{width}" marker-end="url(#arrow)"/>')

    if caption is None:
        caption = (f"(m,n)=({m},{n}) t={P.params.t:g} sigma={P.source_sigma:.6f} "
                   f"{P.relation_text()}")
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE + 30}" '
        f'viewBox="0 0 {SIZE} {SIZE + 30}">',
        "  <defs>",
        '    <marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="6" markerHeight="6" orient="auto-start-reverse">',
        '      <path d="M 0 0 L 10 5 L 0 10 z" fill="#444"/>',
        "    </marker>",
        "  </defs>",
        f'  <circle class="circumcircle" cx="{_fmt(CENTRE)}" cy="{_fmt(CENTRE)}" '
        f'r="{_fmt(DRAW_RADIUS)}" fill="none" stroke="#888" stroke-dasharray="6 4"/>',
        f'  <path class="outline" d="{path}" fill="#cfe0f5" fill-opacity="0.35" '
        'fill-rule="evenodd" stroke="none"/>',
        *lines,
        f'  <circle cx="{_fmt(CENTRE)}" cy="{_fmt(CENTRE)}" r="2" fill="#888"/>',
        f'  <text x="10" y="{SIZE + 20}" font-family="sans-serif" font-size="13">'
        f"{escape(caption)}</text>",
        "</svg>",
        "",
    ])


def svg_filename(m: int, n: int, t: float, index: int) -> str:
    return f"polygon_m{m}_n{n}_t{t:g}_{index}.svg"


def parse_outline(svg_text: str) -> list[tuple[float, float]]:
    """Vertices of the outline path, in drawing units."""
    start = svg_text.index('class="outline" d="') + len('class="outline" d="')
    d = svg_text[start:svg_text.index('"', start)]
    if not d.rstrip().endswith("Z"):
        raise ValueError("outline path is not closed")
    coords = d.replace("M", " ").replace("L", " ").replace("Z", " ").split()
    values = [float(c) for c in coords]
    return list(zip(values[0::2], values[1::2]))


def radial_deviation(points, radius: float = DRAW_RADIUS) -> float:
    """Largest |distance to centre - radius| / radius over the points."""
    return max(abs(math.hypot(x - CENTRE, y - CENTRE) - radius) / radius for x, y in points)
