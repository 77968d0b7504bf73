"""Static SVG rendering of filtration polygons.

The only place in the package where exact rationals are converted to
floats.  Output is deterministic: fixed viewport, fixed palette, fixed
two-decimal coordinate formatting.
"""

from __future__ import annotations

from .filtration import Polygon

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 170, 40, 50
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def polygons_svg(items: list[tuple[str, Polygon]], title: str = "") -> str:
    """Overlay named polygons; the first one is drawn with a thick stroke."""
    if not items:
        raise ValueError("nothing to draw")
    xmax = max(p.points[-1][0] for _, p in items)
    ys = [float(y) for _, p in items for _, y in p.points]
    ymin, ymax = min(ys + [0.0]), max(ys + [0.0])
    if ymax == ymin:
        ymax += 1.0
        ymin -= 1.0
    pad = 0.08 * (ymax - ymin)
    ymin -= pad
    ymax += pad

    def sx(x: float) -> float:
        return MARGIN_L + (x / xmax) * (WIDTH - MARGIN_L - MARGIN_R)

    def sy(y: float) -> float:
        return MARGIN_T + (ymax - y) / (ymax - ymin) * (HEIGHT - MARGIN_T - MARGIN_B)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}"'
             f' viewBox="0 0 {WIDTH} {HEIGHT}">',
             f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>']
    if title:
        parts.append(f'<text x="{WIDTH // 2}" y="24" text-anchor="middle"'
                     f' font-family="monospace" font-size="15">{title}</text>')
    # axes
    parts.append(f'<line x1="{_fmt(sx(0))}" y1="{_fmt(sy(ymin))}" x2="{_fmt(sx(0))}"'
                 f' y2="{_fmt(sy(ymax))}" stroke="#999999" stroke-width="1"/>')
    parts.append(f'<line x1="{_fmt(sx(0))}" y1="{_fmt(sy(0))}" x2="{_fmt(sx(xmax))}"'
                 f' y2="{_fmt(sy(0))}" stroke="#999999" stroke-width="1"/>')
    for gx in range(0, xmax + 1):
        parts.append(f'<text x="{_fmt(sx(gx))}" y="{_fmt(sy(0) + 16)}" text-anchor="middle"'
                     f' font-family="monospace" font-size="11" fill="#666666">{gx}</text>')
    parts.append(f'<text x="{_fmt(sx(xmax) + 8)}" y="{_fmt(sy(0) + 4)}"'
                 f' font-family="monospace" font-size="12">r</text>')
    parts.append(f'<text x="{_fmt(sx(0) - 12)}" y="{_fmt(sy(ymax) + 4)}"'
                 f' font-family="monospace" font-size="12">w</text>')
    # polygons
    for i, (label, poly) in enumerate(items):
        color = PALETTE[i % len(PALETTE)]
        width = 3 if i == 0 else 1.5
        pts = " ".join(f"{_fmt(sx(float(x)))},{_fmt(sy(float(y)))}" for x, y in poly.points)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}"'
                     f' stroke-width="{width}"/>')
        for x, y in poly.points:
            parts.append(f'<circle cx="{_fmt(sx(float(x)))}" cy="{_fmt(sy(float(y)))}"'
                         f' r="3" fill="{color}"/>')
        ly = MARGIN_T + 18 * i
        lx = WIDTH - MARGIN_R + 16
        parts.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}"'
                     f' stroke="{color}" stroke-width="{width}"/>')
        parts.append(f'<text x="{lx + 30}" y="{ly + 4}" font-family="monospace"'
                     f' font-size="12">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
