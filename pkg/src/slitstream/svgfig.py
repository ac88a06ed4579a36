"""Static SVG 1.1 rendering of streamline families.

One polyline per completed streamline (arrowhead marker at the end),
the barrier drawn with gaps at the slits, equal-aspect axes labeled in
k*r units (optionally rescaled by a physical wavenumber).
"""

from __future__ import annotations

import math

PAD = 60.0
TARGET_WIDTH = 900.0


def _ticks(lo: float, hi: float, target: int = 6):
    span = hi - lo
    raw = span / max(target, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next((m * mag for m in (1.0, 2.0, 5.0, 10.0) if m * mag >= raw), 10.0 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 10))
        t += step
    return ticks


def render_streamlines(lines, geom, title: str = "", k_scale: float = 1.0,
                       extent=None) -> str:
    """Return an SVG document for the traced family.

    `extent` is (x_min, x_max, y_min, y_max) in k*r units; by default it
    hugs the data. Tick labels are divided by `k_scale` so physical units
    can be displayed without touching the geometry.
    """
    if extent is None:
        xs = [float(v) for line in lines for v in (line.x.min(), line.x.max())]
        ys = [float(v) for line in lines for v in (line.y.min(), line.y.max())]
        if not xs:
            xs, ys = [0.0, 1.0], [0.0, 1.0]
        margin = 0.03 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        extent = (min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin)
    x_lo, x_hi, y_lo, y_hi = extent
    scale = (TARGET_WIDTH - 2 * PAD) / (x_hi - x_lo)
    width = (x_hi - x_lo) * scale + 2 * PAD
    height = (y_hi - y_lo) * scale + 2 * PAD

    def px(x):
        return PAD + (x - x_lo) * scale

    def py(y):
        return PAD + (y_hi - y) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        "<defs>",
        '<marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" '
        'orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="#1f4e8c"/></marker>',
        "</defs>",
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{width / 2:.1f}" y="{PAD / 2:.1f}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="16">{title}</text>')

    # frame and ticks
    parts.append(f'<rect x="{px(x_lo):.1f}" y="{py(y_hi):.1f}" '
                 f'width="{(x_hi - x_lo) * scale:.1f}" height="{(y_hi - y_lo) * scale:.1f}" '
                 f'fill="none" stroke="black" stroke-width="1"/>')
    for t in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{px(t):.1f}" y1="{py(y_lo):.1f}" x2="{px(t):.1f}" '
                     f'y2="{py(y_lo) + 5:.1f}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{px(t):.1f}" y="{py(y_lo) + 20:.1f}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="12">{t / k_scale:g}</text>')
    for t in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{px(x_lo) - 5:.1f}" y1="{py(t):.1f}" x2="{px(x_lo):.1f}" '
                     f'y2="{py(t):.1f}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{px(x_lo) - 8:.1f}" y="{py(t) + 4:.1f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="12">{t / k_scale:g}</text>')
    xlabel = "k&#183;x" if k_scale == 1.0 else "x"
    ylabel = "k&#183;y" if k_scale == 1.0 else "y"
    parts.append(f'<text x="{width / 2:.1f}" y="{height - 12:.1f}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="14">{xlabel}</text>')
    parts.append(f'<text x="16" y="{height / 2:.1f}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="14" '
                 f'transform="rotate(-90 16 {height / 2:.1f})">{ylabel}</text>')

    # barrier with slit gaps
    gap = max(geom.exclusion_radius, 0.01 * (y_hi - y_lo))
    segments = [(y_lo, geom.slit2_y - gap), (geom.slit2_y + gap, geom.slit1_y - gap),
                (geom.slit1_y + gap, y_hi)]
    if x_lo <= 0.0 <= x_hi:
        for seg_lo, seg_hi in segments:
            seg_lo, seg_hi = max(seg_lo, y_lo), min(seg_hi, y_hi)
            if seg_lo < seg_hi:
                parts.append(f'<line x1="{px(0):.1f}" y1="{py(seg_lo):.1f}" '
                             f'x2="{px(0):.1f}" y2="{py(seg_hi):.1f}" '
                             f'stroke="#444" stroke-width="4"/>')
        for sy in (geom.slit1_y, geom.slit2_y):
            if y_lo <= sy <= y_hi:
                parts.append(f'<circle cx="{px(0):.1f}" cy="{py(sy):.1f}" r="3" '
                             f'fill="white" stroke="#444" stroke-width="1.5"/>')

    for line in lines:
        # decimate for file size; sub-pixel detail is invisible anyway
        n = len(line.x)
        step = max(1, n // 800)
        idx = list(range(0, n, step))
        if idx[-1] != n - 1:
            idx.append(n - 1)
        pts = " ".join(f"{px(float(line.x[i])):.2f},{py(float(line.y[i])):.2f}"
                       for i in idx)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e8c" '
                     f'stroke-width="1.2" marker-end="url(#arrow)"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
