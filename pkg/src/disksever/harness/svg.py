"""Minimal self-contained SVG scatter plots (no plotting library needed)."""

import math
from xml.sax.saxutils import escape

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _ticks(lo, hi, log):
    if log:
        return [10.0 ** e for e in range(math.floor(lo), math.ceil(hi) + 1)
                if lo <= e <= hi] or [10.0 ** lo]
    step = 10 ** math.floor(math.log10(max(hi - lo, 1e-12)))
    start = math.ceil(lo / step) * step
    out, v = [], start
    while v <= hi + 1e-12 and len(out) < 12:
        out.append(v)
        v += step
    return out


def scatter_svg(series, title="", xlabel="", ylabel="", log=True, width=640, height=440):
    """Render ``{label: [(x, y), ...]}`` as an SVG document string."""
    pts = [(x, y) for s in series.values() for x, y in s if (x > 0 and y > 0) or not log]
    tx = (lambda v: math.log10(v)) if log else (lambda v: v)
    margin_l, margin_r, margin_t, margin_b = 70, 150, 40, 50
    pw, ph = width - margin_l - margin_r, height - margin_t - margin_b
    if pts:
        xs = [tx(x) for x, _ in pts]
        ys = [tx(y) for _, y in pts]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def px(v):
        return margin_l + (tx(v) - x0) / (x1 - x0) * pw

    def py(v):
        return margin_t + ph - (tx(v) - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="11">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">'
           f'{escape(title)}</text>',
           f'<rect x="{margin_l}" y="{margin_t}" width="{pw}" height="{ph}" fill="none" '
           f'stroke="black"/>']
    for v in _ticks(x0, x1, log):
        x = px(v) if log else margin_l + (v - x0) / (x1 - x0) * pw
        out.append(f'<line x1="{x:.1f}" y1="{margin_t + ph}" x2="{x:.1f}" '
                   f'y2="{margin_t + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{margin_t + ph + 18}" text-anchor="middle">{v:g}</text>')
    for v in _ticks(y0, y1, log):
        y = py(v) if log else margin_t + ph - (v - y0) / (y1 - y0) * ph
        out.append(f'<line x1="{margin_l - 5}" y1="{y:.1f}" x2="{margin_l}" y2="{y:.1f}" '
                   f'stroke="black"/>')
        out.append(f'<text x="{margin_l - 8}" y="{y + 4:.1f}" text-anchor="end">{v:g}</text>')
    out.append(f'<text x="{margin_l + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    out.append(f'<text x="15" y="{margin_t + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 15 {margin_t + ph / 2:.1f})">{escape(ylabel)}</text>')
    for idx, (label, data) in enumerate(series.items()):
        color = PALETTE[idx % len(PALETTE)]
        for x, y in data:
            if log and (x <= 0 or y <= 0):
                continue
            out.append(f'<circle cx="{px(x):.1f}" cy="{py(y):.1f}" r="2.5" fill="{color}"/>')
        ly = margin_t + 15 + 18 * idx
        lx = margin_l + pw + 15
        out.append(f'<circle cx="{lx}" cy="{ly - 4}" r="4" fill="{color}"/>')
        out.append(f'<text x="{lx + 10}" y="{ly}">{escape(str(label))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
