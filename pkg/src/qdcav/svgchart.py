"""Deterministic SVG charts rendered by direct text generation.

Same input produces byte-identical output: fixed viewBox, fixed palette,
fixed float formatting, no timestamps.
"""

from __future__ import annotations

import math

from .errors import QdcavError

WIDTH, HEIGHT = 640, 480
MARGIN = {"left": 70, "right": 20, "top": 40, "bottom": 50}
PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _ticks(lo: float, hi: float, n: int = 5):
    if hi == lo:
        hi = lo + 1.0
    span = hi - lo
    step = 10 ** math.floor(math.log10(span / n))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= n:
            step *= mult
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


class _Frame:
    """Maps data coordinates into the plotting rectangle."""

    def __init__(self, xlo, xhi, ylo, yhi):
        pad_y = 0.05 * (yhi - ylo or 1.0)
        self.xlo, self.xhi = xlo, xhi if xhi != xlo else xlo + 1.0
        self.ylo, self.yhi = ylo - pad_y, yhi + pad_y
        self.x0 = MARGIN["left"]
        self.x1 = WIDTH - MARGIN["right"]
        self.y0 = MARGIN["top"]
        self.y1 = HEIGHT - MARGIN["bottom"]

    def x(self, v):
        return self.x0 + (v - self.xlo) / (self.xhi - self.xlo) * (self.x1 - self.x0)

    def y(self, v):
        return self.y1 - (v - self.ylo) / (self.yhi - self.ylo) * (self.y1 - self.y0)


def _header(title: str) -> list:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.0f}" y="20" text-anchor="middle" '
            f'font-size="14">{title}</text>'
        )
    return parts


def _axes(frame: _Frame, xlabel: str, ylabel: str) -> list:
    parts = [
        f'<rect x="{frame.x0}" y="{frame.y0}" width="{frame.x1 - frame.x0}" '
        f'height="{frame.y1 - frame.y0}" fill="none" stroke="black"/>'
    ]
    for t in _ticks(frame.xlo, frame.xhi):
        px = frame.x(t)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{frame.y1}" x2="{_fmt(px)}" '
            f'y2="{frame.y1 + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{frame.y1 + 18}" '
            f'text-anchor="middle">{t:.4g}</text>'
        )
    for t in _ticks(frame.ylo, frame.yhi):
        py = frame.y(t)
        parts.append(
            f'<line x1="{frame.x0 - 5}" y1="{_fmt(py)}" x2="{frame.x0}" '
            f'y2="{_fmt(py)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{frame.x0 - 8}" y="{_fmt(py + 4)}" '
            f'text-anchor="end">{t:.4g}</text>'
        )
    parts.append(
        f'<text x="{(frame.x0 + frame.x1) / 2:.0f}" y="{HEIGHT - 10}" '
        f'text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{(frame.y0 + frame.y1) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(frame.y0 + frame.y1) / 2:.0f})">{ylabel}</text>'
    )
    return parts


def line_chart(series, xlabel: str, ylabel: str, title: str = "") -> str:
    """series: list of (label, xs, ys). Single points render as markers."""
    if not series or all(len(s[1]) == 0 for s in series):
        raise QdcavError("no data to plot")
    all_x = [v for _, xs, _ in series for v in xs]
    all_y = [v for _, _, ys in series for v in ys]
    frame = _Frame(min(all_x), max(all_x), min(all_y), max(all_y))
    parts = _header(title) + _axes(frame, xlabel, ylabel)
    if frame.ylo < 0 < frame.yhi:
        parts.append(
            f'<line x1="{frame.x0}" y1="{_fmt(frame.y(0))}" x2="{frame.x1}" '
            f'y2="{_fmt(frame.y(0))}" stroke="#cccccc" stroke-dasharray="4 3"/>'
        )
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = [(frame.x(x), frame.y(y)) for x, y in zip(xs, ys)]
        if len(pts) == 1:
            parts.append(
                f'<circle cx="{_fmt(pts[0][0])}" cy="{_fmt(pts[0][1])}" r="4" '
                f'fill="{color}"/>'
            )
        else:
            coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"/>'
            )
        ly = MARGIN["top"] + 14 + 16 * i
        parts.append(
            f'<line x1="{frame.x1 - 120}" y1="{ly - 4}" x2="{frame.x1 - 96}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(f'<text x="{frame.x1 - 90}" y="{ly}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bar_chart(labels, values, xlabel: str, ylabel: str, title: str = "") -> str:
    if len(values) == 0:
        raise QdcavError("no data to plot")
    frame = _Frame(-0.5, len(values) - 0.5, min(0.0, min(values)), max(values))
    parts = _header(title)
    parts += _axes(frame, xlabel, ylabel)
    width = 0.8 * (frame.x1 - frame.x0) / len(values)
    for i, value in enumerate(values):
        px = frame.x(i) - width / 2
        py = frame.y(max(value, 0.0))
        height = abs(frame.y(value) - frame.y(0.0))
        parts.append(
            f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" fill="{PALETTE[0]}"/>'
        )
        parts.append(
            f'<text x="{_fmt(frame.x(i))}" y="{frame.y1 + 18}" '
            f'text-anchor="middle">{labels[i]}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def heatmap(xs, ys, grid, xlabel: str, ylabel: str, title: str = "") -> str:
    """grid[i][j] is the value at (xs[i], ys[j]); blue-to-red color scale."""
    if len(xs) == 0 or len(ys) == 0:
        raise QdcavError("no data to plot")
    lo = min(min(row) for row in grid)
    hi = max(max(row) for row in grid)
    span = hi - lo or 1.0
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    cell_w = (frame.x1 - frame.x0) / len(xs)
    cell_h = (frame.y1 - frame.y0) / len(ys)
    parts = _header(title)
    for i in range(len(xs)):
        for j in range(len(ys)):
            f = (grid[i][j] - lo) / span
            red = round(255 * f)
            blue = round(255 * (1 - f))
            px = frame.x0 + i * cell_w
            py = frame.y1 - (j + 1) * cell_h
            parts.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cell_w + 0.5)}" '
                f'height="{_fmt(cell_h + 0.5)}" fill="rgb({red},0,{blue})"/>'
            )
    parts += _axes(frame, xlabel, ylabel)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
