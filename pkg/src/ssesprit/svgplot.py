"""Minimal native SVG emitter for the experiment figures.

CSV is the authoritative output of every experiment; these charts are a
convenience, so the emitter stays tiny: axes, ticks, polylines, stems, and a
legend.  Non-finite points are dropped.
"""
from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

__all__ = ["line_chart", "stem_chart", "write_svg"]

_PALETTE = ["#1f6fb2", "#d1495b", "#3f8f4f", "#8764b8", "#c77b34", "#4a4a4a"]
_MARGIN = {"left": 64.0, "right": 20.0, "top": 42.0, "bottom": 48.0}


def _finite_pairs(xs, ys):
    return [
        (float(x), float(y))
        for x, y in zip(xs, ys)
        if math.isfinite(float(x)) and math.isfinite(float(y))
    ]


def _axis_range(values, pad_frac=0.05):
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0
    pad = (hi - lo) * pad_frac
    return lo - pad, hi + pad


def _ticks(lo, hi, count=5):
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _fmt(value: float) -> str:
    return f"{value:.4g}"


class _Canvas:
    def __init__(self, width, height, title, xlabel, ylabel):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}" '
            'font-family="Helvetica, Arial, sans-serif" font-size="12">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
        ]
        if title:
            self.parts.append(
                f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
                f'font-size="14">{escape(title)}</text>'
            )
        if xlabel:
            self.parts.append(
                f'<text x="{width / 2:.1f}" y="{height - 10:.1f}" '
                f'text-anchor="middle">{escape(xlabel)}</text>'
            )
        if ylabel:
            x = 16.0
            y = height / 2
            self.parts.append(
                f'<text x="{x:.1f}" y="{y:.1f}" text-anchor="middle" '
                f'transform="rotate(-90 {x:.1f} {y:.1f})">{escape(ylabel)}</text>'
            )

    def plot_box(self):
        return (
            _MARGIN["left"],
            _MARGIN["top"],
            self.width - _MARGIN["right"],
            self.height - _MARGIN["bottom"],
        )

    def mapper(self, xlim, ylim):
        x0, y0, x1, y1 = self.plot_box()

        def to_px(x, y):
            fx = (x - xlim[0]) / (xlim[1] - xlim[0])
            fy = (y - ylim[0]) / (ylim[1] - ylim[0])
            return x0 + fx * (x1 - x0), y1 - fy * (y1 - y0)

        return to_px

    def axes(self, xlim, ylim):
        x0, y0, x1, y1 = self.plot_box()
        to_px = self.mapper(xlim, ylim)
        self.parts.append(
            f'<rect x="{x0:.1f}" y="{y0:.1f}" width="{x1 - x0:.1f}" '
            f'height="{y1 - y0:.1f}" fill="none" stroke="#333"/>'
        )
        for tick in _ticks(*xlim):
            px, _ = to_px(tick, ylim[0])
            self.parts.append(
                f'<line x1="{px:.1f}" y1="{y1:.1f}" x2="{px:.1f}" y2="{y1 + 5:.1f}" stroke="#333"/>'
            )
            self.parts.append(
                f'<text x="{px:.1f}" y="{y1 + 18:.1f}" text-anchor="middle">{_fmt(tick)}</text>'
            )
        for tick in _ticks(*ylim):
            _, py = to_px(xlim[0], tick)
            self.parts.append(
                f'<line x1="{x0 - 5:.1f}" y1="{py:.1f}" x2="{x0:.1f}" y2="{py:.1f}" stroke="#333"/>'
            )
            self.parts.append(
                f'<text x="{x0 - 8:.1f}" y="{py + 4:.1f}" text-anchor="end">{_fmt(tick)}</text>'
            )
        return to_px

    def legend(self, labels):
        x0, y0, x1, _ = self.plot_box()
        for i, (label, color) in enumerate(labels):
            y = y0 + 14 + 16 * i
            self.parts.append(
                f'<line x1="{x1 - 130:.1f}" y1="{y:.1f}" x2="{x1 - 106:.1f}" '
                f'y2="{y:.1f}" stroke="{color}" stroke-width="2"/>'
            )
            self.parts.append(
                f'<text x="{x1 - 100:.1f}" y="{y + 4:.1f}">{escape(str(label))}</text>'
            )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def line_chart(series, *, title="", xlabel="", ylabel="",
               width=720, height=460, ylim=None) -> str:
    """Polyline chart; ``series`` is a sequence of (label, xs, ys)."""
    cleaned = [(label, _finite_pairs(xs, ys)) for label, xs, ys in series]
    points = [p for _, pts in cleaned for p in pts]
    if not points:
        raise ValueError("no finite points to plot")
    xlim = _axis_range([p[0] for p in points])
    if ylim is None:
        ylim = _axis_range([p[1] for p in points])
    canvas = _Canvas(width, height, title, xlabel, ylabel)
    to_px = canvas.axes(xlim, ylim)
    labels = []
    for i, (label, pts) in enumerate(cleaned):
        color = _PALETTE[i % len(_PALETTE)]
        labels.append((label, color))
        if not pts:
            continue
        path = " ".join(f"{px:.1f},{py:.1f}" for px, py in (to_px(x, y) for x, y in pts))
        canvas.parts.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for x, y in pts:
            px, py = to_px(x, y)
            canvas.parts.append(
                f'<circle cx="{px:.1f}" cy="{py:.1f}" r="2.5" fill="{color}"/>'
            )
    canvas.legend(labels)
    return canvas.render()


def stem_chart(groups, *, title="", xlabel="", ylabel="",
               width=720, height=460) -> str:
    """Stem chart; ``groups`` is a sequence of (label, positions, heights)."""
    cleaned = [(label, _finite_pairs(xs, ys)) for label, xs, ys in groups]
    points = [p for _, pts in cleaned for p in pts]
    if not points:
        raise ValueError("no finite points to plot")
    xlim = _axis_range([p[0] for p in points])
    top = max(max(p[1] for p in points), 0.0)
    bottom = min(min(p[1] for p in points), 0.0)
    pad = 0.08 * (top - bottom if top > bottom else 1.0)
    ylim = (bottom - pad, top + pad)
    canvas = _Canvas(width, height, title, xlabel, ylabel)
    to_px = canvas.axes(xlim, ylim)
    _, base_py = to_px(xlim[0], 0.0)
    labels = []
    for i, (label, pts) in enumerate(cleaned):
        color = _PALETTE[i % len(_PALETTE)]
        labels.append((label, color))
        for x, y in pts:
            px, py = to_px(x, y)
            canvas.parts.append(
                f'<line x1="{px:.1f}" y1="{base_py:.1f}" x2="{px:.1f}" '
                f'y2="{py:.1f}" stroke="{color}" stroke-width="1.5"/>'
            )
            canvas.parts.append(
                f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="none" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
    canvas.legend(labels)
    return canvas.render()


def write_svg(svg: str, path) -> None:
    Path(path).write_text(svg)
