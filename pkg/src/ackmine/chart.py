"""Self-contained SVG chart emission.

Charts are written directly as standalone SVG documents, with no plotting
dependency and no external references, so output bytes are reproducible and
diffable in tests. Only the three shapes the reports need are implemented:
multi-series line charts, log-scale count histograms, and horizontal stacked
bars with range annotations.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#4b0082", "#8b4513",
]

_MARGIN_LEFT = 70
_MARGIN_RIGHT = 230
_MARGIN_TOP = 46
_MARGIN_BOTTOM = 56


def _fmt(x: float) -> str:
    text = f"{x:.2f}".rstrip("0").rstrip(".")
    return text if text else "0"


def _document(width: int, height: int, parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f"{body}\n</svg>\n"
    )


def _text(x: float, y: float, label: str, size: int = 12, anchor: str = "start") -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
        f'text-anchor="{anchor}">{escape(label)}</text>'
    )


class _Frame:
    """Maps data coordinates onto a plot rectangle and draws the frame."""

    def __init__(
        self,
        width: int,
        height: int,
        x_range: tuple[float, float],
        y_range: tuple[float, float],
        left_margin: int = _MARGIN_LEFT,
    ):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1
        if self.y1 <= self.y0:
            self.y1 = self.y0 + 1
        self.left = left_margin
        self.right = width - _MARGIN_RIGHT
        self.top = _MARGIN_TOP
        self.bottom = height - _MARGIN_BOTTOM

    def x(self, v: float) -> float:
        return self.left + (v - self.x0) / (self.x1 - self.x0) * (self.right - self.left)

    def y(self, v: float) -> float:
        return self.bottom - (v - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)

    def frame(self, title: str, x_label: str, y_label: str) -> list[str]:
        cx = (self.left + self.right) / 2
        return [
            f'<rect x="{self.left}" y="{self.top}" width="{self.right - self.left}" '
            f'height="{self.bottom - self.top}" fill="none" stroke="#333"/>',
            _text(cx, self.top - 18, title, size=15, anchor="middle"),
            _text(cx, self.bottom + 40, x_label, anchor="middle"),
            f'<text x="18" y="{(self.top + self.bottom) / 2}" font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 18 {(self.top + self.bottom) / 2})">{escape(y_label)}</text>',
        ]

    def x_ticks(self, values: list[float], labels: list[str] | None = None) -> list[str]:
        labels = labels or [_fmt(v) for v in values]
        parts = []
        for v, label in zip(values, labels):
            px = self.x(v)
            parts.append(
                f'<line x1="{_fmt(px)}" y1="{self.bottom}" x2="{_fmt(px)}" '
                f'y2="{self.bottom + 5}" stroke="#333"/>'
            )
            parts.append(_text(px, self.bottom + 20, label, size=11, anchor="middle"))
        return parts

    def y_ticks(self, values: list[float], labels: list[str] | None = None) -> list[str]:
        labels = labels or [_fmt(v) for v in values]
        parts = []
        for v, label in zip(values, labels):
            py = self.y(v)
            parts.append(
                f'<line x1="{self.left - 5}" y1="{_fmt(py)}" x2="{self.left}" '
                f'y2="{_fmt(py)}" stroke="#333"/>'
            )
            parts.append(
                f'<line x1="{self.left}" y1="{_fmt(py)}" x2="{self.right}" '
                f'y2="{_fmt(py)}" stroke="#ddd"/>'
            )
            parts.append(_text(self.left - 9, py + 4, label, size=11, anchor="end"))
        return parts


def _legend(entries: list[tuple[str, str]], x: float, y: float) -> list[str]:
    parts = []
    for i, (label, color) in enumerate(entries):
        py = y + i * 18
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(py - 9)}" width="12" height="12" fill="{color}"/>'
        )
        parts.append(_text(x + 18, py + 2, label, size=11))
    return parts


def _spread_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_chart(
    title: str,
    x_label: str,
    y_label: str,
    series: list[tuple[str, list[tuple[float, float]]]],
    width: int = 900,
    height: int = 540,
) -> str:
    """Multi-series line chart; one color per series, legend at the right."""
    points = [p for _, pts in series for p in pts]
    if not points:
        frame = _Frame(width, height, (0, 1), (0, 1))
        return _document(width, height, frame.frame(title, x_label, y_label))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    frame = _Frame(width, height, (min(xs), max(xs)), (min(0.0, min(ys)), max(ys)))
    parts = frame.frame(title, x_label, y_label)
    parts += frame.x_ticks([round(v) for v in _spread_ticks(frame.x0, frame.x1)])
    parts += frame.y_ticks(_spread_ticks(frame.y0, frame.y1))
    legend = []
    for i, (label, pts) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{_fmt(frame.x(x))},{_fmt(frame.y(y))}" for x, y in sorted(pts))
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"/>'
        )
        legend.append((label, color))
    parts += _legend(legend, frame.right + 16, frame.top + 10)
    return _document(width, height, parts)


def log_count_histogram(
    title: str,
    x_label: str,
    histograms: list[tuple[str, dict[int, int]]],
    width: int = 900,
    height: int = 540,
) -> str:
    """Grouped bar chart of count frequencies with a log10 frequency axis."""
    all_counts = [c for _, hist in histograms for c in hist.values() if c > 0]
    all_keys = [k for _, hist in histograms for k in hist]
    if not all_counts:
        frame = _Frame(width, height, (0, 1), (0, 1))
        return _document(width, height, frame.frame(title, x_label, "papers"))
    max_exp = max(1, math.ceil(math.log10(max(all_counts))))
    frame = _Frame(width, height, (min(all_keys) - 0.5, max(all_keys) + 0.5), (0, max_exp))
    parts = frame.frame(title, x_label, "papers (log scale)")
    parts += frame.x_ticks([round(v) for v in _spread_ticks(min(all_keys), max(all_keys))])
    parts += frame.y_ticks(list(range(max_exp + 1)), [f"1e{e}" for e in range(max_exp + 1)])
    groups = len(histograms)
    legend = []
    for i, (label, hist) in enumerate(histograms):
        color = PALETTE[i % len(PALETTE)]
        slot = (frame.x(1) - frame.x(0)) * 0.8 / groups
        for k, count in sorted(hist.items()):
            if count <= 0:
                continue
            top = frame.y(math.log10(count)) if count > 1 else frame.y(0)
            x = frame.x(k - 0.4) + i * slot
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(top)}" width="{_fmt(max(slot, 0.5))}" '
                f'height="{_fmt(max(frame.bottom - top, 0.5))}" fill="{color}"/>'
            )
        legend.append((label, color))
    parts += _legend(legend, frame.right + 16, frame.top + 10)
    return _document(width, height, parts)


def stacked_bar_chart(
    title: str,
    x_label: str,
    rows: list[tuple[str, float, float, str]],
    segment_labels: tuple[str, str],
    width: int = 900,
    height: int = 560,
) -> str:
    """Horizontal stacked bars (two segments per row) with a trailing
    annotation per row; rows render top to bottom in the given order."""
    if not rows:
        frame = _Frame(width, height, (0, 1), (0, 1), left_margin=180)
        return _document(width, height, frame.frame(title, x_label, ""))
    max_total = max(a + b for _, a, b, _ in rows)
    frame = _Frame(width, height, (0, max_total * 1.02), (0, len(rows)), left_margin=180)
    parts = frame.frame(title, x_label, "")
    parts += frame.x_ticks(_spread_ticks(0, max_total))
    slot = (frame.bottom - frame.top) / len(rows)
    bar = slot * 0.55
    colors = (PALETTE[0], PALETTE[1])
    for i, (label, first, second, annotation) in enumerate(rows):
        y = frame.top + i * slot + (slot - bar) / 2
        x_mid = frame.x(first)
        x_end = frame.x(first + second)
        parts.append(
            f'<rect x="{frame.left}" y="{_fmt(y)}" width="{_fmt(x_mid - frame.left)}" '
            f'height="{_fmt(bar)}" fill="{colors[0]}"/>'
        )
        parts.append(
            f'<rect x="{_fmt(x_mid)}" y="{_fmt(y)}" width="{_fmt(x_end - x_mid)}" '
            f'height="{_fmt(bar)}" fill="{colors[1]}"/>'
        )
        parts.append(_text(frame.left - 9, y + bar / 2 + 4, label, size=11, anchor="end"))
        if annotation:
            parts.append(_text(x_end + 6, y + bar / 2 + 4, annotation, size=10))
    parts += _legend(list(zip(segment_labels, colors)), frame.right + 16, frame.top + 10)
    return _document(width, height, parts)
