"""CSV, JSON and SVG writers.

Floats are written with ``repr``, the shortest string that round-trips, so
identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["fmt", "write_csv", "write_json", "ChartSpec", "render_svg", "write_svg"]


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, rows, columns=None, header_lines=()):
    """Write dict rows; `header_lines` become leading '# ' comment lines."""
    rows = list(rows)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if columns is None:
        columns = list(rows[0]) if rows else []
    with path.open("w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(row.get(c, "")) for c in columns])
    return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def write_json(path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n")
    return path


@dataclass
class ChartSpec:
    title: str
    series: list  # [(label, [(x, y), ...])]
    xlabel: str = "n"
    ylabel: str = "error"
    log_x: bool = True
    log_y: bool = True
    fit: tuple | None = None  # (slope, intercept) of log y = slope log x + intercept
    fit_label: str = ""
    notes: list = field(default_factory=list)


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def render_svg(chart: ChartSpec, width: int = 640, height: int = 420) -> str:
    pts = [p for _, s in chart.series for p in s]
    if not pts:
        raise ValueError("chart has no points")
    if (chart.log_x and any(x <= 0 for x, _ in pts)) or (chart.log_y and any(y <= 0 for _, y in pts)):
        raise ValueError("log axes need positive values")
    tx = math.log10 if chart.log_x else float
    ty = math.log10 if chart.log_y else float
    xs = [tx(x) for x, _ in pts]
    ys = [ty(y) for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad_l, pad_r, pad_t, pad_b = 70, 20, 40, 50

    def px(x):
        return pad_l + (tx(x) - x0) / (x1 - x0) * (width - pad_l - pad_r)

    def py(y):
        return height - pad_b - (ty(y) - y0) / (y1 - y0) * (height - pad_t - pad_b)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="15">{escape(chart.title)}</text>',
        f'<line x1="{pad_l}" y1="{height - pad_b}" x2="{width - pad_r}" y2="{height - pad_b}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{height - pad_b}" stroke="black"/>',
    ]
    xl = f"log10 {chart.xlabel}" if chart.log_x else chart.xlabel
    yl = f"log10 {chart.ylabel}" if chart.log_y else chart.ylabel
    out.append(f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle" font-size="12">{escape(xl)}</text>')
    out.append(
        f'<text x="16" y="{height / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {height / 2:.1f})">{escape(yl)}</text>'
    )
    for val, lab in ((x0, f"{x0:.2f}"), (x1, f"{x1:.2f}")):
        xp = pad_l + (val - x0) / (x1 - x0) * (width - pad_l - pad_r)
        out.append(f'<text x="{xp:.1f}" y="{height - pad_b + 16}" text-anchor="middle" font-size="10">{lab}</text>')
    for val, lab in ((y0, f"{y0:.2f}"), (y1, f"{y1:.2f}")):
        yp = height - pad_b - (val - y0) / (y1 - y0) * (height - pad_t - pad_b)
        out.append(f'<text x="{pad_l - 6}" y="{yp + 4:.1f}" text-anchor="end" font-size="10">{lab}</text>')
    legend_y = pad_t + 8
    for k, (label, series) in enumerate(chart.series):
        color = _COLORS[k % len(_COLORS)]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in series)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        for x, y in series:
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="{color}"/>')
        out.append(f'<text x="{width - pad_r - 4}" y="{legend_y}" text-anchor="end" font-size="11" fill="{color}">{escape(label)}</text>')
        legend_y += 14
    if chart.fit is not None:
        slope, intercept = chart.fit
        xa, xb = min(x for x, _ in pts), max(x for x, _ in pts)
        ya, yb = (math.exp(intercept) * v**slope for v in (xa, xb))
        out.append(
            f'<line x1="{px(xa):.2f}" y1="{py(ya):.2f}" x2="{px(xb):.2f}" y2="{py(yb):.2f}" '
            'stroke="gray" stroke-dasharray="5,4"/>'
        )
        label = chart.fit_label or f"fit slope {slope:.4f}"
        out.append(f'<text x="{width - pad_r - 4}" y="{legend_y}" text-anchor="end" font-size="11" fill="gray">{escape(label)}</text>')
        legend_y += 14
    for note in chart.notes:
        out.append(f'<text x="{width - pad_r - 4}" y="{legend_y}" text-anchor="end" font-size="10">{escape(note)}</text>')
        legend_y += 13
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, chart: ChartSpec):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(chart))
    return path
