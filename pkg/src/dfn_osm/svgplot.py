"""Deterministic SVG line charts from CSV columns.

Byte-identical output for identical input and flags: fixed 800x600 canvas,
fixed palette, fixed number formatting, no timestamps.
"""
from __future__ import annotations

import math

from .config import column, read_csv

WIDTH, HEIGHT = 800, 600
ML, MR, MT, MB = 70, 180, 40, 60
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"]


def _axis_range(values, log: bool, label: str):
    finite = [v for v in values if math.isfinite(v)]
    if log:
        finite = [v for v in finite if v > 0]
        if not finite:
            raise ValueError(f"log scale needs positive values in '{label}'")
        finite = [math.log10(v) for v in finite]
    if not finite:
        raise ValueError(f"no finite data in '{label}'")
    lo, hi = min(finite), max(finite)
    if hi - lo < 1e-300 or hi == lo:
        pad = 0.05 * abs(hi) if hi != 0 else 1.0
        lo, hi = lo - pad, hi + pad
    return lo, hi


def _tick_label(t: float, log: bool) -> str:
    v = 10.0 ** t if log else t
    return format(v, ".6g")


def emit_svg(csv_path: str, x_col: str, y_cols: list[str],
             out_path: str | None = None, log_x: bool = False,
             log_y: bool = False) -> str:
    """Render one polyline per y column against x_col; returns the SVG path."""
    data = read_csv(csv_path)
    xs = column(data, x_col)
    series = [(name, column(data, name)) for name in y_cols]

    xlo, xhi = _axis_range(xs, log_x, x_col)
    yall = [v for _, ys in series for v in ys]
    ylo, yhi = _axis_range(yall, log_y, "y data")
    pw, ph = WIDTH - ML - MR, HEIGHT - MT - MB

    def px(v):
        t = math.log10(v) if log_x else v
        return ML + (t - xlo) / (xhi - xlo) * pw

    def py(v):
        t = math.log10(v) if log_y else v
        return MT + ph - (t - ylo) / (yhi - ylo) * ph

    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
               f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
    out.append(f'<rect x="{ML}" y="{MT}" width="{pw}" height="{ph}" '
               f'fill="none" stroke="#000000"/>')

    n_ticks = 5
    for i in range(n_ticks):
        tx = xlo + (xhi - xlo) * i / (n_ticks - 1)
        gx = ML + pw * i / (n_ticks - 1)
        out.append(f'<line x1="{gx:.6f}" y1="{MT + ph}" x2="{gx:.6f}" '
                   f'y2="{MT + ph + 5}" stroke="#000000"/>')
        out.append(f'<text x="{gx:.6f}" y="{MT + ph + 20}" font-size="12" '
                   f'text-anchor="middle">{_tick_label(tx, log_x)}</text>')
        ty = ylo + (yhi - ylo) * i / (n_ticks - 1)
        gy = MT + ph - ph * i / (n_ticks - 1)
        out.append(f'<line x1="{ML - 5}" y1="{gy:.6f}" x2="{ML}" '
                   f'y2="{gy:.6f}" stroke="#000000"/>')
        out.append(f'<text x="{ML - 8}" y="{gy + 4:.6f}" font-size="12" '
                   f'text-anchor="end">{_tick_label(ty, log_y)}</text>')
    out.append(f'<text x="{ML + pw / 2:.6f}" y="{HEIGHT - 15}" font-size="13" '
               f'text-anchor="middle">{x_col}</text>')

    for si, (name, ys) in enumerate(series):
        color = PALETTE[si % len(PALETTE)]
        pts = []
        for x, y in zip(xs, ys):
            if not (math.isfinite(x) and math.isfinite(y)):
                continue
            if (log_x and x <= 0) or (log_y and y <= 0):
                continue
            pts.append(f"{px(x):.6f},{py(y):.6f}")
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                   f'points="{" ".join(pts)}"/>')
        ly = MT + 16 + 18 * si
        out.append(f'<line x1="{ML + pw + 12}" y1="{ly}" x2="{ML + pw + 36}" '
                   f'y2="{ly}" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{ML + pw + 42}" y="{ly + 4}" '
                   f'font-size="12">{name}</text>')

    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if out_path is None:
        out_path = csv_path.rsplit(".", 1)[0] + ".svg"
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return out_path
