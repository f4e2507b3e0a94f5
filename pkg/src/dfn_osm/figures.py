"""Matplotlib rendering of sweep CSVs to PNG files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .config import column, read_csv  # noqa: E402


def render_png(csv_path: str, x_col: str, y_cols: list[str],
               out_path: str | None = None, log_x: bool = False,
               log_y: bool = False, title: str | None = None) -> str:
    data = read_csv(csv_path)
    xs = column(data, x_col)
    fig, ax = plt.subplots(figsize=(8, 6))
    for name in y_cols:
        ax.plot(xs, column(data, name), marker=".", label=name)
    if log_x:
        ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(x_col)
    ax.grid(True, alpha=0.3)
    ax.legend()
    if title:
        ax.set_title(title)
    if out_path is None:
        out_path = csv_path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path
