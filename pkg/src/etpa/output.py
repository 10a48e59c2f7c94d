"""Deterministic CSV writers and a small native SVG line-plot emitter."""
from __future__ import annotations

import io
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

#: Enough digits for an exact float64 round trip.
FLOAT_FORMAT = "{:.17g}"


def format_float(x) -> str:
    return FLOAT_FORMAT.format(float(x))


def csv_text(header, columns, comments=()) -> str:
    """Render equal-length columns as CSV with ``#``-prefixed comment lines first."""
    columns = [np.asarray(c, dtype=float).ravel() for c in columns]
    n = {len(c) for c in columns}
    if len(n) > 1:
        raise ValueError(f"columns have unequal lengths {sorted(n)}")
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    buf.write(",".join(header) + "\n")
    for row in zip(*columns):
        buf.write(",".join(format_float(v) for v in row) + "\n")
    return buf.getvalue()


def write_text(path, text):
    path = Path(path)
    # newline="\n" keeps the bytes identical across platforms
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def read_csv(path):
    """Read a file written by :func:`csv_text`; returns (header, 2-D array, comments)."""
    comments, rows, header = [], [], None
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif header is None:
            header = line.split(",")
        elif line:
            rows.append([float(v) for v in line.split(",")])
    return header, np.array(rows, dtype=float), comments


# ---------------------------------------------------------------------------
# SVG

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** np.floor(np.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = np.ceil(lo / step) * step
    return [float(v) for v in np.arange(start, hi + 0.5 * step, step)]


def _tick_label(v):
    return f"{v:.4g}" if abs(v) > 1e-12 else "0"


def svg_line_plot(x, series, title="", xlabel="", ylabel="", width=720, height=440,
                  styles=None) -> str:
    """One-panel polyline plot.

    ``series`` is a list of ``(label, y)`` pairs sharing ``x``; ``styles``
    optionally gives a dash pattern per series (``None`` for solid).
    """
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(y, dtype=float) for _, y in series]
    left, right, top, bottom = 70, 20, 40, 55
    pw, ph = width - left - right, height - top - bottom
    xmin, xmax = float(x.min()), float(x.max())
    ymin = float(min(y.min() for y in ys))
    ymax = float(max(y.max() for y in ys))
    pad = 0.05 * (ymax - ymin or 1.0)
    ymin, ymax = ymin - pad, ymax + pad
    if xmax == xmin:
        xmax = xmin + 1.0

    def sx(v):
        return left + (v - xmin) / (xmax - xmin) * pw

    def sy(v):
        return top + (ymax - v) / (ymax - ymin) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">'
        f"{escape(title)}</text>",
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for v in _ticks(xmin, xmax):
        if xmin <= v <= xmax:
            px = sx(v)
            out.append(f'<line x1="{px:.2f}" y1="{top + ph}" x2="{px:.2f}" '
                       f'y2="{top + ph + 5}" stroke="black"/>')
            out.append(f'<text x="{px:.2f}" y="{top + ph + 18}" text-anchor="middle">'
                       f"{_tick_label(v)}</text>")
    for v in _ticks(ymin, ymax):
        if ymin <= v <= ymax:
            py = sy(v)
            out.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" '
                       'stroke="black"/>')
            out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end">'
                       f"{_tick_label(v)}</text>")
    if ymin < 0 < ymax:
        out.append(f'<line x1="{left}" y1="{sy(0):.2f}" x2="{left + pw}" y2="{sy(0):.2f}" '
                   'stroke="#999" stroke-width="0.5"/>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">'
               f"{escape(xlabel)}</text>")
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(ylabel)}</text>')

    styles = styles or [None] * len(series)
    for k, ((label, _), y, dash) in enumerate(zip(series, ys, styles)):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} '
                   f'points="{pts}"/>')
        ly = top + 16 + 18 * k
        lx = left + pw - 170
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{ly}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
