"""Minimal SVG line/marker plots with a logarithmic y axis."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 440
LEFT, RIGHT, TOP, BOTTOM = 72, 24, 36, 56
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _nice_k_ticks(k_max: int, quadratic: bool):
    if k_max <= 0:
        return [0]
    if quadratic:
        # evenly spaced in k^2
        step = 10 if k_max > 40 else 5 if k_max > 10 else 1
        ticks = sorted({int(round(k_max * math.sqrt(i / 5) / step) * step) for i in range(6)})
        return [t for t in ticks if t <= k_max]
    step = max(1, int(math.ceil(k_max / 8)))
    return list(range(0, k_max + 1, step))


def plot_errors(series, path, *, title="", xlabel="k", ylabel="error",
                quadratic_x: bool = False):
    """Write an error-versus-k plot.

    Parameters
    ----------
    series : list of dict
        Each entry has ``label``, ``k`` and ``computed`` (plotted as markers)
        and optionally ``model`` (plotted as a line through the same k).
    path : str
        Output file.
    quadratic_x : bool
        Place k at horizontal position proportional to k**2.
    """
    pos = [(k, e) for s in series for k, e in zip(s["k"], s["computed"]) if e > 0]
    pos += [(k, e) for s in series for k, e in zip(s["k"], s.get("model", ())) if e > 0]
    if not pos:
        raise ValueError("nothing positive to plot")
    k_max = max(k for k, _ in pos)
    y_lo = math.floor(math.log10(min(e for _, e in pos)))
    y_hi = math.ceil(math.log10(max(e for _, e in pos)))
    if y_hi == y_lo:
        y_hi += 1

    def fx(k):
        t = (k * k) / (k_max * k_max) if quadratic_x else k / k_max
        return LEFT + t * (WIDTH - LEFT - RIGHT) if k_max else LEFT

    def fy(e):
        t = (math.log10(e) - y_lo) / (y_hi - y_lo)
        return HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    x0, x1, y0, y1 = LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP
    out.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
               'fill="none" stroke="black"/>')
    step = max(1, (y_hi - y_lo) // 8)
    for d in range(y_lo, y_hi + 1, step):
        y = fy(10.0 ** d)
        out.append(f'<line x1="{x0}" y1="{y:.2f}" x2="{x1}" y2="{y:.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{x0 - 6}" y="{y + 4:.2f}" text-anchor="end">1e{d}</text>')
    for k in _nice_k_ticks(k_max, quadratic_x):
        x = fx(k)
        out.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y0 + 18}" text-anchor="middle">{k}</text>')
    out.append(f'<text x="{(x0 + x1) / 2}" y="{HEIGHT - 14}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{(y0 + y1) / 2}" text-anchor="middle" '
               f'transform="rotate(-90 18 {(y0 + y1) / 2})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{(x0 + x1) / 2}" y="22" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')

    for i, s in enumerate(series):
        color = COLORS[i % len(COLORS)]
        model = [(k, e) for k, e in zip(s["k"], s.get("model", ())) if e > 0]
        if model:
            pts = " ".join(f"{fx(k):.2f},{fy(e):.2f}" for k, e in model)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}"/>')
        for k, e in zip(s["k"], s["computed"]):
            if e > 0:
                out.append(f'<circle cx="{fx(k):.2f}" cy="{fy(e):.2f}" r="2.5" '
                           f'fill="{color}"/>')
        ly = TOP + 16 + 16 * i
        out.append(f'<circle cx="{x1 - 120}" cy="{ly - 4}" r="3" fill="{color}"/>')
        out.append(f'<text x="{x1 - 110}" y="{ly}">{escape(str(s["label"]))}</text>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
    return path


def plot_rows(rows, path, experiment: str, quadratic_x: bool, title: str = ""):
    """Plot the rows of one experiment, one series per n."""
    by_n = {}
    for r in rows:
        if r.experiment == experiment:
            by_n.setdefault(r.n, []).append(r)
    series = []
    for n, rs in sorted(by_n.items()):
        rs.sort(key=lambda r: r.k)
        series.append({
            "label": f"n = {n}",
            "k": [r.k for r in rs],
            "computed": [float(r.computed_error) for r in rs],
            "model": [float(r.model_error) for r in rs],
        })
    xlabel = "k (quadratic scale)" if quadratic_x else "k"
    return plot_errors(series, path, title=title, xlabel=xlabel, ylabel="minimax error",
                       quadratic_x=quadratic_x)
