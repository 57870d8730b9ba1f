"""CSV and SVG writers for curves.

Both writers are byte-deterministic: numbers are rendered with fixed rules,
there are no timestamps, and files are written to a temporary sibling and
renamed into place.
"""

from __future__ import annotations

import math
import os
import re
import tempfile
from pathlib import Path
from xml.sax.saxutils import escape

from ..coverage import CurveResult

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def atomic_write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _token(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", text.replace("/", "_per_")).strip("_") or "1"


def _num(v: float) -> str:
    # shortest round-trip repr: exact, locale-free, at least as precise as needed
    return repr(float(v))


def csv_text(curve: CurveResult) -> str:
    header = [f"x_{_token(curve.x_name)}_{_token(curve.x_unit)}", f"y_{_token(curve.y_name)}_{_token(curve.y_unit)}"]
    if curve.ci95 is not None:
        header.append("ci95")
    rows = [",".join(header)]
    for i, (x, y) in enumerate(zip(curve.x, curve.y)):
        cells = [_num(x), _num(y)]
        if curve.ci95 is not None:
            cells.append(_num(curve.ci95[i]))
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def emit_csv(curve: CurveResult, path) -> Path:
    return atomic_write(path, csv_text(curve))


# -- SVG ------------------------------------------------------------------

WIDTH, HEIGHT = 720, 450
LEFT, RIGHT, TOP, BOTTOM = 80, 190, 30, 60


def _nice_step(span: float) -> float:
    raw = span / 6.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            return m * mag
    return 10.0 * mag


def _linear_ticks(lo: float, hi: float) -> tuple[float, float, list[float]]:
    if hi <= lo:
        pad = abs(lo) * 0.1 or 1.0
        lo, hi = lo - pad, hi + pad
    step = _nice_step(hi - lo)
    start = math.floor(lo / step) * step
    stop = math.ceil(hi / step) * step
    n = int(round((stop - start) / step))
    return start, stop, [start + i * step for i in range(n + 1)]


def _fmt_tick(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e5 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:.6g}"


def svg_text(curves: list[CurveResult], style: str = "linear", title: str = "") -> str:
    if not curves:
        raise ValueError("need at least one curve to plot")
    if style not in ("linear", "semilog-y"):
        raise ValueError(f"unknown plot style {style!r}")
    log_y = style == "semilog-y"
    xs = [x for c in curves for x in c.x]
    ys = [y for c in curves for y in c.y if (y > 0 or not log_y)]
    x0, x1, xticks = _linear_ticks(min(xs), max(xs)) if xs else (0.0, 1.0, [0.0, 1.0])
    if log_y:
        if ys:
            e0, e1 = math.floor(math.log10(min(ys))), math.ceil(math.log10(max(ys)))
        else:
            e0, e1 = -6, 0
        if e1 <= e0:
            e1 = e0 + 1
        y0, y1 = float(e0), float(e1)
        yticks = [float(e) for e in range(e0, e1 + 1)]
    else:
        y0, y1, yticks = _linear_ticks(min(ys), max(ys)) if ys else (0.0, 1.0, [0.0, 1.0])

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x: float) -> float:
        return LEFT + (x - x0) / (x1 - x0) * pw

    def py(y: float) -> float:
        v = math.log10(y) if log_y else y
        return TOP + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{LEFT + pw / 2:.2f}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append('<g stroke="#dddddd" stroke-width="1">')
    for t in xticks:
        out.append(f'<line x1="{px(t):.2f}" y1="{TOP}" x2="{px(t):.2f}" y2="{TOP + ph}"/>')
    for t in yticks:
        y = TOP + ph - (t - y0) / (y1 - y0) * ph
        out.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + pw}" y2="{y:.2f}"/>')
    out.append("</g>")
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for t in xticks:
        out.append(f'<text x="{px(t):.2f}" y="{TOP + ph + 16}" text-anchor="middle">{_fmt_tick(t)}</text>')
    for t in yticks:
        y = TOP + ph - (t - y0) / (y1 - y0) * ph
        label = f"1e{int(t)}" if log_y else _fmt_tick(t)
        out.append(f'<text x="{LEFT - 6}" y="{y + 4:.2f}" text-anchor="end">{label}</text>')
    first = curves[0]
    xlabel = f"{first.x_name} [{first.x_unit}]" if first.x_unit else first.x_name
    ylabel = f"{first.y_name} [{first.y_unit}]" if first.y_unit else first.y_name
    out.append(f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 18}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.2f})">{escape(ylabel)}</text>'
    )
    for i, c in enumerate(curves):
        colour = PALETTE[i % len(PALETTE)]
        pts = [(px(x), py(y)) for x, y in zip(c.x, c.y) if y > 0 or not log_y]
        label = escape(c.label or f"series {i + 1}")
        out.append(f'<g class="series" data-label="{label}">')
        if len(pts) > 1:
            coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in pts)
            dash = ' stroke-dasharray="6 3"' if c.ci95 is not None else ""
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5"{dash} points="{coords}"/>')
        if c.ci95 is not None or len(pts) == 1:
            for a, b in pts:
                out.append(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="2.5" fill="{colour}"/>')
        ly = TOP + 14 + 18 * i
        lx = LEFT + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly}">{label}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(curves: list[CurveResult], path, style: str = "linear", title: str = "") -> Path:
    return atomic_write(path, svg_text(curves, style, title))
