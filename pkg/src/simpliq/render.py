"""Static SVG renderings: sweep line chart and ambiguity heatmap.

Hand-rolled markup so identical inputs produce byte-identical files.
"""

from __future__ import annotations

from .ambiguity import AmbiguityGrid, CertainVerdict, PlainVerdict
from .ising import SweepPoint

__all__ = ["sweep_svg", "grid_svg"]

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 56, 16, 16, 40

_SERIES = (("C_mu", "#4477aa"), ("C_q", "#ee6677"), ("E", "#228833"))

_PLAIN_COLORS = {
    PlainVerdict.CONSISTENT: "#4477aa",
    PlainVerdict.AMBIGUOUS: "#ee6677",
    PlainVerdict.TIED: "#bbbbbb",
}
_CERTAIN_COLORS = {
    CertainVerdict.CERTAINLY_CONSISTENT: "#4477aa",
    CertainVerdict.CERTAINLY_AMBIGUOUS: "#ee6677",
    CertainVerdict.INDETERMINATE: "#dddddd",
}


def _f(x: float) -> str:
    return f"{x:.2f}"


def sweep_svg(points: list[SweepPoint]) -> str:
    """Line chart of C_mu, C_q, and E against temperature."""
    usable = [pt for pt in points if pt.ok]
    if not usable:
        raise ValueError("no valid sweep points to draw")
    t_lo = usable[0].temperature
    t_hi = usable[-1].temperature
    y_hi = max(max(pt.profile.C_mu, pt.profile.C_q, pt.profile.E) for pt in usable)
    y_hi = max(y_hi, 1e-12)
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def sx(t: float) -> float:
        return _ML + (t - t_lo) / (t_hi - t_lo) * plot_w

    def sy(v: float) -> float:
        return _MT + (1.0 - v / y_hi) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#222222"/>',
    ]
    for name, color in _SERIES:
        coords = " ".join(
            f"{_f(sx(pt.temperature))},{_f(sy(getattr(pt.profile, name)))}" for pt in usable
        )
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
    for i, (name, color) in enumerate(_SERIES):
        y = _MT + 16 + 18 * i
        parts.append(f'<rect x="{_ML + 10}" y="{y - 9}" width="14" height="4" fill="{color}"/>')
        parts.append(f'<text x="{_ML + 30}" y="{y}" font-size="13" font-family="sans-serif">{name}</text>')
    parts.append(
        f'<text x="{_ML}" y="{_H - 12}" font-size="13" font-family="sans-serif">T = {_f(t_lo)}</text>'
    )
    parts.append(
        f'<text x="{_W - _MR - 70}" y="{_H - 12}" font-size="13" font-family="sans-serif">T = {_f(t_hi)}</text>'
    )
    parts.append(
        f'<text x="8" y="{_MT + 12}" font-size="13" font-family="sans-serif">{_f(y_hi)} bits</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def grid_svg(grid: AmbiguityGrid) -> str:
    """Heatmap of the verdict grid, one fill color per verdict class."""
    n = len(grid.temperatures)
    plot = 560
    cell = plot / n
    w = plot + _ML + _MR
    h = plot + _MT + _MB
    certain_mode = grid.mode == "certain"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for i in range(n):  # T1 along x
        for j in range(n):  # T2 along y, origin bottom-left
            v = grid.verdicts[i][j]
            color = _CERTAIN_COLORS[v.certain] if certain_mode else _PLAIN_COLORS[v.plain]
            x = _ML + i * cell
            y = _MT + (n - 1 - j) * cell
            parts.append(
                f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(cell + 0.5)}" '
                f'height="{_f(cell + 0.5)}" fill="{color}"/>'
            )
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{plot}" height="{plot}" fill="none" stroke="#222222"/>'
    )
    t_max = grid.temperatures[-1]
    parts.append(
        f'<text x="{_ML}" y="{_MT + plot + 24}" font-size="13" font-family="sans-serif">T1: 0 .. {_f(t_max)}</text>'
    )
    parts.append(
        f'<text x="8" y="{_MT + 12}" font-size="13" font-family="sans-serif">T2: 0 .. {_f(t_max)}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
