"""Minimal static SVG line charts; no plotting dependency."""

from __future__ import annotations

from pathlib import Path

_COLORS = ("#1f6fb2", "#c44e52", "#2e8b57", "#8a2be2")
_W, _H = 720, 440
_ML, _MR, _MT, _MB = 64, 20, 36, 48


def line_chart(path, x, series, title: str, xlabel: str, ylabel: str) -> None:
    """Write a chart of one or more ``(label, ys)`` series against ``x``."""
    xs = [float(v) for v in x]
    if not xs or not series:
        raise ValueError("need data to plot")
    ys_all = [float(v) for _, ys in series for v in ys]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(0.0, min(ys_all)), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(v: float) -> float:
        return _ML + (v - x0) / (x1 - x0) * pw

    def py(v: float) -> float:
        return _MT + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
    ]
    # axes and ticks
    out.append(
        f'<path d="M {_ML} {_MT} V {_MT + ph} H {_ML + pw}" fill="none" stroke="black"/>'
    )
    for k in range(5):
        xv = x0 + k * (x1 - x0) / 4
        yv = y0 + k * (y1 - y0) / 4
        out.append(
            f'<line x1="{px(xv):.2f}" y1="{_MT + ph}" x2="{px(xv):.2f}" y2="{_MT + ph + 4}" stroke="black"/>'
            f'<text x="{px(xv):.2f}" y="{_MT + ph + 18}" text-anchor="middle">{xv:.3g}</text>'
        )
        out.append(
            f'<line x1="{_ML - 4}" y1="{py(yv):.2f}" x2="{_ML}" y2="{py(yv):.2f}" stroke="black"/>'
            f'<text x="{_ML - 7}" y="{py(yv) + 4:.2f}" text-anchor="end">{yv:.3g}</text>'
        )
    out.append(
        f'<text x="{_ML + pw / 2:.1f}" y="{_H - 10}" text-anchor="middle">{xlabel}</text>'
    )
    out.append(
        f'<text x="16" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_MT + ph / 2:.1f})">{ylabel}</text>'
    )
    for k, (label, ys) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{px(xv):.2f},{py(float(yv)):.2f}" for xv, yv in zip(xs, ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(
            f'<rect x="{_ML + pw - 130}" y="{_MT + 8 + 16 * k}" width="12" height="3" fill="{color}"/>'
            f'<text x="{_ML + pw - 112}" y="{_MT + 14 + 16 * k}">{label}</text>'
        )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")
