"""SVG drawings of curves and coverings with inset segments.

Each unit segment is drawn as three pieces: a hook from the corner point
near its first vertex, the straight middle part, and a hook to the corner
point near its last vertex.  Where the curve turns at a vertex V, coming in
along u and leaving along w, both hooks meet at V + alpha (w - u).  Free
curve ends stop straight at distance alpha from the vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .covering import Covering
from .curves import Curve, NotDerivable, derivative

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


@dataclass(frozen=True)
class RenderStyle:
    alpha: float = 0.15
    stroke_width: float = 0.06
    palette: tuple = PALETTE
    show_tiles: bool = False
    show_derivatives: int = 0
    scale: float = 20.0
    margin: float = 1.0

    def __post_init__(self):
        if not 0 < self.alpha < 0.25:
            raise ValueError("alpha must lie in (0, 1/4)")


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pt(p) -> str:
    return f"{_num(p[0])},{_num(p[1])}"


def segment_paths(c: Curve, alpha: float = 0.15, lo: int = 0,
                  hi: Optional[int] = None) -> np.ndarray:
    """(k, 4, 2) array: the four defining points of each inset segment
    lo..hi-1."""
    v = c.vertices().astype(float)
    n = c.n_segments
    hi = n if hi is None else hi
    d = v[1:] - v[:-1]
    length = np.sqrt((d ** 2).sum(axis=1))[:, None]
    u = d / length
    a = alpha * length
    du = np.zeros_like(u)  # u_i - u_{i-1}, with an open start
    du[0] = u[0]
    du[1:] = u[1:] - u[:-1]
    dn = np.zeros_like(u)  # u_{i+1} - u_i, with an open end
    dn[:-1] = u[1:] - u[:-1]
    dn[-1] = -u[-1]
    out = np.stack([v[:-1] + a * du, v[:-1] + 2 * a * u,
                    v[1:] - 2 * a * u, v[1:] + a * dn], axis=1)
    return out[lo:hi]


def _path(pts, color: str, width: float, extra: str = "") -> str:
    d = "M" + " L".join(_pt(p) for p in pts)
    return (f'<path d="{d}" fill="none" stroke="{color}" '
            f'stroke-width="{_num(width)}"{extra}/>')


def _tile(c: Curve, i: int, alpha: float, color: str, p=None) -> list:
    """Diamond around the support, a bump at the end hook and a notch at
    the start hook (unit curves only)."""
    v = c.vertices().astype(float)
    m = (v[i] + v[i + 1]) / 2
    u = v[i + 1] - v[i]
    w = np.array([-u[1], u[0]])
    diamond = [m - u / 2, m + w / 2, m + u / 2, m - w / 2]
    if p is None:
        p = segment_paths(c, alpha, i, i + 1)[0]
    out = [f'<polygon points="{" ".join(_pt(q) for q in diamond)}" '
           f'fill="{color}" fill-opacity="0.25" stroke="none"/>']
    for centre, fill in ((p[3], color), (p[0], "white")):
        x, y = centre
        out.append(f'<rect x="{_num(x - alpha)}" y="{_num(y - alpha)}" '
                   f'width="{_num(2 * alpha)}" height="{_num(2 * alpha)}" '
                   f'fill="{fill}" fill-opacity="0.5" stroke="none"/>')
    return out


def _document(body: list, box, style: RenderStyle) -> str:
    x0, y0, x1, y1 = box
    m = style.margin
    W = (x1 - x0 + 2 * m) * style.scale
    H = (y1 - y0 + 2 * m) * style.scale
    s = style.scale
    tx, ty = (m - x0) * s, (y1 + m) * s
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(W)}" height="{_num(H)}" '
            f'viewBox="0 0 {_num(W)} {_num(H)}">\n'
            f'<g transform="matrix({_num(s)} 0 0 {_num(-s)} {_num(tx)} '
            f'{_num(ty)})" stroke-linecap="round" stroke-linejoin="round">')
    return "\n".join([head] + body + ["</g>", "</svg>"]) + "\n"


def _bbox(points: np.ndarray):
    lo, hi = points.min(axis=0), points.max(axis=0)
    return (float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))


def render_curve(c: Curve, style: Optional[RenderStyle] = None) -> str:
    style = style or RenderStyle()
    body = []
    curves = [c]
    for _ in range(style.show_derivatives):
        try:
            curves.append(derivative(curves[-1], trim=True))
        except (NotDerivable, ValueError):
            break
    if style.show_tiles and c.level == 0:
        for i in range(c.n_segments):
            body += _tile(c, i, style.alpha, style.palette[0])
    # deepest derivative first so the curve itself is on top
    for depth in range(len(curves) - 1, -1, -1):
        color = style.palette[depth % len(style.palette)]
        width = style.stroke_width * (1 + depth)
        op = "" if depth == 0 else ' stroke-opacity="0.6"'
        for pts in segment_paths(curves[depth], style.alpha):
            body.append(_path(pts, color, width, op))
    return _document(body, _bbox(c.vertices()), style)


def render_covering(cov: Covering, style: Optional[RenderStyle] = None) -> str:
    """One colour per curve id; only segments with support in the window."""
    style = style or RenderStyle()
    ids = sorted(cov.curve_ids())
    color = {cid: style.palette[k % len(style.palette)]
             for k, cid in enumerate(ids)}
    x0, y0, x1, y1 = cov.window
    body = []
    for p in cov.pieces:
        v = p.curve.vertices()
        inside = ((v[:, 0] >= x0) & (v[:, 0] <= x1)
                  & (v[:, 1] >= y0) & (v[:, 1] <= y1))
        keep = inside[:-1] & inside[1:]
        if not keep.any():
            continue
        body.append(f'<g id="curve-{p.curve_id}-{p.first}">')
        paths = segment_paths(p.curve, style.alpha)
        for i in np.flatnonzero(keep).tolist():
            if style.show_tiles and p.curve.level == 0:
                body += _tile(p.curve, i, style.alpha, color[p.curve_id],
                              paths[i])
            body.append(_path(paths[i], color[p.curve_id],
                              style.stroke_width))
        body.append("</g>")
    return _document(body, (x0, y0, x1, y1), style)
