"""Deterministic SVG rendering of PBN regions and blind strips.

The PBN function is piecewise constant on the grid cut by birth and death
values; each cell of that grid inside the window gets its integer label at
the cell center.  Strips are shaded; the diagonal bounds the domain.
"""

from __future__ import annotations

import math
from typing import Optional

from .certify import BlindStripSet
from .persistence import INF, PersistenceDiagram, Segment, count_alive

_SIZE = 640.0
_PAD = 40.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Canvas:
    def __init__(self, u0: float, u1: float, v0: float, v1: float):
        self.u0, self.u1, self.v0, self.v1 = u0, u1, v0, v1
        self.su = (_SIZE - 2 * _PAD) / (u1 - u0)
        self.sv = (_SIZE - 2 * _PAD) / (v1 - v0)

    def x(self, u: float) -> float:
        return _PAD + (u - self.u0) * self.su

    def y(self, v: float) -> float:
        return _SIZE - _PAD - (v - self.v0) * self.sv

    def clamp_u(self, u: float) -> float:
        return min(max(u, self.u0), self.u1)

    def clamp_v(self, v: float) -> float:
        return min(max(v, self.v0), self.v1)


def plot_regions(D: PersistenceDiagram, strips: Optional[BlindStripSet],
                 window: tuple[float, float, float, float], degree: int = 0) -> str:
    """Render the degree-i PBN values of a diagram over a (u, v) window."""
    u0, u1, v0, v1 = map(float, window)
    if not (u0 < u1 and v0 < v1):
        raise ValueError("empty window")
    cv = _Canvas(u0, u1, v0, v1)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{int(_SIZE)}" height="{int(_SIZE)}" '
        f'viewBox="0 0 {int(_SIZE)} {int(_SIZE)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    # Region labels: sample the count inside every grid cell cut by the
    # diagram's coordinates, restricted above the diagonal.
    cuts_u = sorted({u0, u1} | {b for b, _ in D.pairs(degree) if u0 < b < u1})
    cuts_v = sorted({v0, v1} | {d for _, d in D.pairs(degree) if d != INF and v0 < d < v1}
                    | {b for b, _ in D.pairs(degree) if v0 < b < v1})
    labels = []
    for iu in range(len(cuts_u) - 1):
        for iv in range(len(cuts_v) - 1):
            # Representative point strictly inside the cell and above the diagonal.
            ua, ub = cuts_u[iu], cuts_u[iu + 1]
            va, vb = cuts_v[iv], cuts_v[iv + 1]
            uu = (ua + ub) / 2.0
            vv = (va + vb) / 2.0
            if vv <= uu:
                if vb <= ua:
                    continue
                uu = max(ua, min(ub, (max(ua, va) + min(ub, vb)) / 2.0) - 0.25 * (ub - ua))
                vv = min(vb, uu + 0.5 * (vb - max(va, uu)))
                if vv <= uu:
                    continue
            k = count_alive(D, degree, uu, vv)
            labels.append((uu, vv, k))

    if strips is not None:
        parts.append('<g fill="#c9c9c9" fill-opacity="0.55" stroke="none">')
        for seg in strips.segments:
            W = strips.W
            if seg.axis == Segment.DIAGONAL:
                corners = [
                    (cv.clamp_u(u0), cv.clamp_v(u0 + 2 * W)),
                    (cv.clamp_u(u1), cv.clamp_v(u1 + 2 * W)),
                    (cv.clamp_u(u1), cv.clamp_v(u1)),
                    (cv.clamp_u(u0), cv.clamp_v(u0)),
                ]
                pts = " ".join(f"{_fmt(cv.x(a))},{_fmt(cv.y(b))}" for a, b in corners)
                parts.append(f'<polygon points="{pts}"/>')
                continue
            if seg.axis == Segment.VERTICAL:
                ua, ub = seg.value - W, seg.value + W
                va, vb = seg.lo - W, seg.hi + W
            else:
                va, vb = seg.value - W, seg.value + W
                ua, ub = seg.lo - W, seg.hi + W
            ua, ub = cv.clamp_u(ua), cv.clamp_u(ub)
            va, vb = cv.clamp_v(va), cv.clamp_v(vb)
            if ua >= ub or va >= vb:
                continue
            parts.append(
                f'<rect x="{_fmt(cv.x(ua))}" y="{_fmt(cv.y(vb))}" '
                f'width="{_fmt(cv.x(ub) - cv.x(ua))}" height="{_fmt(cv.y(va) - cv.y(vb))}"/>'
            )
        parts.append("</g>")

    # Discontinuity lines of the diagram itself.
    parts.append('<g stroke="#1f4e79" stroke-width="1.5">')
    for b, d in D.pairs(degree):
        top = v1 if d == INF else cv.clamp_v(d)
        if u0 <= b <= u1 and top > max(b, v0):
            parts.append(f'<line x1="{_fmt(cv.x(b))}" y1="{_fmt(cv.y(cv.clamp_v(max(b, v0))))}" '
                         f'x2="{_fmt(cv.x(b))}" y2="{_fmt(cv.y(top))}"/>')
        if d != INF and v0 <= d <= v1 and cv.clamp_u(min(d, u1)) > cv.clamp_u(b):
            parts.append(f'<line x1="{_fmt(cv.x(cv.clamp_u(b)))}" y1="{_fmt(cv.y(d))}" '
                         f'x2="{_fmt(cv.x(cv.clamp_u(min(d, u1))))}" y2="{_fmt(cv.y(d))}"/>')
    parts.append("</g>")

    # Diagonal boundary of the domain.
    lo = max(u0, v0)
    hi = min(u1, v1)
    if lo < hi:
        parts.append(f'<line x1="{_fmt(cv.x(lo))}" y1="{_fmt(cv.y(lo))}" '
                     f'x2="{_fmt(cv.x(hi))}" y2="{_fmt(cv.y(hi))}" '
                     f'stroke="black" stroke-width="1"/>')

    parts.append('<g font-family="monospace" font-size="16" fill="#222" '
                 'text-anchor="middle">')
    for uu, vv, k in labels:
        parts.append(f'<text x="{_fmt(cv.x(uu))}" y="{_fmt(cv.y(vv))}">{k}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
