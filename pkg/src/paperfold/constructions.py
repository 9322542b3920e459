"""Explicit coverings of the plane and the case split on curve counts.

Complete curves are placed by naming one segment: ``Placement(spec, h,
end, heading)`` puts the segment C_h so that it ends at ``end`` moving in
direction ``heading`` (0=E, 1=N, 2=W, 3=S).  A covering of a window is cut
from long enough pieces of its complete curves.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .covering import Covering, Piece
from .curves import Curve
from .sequences import (ALTERNATING, CompleteSpec, InfFoldingSpec,
                        Unclassifiable, alternating_spec, from_two_adic,
                        positive_spec)


class Placement(NamedTuple):
    curve_id: str
    spec: CompleteSpec
    h: int  # index of the anchoring segment
    end: tuple  # where C_h ends
    heading: int  # direction of C_h
    mirror: bool = False  # reflect in the x-axis after placing


def piece_length(half_width: int) -> int:
    """Segments to take on each side of the anchor: every complete curve
    met here reaches distance r within about 4 r^2 segments."""
    n = 1 << 10
    while n < 16 * (half_width + 8) ** 2:
        n <<= 1
    return n


def place(p: Placement, span: int) -> Piece:
    """Segments C_{h-span} .. C_{h+span} of a placed complete curve."""
    lo, hi = p.h - span, p.h + span
    turns = tuple(int(a) for a in p.spec.letters(lo, hi - 1))
    if 0 in turns:
        raise ValueError("the span crosses an undetermined letter")
    c = Curve((0, 0), 0, turns, 0)
    k = p.h - lo  # position of C_h in the piece
    d = int(c.directions()[k])
    c = c.rotated(p.heading - d)
    x, y = c.vertices()[k + 1]
    c = c.translated(p.end[0] - int(x), p.end[1] - int(y))
    if p.mirror:
        c = c.mirrored()
    return Piece(p.curve_id, c, lo)


def covering_from_placements(placements, half_width: int, name: str = ""
                             ) -> Covering:
    span = piece_length(half_width)
    hw = half_width
    return Covering((-hw, -hw, hw, hw), [place(p, span) for p in placements],
                    name, {"placements": placements})


def rotate_point(pt, q):
    x, y = pt
    for _ in range(q % 4):
        x, y = -y, x
    return (x, y)


def _rotated(p: Placement, q: int, cid: str) -> Placement:
    return p._replace(curve_id=cid, end=rotate_point(p.end, q),
                      heading=(p.heading + q) % 4)


# -- the two coverings with a point at infinity ---------------------------------

def positive_placements():
    s = positive_spec()
    c = Placement("C", s, 1, (1, 0), 0)
    return [c, _rotated(c, 2, "D")]


def positive_covering(half_width: int = 16) -> Covering:
    """Two curves for (bar R, +1, R) with R all-plus, through the origin."""
    return covering_from_placements(positive_placements(), half_width,
                                    "positive")


def t_spec() -> CompleteSpec:
    """The limit T of R_2n for the alternating R, R_2n sitting in
    R_2n+2 as its second copy: a_h = R(h - 2/3)."""
    return from_two_adic(ALTERNATING, Fraction(-2, 3))


def alternating_placements():
    s, t = alternating_spec(), t_spec()
    tb = t.bar()
    c = Placement("S1", s, 1, (1, 0), 0)
    a = Placement("T1", t, 1, (0, 1), 0)
    b = Placement("Tbar1", tb, -1, (1, 0), 2)
    return [c, _rotated(c, 2, "S2"), a, _rotated(a, 2, "T2"),
            b, _rotated(b, 2, "Tbar2")]


def alternating_covering(half_width: int = 16) -> Covering:
    """Six curves: two for S = (bar R, +1, R), two for T, two for bar T."""
    return covering_from_placements(alternating_placements(), half_width,
                                    "alternating")


# -- a covering without local isomorphism ---------------------------------------

def _quarter_about_half(p: Placement, q: int, cid: str) -> Placement:
    """Rotate a placement by q quarter turns about (1/2, 1/2)."""
    x, y = p.end
    for _ in range(q % 4):
        x, y = 1 - y, x
    return p._replace(curve_id=cid, end=(x, y), heading=(p.heading + q) % 4)


def fig9_placements():
    t = t_spec()
    m = t.bar().negated()
    a = Placement("T1", t, 0, (0, 1), 3)
    b = Placement("mTbar1", m, 0, (2, -1), 3)
    return ([_quarter_about_half(a, q, f"T{q + 1}") for q in range(4)]
            + [_quarter_about_half(b, q, f"mTbar{q + 1}") for q in range(4)])


def fig9_covering(half_width: int = 16) -> Covering:
    """Four curves for T and four for -bar T, invariant under the quarter
    turn about (1/2, 1/2)."""
    return covering_from_placements(fig9_placements(), half_width, "fig9")


# -- the effective single-curve covering ---------------------------------------

class Triangle(NamedTuple):
    """Isosceles right triangle: right-angle vertex and the two acute ones."""
    right: tuple
    a: tuple
    b: tuple

    def ccw(self):
        p, q, r = (np.array(v, dtype=np.int64) for v in (self.right, self.a, self.b))
        if (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) < 0:
            q, r = r, q
        return p, q, r

    def side_of(self, pts2: np.ndarray) -> np.ndarray:
        """For doubled coordinates: +1 strictly inside, 0 on an edge, -1 out."""
        p, q, r = (2 * v for v in self.ccw())
        s = []
        for u, w in ((p, q), (q, r), (r, p)):
            s.append((w[0] - u[0]) * (pts2[:, 1] - u[1])
                     - (w[1] - u[1]) * (pts2[:, 0] - u[0]))
        s = np.stack(s, axis=1)
        return np.where((s > 0).all(axis=1), 1,
                        np.where((s >= 0).all(axis=1), 0, -1))

    def bbox(self):
        xs = [self.right[0], self.a[0], self.b[0]]
        ys = [self.right[1], self.a[1], self.b[1]]
        return min(xs), min(ys), max(xs), max(ys)

    def contains_strictly(self, other: "Triangle") -> bool:
        pts = 2 * np.array([other.right, other.a, other.b], dtype=np.int64)
        return bool((self.side_of(pts) == 1).all())


def _unit_edges(box):
    """All unit edges (x, y, x', y') with both ends in the box."""
    x0, y0, x1, y1 = box
    xs, ys = np.meshgrid(np.arange(x0, x1), np.arange(y0, y1 + 1), indexing="ij")
    h = np.stack([xs.ravel(), ys.ravel(), xs.ravel() + 1, ys.ravel()], axis=1)
    xs, ys = np.meshgrid(np.arange(x0, x1 + 1), np.arange(y0, y1), indexing="ij")
    v = np.stack([xs.ravel(), ys.ravel(), xs.ravel(), ys.ravel() + 1], axis=1)
    return np.concatenate([h, v])


def _edge_codes(e: np.ndarray, box) -> np.ndarray:
    x0, y0, x1, y1 = box
    w = y1 - y0 + 2
    vert = (e[:, 0] == e[:, 2]).astype(np.int64)
    return ((e[:, 0] - x0) * w + (e[:, 1] - y0)) * 2 + vert


@functools.lru_cache(maxsize=256)
def _interior_count(tri: Triangle) -> int:
    edges = _unit_edges(tri.bbox())
    return int((tri.side_of(edges[:, :2] + edges[:, 2:]) == 1).sum())


def _axis_sides(tri: Triangle):
    """Unit edges along each axis-parallel side, in order."""
    out = []
    for u, w in ((tri.right, tri.a), (tri.right, tri.b), (tri.a, tri.b)):
        if u[0] == w[0]:
            lo, hi = sorted((u[1], w[1]))
            out.append([(u[0], y, u[0], y + 1) for y in range(lo, hi)])
        elif u[1] == w[1]:
            lo, hi = sorted((u[0], w[0]))
            out.append([(x, u[1], x + 1, u[1]) for x in range(lo, hi)])
    return out


def covers_triangle(c: Curve, tri: Triangle) -> bool:
    """The five covering conditions for a level-0 curve and a triangle."""
    ends = {c.start, c.end}
    if tri.right not in ends or not ({tri.a, tri.b} & (ends - {tri.right})):
        return False
    sup = c.supports()
    side = tri.side_of(sup[:, :2] + sup[:, 2:])
    if (side < 0).any():
        return False
    # supports are distinct for a folding curve, so counting suffices
    if int((side == 1).sum()) != _interior_count(tri):
        return False
    on = {tuple(e) for e in sup[side == 0].tolist()}
    for run in _axis_sides(tri):
        flags = np.array([e in on for e in run])
        if flags.size and not (flags[1:] != flags[:-1]).all():
            return False
    return True


def covered_triangle(c: Curve) -> Optional[Triangle]:
    """The triangle a folding curve covers, if any (the right angle at one
    end, an acute vertex at the other)."""
    v = c.vertices()
    box = (*v.min(axis=0).tolist(), *v.max(axis=0).tolist())
    for r, o in ((c.start, c.end), (c.end, c.start)):
        d = (o[0] - r[0], o[1] - r[1])
        for sgn in (1, -1):
            # the third vertex: rotate (o - r) by +-90 degrees about r
            third = (r[0] - sgn * d[1], r[1] + sgn * d[0])
            tri = Triangle(tuple(r), tuple(o), third)
            tb = tri.bbox()
            inside = (tb[0] <= box[0] and tb[1] <= box[1]
                      and box[2] <= tb[2] and box[3] <= tb[3])
            if inside and covers_triangle(c, tri):
                return tri
    return None


def extend_once(c: Curve, tri: Triangle, eps: int) -> Curve:
    """One unfolding around the right-angle end of a curve covering ``tri``."""
    from .words import bar as bar_word
    s = c.turns
    if c.start == tri.right:
        turns = bar_word(s) + (eps,) + s
        k = c.n_segments  # C sits at segments k .. 2k-1
        tmp = Curve((0, 0), 0, turns, 0)
        rot = c.dir - int(tmp.directions()[k])
        tmp = tmp.rotated(rot)
        x, y = tmp.vertices()[k]
        return tmp.translated(c.start[0] - int(x), c.start[1] - int(y))
    if c.end == tri.right:
        return Curve(c.start, c.dir, s + (eps,) + bar_word(s), 0)
    raise ValueError("the right angle is not at an end of the curve")


class NoExtension(ValueError):
    pass


def extend_covering_step(c: Curve, tri: Triangle, target: Triangle) -> Curve:
    """The unfolding of ``c`` (centre sign -1 tried first) that covers
    ``target``, a triangle made of ``tri`` and an adjacent copy."""
    if not covers_triangle(c, tri):
        raise NoExtension("the curve does not cover the triangle")
    for eps in (-1, 1):
        nxt = extend_once(c, tri, eps)
        if covers_triangle(nxt, target):
            return nxt
    raise NoExtension("neither unfolding covers the target")


class Round(NamedTuple):
    schedule: tuple
    curve: Curve
    triangle: Triangle


def extension_round(c: Curve, tri: Triangle) -> Round:
    """Six unfoldings taking a (2n+1)-folding curve covering ``tri`` to a
    (2n+7)-folding curve covering a triangle with ``tri`` in its interior.
    Schedules are tried in lexicographic order, -1 before +1."""
    def search(cur, t, sched):
        if len(sched) == 6:
            return Round(tuple(sched), cur, t) if t.contains_strictly(tri) else None
        for eps in (-1, 1):
            nxt = extend_once(cur, t, eps)
            nt = covered_triangle(nxt)
            if nt is not None:
                found = search(nxt, nt, sched + [eps])
                if found:
                    return found
        return None
    found = search(c, tri, [])
    if found is None:
        raise ValueError("no schedule of six unfoldings works")
    return found


def effective_seed() -> tuple:
    """First 3-folding curve from the origin heading east (in fold order,
    -1 before +1) that covers a triangle."""
    import itertools
    from .curves import folding_curve
    for dirs in itertools.product((-1, 1), repeat=3):
        c = folding_curve(dirs)
        t = covered_triangle(c)
        if t is not None:
            return c, t
    raise ValueError("no 3-folding curve covers a triangle")


def inner_box(tri: Triangle, margin: int = 1) -> tuple:
    """A large axis-parallel box inside the triangle, ``margin`` away from
    its sides."""
    p, q, r = tri.ccw()
    # search boxes centred on the incentre-ish point, growing while inside
    cx = (p[0] + q[0] + r[0]) // 3
    cy = (p[1] + q[1] + r[1]) // 3
    hx = hy = 0
    grow = True
    while grow:
        grow = False
        for dx, dy in ((1, 0), (0, 1)):
            bx = (cx - hx - dx - margin, cy - hy - dy - margin,
                  cx + hx + dx + margin, cy + hy + dy + margin)
            corners = 2 * np.array([(bx[0], bx[1]), (bx[0], bx[3]),
                                    (bx[2], bx[1]), (bx[2], bx[3])])
            if (tri.side_of(corners) == 1).all():
                hx, hy = hx + dx, hy + dy
                grow = True
                break
    return (int(cx - hx), int(cy - hy), int(cx + hx), int(cy + hy))


@functools.lru_cache(maxsize=None)
def _effective_history(rounds: int) -> tuple:
    if rounds == 0:
        c, t = effective_seed()
        return ((None, c, t),)
    prev = _effective_history(rounds - 1)
    _, c, t = prev[-1]
    rd = extension_round(c, t)
    return prev + ((rd.schedule, rd.curve, rd.triangle),)


def effective_single_covering(rounds: int = 3) -> Covering:
    """A single finite folding curve grown by rounds of six unfoldings; the
    window is a box deep inside the final triangle."""
    if rounds < 1:
        raise ValueError("rounds must be positive")
    history = _effective_history(int(rounds))
    _, c, t = history[-1]
    return Covering(inner_box(t), [Piece("C", c, 0)], "effective",
                    {"triangles": [h[2] for h in history],
                     "schedules": [h[0] for h in history[1:]]})


def covering_case(spec) -> int:
    """Number of curves in the coverings by curves associated to a
    sequence (R bar, c, R): 6 when {n : b_n = (-1)^n} is finite or
    cofinite, 2 otherwise.

    Accepts the fold bits themselves or a spec built by ``from_infinite``.
    """
    bits = spec if isinstance(spec, InfFoldingSpec) else \
        getattr(spec, "source_bits", None)
    if bits is None or bits.is_black_box:
        raise Unclassifiable("the fold bits have no periodic description")
    start = len(bits.prefix)
    span = len(bits.period) * (1 if len(bits.period) % 2 == 0 else 2)
    hits = {bits.bit(n) == (-1) ** n for n in range(start, start + span)}
    return 6 if len(hits) == 1 else 2
