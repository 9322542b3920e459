"""Lattice curves built from turn words, and their derivatives.

A curve is a start point, the direction of its first segment, a turn word
(+1 = left) and a level.  Levels share one integer frame: at level 2j the
segments are axis steps of length 2^j, at level 2j+1 they are diagonal
steps 2^j (+-1, +-1).  Taking a derivative raises the level by one, so a
curve and all its derivatives can be drawn on the same picture.

Directions are octants 0..7 counted counterclockwise from east; a curve at
level k only uses octants of parity k mod 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .words import as_word, format_word, gen_n_folding, parse_word

OCT = np.array([(1, 0), (1, 1), (0, 1), (-1, 1),
                (-1, 0), (-1, -1), (0, -1), (1, -1)], dtype=np.int64)

AXIS_NAMES = ("E", "N", "W", "S")
DIAG_NAMES = ("NE", "NW", "SW", "SE")


class NotDerivable(ValueError):
    pass


class Ambiguous(ValueError):
    pass


class NotFolding(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    start: tuple
    dir: int  # 0..3; octant 2*dir + level % 2
    turns: tuple
    level: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False,
                         hash=False)

    def __post_init__(self):
        object.__setattr__(self, "start", (int(self.start[0]),
                                           int(self.start[1])))
        object.__setattr__(self, "dir", int(self.dir) % 4)
        object.__setattr__(self, "turns", as_word(self.turns))
        if self.level < 0:
            raise ValueError("level must be >= 0")

    @property
    def n_segments(self) -> int:
        return len(self.turns) + 1

    @property
    def octant(self) -> int:
        return 2 * self.dir + self.level % 2

    @property
    def step(self) -> int:
        return 1 << (self.level // 2)

    def octants(self) -> np.ndarray:
        """Octant of every segment."""
        if "oct" not in self._cache:
            t = np.asarray(self.turns, dtype=np.int64)
            o = self.octant + 2 * np.concatenate(([0], np.cumsum(t)))
            self._cache["oct"] = o % 8
        return self._cache["oct"]

    def directions(self) -> np.ndarray:
        """Direction index 0..3 of every segment (octant // 2)."""
        return self.octants() // 2

    def vertices(self) -> np.ndarray:
        """(n_segments + 1, 2) array of vertices in order."""
        if "vert" not in self._cache:
            steps = OCT[self.octants()] * self.step
            v = np.empty((self.n_segments + 1, 2), dtype=np.int64)
            v[0] = self.start
            np.cumsum(steps, axis=0, out=v[1:])
            v[1:] += self.start
            self._cache["vert"] = v
        return self._cache["vert"]

    @property
    def end(self) -> tuple:
        x, y = self.vertices()[-1]
        return int(x), int(y)

    def supports(self) -> np.ndarray:
        """(n, 4) array of unoriented segments (lexicographically sorted
        endpoint pairs)."""
        v = self.vertices()
        a, b = v[:-1], v[1:]
        swap = (a[:, 0] > b[:, 0]) | ((a[:, 0] == b[:, 0]) & (a[:, 1] > b[:, 1]))
        lo = np.where(swap[:, None], b, a)
        hi = np.where(swap[:, None], a, b)
        return np.hstack([lo, hi])

    def reversed(self) -> "Curve":
        """The same segments traversed backwards (turn word bar)."""
        o_last = int(self.octants()[-1])
        return Curve(self.end, ((o_last + 4) % 8) // 2,
                     tuple(-a for a in reversed(self.turns)), self.level)

    def translated(self, dx: int, dy: int) -> "Curve":
        return Curve((self.start[0] + dx, self.start[1] + dy), self.dir,
                     self.turns, self.level)

    def rotated(self, quarter_turns: int) -> "Curve":
        """Rotate about the origin by a multiple of 90 degrees."""
        q = quarter_turns % 4
        x, y = self.start
        for _ in range(q):
            x, y = -y, x
        return Curve((x, y), (self.dir + q) % 4, self.turns, self.level)

    def mirrored(self) -> "Curve":
        """Reflect in the x-axis (turn word negated)."""
        o = (-(2 * self.dir + self.level % 2)) % 8
        return Curve((self.start[0], -self.start[1]), (o - self.level % 2) // 2,
                     tuple(-a for a in self.turns), self.level)

    def scaled2(self) -> "Curve":
        """Homothety of ratio 2 about the origin (level + 2)."""
        return Curve((2 * self.start[0], 2 * self.start[1]), self.dir,
                     self.turns, self.level + 2)

    def normalized(self) -> "Curve":
        """The same turn word as a level-0 curve from the origin heading E."""
        return Curve((0, 0), 0, self.turns, 0)

    def sub(self, i: int, j: int) -> "Curve":
        """Segments i..j-1 (0-based) as a curve."""
        if not 0 <= i < j <= self.n_segments:
            raise IndexError("bad segment range")
        v = self.vertices()[i]
        o = int(self.octants()[i])
        return Curve((int(v[0]), int(v[1])), o // 2, self.turns[i:j - 1],
                     self.level)

    def to_record(self) -> dict:
        names = AXIS_NAMES if self.level % 2 == 0 else DIAG_NAMES
        return {"start": list(self.start), "dir": names[self.dir],
                "turns": format_word(self.turns), "level": self.level,
                "lattice": "unit" if self.level % 2 == 0 else "diag"}

    @classmethod
    def from_record(cls, rec: dict) -> "Curve":
        level = rec.get("level")
        if level is None:
            level = 0 if rec.get("lattice", "unit") == "unit" else 1
        names = AXIS_NAMES if level % 2 == 0 else DIAG_NAMES
        d = rec["dir"]
        d = names.index(d) if isinstance(d, str) else int(d)
        turns = rec.get("turns", "")
        turns = parse_word(turns) if isinstance(turns, str) else turns
        return cls(tuple(rec["start"]), d, turns, level)


def curve_from_turns(start=(0, 0), start_dir=0, turns=(), level: int = 0) -> Curve:
    if isinstance(start_dir, str):
        names = AXIS_NAMES if level % 2 == 0 else DIAG_NAMES
        start_dir = names.index(start_dir)
    return Curve(tuple(start), start_dir, tuple(turns), level)


def folding_curve(dirs, start=(0, 0), start_dir=0, level: int = 0) -> Curve:
    return Curve(tuple(start), start_dir, gen_n_folding(dirs), level)


def all_folding_curves(n: int, level: int = 0):
    """The 2^n n-folding curves from the origin heading east."""
    for dirs in itertools.product((1, -1), repeat=n):
        yield folding_curve(dirs, level=level)


# -- self-avoidance -----------------------------------------------------------

def _unique_rows(a: np.ndarray) -> int:
    if a.shape[0] == 0:
        return 0
    return np.unique(a, axis=0).shape[0]


def is_self_avoiding(c: Curve) -> bool:
    """Segments pairwise have distinct supports."""
    s = c.supports()
    return _unique_rows(s) == s.shape[0]


def visits_vertices_once(c: Curve) -> bool:
    """The stricter walk condition: no lattice point is visited twice."""
    v = c.vertices()
    return _unique_rows(v) == v.shape[0]


# -- derivatives --------------------------------------------------------------

def _alternates(w) -> bool:
    return all(w[i + 1] == -w[i] for i in range(len(w) - 1))


def derivable_phases(turns) -> list:
    """Phases p in {0, 1} such that turns[p::2] alternates.

    Phase 0 means eta_1, eta_3, ... alternate (pairs start at the first
    segment); phase 1 means eta_2, eta_4, ... alternate.
    """
    return [p for p in (0, 1) if _alternates(turns[p::2])]


def derivative(c: Curve, trim: bool = False) -> Curve:
    """Merge segment pairs (C_1, C_2), (C_3, C_4), ... into one segment each.

    By default the curve must have an even number of segments and its odd
    turns must alternate.  With ``trim`` the pairing may start at the
    second segment; unpaired end segments are dropped, and a curve that can
    be paired both ways raises Ambiguous.
    """
    t = c.turns
    if not trim:
        if c.n_segments % 2:
            raise NotDerivable("odd number of segments")
        if not _alternates(t[0::2]):
            raise NotDerivable("odd turns do not alternate")
        return _derive(c)
    phases = derivable_phases(t)
    if not phases:
        raise NotDerivable("neither turn class alternates")
    if len(phases) == 2:
        raise Ambiguous("both turn classes alternate")
    p = phases[0]
    usable = (c.n_segments - p) // 2 * 2
    if usable < 2:
        raise NotDerivable("too short")
    return _derive(c.sub(p, p + usable))


def _derive(c: Curve) -> Curve:
    o = (c.octant + c.turns[0]) % 8 if c.turns else None
    if o is None:
        raise NotDerivable("a single segment has no derivative")
    level = c.level + 1
    return Curve(c.start, (o - level % 2) // 2, c.turns[1::2], level)


def antiderivatives(c: Curve) -> tuple:
    """The two curves alternating around ``c``.

    The first one leaves on the left of ``c`` (first turn -1), the second
    on the right (first turn +1).
    """
    if c.level == 0:
        raise ValueError("a level-0 curve has no antiderivative in the "
                         "integer frame; use c.scaled2()")
    out = []
    m = c.n_segments
    for eta1 in (-1, 1):
        turns = []
        for i in range(m):
            turns.append(eta1 if i % 2 == 0 else -eta1)
            if i < m - 1:
                turns.append(c.turns[i])
        level = c.level - 1
        o = (c.octant - eta1) % 8
        out.append(Curve(c.start, (o - level % 2) // 2, tuple(turns), level))
    return tuple(out)


# -- orientation laws ---------------------------------------------------------

def _require_unit(c: Curve):
    if c.level != 0:
        raise ValueError("defined for level-0 curves; use c.normalized()")


def rho_constant(c: Curve) -> int:
    """kappa with rho = kappa (-1)^(y-x) on horizontal unit edges and
    -kappa (-1)^(y-x) on vertical ones, fitted to the first segment."""
    _require_unit(c)
    (x0, y0), (x1, y1) = c.vertices()[:2]
    x, y = min(x0, x1), min(y0, y1)
    rho = 1 if (x1 > x0 or y1 > y0) else -1
    par = -1 if (y - x) % 2 else 1
    horiz = y0 == y1
    return rho * par * (1 if horiz else -1)


def rho_sign(c: Curve, edge) -> int:
    """Orientation sign of any unit edge ((x, y), (x', y')) under the law
    fitted to ``c``."""
    (ax, ay), (bx, by) = edge
    if abs(ax - bx) + abs(ay - by) != 1:
        raise ValueError("not a unit edge")
    x, y = min(ax, bx), min(ay, by)
    par = -1 if (y - x) % 2 else 1
    horiz = ay == by
    return rho_constant(c) * par * (1 if horiz else -1)


def segment_rhos(c: Curve) -> np.ndarray:
    """Actual orientation sign of every segment of a level-0 curve."""
    _require_unit(c)
    d = np.diff(c.vertices(), axis=0)
    return np.where(d.sum(axis=1) > 0, 1, -1)


def rho_law_holds(c: Curve) -> bool:
    _require_unit(c)
    v = c.vertices()
    lo = np.minimum(v[:-1], v[1:])
    par = np.where((lo[:, 1] - lo[:, 0]) % 2, -1, 1)
    horiz = np.where(v[:-1, 1] == v[1:, 1], 1, -1)
    law = rho_constant(c) * par * horiz
    return bool(np.all(law == segment_rhos(c)))


def sigma_map(c: Curve) -> dict:
    """Turn sign at every interior vertex; raises if a point gets two
    different turns."""
    out = {}
    v = c.vertices()
    for k, eta in enumerate(c.turns):
        p = (int(v[k + 1, 0]), int(v[k + 1, 1]))
        if out.setdefault(p, eta) != eta:
            raise ValueError(f"two different turns at {p}")
    return out


def sigma_sign(c: Curve, v) -> Optional[int]:
    if "sigma" not in c._cache:
        c._cache["sigma"] = sigma_map(c)
    return c._cache["sigma"].get((int(v[0]), int(v[1])))


# -- grids --------------------------------------------------------------------

class EdgeGrid(NamedTuple):
    """Segment index per unit edge in a box; -1 where the edge is unused.
    ``h[i, j]`` is the edge from (x0+i, y0+j) to (x0+i+1, y0+j) and
    ``v[i, j]`` the edge from (x0+i, y0+j) to (x0+i, y0+j+1)."""
    x0: int
    y0: int
    h: np.ndarray
    v: np.ndarray
    pts: np.ndarray  # bool: lattice point is a vertex


def edge_grid(c: Curve, pad: int = 1) -> EdgeGrid:
    """Index grids for a level-0 curve."""
    _require_unit(c)
    vert = c.vertices()
    x0, y0 = vert.min(axis=0) - pad
    x1, y1 = vert.max(axis=0) + pad
    W, H = int(x1 - x0 + 1), int(y1 - y0 + 1)
    h = np.full((W, H), -1, dtype=np.int64)
    vv = np.full((W, H), -1, dtype=np.int64)
    lo = np.minimum(vert[:-1], vert[1:]) - (x0, y0)
    horiz = vert[:-1, 1] == vert[1:, 1]
    idx = np.arange(c.n_segments)
    h[lo[horiz, 0], lo[horiz, 1]] = idx[horiz]
    vv[lo[~horiz, 0], lo[~horiz, 1]] = idx[~horiz]
    pts = np.zeros((W, H), dtype=bool)
    pts[vert[:, 0] - x0, vert[:, 1] - y0] = True
    return EdgeGrid(int(x0), int(y0), h, vv, pts)


def square_config_violations(c: Curve, limit: int = 10) -> list:
    """Unit squares breaking the square-configuration rules.

    For a unit square Q with corners W, X, Y, Z:
    four corners are vertices -> at least three edges of Q are supports,
    two of them of consecutive segments;
    three corners are vertices -> the two edges through the middle corner
    are both supports or neither;
    two corners are vertices -> they are adjacent.
    The curve is read at level 0 from its turn word.
    """
    g = edge_grid(c.normalized())
    p = g.pts
    # corners of square (i, j): (i,j) (i+1,j) (i+1,j+1) (i,j+1)
    cw = [p[:-1, :-1], p[1:, :-1], p[1:, 1:], p[:-1, 1:]]
    # edges: bottom, right, top, left; edge k joins corner k and k+1
    ed = [g.h[:-1, :-1], g.v[1:, :-1], g.h[:-1, 1:], g.v[:-1, :-1]]
    n_pts = sum(x.astype(np.int64) for x in cw)
    used = [e >= 0 for e in ed]
    n_used = sum(u.astype(np.int64) for u in used)
    bad = []

    # four corners
    consec = np.zeros_like(n_used, dtype=bool)
    for a, b in itertools.combinations(range(4), 2):
        consec |= used[a] & used[b] & (np.abs(ed[a] - ed[b]) == 1)
    four = (n_pts == 4) & ~((n_used >= 3) & consec)
    bad += [("four", i, j) for i, j in zip(*np.nonzero(four))]

    # three corners: the missing one is m, the middle one is m + 2
    for m in range(4):
        mid = (m + 2) % 4
        e1, e2 = used[(mid - 1) % 4], used[mid]  # edges into/out of mid
        three = (n_pts == 3) & ~cw[m] & (e1 != e2)
        bad += [("three", i, j) for i, j in zip(*np.nonzero(three))]

    # two opposite corners
    diag = (n_pts == 2) & ((cw[0] & cw[2]) | (cw[1] & cw[3]))
    bad += [("two", i, j) for i, j in zip(*np.nonzero(diag))]
    return [(kind, int(i) + g.x0, int(j) + g.y0) for kind, i, j in bad[:limit]]


def square_config_check(c: Curve) -> bool:
    return not square_config_violations(c, limit=1)


# -- exterior -----------------------------------------------------------------

class Component(NamedTuple):
    size: int
    touches_boundary: bool
    side: Optional[str]  # "left", "right", "both" or None


class ExteriorReport(NamedTuple):
    components: list
    window: tuple  # (x0, y0, x1, y1), inclusive
    labels: np.ndarray  # label per window point, 0 on vertices


def exterior_components(vertex_set, window, curve: Optional[Curve] = None
                        ) -> ExteriorReport:
    """4-connected components of window points that are not vertices.

    With ``curve`` given, each component is tagged by the side of the curve
    it touches: a non-vertex neighbour of a vertex where the curve turns
    left lies on its right, and conversely.
    """
    from scipy import ndimage

    x0, y0, x1, y1 = window
    W, H = x1 - x0 + 1, y1 - y0 + 1
    free = np.ones((W, H), dtype=bool)
    if isinstance(vertex_set, np.ndarray):
        pts = vertex_set
    else:
        pts = np.array(sorted(vertex_set), dtype=np.int64).reshape(-1, 2)
    inside = ((pts[:, 0] >= x0) & (pts[:, 0] <= x1)
              & (pts[:, 1] >= y0) & (pts[:, 1] <= y1))
    pts = pts[inside]
    free[pts[:, 0] - x0, pts[:, 1] - y0] = False
    labels, n = ndimage.label(free)
    if n == 0:
        return ExteriorReport([], tuple(window), labels)
    sizes = np.bincount(labels.ravel(), minlength=n + 1)
    edge = np.zeros(n + 1, dtype=bool)
    for border in (labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]):
        edge[border] = True
    sides = [set() for _ in range(n + 1)]
    if curve is not None:
        _tag_sides(curve, labels, x0, y0, sides)
    comps = []
    for k in range(1, n + 1):
        s = sides[k]
        side = None if not s else ("both" if len(s) > 1 else next(iter(s)))
        comps.append(Component(int(sizes[k]), bool(edge[k]), side))
    return ExteriorReport(comps, tuple(window), labels)


def _tag_sides(c: Curve, labels, x0, y0, sides):
    v = c.vertices()
    step = c.step
    W, H = labels.shape
    for k, eta in enumerate(c.turns):
        p = v[k + 1]
        u_in = (v[k + 1] - v[k]) // step
        u_out = (v[k + 2] - v[k + 1]) // step
        side = "right" if eta == 1 else "left"
        for q in (p + u_in, p - u_out):
            i, j = int(q[0] - x0), int(q[1] - y0)
            if 0 <= i < W and 0 <= j < H and labels[i, j]:
                sides[labels[i, j]].add(side)


# -- recurrence of subcurves -------------------------------------------------

class Match(NamedTuple):
    index: int  # 0-based first segment of the copy
    offset: tuple  # translation taking the original start to the copy start


def find_parallel(c: Curve, i: int, n: int, j: int, opposite: bool = False
                  ) -> Optional[Match]:
    """A copy of segments i+1..i+n (1-based) inside segments j+1..j+88n,
    parallel (translated) or, with ``opposite``, rotated by a half turn."""
    if i < 0 or j < 0 or i + n > c.n_segments or j + 88 * n > c.n_segments:
        raise IndexError("ranges fall outside the curve")
    d = c.octants()
    pat = d[i:i + n]
    if opposite:
        pat = (pat + 4) % 8
    win = d[j:j + 88 * n]
    view = np.lib.stride_tricks.sliding_window_view(win, n)
    hits = np.flatnonzero((view == pat).all(axis=1))
    if hits.size == 0:
        return None
    m = j + int(hits[0])
    v = c.vertices()
    off = v[m] - v[i]
    return Match(m, (int(off[0]), int(off[1])))


# -- types, diameters, diamonds ----------------------------------------------

def e1_phase(turns) -> int:
    """0-based parity of the turns forming E_1 (the non-alternating class)."""
    phases = derivable_phases(turns)
    if not phases:
        raise NotFolding("no turn class alternates")
    if len(phases) == 2:
        raise Ambiguous("both turn classes alternate")
    return 1 - phases[0]


def curve_type(c: Curve) -> str:
    """'H' if the segments ending at E_1 turns are horizontal, else 'V'."""
    if c.n_segments < 4:
        raise NotFolding("need at least 4 segments")
    if c.level % 2:
        raise ValueError("type is defined on the unit lattice")
    p = e1_phase(c.turns)
    d = int(c.octants()[p])
    return "H" if d in (0, 4) else "V"


def diameter_delta(c: Curve) -> int:
    v = c.vertices()
    span = v.max(axis=0) - v.min(axis=0)
    return int(span.max())


def diamond_edges(k: int) -> tuple:
    """Offsets of the horizontal and vertical unit edges inside L(0, k)."""
    hs, vs = [], []
    for dx in range(-k, k + 1):
        for dy in range(-k, k + 1):
            if abs(dx) + abs(dy) <= k and abs(dx + 1) + abs(dy) <= k:
                hs.append((dx, dy))
            if abs(dx) + abs(dy) <= k and abs(dx) + abs(dy + 1) <= k:
                vs.append((dx, dy))
    return tuple(hs), tuple(vs)


def covered_diamonds(c: Curve, k: int) -> list:
    """Centres U with every unit edge of L(U, k) a support of ``c``."""
    g = edge_grid(c.normalized() if c.level else c, pad=k + 1)
    hs, vs = diamond_edges(k)
    W, H = g.h.shape
    ok = np.ones((W, H), dtype=bool)
    ok[:k + 1, :] = ok[-(k + 1):, :] = False
    ok[:, :k + 1] = ok[:, -(k + 1):] = False
    for grid, offs in ((g.h >= 0, hs), (g.v >= 0, vs)):
        for dx, dy in offs:
            ok &= np.roll(grid, (-dx, -dy), axis=(0, 1))
    return [(int(i) + g.x0, int(j) + g.y0) for i, j in zip(*np.nonzero(ok))]
