"""Coverings of a box by disjoint folding curves.

A covering is a list of curve pieces plus a window.  Each piece carries the
id of the complete curve it belongs to and the index of its first segment
along that curve.  Pieces may run past the window: that margin is what
keeps derived coverings complete inside the same window.  Only the window
is ever validated.

All pieces of a covering live at one level (see ``curves``); the level-k
lattice is a coset of 2^(k/2) Z^2 (k even) or of the lattice spanned by
2^((k-1)/2) (1, +-1) (k odd).
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .curves import (OCT, Ambiguous, Curve, NotDerivable, _derive,
                     derivable_phases)
from .words import is_finite_folding, is_n_folding


class Inconsistent(ValueError):
    pass


class Piece(NamedTuple):
    curve_id: str
    curve: Curve
    first: int = 0  # index of the first segment along the complete curve


@dataclass
class Covering:
    window: tuple  # (x0, y0, x1, y1), inclusive
    pieces: list
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def level(self) -> int:
        return self.pieces[0].curve.level if self.pieces else 0

    def curve_ids(self) -> list:
        seen = []
        for p in self.pieces:
            if p.curve_id not in seen:
                seen.append(p.curve_id)
        return seen

    def segments(self):
        """Arrays (starts (M,2), ends (M,2), piece number, index)."""
        s, e, pid, idx = [], [], [], []
        for k, p in enumerate(self.pieces):
            v = p.curve.vertices()
            s.append(v[:-1])
            e.append(v[1:])
            pid.append(np.full(len(v) - 1, k))
            idx.append(p.first + np.arange(len(v) - 1))
        if not s:
            z = np.zeros((0, 2), dtype=np.int64)
            return z, z, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        return (np.concatenate(s), np.concatenate(e), np.concatenate(pid),
                np.concatenate(idx))

    def in_window(self, pts: np.ndarray) -> np.ndarray:
        x0, y0, x1, y1 = self.window
        return ((pts[:, 0] >= x0) & (pts[:, 0] <= x1)
                & (pts[:, 1] >= y0) & (pts[:, 1] <= y1))

    def window_segment_mask(self):
        s, e, pid, idx = self.segments()
        return self.in_window(s) & self.in_window(e)

    def curves_in_window(self) -> list:
        s, e, pid, idx = self.segments()
        m = self.in_window(s) & self.in_window(e)
        ids = {self.pieces[k].curve_id for k in np.unique(pid[m])}
        return [c for c in self.curve_ids() if c in ids]

    def with_window(self, window) -> "Covering":
        return Covering(tuple(window), list(self.pieces), self.name,
                        dict(self.meta))

    # -- serialization --------------------------------------------------------

    def pairings(self) -> list:
        """For every vertex where two curves pass inside the window: the two
        pairs of consecutive segments meeting there, as global segment
        numbers."""
        s, e, pid, idx = self.segments()
        m = self.in_window(s) & self.in_window(e)
        nxt = np.flatnonzero(m[:-1] & m[1:] & (pid[:-1] == pid[1:]))
        at = defaultdict(list)
        for g in nxt:
            at[(int(e[g, 0]), int(e[g, 1]))].append([int(g), int(g) + 1])
        return [[list(v), *at[v]] for v in sorted(at) if len(at[v]) == 2]

    def to_record(self) -> dict:
        curves = []
        for p in self.pieces:
            rec = p.curve.to_record()
            rec.update(id=p.curve_id, first=p.first)
            curves.append(rec)
        return {"window": list(self.window), "name": self.name,
                "curves": curves, "pairings": self.pairings()}

    @classmethod
    def from_record(cls, rec: dict) -> "Covering":
        pieces = [Piece(str(c["id"]), Curve.from_record(c), int(c.get("first", 0)))
                  for c in rec["curves"]]
        cov = cls(tuple(rec["window"]), pieces, rec.get("name", ""))
        if "pairings" in rec and rec["pairings"] != cov.pairings():
            raise Inconsistent("stored pairings disagree with the curves")
        return cov


# -- lattice helpers -----------------------------------------------------------

class Lattice(NamedTuple):
    """Level-k lattice through ``origin``."""
    level: int
    origin: tuple

    @property
    def step(self) -> int:
        return 1 << (self.level // 2)

    def gens(self):
        s = self.step
        if self.level % 2 == 0:
            return ((s, 0), (0, s))
        return ((s, s), (s, -s))

    def coords(self, pts: np.ndarray):
        """Lattice coordinates (a, b) and a mask of points on the lattice."""
        d = pts - np.asarray(self.origin)
        s = self.step
        if self.level % 2 == 0:
            ok = (d[:, 0] % s == 0) & (d[:, 1] % s == 0)
            return d // s, ok
        u, v = d[:, 0] + d[:, 1], d[:, 0] - d[:, 1]
        ok = (u % (2 * s) == 0) & (v % (2 * s) == 0)
        return np.stack([u // (2 * s), v // (2 * s)], axis=1), ok

    def points_in(self, window) -> np.ndarray:
        x0, y0, x1, y1 = window
        xs, ys = np.meshgrid(np.arange(x0, x1 + 1), np.arange(y0, y1 + 1),
                             indexing="ij")
        pts = np.stack([xs.ravel(), ys.ravel()], axis=1)
        return pts[self.coords(pts)[1]]

    def sublattice_class(self, pts: np.ndarray) -> np.ndarray:
        """0/1 class of lattice points in the index-2 sublattice (the next
        level's lattice through the origin)."""
        ab, _ = self.coords(pts)
        return (ab[:, 0] + ab[:, 1]) % 2


def lattice_of(cov: Covering) -> Lattice:
    v = cov.pieces[0].curve.start
    return Lattice(cov.level, (int(v[0]), int(v[1])))


# -- validation ----------------------------------------------------------------

class Violation(NamedTuple):
    kind: str  # "uncovered", "overlap", "off-lattice", "pairing", "loose-end", "folding"
    where: tuple
    detail: str = ""


class ValidationReport(NamedTuple):
    ok: bool
    violations: list
    n_curves: int
    n_segments: int

    def counts(self) -> Counter:
        return Counter(v.kind for v in self.violations)


def _edge_keys(lat: Lattice, a: np.ndarray, b: np.ndarray):
    """Canonical key per lattice edge between lattice coords a and b."""
    lo = np.minimum(a, b)
    horiz = (a[:, 1] == b[:, 1]).astype(np.int64)
    return lo, horiz


def validate_covering(cov: Covering, max_report: int = 50) -> ValidationReport:
    """Check conditions 1 and 2 inside the window and the folding condition
    on every maximal run of consecutive segments inside it.

    Condition 2 is checked at vertices whose four lattice edges all lie in
    the window; at the boundary the partner segments may be outside.
    """
    viol = []
    if not cov.pieces:
        return ValidationReport(False, [Violation("uncovered", cov.window,
                                                  "no curves")], 0, 0)
    lat = lattice_of(cov)
    s, e, pid, idx = cov.segments()
    inw = cov.in_window(s) & cov.in_window(e)
    sa, ok_s = lat.coords(s)
    ea, ok_e = lat.coords(e)
    step_ok = (np.abs(sa - ea).sum(axis=1) == 1) & ok_s & ok_e
    for g in np.flatnonzero(inw & ~step_ok)[:max_report]:
        viol.append(Violation("off-lattice", tuple(s[g]) + tuple(e[g])))
    use = inw & step_ok

    pts = lat.points_in(cov.window)
    if pts.size == 0:
        return ValidationReport(False, [Violation("uncovered", cov.window,
                                                  "window holds no lattice point")],
                                0, 0)
    pab, _ = lat.coords(pts)
    amin = pab.min(axis=0)
    shape = tuple(pab.max(axis=0) - amin + 2)
    inside = np.zeros(shape, dtype=bool)
    inside[pab[:, 0] - amin[0], pab[:, 1] - amin[1]] = True
    # required edges: (a,b)-(a+1,b) kind 0 and (a,b)-(a,b+1) kind 1
    req = [inside & np.roll(inside, -1, axis=0), inside & np.roll(inside, -1, axis=1)]
    req[0][-1, :] = False
    req[1][:, -1] = False
    count = [np.zeros(shape, dtype=np.int64), np.zeros(shape, dtype=np.int64)]
    lo = np.minimum(sa[use], ea[use]) - amin
    kind = (sa[use][:, 1] != ea[use][:, 1]).astype(np.int64)  # 0 along a, 1 along b
    for k in (0, 1):
        m = kind == k
        np.add.at(count[k], (lo[m, 0], lo[m, 1]), 1)

    def to_xy(a, b):
        g1, g2 = lat.gens()
        return (int(lat.origin[0] + (a + amin[0]) * g1[0] + (b + amin[1]) * g2[0]),
                int(lat.origin[1] + (a + amin[0]) * g1[1] + (b + amin[1]) * g2[1]))

    for k in (0, 1):
        for a, b in zip(*np.nonzero(req[k] & (count[k] == 0))):
            if len(viol) < max_report:
                viol.append(Violation("uncovered", to_xy(a, b), "ab"[k]))
            else:
                break
        for a, b in zip(*np.nonzero(count[k] > 1)):
            if len(viol) < max_report:
                viol.append(Violation("overlap", to_xy(a, b), "ab"[k]))

    # condition 2 at interior lattice vertices
    interior = (inside & np.roll(inside, 1, 0) & np.roll(inside, -1, 0)
                & np.roll(inside, 1, 1) & np.roll(inside, -1, 1))
    interior[0, :] = interior[-1, :] = interior[:, 0] = interior[:, -1] = False
    ends = ea[use] - amin
    starts = sa[use] - amin
    # every unit edge is used once, so pairing at an interior vertex holds
    # exactly when no curve stops there
    # loose ends: a curve may not stop at an interior vertex
    last = np.ones(len(pid), dtype=bool)
    last[:-1] = pid[1:] != pid[:-1]
    first = np.ones(len(pid), dtype=bool)
    first[1:] = pid[1:] != pid[:-1]
    for mask, pts_ab in ((last[use], ends), (first[use], starts)):
        hit = mask & interior[pts_ab[:, 0], pts_ab[:, 1]]
        for g in np.flatnonzero(hit)[:max_report]:
            viol.append(Violation("loose-end", to_xy(*pts_ab[g])))

    # folding condition on every maximal run inside the window
    n_runs = 0
    for k, p in enumerate(cov.pieces):
        m = inw[pid == k]
        t = p.curve.turns
        for run in _runs(m):
            i, j = run
            n_runs += 1
            w = t[i:j - 1]
            if not is_finite_folding(w):
                viol.append(Violation("folding", (p.curve_id, p.first + i),
                                      f"run of {j - i} segments"))
    n_curves = len({cov.pieces[k].curve_id for k in np.unique(pid[inw])})
    return ValidationReport(not viol, viol[:max_report], n_curves, int(use.sum()))


def _runs(mask) -> list:
    """Maximal [i, j) intervals where mask is true."""
    m = np.concatenate(([False], np.asarray(mask, dtype=bool), [False]))
    d = np.diff(m.astype(np.int8))
    return list(zip(np.flatnonzero(d == 1), np.flatnonzero(d == -1)))


# -- derivation ----------------------------------------------------------------

def f0_class(cov: Covering) -> int:
    """Sublattice class (0/1) of the F_k points shared by all pieces."""
    lat = lattice_of(cov)
    votes = {}
    for p in cov.pieces:
        t = p.curve.turns
        ph = derivable_phases(t)
        if len(ph) != 1:
            if not ph:
                raise NotDerivable(f"curve {p.curve_id} is not derivable")
            continue
        v = p.curve.vertices()[1 + ph[0]:-1:2]
        cls = np.unique(lat.sublattice_class(v))
        if cls.size != 1:
            raise NotDerivable(f"curve {p.curve_id}: F points in two classes")
        votes[p.curve_id] = int(cls[0])
    if not votes:
        raise Ambiguous("no piece fixes the pairing")
    classes = set(votes.values())
    if len(classes) > 1:
        raise NotDerivable(f"curves disagree on E_1: {votes}")
    return classes.pop()


def derive_covering(cov: Covering) -> Covering:
    """Derive every piece, pairing the segments that meet at F points."""
    lat = lattice_of(cov)
    cls = f0_class(cov)
    out = []
    for p in cov.pieces:
        c = p.curve
        v = c.vertices()
        if c.n_segments < 2:
            continue
        # phase: the first interior vertex that is an F point
        p0 = 0 if lat.sublattice_class(v[1:2])[0] == cls else 1
        usable = (c.n_segments - p0) // 2 * 2
        if usable < 2:
            continue
        sub = c.sub(p0, p0 + usable)
        if not all(sub.turns[i] == -sub.turns[i - 2]
                   for i in range(2, len(sub.turns), 2)):
            raise NotDerivable(f"curve {p.curve_id} does not alternate "
                               "around its F points")
        out.append(Piece(p.curve_id, _derive(sub), (p.first + p0) // 2))
    res = Covering(cov.window, out, cov.name, dict(cov.meta))
    res.meta["depth"] = cov.meta.get("depth", 0) + 1
    return res


def boundary_pairs(cov: Covering) -> set:
    """Pairs of curve ids sharing a vertex (whole pieces, not only the
    window)."""
    owner = defaultdict(set)
    for p in cov.pieces:
        for x, y in p.curve.vertices().tolist():
            owner[(x, y)].add(p.curve_id)
    pairs = set()
    for ids in owner.values():
        for a, b in itertools.combinations(sorted(ids), 2):
            pairs.add((a, b))
    return pairs


def e_lattice(cov: Covering, k: int) -> Lattice:
    """The E_k lattice of a covering, read off its k-th derivative."""
    c = cov
    for _ in range(k):
        c = derive_covering(c)
    return lattice_of(c)


def f_level(cov: Covering, point, max_depth: int = 16) -> Optional[int]:
    """The k with ``point`` in F_k = E_k minus E_(k+1); None if the point
    is still in E_max_depth."""
    pt = np.array([point], dtype=np.int64)
    c = cov
    for k in range(max_depth + 1):
        if not lattice_of(c).coords(pt)[1][0]:
            return k - 1 if k else None
        if k < max_depth:
            c = derive_covering(c)
    return None


# -- sigma, patches -------------------------------------------------------------

def sigma_field(cov: Covering) -> dict:
    """Turn sign at every vertex of the window where some curve turns."""
    out = {}
    x0, y0, x1, y1 = cov.window
    for p in cov.pieces:
        v = p.curve.vertices()[1:-1]
        for (x, y), eta in zip(v.tolist(), p.curve.turns):
            if x0 <= x <= x1 and y0 <= y <= y1:
                if out.setdefault((x, y), eta) != eta:
                    raise Inconsistent(f"curves disagree at {(x, y)}")
    return out


def curve_types(cov: Covering) -> dict:
    from .curves import curve_type
    out = {}
    for p in cov.pieces:
        c = p.curve
        if c.level % 2 == 0 and c.n_segments >= 8:
            try:
                t = curve_type(Curve(c.start, c.dir, c.turns, 0))
            except ValueError:
                continue
            out[p.curve_id] = t
    return out


class Patch(NamedTuple):
    """Oriented edges inside a box plus the turn sign at each vertex strictly
    inside it, all relative to the box corner."""
    edges: frozenset  # (xa, ya, xb, yb)
    turns: frozenset  # ((x, y), sign)
    labels: Optional[tuple] = None  # curve partition, canonically numbered


def extract_patch(cov: Covering, box, with_labels: bool = False) -> Patch:
    x0, y0, x1, y1 = box
    if x1 < x0 or y1 < y0:
        return Patch(frozenset(), frozenset(), () if with_labels else None)
    s, e, pid, idx = cov.segments()
    m = ((np.minimum(s[:, 0], e[:, 0]) >= x0) & (np.maximum(s[:, 0], e[:, 0]) <= x1)
         & (np.minimum(s[:, 1], e[:, 1]) >= y0) & (np.maximum(s[:, 1], e[:, 1]) <= y1))
    rel = np.hstack([s[m] - (x0, y0), e[m] - (x0, y0)])
    edges = [tuple(int(a) for a in r) for r in rel]
    turns = set()
    for p in cov.pieces:
        v = p.curve.vertices()[1:-1]
        for (x, y), eta in zip(v.tolist(), p.curve.turns):
            if x0 < x < x1 and y0 < y < y1:
                turns.add(((x - x0, y - y0), eta))
    labels = None
    if with_labels:
        ids = [cov.pieces[k].curve_id for k in pid[m]]
        order = sorted(range(len(edges)), key=lambda i: edges[i])
        rename = {}
        lab = []
        for i in order:
            lab.append(rename.setdefault(ids[i], len(rename)))
        labels = tuple(zip([edges[i] for i in order], lab))
    return Patch(frozenset(edges), frozenset(turns), labels)


def orientation_grids(cov: Covering):
    """Level-0 window grids: ``h[i, j]`` is +1/-1 for the edge
    (x0+i, y0+j)-(x0+i+1, y0+j) as traversed, 0 when absent; ``v`` likewise
    for vertical edges; ``t[i, j]`` is the turn sign at (x0+i, y0+j)."""
    if cov.level != 0:
        raise ValueError("patch grids are defined at level 0")
    x0, y0, x1, y1 = cov.window
    W, H = x1 - x0 + 1, y1 - y0 + 1
    h = np.zeros((W, H), dtype=np.int8)
    v = np.zeros((W, H), dtype=np.int8)
    t = np.zeros((W, H), dtype=np.int8)
    s, e, pid, idx = cov.segments()
    m = cov.in_window(s) & cov.in_window(e)
    s, e = s[m], e[m]
    lo = np.minimum(s, e) - (x0, y0)
    sign = np.where((e - s).sum(axis=1) > 0, 1, -1).astype(np.int8)
    horiz = s[:, 1] == e[:, 1]
    h[lo[horiz, 0], lo[horiz, 1]] = sign[horiz]
    v[lo[~horiz, 0], lo[~horiz, 1]] = sign[~horiz]
    for p in cov.pieces:
        vs = p.curve.vertices()[1:-1]
        tt = np.asarray(p.curve.turns, dtype=np.int8)
        ok = cov.in_window(vs)
        t[vs[ok, 0] - x0, vs[ok, 1] - y0] = tt[ok]
    return h, v, t


def patch_ids(cov: Covering, k: int) -> np.ndarray:
    """Type id of the patch on the box [x, x+k] x [y, y+k] for every box
    inside the window (see ``Patch``)."""
    h, v, t = orientation_grids(cov)
    W, H = h.shape
    nx, ny = W - k, H - k
    if nx <= 0 or ny <= 0 or k < 1:
        return np.zeros((0, 0), dtype=np.int64)
    sw = np.lib.stride_tricks.sliding_window_view
    parts = [sw(h, (k, k + 1))[:nx, :ny], sw(v, (k + 1, k))[:nx, :ny]]
    if k >= 2:
        parts.append(sw(t[1:-1, 1:-1], (k - 1, k - 1))[:nx, :ny])
    flat = np.concatenate([p.reshape(nx, ny, -1) for p in parts],
                          axis=2).reshape(nx * ny, -1)
    _, inv = np.unique(flat, axis=0, return_inverse=True)
    return inv.reshape(nx, ny)


def recurrence_radius(ids: np.ndarray, start: int = 1) -> Optional[int]:
    """Least l (searched by doubling) such that every l x l block of anchors
    contains every patch type; None if no such l fits."""
    nx, ny = ids.shape
    n_types = int(ids.max()) + 1
    # prefix sums per type
    onehot = np.zeros((n_types, nx + 1, ny + 1), dtype=np.int32)
    onehot[ids.ravel(), (np.arange(ids.size) // ny) + 1,
           (np.arange(ids.size) % ny) + 1] = 1
    pre = onehot.cumsum(axis=1).cumsum(axis=2)
    l = max(1, start)
    while l <= min(nx, ny):
        tot = (pre[:, l:, l:] - pre[:, :-l, l:] - pre[:, l:, :-l]
               + pre[:, :-l, :-l])
        if (tot > 0).all():
            return l
        l *= 2
    return None


class LIReport(NamedTuple):
    ok: bool
    structural: bool
    reasons: list
    radius: Optional[int]
    window_side: int


def factor_fingerprint(turns, m: int = 4) -> frozenset:
    """The m-folding words among the factors of a turn word."""
    from .sequences import factor_set
    return frozenset(w for w in factor_set(turns, (1 << m) - 1)
                     if is_n_folding(w))


def li_patch_check(cov: Covering, k: int, depth: int = 4, m: int = 4
                   ) -> LIReport:
    """Desk form of the local isomorphism criterion.

    Structural part: all curves have one type, the covering can be derived
    ``depth`` times (so the curves share E_1..E_depth), and the m-folding
    factors of all curves together number 8, as for one complete sequence.
    Patch part: every k-patch of the window recurs in every l x l block of
    anchors for some l found by doubling with l at most half the window.
    """
    reasons = []
    types = set(curve_types(cov).values())
    if len(types) > 1:
        reasons.append(f"mixed types {sorted(types)}")
    try:
        c = cov
        for _ in range(depth):
            c = derive_covering(c)
    except (NotDerivable, Ambiguous) as exc:
        reasons.append(f"derivation: {exc}")
    union = set()
    for p in cov.pieces:
        union |= factor_fingerprint(p.curve.turns, m)
    if len(union) != 8:
        reasons.append(f"{len(union)} distinct {m}-folding factors")
    structural = not reasons
    ids = patch_ids(cov, k)
    side = min(ids.shape) if ids.size else 0
    radius = recurrence_radius(ids, start=k) if ids.size else None
    if radius is None or radius > side // 2:
        reasons.append(f"{k}-patches do not recur within half the window")
    return LIReport(not reasons, structural, reasons, radius, side)


# -- search ----------------------------------------------------------------------

class Exhausted(RuntimeError):
    pass


def cover_from_sigma(sigma, window, kappa: int, margin_curves: bool = False):
    """Trace the curves cut out of ``window`` by an orientation constant and
    a turn field (callable or dict on window points).

    Horizontal unit edges point away from (x, y) when kappa (-1)^(y-x) = +1,
    vertical ones when it is -1.  At each vertex an incoming segment leaves
    by turning left when sigma = +1.  Returns a list of runs, each a list of
    vertices, and a flag telling whether a closed loop appeared.
    """
    x0, y0, x1, y1 = window
    sig = sigma if callable(sigma) else (lambda p: sigma.get(p))

    def out_dirs(x, y):
        horiz_out = kappa * (-1 if (y - x) % 2 else 1) == 1
        return (0, 2) if horiz_out else (1, 3)

    def inside(x, y):
        return x0 <= x <= x1 and y0 <= y <= y1

    used = set()
    runs = []
    loop = False
    edges = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            for d in out_dirs(x, y):
                dx, dy = OCT[2 * d]
                if inside(x + dx, y + dy):
                    edges.append(((x, y), d))
    for start in edges:
        if start in used:
            continue
        # walk backwards to the beginning of the run
        (x, y), d = start
        cur = start
        seen = {cur}
        while True:
            (x, y), d = cur
            # the segment arriving at (x, y) that continues with direction d
            s = sig((x, y))
            if s is None:
                break
            d_in = (d - s) % 4
            dx, dy = OCT[2 * d_in]
            px, py = x - dx, y - dy
            if not inside(px, py):
                break
            prev = ((int(px), int(py)), d_in)
            if prev in seen:
                loop = True
                break
            seen.add(prev)
            cur = prev
        run = []
        node = cur
        while True:
            if node in used:
                if node == cur:
                    loop = True
                break
            used.add(node)
            (x, y), d = node
            dx, dy = OCT[2 * d]
            nx, ny = int(x + dx), int(y + dy)
            if not run:
                run.append((x, y))
            run.append((nx, ny))
            s = sig((nx, ny))
            if s is None:
                break
            d2 = (d + s) % 4
            ex, ey = OCT[2 * d2]
            if not inside(nx + ex, ny + ey):
                break
            node = ((nx, ny), d2)
        runs.append(run)
    return runs, loop


def run_turns(run) -> tuple:
    out = []
    for a, b, c in zip(run, run[1:], run[2:]):
        u = (b[0] - a[0], b[1] - a[1])
        w = (c[0] - b[0], c[1] - b[1])
        out.append(1 if u[0] * w[1] - u[1] * w[0] > 0 else -1)
    return tuple(out)


def run_to_curve(run) -> Curve:
    (ax, ay), (bx, by) = run[0], run[1]
    d = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[(bx - ax, by - ay)]
    return Curve(run[0], d, run_turns(run), 0)


def extend_to_covering(seed: Curve, window, budget: int = 100000) -> Covering:
    """Backtracking search for a covering of ``window`` containing ``seed``.

    Unknowns are the turn signs at window vertices the seed does not fix,
    taken nearest the seed first.  Each is first given the sign the seed
    shows at the vertex agreeing with it modulo the highest power of 2.
    Orientations follow the seed's checkerboard law.  After each choice the
    runs through the new vertex must be finite folding words that do not
    close up, and every open end of those runs must still admit a sign.
    Raises Exhausted once ``budget`` nodes have been visited.
    """
    from .curves import rho_constant, sigma_map

    if seed.level != 0:
        raise ValueError("seed must be a level-0 curve")
    window = tuple(int(t) for t in window)
    kappa = rho_constant(seed)
    x0, y0, x1, y1 = window

    def inside(q):
        return x0 <= q[0] <= x1 and y0 <= q[1] <= y1

    verts = seed.vertices()
    fixed = {p: s for p, s in sigma_map(seed).items() if inside(p)}
    seed_edges = set()
    for a, b in zip(map(tuple, verts[:-1].tolist()), map(tuple, verts[1:].tolist())):
        seed_edges.add((min(a, b), max(a, b)))

    def edges_at(p):
        out = []
        for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            q = (p[0] + dx, p[1] + dy)
            if inside(q):
                out.append((min(p, q), max(p, q)))
        return out

    free = [(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)
            if (x, y) not in fixed and len(edges_at((x, y))) >= 2
            and not all(e in seed_edges for e in edges_at((x, y)))]
    if not free:
        return Covering(window, [Piece("seed", seed, 0)], "extension",
                        {"nodes": 0, "kappa": kappa})
    # grow outwards from the seed so that each choice meets fixed runs
    seed_pts = np.unique(verts, axis=0)
    free.sort(key=lambda p: (int(np.abs(seed_pts - p).sum(axis=1).min()), p))

    def predict(p):
        for m in range(8, 0, -1):
            mod = 1 << m
            vals = {s for q, s in fixed.items()
                    if (q[0] - p[0]) % mod == 0 and (q[1] - p[1]) % mod == 0}
            if len(vals) == 1:
                return vals.pop()
        return 1

    sigma = dict(fixed)
    nodes = [0]

    def run_ends(p):
        ends = []
        for run in _runs_through(p, sigma, kappa, window):
            if run is None or not is_finite_folding(run_turns(run)):
                return None
            ends += [run[0], run[-1]]
        return ends

    def local_ok(p) -> bool:
        ends = run_ends(p)
        if ends is None:
            return False
        for q in set(ends):
            if q in sigma or not inside(q):
                continue
            alive = False
            for s in (1, -1):
                sigma[q] = s
                alive = run_ends(q) is not None
                del sigma[q]
                if alive:
                    break
            if not alive:
                return False
        return True

    def solve(i) -> bool:
        if i == len(free):
            return True
        p = free[i]
        first = predict(p)
        for s in (first, -first):
            nodes[0] += 1
            if nodes[0] > budget:
                raise Exhausted(f"budget {budget} exhausted")
            sigma[p] = s
            if local_ok(p) and solve(i + 1):
                return True
        del sigma[p]
        return False

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(free) + 1000))
    try:
        if not solve(0):
            raise Exhausted("no covering extends the seed")
    finally:
        sys.setrecursionlimit(limit)
    runs, loop = cover_from_sigma(sigma, window, kappa)
    if loop:
        raise Exhausted("closed loop")
    pieces = [Piece(f"r{k}", run_to_curve(run), 0)
              for k, run in enumerate(runs) if len(run) >= 2]
    return Covering(window, pieces, "extension",
                    {"nodes": nodes[0], "kappa": kappa})


def _runs_through(p, sigma, kappa, window):
    """The determined parts of the runs through vertex p (None marks a
    closed loop)."""
    x0, y0, x1, y1 = window

    def inside(x, y):
        return x0 <= x <= x1 and y0 <= y <= y1

    x, y = p
    horiz_out = kappa * (-1 if (y - x) % 2 else 1) == 1
    outs = (0, 2) if horiz_out else (1, 3)
    res = []
    for d in outs:
        dx, dy = OCT[2 * d]
        if not inside(x + dx, y + dy):
            continue
        # forward from p along d
        fwd = [p]
        cur, cd = p, d
        steps = 0
        closed = False
        while True:
            ddx, ddy = OCT[2 * cd]
            nxt = (int(cur[0] + ddx), int(cur[1] + ddy))
            fwd.append(nxt)
            steps += 1
            s = sigma.get(nxt)
            if s is None:
                break
            cd = (cd + s) % 4
            if nxt == p and cd == d:
                # back on the edge we started from
                closed = True
                break
            ex, ey = OCT[2 * cd]
            if not inside(nxt[0] + ex, nxt[1] + ey):
                break
            cur = nxt
        if closed:
            res.append(None)
            continue
        # backward from p: the segment entering p that leaves along d
        bwd = []
        s = sigma.get(p)
        if s is not None:
            cd = (d - s) % 4
            cur = p
            while True:
                ddx, ddy = OCT[2 * cd]
                prv = (int(cur[0] - ddx), int(cur[1] - ddy))
                if not inside(*prv):
                    break
                bwd.append(prv)
                s2 = sigma.get(prv)
                if s2 is None:
                    break
                cd = (cd - s2) % 4
                pdx, pdy = OCT[2 * cd]
                if not inside(prv[0] - pdx, prv[1] - pdy):
                    break
                cur = prv
        res.append(list(reversed(bwd)) + fwd)
    return res
