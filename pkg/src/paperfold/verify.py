"""Registered checks reproducing the quantitative claims at desk scale.

Each check takes a parameter dict and returns ``(ok, witness, info)``;
``run_check`` wraps the result in a ``CheckReport``.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import constructions as K
from .covering import (derive_covering, e_lattice, factor_fingerprint,
                       li_patch_check, patch_ids, sigma_field,
                       validate_covering)
from .curves import (all_folding_curves, antiderivatives, derivative,
                     diameter_delta, exterior_components, find_parallel,
                     folding_curve, is_self_avoiding, rho_law_holds,
                     covered_diamonds, square_config_check)
from .sequences import (alternating_spec, complexity, folding_factors,
                        is_nonperiodic_window, positive_spec,
                        recurrence_check, subword_set, sync_violation)
from .words import bar, format_word, gen_n_folding, is_n_folding


class UnknownCheck(KeyError):
    pass


@dataclass
class CheckReport:
    check_id: str
    params: dict
    ok: bool
    counterexample: Optional[object] = None
    info: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_record(self) -> dict:
        return {"check": self.check_id, "params": self.params,
                "outcome": "pass" if self.ok else "fail",
                "counterexample": self.counterexample, "info": self.info,
                "elapsed": round(self.elapsed, 3)}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, default=str)


@dataclass
class _Entry:
    check_id: str
    anchor: str
    defaults: dict
    fn: Callable


_REGISTRY: dict = {}


def _check(check_id: str, anchor: str, **defaults):
    def deco(fn):
        _REGISTRY[check_id] = _Entry(check_id, anchor, defaults, fn)
        return fn
    return deco


def registry() -> list:
    """(check id, what it reproduces, default parameters), sorted by id."""
    return [(e.check_id, e.anchor, dict(e.defaults))
            for _, e in sorted(_REGISTRY.items())]


def run_check(check_id: str, params: Optional[dict] = None) -> CheckReport:
    if check_id not in _REGISTRY:
        raise UnknownCheck(check_id)
    e = _REGISTRY[check_id]
    p = dict(e.defaults)
    p.update(params or {})
    t0 = time.perf_counter()
    ok, witness, info = e.fn(**p)
    if not ok and witness is None:
        witness = "unspecified"
    return CheckReport(check_id, p, bool(ok), witness, info or {},
                       time.perf_counter() - t0)


def run_all(ids=None) -> list:
    ids = sorted(_REGISTRY) if ids is None else ids
    return [run_check(i) for i in ids]


def _specs():
    return {"positive": positive_spec(), "alternating": alternating_spec()}


# -- words and sequences ---------------------------------------------------------

EXPECTED_SMALL = (2, 4, 8, 12, 18, 23)


@_check("folding-word-count", "2^n n-folding words of length 2^n - 1",
        n_max=12, exhaustive_max=4)
def _word_count(n_max, exhaustive_max):
    for n in range(1, n_max + 1):
        words = {gen_n_folding(d) for d in itertools.product((1, -1), repeat=n)}
        if len(words) != 1 << n or not all(is_n_folding(w) for w in words):
            return False, {"n": n, "count": len(words)}, {}
        if n <= exhaustive_max:
            hits = sum(is_n_folding(w) for w in
                       itertools.product((1, -1), repeat=(1 << n) - 1))
            if hits != 1 << n:
                return False, {"n": n, "exhaustive": hits}, {}
    return True, None, {"n_max": n_max}


@_check("reverse-negate-folding", "w is n-folding iff its reverse-negate is",
        n_max=8, samples=2000, seed=0)
def _bar_folding(n_max, samples, seed):
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        L = (1 << n) - 1
        pool = [gen_n_folding(d) for d in itertools.product((1, -1), repeat=n)]
        pool += [tuple(rng.choice((1, -1)) for _ in range(L))
                 for _ in range(samples // n_max)]
        for w in pool:
            if is_n_folding(w) != is_n_folding(bar(w)):
                return False, format_word(w), {}
    return True, None, {}


@_check("even-positions", "even letters of an n-folding word drop the first "
        "fold", n_max=10)
def _even_positions(n_max):
    for n in range(2, n_max + 1):
        for d in itertools.product((1, -1), repeat=n):
            w = gen_n_folding(d)
            if w[1::2] != gen_n_folding(d[1:]):
                return False, list(d), {}
    return True, None, {}


@_check("nonperiodic", "complete folding sequences have no period",
        half_width=1 << 12, max_period=1 << 10)
def _nonperiodic(half_width, max_period):
    specs = dict(_specs())
    specs["t"] = K.t_spec()
    for name, s in specs.items():
        arr = s.letters(-half_width, half_width)
        p = is_nonperiodic_window(arr, max_period)
        if p is not None:
            return False, {"spec": name, "period": p}, {}
    return True, None, {"specs": sorted(specs)}


@_check("synchronization", "equal long factors sit at offsets congruent "
        "mod 2^(n+1)", n_max=4, half_width=4096)
def _sync(n_max, half_width):
    for name, s in _specs().items():
        for n in range(1, n_max + 1):
            v = sync_violation(s, n, half_width)
            if v is not None:
                return False, {"spec": name, "n": n, "offsets": v}, {}
    return True, None, {}


@_check("reverse-negate-factors", "a spec and its reverse-negate share all "
        "factors; a spec and its negation share no 4-folding factor",
        t_max=64)
def _bar_factors(t_max):
    for name, s in _specs().items():
        rb, ng = s.bar(), s.negated()
        for t in range(1, t_max + 1):
            if subword_set(s, t) != subword_set(rb, t):
                return False, {"spec": name, "t": t}, {}
        if folding_factors(s, 4) & folding_factors(ng, 4):
            return False, {"spec": name, "shared": "4-folding"}, {}
    return True, None, {}


@_check("eight-folding-factors", "exactly 8 n-folding factors", n_min=3,
        n_max=7)
def _eight(n_min, n_max):
    for name, s in _specs().items():
        for n in range(n_min, n_max + 1):
            k = len(folding_factors(s, n))
            if k != 8:
                return False, {"spec": name, "n": n, "count": k}, {}
    return True, None, {}


@_check("factor-complexity", "factor counts 2,4,8,12,18,23 then 4t",
        t_max=64)
def _complexity(t_max):
    for name, s in _specs().items():
        for t in range(1, t_max + 1):
            want = EXPECTED_SMALL[t - 1] if t <= 6 else 4 * t
            got = complexity(s, t)
            if got != want:
                return False, {"spec": name, "t": t, "got": got,
                               "want": want}, {}
    return True, None, {}


@_check("recurrence-window", "factors of length <= 2^r recur in every window "
        "of length 10 2^r - 2", r_max=6, trials=100, seed=0)
def _recurrence(r_max, trials, seed):
    for name, s in _specs().items():
        for r in range(0, r_max + 1):
            ok, h = recurrence_check(s, r, trials=trials, seed=seed + r)
            if not ok:
                return False, {"spec": name, "r": r, "anchor": h}, {}
    return True, None, {}


# -- curves ------------------------------------------------------------------------

@_check("self-avoiding", "n-folding curves are self-avoiding with no bad "
        "square", n_max=10)
def _self_avoiding(n_max):
    for n in range(1, n_max + 1):
        for c in all_folding_curves(n):
            if not is_self_avoiding(c):
                return False, c.to_record(), {"n": n}
            if n >= 2 and not square_config_check(c):
                return False, c.to_record(), {"n": n, "square": True}
    return True, None, {}


@_check("derivative-inverts-antiderivative", "both antiderivatives derive "
        "back, and stay self-avoiding", n_max=8)
def _antider(n_max):
    for n in range(1, n_max + 1):
        for c in all_folding_curves(n, level=1):
            for a in antiderivatives(c):
                if derivative(a) != c:
                    return False, c.to_record(), {"n": n}
                if not is_self_avoiding(a):
                    return False, a.to_record(), {"n": n, "avoid": True}
    return True, None, {}


@_check("rho-law", "edge orientation law on 10-folding curves", n=10)
def _rho(n):
    for c in all_folding_curves(n):
        if not rho_law_holds(c):
            return False, c.to_record(), {}
    return True, None, {}


def _diam_bound(n):
    return 7 * (1 << n) // 4 - 2


@_check("diameter-bound", "2n-folding curves have diameter <= 7 2^(n-2) - 2",
        n_min=2, n_max=5)
def _diameter(n_min, n_max):
    info = {}
    for n in range(n_min, n_max + 1):
        m = max(diameter_delta(c) for c in all_folding_curves(2 * n))
        info[n] = m
        if m > _diam_bound(n):
            return False, {"n": n, "max": m, "bound": _diam_bound(n)}, info
    return True, None, info


@_check("segment-count-bound", "vertices at distance >= 7 2^(n-2) - 1 need "
        ">= 2^(2n-1) segments", k_max=11, n_max=4)
def _segment_bound(k_max, n_max):
    # every finite folding curve is a subcurve of a k-folding one, so scan
    # all subcurves with fewer than 2^(2n-1) segments
    for k in range(1, k_max + 1):
        for c in all_folding_curves(k):
            v = c.vertices()
            for n in range(2, n_max + 1):
                L = (1 << (2 * n - 1)) - 1
                if L > c.n_segments:
                    continue
                d = _sliding_diameter(v, L)
                if d >= _diam_bound(n) + 1:
                    return False, {"k": k, "n": n, "diameter": d,
                                   "segments": L}, {}
    return True, None, {}


def _sliding_diameter(v: np.ndarray, L: int) -> int:
    """Largest Chebyshev diameter of any run of L segments."""
    from numpy.lib.stride_tricks import sliding_window_view as sw
    best = 0
    for axis in (0, 1):
        w = sw(v[:, axis], L + 1)
        best = max(best, int((w.max(axis=1) - w.min(axis=1)).max()))
    return best


@_check("diamond-coverage", "7-folding curves cover a diamond of radius 2, "
        "9-folding ones of radius 3", pairs=((7, 2), (9, 3)))
def _diamonds(pairs):
    for n, k in pairs:
        for c in all_folding_curves(n):
            if not covered_diamonds(c, k):
                return False, c.to_record(), {"n": n, "k": k}
    return True, None, {}


@_check("parallel-copies", "parallel and opposite copies of every n "
        "consecutive segments within 88n segments", trials=20, n_max=16,
        order=14, seed=0)
def _parallel(trials, n_max, order, seed):
    rng = random.Random(seed)
    dirs = [rng.choice((1, -1)) for _ in range(order)]
    c = folding_curve(dirs)
    for _ in range(trials):
        n = rng.randint(1, n_max)
        i = rng.randrange(0, c.n_segments - n + 1)
        j = rng.randrange(0, c.n_segments - 88 * n + 1)
        for opp in (False, True):
            if find_parallel(c, i, n, j, opposite=opp) is None:
                return False, {"dirs": dirs, "i": i, "j": j, "n": n,
                               "opposite": opp}, {}
    return True, None, {"dirs": dirs}


@_check("exterior-reaches-boundary", "non-vertex components of each curve "
        "of the two-curve covering reach the window boundary",
        half_width=32)
def _exterior(half_width):
    cov = K.positive_covering(half_width)
    win = cov.window
    for p in cov.pieces:
        rep = exterior_components(p.curve.vertices(), win)
        for comp in rep.components:
            if not comp.touches_boundary:
                return False, {"curve": p.curve_id, "size": comp.size}, {}
    return True, None, {}


# -- coverings ---------------------------------------------------------------------

def _shipped(half_width):
    return {"positive": K.positive_covering(half_width),
            "alternating": K.alternating_covering(half_width),
            "fig9": K.fig9_covering(half_width)}


EXPECTED_COUNTS = {"effective": 1, "positive": 2, "alternating": 6, "fig9": 8}


@_check("constructions-validate", "every construction is a covering of its "
        "window", half_widths=(8, 16, 32), rounds=(1, 2, 3))
def _constructions(half_widths, rounds):
    for hw in half_widths:
        for name, cov in _shipped(hw).items():
            rep = validate_covering(cov)
            if not rep.ok or rep.n_curves != EXPECTED_COUNTS[name]:
                return False, {"construction": name, "half_width": hw,
                               "violations": dict(rep.counts()),
                               "curves": rep.n_curves}, {}
    for r in rounds:
        rep = validate_covering(K.effective_single_covering(r))
        if not rep.ok or rep.n_curves != 1:
            return False, {"construction": "effective", "rounds": r}, {}
    return True, None, {}


@_check("derivation-keeps-valid", "derived coverings stay valid to depth 4",
        half_width=16, depth=4, rounds=3)
def _derive_valid(half_width, depth, rounds):
    covs = {"effective": K.effective_single_covering(rounds),
            "positive": K.positive_covering(half_width),
            "alternating": K.alternating_covering(half_width)}
    for name, cov in covs.items():
        c = cov
        for k in range(1, depth + 1):
            c = derive_covering(c)
            rep = validate_covering(c)
            if not rep.ok:
                return False, {"construction": name, "depth": k,
                               "violations": dict(rep.counts())}, {}
    return True, None, {"derived": sorted(covs)}


@_check("curve-count-under-derivation", "two and six curves survive "
        "derivation", half_width=16, depth=4)
def _count_derived(half_width, depth):
    for name, cov in (("positive", K.positive_covering(half_width)),
                      ("alternating", K.alternating_covering(half_width))):
        want = EXPECTED_COUNTS[name]
        c = cov
        for k in range(depth + 1):
            got = validate_covering(c).n_curves
            if got != want:
                return False, {"construction": name, "depth": k,
                               "curves": got}, {}
            c = derive_covering(c)
    return True, None, {}


@_check("sigma-field-exists", "one turn sign per vertex in same-type "
        "coverings", half_width=32)
def _sigma_exists(half_width):
    from .covering import Inconsistent
    for name in ("positive", "alternating"):
        cov = _shipped(half_width)[name]
        try:
            sigma_field(cov)
        except Inconsistent as exc:
            return False, {"construction": name, "error": str(exc)}, {}
    return True, None, {}


@_check("sigma-periodic", "turn signs repeat under 4Z^2 off E_3",
        half_width=32, period=4, level=3)
def _sigma_periodic(half_width, period, level):
    for name in ("positive", "alternating"):
        cov = _shipped(half_width)[name]
        bad = sigma_period_violations(cov, period, level)
        if bad:
            return False, {"construction": name, "at": bad[:5]}, {}
    return True, None, {}


def sigma_period_violations(cov, period: int, level: int) -> list:
    """Pairs X, X + U (U in period Z^2, both off E_level, both in the window)
    with different turn signs."""
    sig = sigma_field(cov)
    lat = e_lattice(cov, level)
    pts = np.array(sorted(sig), dtype=np.int64)
    _, on = lat.coords(pts)
    off = {tuple(p) for p, e in zip(pts.tolist(), on) if not e}
    bad = []
    for x, y in sorted(off):
        for q in ((x + period, y), (x, y + period)):
            if q in off and sig[q] != sig[(x, y)]:
                bad.append(((x, y), q))
    return bad


@_check("li-verdicts", "patch recurrence on the two- and six-curve "
        "coverings, failure on the eight-curve one", half_width=32,
        ks=(2, 4, 6))
def _li(half_width, ks):
    covs = _shipped(half_width)
    info = {}
    for name in ("positive", "alternating"):
        for k in ks:
            rep = li_patch_check(covs[name], k)
            info[f"{name}/{k}"] = rep.radius
            if not rep.ok:
                return False, {"construction": name, "k": k,
                               "reasons": rep.reasons}, info
    rep = li_patch_check(covs["fig9"], 2)
    if rep.ok:
        return False, {"construction": "fig9", "expected": "fail"}, info
    split = fingerprint_split(covs["fig9"])
    if sorted(len(g) for g in split) != [4, 4]:
        return False, {"split": [sorted(g) for g in split]}, info
    return True, None, info


def fingerprint_split(cov) -> list:
    """Group curve ids by their set of 4-folding factors."""
    groups = {}
    for p in cov.pieces:
        fp = factor_fingerprint(p.curve.turns, 4)
        groups.setdefault(fp, set()).add(p.curve_id)
    return list(groups.values())


@_check("li-recurrence-scan", "every k-patch appears in every block of the "
        "reported radius, by direct scan", half_width=32, k=4)
def _li_scan(half_width, k):
    for name in ("positive", "alternating"):
        cov = _shipped(half_width)[name]
        rep = li_patch_check(cov, k)
        if not rep.ok:
            continue
        ids = patch_ids(cov, k)
        types = set(np.unique(ids).tolist())
        l = rep.radius
        nx, ny = ids.shape
        for i in range(nx - l + 1):
            for j in range(ny - l + 1):
                if set(np.unique(ids[i:i + l, j:j + l]).tolist()) != types:
                    return False, {"construction": name, "block": (i, j),
                                   "radius": l}, {}
    return True, None, {}


@_check("effective-stable", "each round extends the previous covering on "
        "the previous triangle", rounds=3)
def _effective_stable(rounds):
    prev = None
    for r in range(1, rounds + 1):
        cov = K.effective_single_covering(r)
        tris = cov.meta["triangles"]
        if not tris[-1].contains_strictly(tris[-2]):
            return False, {"round": r, "interior": False}, {}
        c = cov.pieces[0].curve
        if prev is not None and not _contains_subcurve(c, prev):
            return False, {"round": r, "extends": False}, {}
        prev = c
    return True, None, {}


def _contains_subcurve(big, small) -> bool:
    """Whether ``small`` is a run of consecutive segments of ``big``."""
    hay = big.octants().astype(np.int8).tobytes()
    pat = small.octants().astype(np.int8).tobytes()
    v = big.vertices()
    k = hay.find(pat)
    while k >= 0:
        if tuple(v[k].tolist()) == tuple(small.start):
            return True
        k = hay.find(pat, k + 1)
    return False


@_check("case-split-counts", "curve counts match the fold-bit case split",
        half_width=16)
def _case_split(half_width):
    pairs = (("positive", positive_spec(), K.positive_covering),
             ("alternating", alternating_spec(), K.alternating_covering))
    for name, spec, build in pairs:
        want = K.covering_case(spec)
        got = validate_covering(build(half_width)).n_curves
        if want != got:
            return False, {"construction": name, "case": want,
                           "curves": got}, {}
    return True, None, {}
