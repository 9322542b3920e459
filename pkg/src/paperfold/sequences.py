"""Infinite and complete folding sequences, and their factors.

A complete folding sequence (a_h), h in Z, is stored through its level
structure: at level n the positions h = r_n mod 2^(n+1) alternate in sign,
a_{r_n + k 2^(n+1)} = (-1)^k s_n.  The class F_n = r_n + 2^(n+1) Z sits inside
E_n = Z - (F_0 u ... u F_{n-1}), which is one residue class mod 2^n, so
each level only needs a branch bit saying which half of E_n is F_n.

Index 0 of a sequence built by ``from_infinite`` is the centre letter.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

import numpy as np

from .words import as_word, bar as bar_word, is_n_folding


class WindowTooSmall(ValueError):
    pass


class BadLength(ValueError):
    pass


class Undetermined(ValueError):
    """Raised when a computation needs the free letter at the E_inf point."""


class Unclassifiable(ValueError):
    pass


def _sign(x) -> int:
    x = int(x)
    if x not in (1, -1):
        raise ValueError(f"expected a sign, got {x}")
    return x


class InfFoldingSpec:
    """Fold bits b_r = a_{2^r} of a one-sided infinite folding sequence.

    Either eventually periodic (``prefix`` then ``period`` repeated) or a
    black-box callable.
    """

    def __init__(self, bits: Optional[Callable[[int], int]] = None, *,
                 prefix=(), period=None, name=None):
        if bits is None and period is None:
            raise ValueError("give a callable or a period")
        self.prefix = as_word(prefix)
        self.period = as_word(period) if period is not None else None
        if self.period is not None and not self.period:
            raise ValueError("period must be nonempty")
        self._bits = bits
        self.name = name

    @classmethod
    def periodic(cls, prefix, period, name=None):
        return cls(prefix=prefix, period=period, name=name)

    @property
    def is_black_box(self) -> bool:
        return self.period is None

    def bit(self, r: int) -> int:
        if r < 0:
            raise ValueError("level must be >= 0")
        if self.period is None:
            return _sign(self._bits(r))
        if r < len(self.prefix):
            return self.prefix[r]
        return self.period[(r - len(self.prefix)) % len(self.period)]

    __call__ = bit

    def prefix_word(self, n: int) -> tuple:
        """The n-folding prefix (a_1, ..., a_{2^n - 1})."""
        from .words import gen_n_folding
        return gen_n_folding([self.bit(r) for r in range(n)])

    def __repr__(self):
        if self.name:
            return f"InfFoldingSpec({self.name})"
        if self.period is None:
            return "InfFoldingSpec(<callable>)"
        return f"InfFoldingSpec(prefix={self.prefix}, period={self.period})"


ALL_PLUS = InfFoldingSpec.periodic((), (1,), name="all-plus")
ALTERNATING = InfFoldingSpec.periodic((), (-1, 1), name="alternating")

# rules usable in the record format; they give the choice at every level
_RULES = {
    "all-plus": lambda n: (1, 1),
    "alternating": lambda n: (1, -1 if n % 2 == 0 else 1),
}


class Window(NamedTuple):
    lo: int
    letters: tuple  # signs, with None at an undetermined index
    hole: Optional[int]  # absolute index of the undetermined letter

    def word(self) -> tuple:
        if self.hole is not None:
            raise Undetermined(f"index {self.hole} is undetermined")
        return self.letters


class CompleteSpec:
    """A complete folding sequence given by per-level choices.

    ``choice(n)`` returns ``(branch_bit, sign)``.  The residues are
    r_0 = b_0 and r_{n+1} = ((r_n + 2^n) mod 2^(n+1)) + b_{n+1} 2^(n+1).
    Levels beyond ``level_cap`` are never consulted; an index still in
    E_{level_cap + 1} takes ``limit_sign`` (None means undetermined).
    """

    def __init__(self, choice, limit_sign=None, level_cap: int = 64,
                 rule: Optional[str] = None):
        if level_cap < 1:
            raise ValueError("level_cap must be positive")
        self.level_cap = int(level_cap)
        self.limit_sign = None if limit_sign is None else _sign(limit_sign)
        self.rule = rule
        if callable(choice):
            fn = choice
            self._prefix = None
        else:
            prefix = [(int(b), _sign(s)) for b, s in choice]
            self._prefix = prefix
            tail = _RULES[rule] if rule else None

            def fn(n, prefix=prefix, tail=tail):
                if n < len(prefix):
                    return prefix[n]
                if tail is None:
                    raise ValueError(f"no choice given for level {n}")
                return tail(n)
        res, signs, bits = [], [], []
        r = None
        for n in range(self.level_cap + 1):
            b, s = fn(n)
            if b not in (0, 1):
                raise ValueError("branch bits are 0 or 1")
            if n == 0:
                r = b
            else:
                e = (r + (1 << (n - 1))) % (1 << n)
                r = e + b * (1 << n)
            res.append(r)
            signs.append(_sign(s))
            bits.append(b)
        self.residues = tuple(res)
        self.signs = tuple(signs)
        self.bits = tuple(bits)

    # -- evaluation -------------------------------------------------------

    def choice(self, n: int):
        return self.bits[n], self.signs[n]

    def e_class(self, n: int) -> int:
        """Representative in [0, 2^n) of E_n."""
        if n == 0:
            return 0
        return (self.residues[n - 1] + (1 << (n - 1))) % (1 << n)

    def level_of(self, h: int) -> Optional[int]:
        """The n with h in F_n, or None past the level cap."""
        for n, r in enumerate(self.residues):
            if (h - r) % (2 << n) == 0:
                return n
        return None

    def value_at(self, h: int):
        n = self.level_of(h)
        if n is None:
            return self.limit_sign
        k = (h - self.residues[n]) >> (n + 1)
        return self.signs[n] if k % 2 == 0 else -self.signs[n]

    def letters(self, lo: int, hi: int) -> np.ndarray:
        """int8 array of a_lo..a_hi; 0 marks an undetermined index."""
        if lo > hi:
            raise ValueError("lo must be <= hi")
        h = np.arange(lo, hi + 1, dtype=np.int64)
        out = np.zeros(h.size, dtype=np.int8)
        todo = np.ones(h.size, dtype=bool)
        for n, (r, s) in enumerate(zip(self.residues, self.signs)):
            mod = 2 << n
            if mod > 1 << 40:
                break
            q, rem = np.divmod(h - r, mod)
            hit = todo & (rem == 0)
            if hit.any():
                out[hit] = np.where(q[hit] % 2 == 0, s, -s)
                todo &= ~hit
            if not todo.any():
                break
        # past this point E_n holds at most one index of the window
        for i in np.flatnonzero(todo):
            v = self.value_at(int(h[i]))
            out[i] = 0 if v is None else v
        return out

    def window(self, lo: int, hi: int) -> Window:
        arr = self.letters(lo, hi)
        holes = np.flatnonzero(arr == 0)
        hole = int(lo + holes[0]) if holes.size else None
        return Window(lo, tuple(None if a == 0 else int(a) for a in arr), hole)

    def infinity_point(self, near: int = 0) -> Optional[int]:
        """The index left in E_{cap+1}, if it is the one closest to ``near``."""
        mod = 2 << self.level_cap
        e = (self.residues[-1] + (1 << self.level_cap)) % mod
        cand = near + ((e - near) % mod)
        if cand - near > mod // 2:
            cand -= mod
        return cand

    # -- transforms -------------------------------------------------------

    def _remap(self, residues, signs, limit_sign):
        cap = self.level_cap
        bits = [residues[0]] + [residues[n] >> n for n in range(1, cap + 1)]
        choices = list(zip(bits, signs))
        return CompleteSpec(choices, limit_sign=limit_sign, level_cap=cap)

    def bar(self) -> "CompleteSpec":
        """a'_h = -a_{-h}."""
        res, signs = [], []
        for n, (r, s) in enumerate(zip(self.residues, self.signs)):
            r2 = (-r) % (2 << n)
            res.append(r2)
            signs.append(-self.value_at(-r2))
        lim = None if self.limit_sign is None else -self.limit_sign
        return self._remap(res, signs, lim)

    def negated(self) -> "CompleteSpec":
        lim = None if self.limit_sign is None else -self.limit_sign
        return self._remap(self.residues, [-s for s in self.signs], lim)

    def shifted(self, k: int) -> "CompleteSpec":
        """a'_h = a_{h+k}."""
        res, signs = [], []
        for n, r in enumerate(self.residues):
            r2 = (r - k) % (2 << n)
            res.append(r2)
            signs.append(self.value_at(r2 + k))
        return self._remap(res, signs, self.limit_sign)

    # -- serialization ----------------------------------------------------

    def to_record(self) -> dict:
        if self.rule and self._prefix is not None:
            choices = [list(c) for c in self._prefix]
        else:
            choices = [[b, s] for b, s in zip(self.bits, self.signs)]
        return {"choices": choices, "rule": self.rule,
                "limitSign": self.limit_sign, "levelCap": self.level_cap}

    @classmethod
    def from_record(cls, rec: dict) -> "CompleteSpec":
        rule = rec.get("rule")
        if rule is not None and rule not in _RULES:
            raise ValueError(f"unknown rule {rule!r}")
        return cls([tuple(c) for c in rec.get("choices", [])],
                   limit_sign=rec.get("limitSign"),
                   level_cap=rec.get("levelCap", 64), rule=rule)

    def __repr__(self):
        head = ", ".join(f"({b},{s:+d})" for b, s in
                         zip(self.bits[:4], self.signs[:4]))
        return f"CompleteSpec([{head}, ...], limit_sign={self.limit_sign})"


def _theta_fn(theta):
    if callable(theta):
        return theta
    theta = Fraction(theta)
    if theta.denominator % 2 == 0:
        raise ValueError("a 2-adic shift needs an odd denominator")
    p, q = theta.numerator, theta.denominator

    def mod(m):
        return (p * pow(q, -1, 1 << m)) % (1 << m)
    return mod


def from_two_adic(bits: InfFoldingSpec, theta=0, limit_sign=None,
                  level_cap: int = 64) -> CompleteSpec:
    """The sequence a_h = R(h + theta) where R(2^r (2m+1)) = (-1)^m b_r.

    ``theta`` is a 2-adic integer: an int, a Fraction with odd denominator,
    or a callable giving theta mod 2^m.  When theta is an ordinary integer
    the index -theta is the E_inf point and takes ``limit_sign``.
    """
    tm = _theta_fn(theta)
    choices = []
    for n in range(level_cap + 1):
        th = tm(n + 2)
        r = ((1 << n) - th) % (2 << n)
        u = (r + th) % (4 << n)
        m_odd = (u >> (n + 1)) & 1
        b = bits.bit(n)
        sign = -b if m_odd else b
        branch = r if n == 0 else r >> n
        choices.append((branch, sign))
    return CompleteSpec(choices, limit_sign=limit_sign, level_cap=level_cap)


def from_infinite(bits: InfFoldingSpec, center: int,
                  level_cap: int = 64) -> CompleteSpec:
    """(bar R, center, R) with the centre at index 0 and R_1 at index 1."""
    center = _sign(center)
    if not bits.is_black_box and bits.name in _RULES:
        # keep the compact named form for serialization
        spec = CompleteSpec([], limit_sign=center, level_cap=level_cap,
                            rule=bits.name)
    else:
        choices = [(1, bits.bit(n)) for n in range(level_cap + 1)]
        spec = CompleteSpec(choices, limit_sign=center, level_cap=level_cap)
    spec.source_bits = bits
    return spec


def positive_spec(level_cap: int = 64) -> CompleteSpec:
    return from_infinite(ALL_PLUS, 1, level_cap)


def alternating_spec(level_cap: int = 64) -> CompleteSpec:
    return from_infinite(ALTERNATING, 1, level_cap)


def named_spec(name: str) -> CompleteSpec:
    if name in ("positive", "all-plus"):
        return positive_spec()
    if name == "alternating":
        return alternating_spec()
    raise KeyError(name)


# -- factors ------------------------------------------------------------------

def _level_for(t: int) -> int:
    """Least r with t <= 2^r."""
    return max(0, (t - 1).bit_length())


def window_half_width(t: int) -> int:
    return 5 << _level_for(t)


def factor_set(letters, t: int) -> set:
    """Distinct length-t factors of a word (tuple or int array)."""
    a = np.asarray(letters, dtype=np.int8)
    if t <= 0:
        return {()}
    if a.size < t:
        return set()
    view = np.lib.stride_tricks.sliding_window_view(a, t)
    uniq = np.unique(view, axis=0)
    return {tuple(int(x) for x in row) for row in uniq}


def subword_set(spec: CompleteSpec, t: int, half_width: Optional[int] = None,
                center: int = 0) -> set:
    """All length-t factors, read off a window of half-width >= 5 * 2^r."""
    need = window_half_width(t)
    N = need if half_width is None else half_width
    if N < need:
        raise WindowTooSmall(f"half-width {N} < {need} for t={t}")
    arr = spec.letters(center - N, center + N)
    if (arr == 0).any():
        hole = center - N + int(np.flatnonzero(arr == 0)[0])
        raise Undetermined(f"index {hole} is undetermined; set limit_sign")
    return factor_set(arr, t)


class SubwordForm(NamedTuple):
    tag: int
    zeta: int
    eta: Optional[int]
    len1: int
    len2: int
    level: int


def enumerate_subwords_by_forms(spec: CompleteSpec, n: int, t: int):
    """All (form, word) pairs of length t built from T = a_{h+1..h+2^n-1},
    h in E_n."""
    if not (max(1 << n, 7) <= t <= (2 << n) - 1):
        raise BadLength(f"t={t} outside [{max(1 << n, 7)}, {(2 << n) - 1}]")
    h = spec.e_class(n)
    L = (1 << n) - 1
    T = tuple(int(x) for x in spec.letters(h + 1, h + L))
    if 0 in T:
        raise Undetermined("T crosses the undetermined index")
    Tb = bar_word(T)

    def tail(w, k):
        return w[len(w) - k:] if k else ()

    out = []
    for z in (1, -1):
        for k1 in range(t - (1 << n), L + 1):
            k2 = t - 1 - k1
            out.append((SubwordForm(1, z, None, k1, k2, n),
                        tail(T, k1) + (z,) + Tb[:k2]))
            out.append((SubwordForm(2, z, None, k1, k2, n),
                        tail(Tb, k1) + (z,) + T[:k2]))
        for e in (1, -1):
            for k1 in range(0, t - (1 << n)):
                k2 = t - (1 << n) - 1 - k1
                out.append((SubwordForm(3, z, e, k1, k2, n),
                            tail(T, k1) + (z,) + Tb + (e,) + T[:k2]))
                out.append((SubwordForm(4, z, e, k1, k2, n),
                            tail(Tb, k1) + (z,) + T + (e,) + Tb[:k2]))
    return out


def recurrence_check(spec: CompleteSpec, r: int, trials: int = 100,
                     seed: int = 0, spread: Optional[int] = None):
    """Check that every factor of length <= 2^r lies in each sampled window
    of length 10 * 2^r - 2.  Returns (ok, failing_anchor_or_None)."""
    t = 1 << r
    everything = subword_set(spec, t)
    L = 10 * t - 2
    rng = random.Random(seed)
    spread = spread if spread is not None else 64 * t
    for _ in range(trials):
        h = rng.randint(-spread, spread)
        arr = spec.letters(h + 1, h + L)
        if (arr == 0).any():
            raise Undetermined("window crosses the undetermined index")
        if not everything <= factor_set(arr, t):
            return False, h
    return True, None


def folding_factors(spec: CompleteSpec, n: int) -> set:
    """Factors of length 2^n - 1 that are n-folding words."""
    t = (1 << n) - 1
    return {w for w in subword_set(spec, t) if is_n_folding(w)}


def complexity(spec: CompleteSpec, t: int) -> int:
    return len(subword_set(spec, t))


def is_nonperiodic_window(letters, max_period: int) -> Optional[int]:
    """Return a period p <= max_period of the word, or None."""
    a = np.asarray(letters, dtype=np.int8)
    for p in range(1, min(max_period, a.size - 1) + 1):
        if np.array_equal(a[p:], a[:-p]):
            return p
    return None


def sync_violation(spec: CompleteSpec, n: int, half_width: int):
    """Look for equal factors of length max(2^n, 7) at offsets r, s with
    r - s not a multiple of 2^(n+1).  Returns a pair or None."""
    t = max(1 << n, 7)
    lo = -half_width
    arr = spec.letters(lo, half_width)
    first = {}
    mod = 2 << n
    for i in range(arr.size - t + 1):
        key = arr[i:i + t].tobytes()
        pos = lo + i - 1  # the factor is a_{r+1..r+t}
        seen = first.setdefault(key, {})
        cls = pos % mod
        if cls not in seen:
            seen[cls] = pos
            if len(seen) > 1:
                a, b = list(seen.values())[:2]
                return a, b
    return None


def lcm_list(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out
