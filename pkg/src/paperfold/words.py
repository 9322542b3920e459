"""Finite folding words.

A word is a tuple of signs (+1 / -1).  Letters are numbered from 1 in the
mathematical sense, so ``w[k - 1]`` is the letter a_k.
"""

from __future__ import annotations

import numpy as np

PLUS, MINUS = 1, -1

_CHAR = {1: "+", -1: "-"}
_SIGN = {"+": 1, "-": -1, "−": -1}


def as_word(letters) -> tuple:
    if not isinstance(letters, (tuple, list, np.ndarray)):
        letters = tuple(letters)
    a = np.asarray(letters, dtype=np.int64).reshape(-1)
    bad = (a != 1) & (a != -1)
    if bad.any():
        raise ValueError(f"letters must be +1 or -1, got {a[bad][0]}")
    return tuple(a.tolist())


def parse_word(text: str) -> tuple:
    """Read a word written with ``+`` and ``-`` (whitespace ignored)."""
    out = []
    for ch in text:
        if ch.isspace():
            continue
        if ch not in _SIGN:
            raise ValueError(f"unexpected character {ch!r} in word")
        out.append(_SIGN[ch])
    return tuple(out)


def format_word(w) -> str:
    return "".join(_CHAR[int(a)] for a in w)


def bar(w) -> tuple:
    """Reverse and negate."""
    return tuple(-a for a in reversed(tuple(w)))


def negate(w) -> tuple:
    return tuple(-a for a in w)


def unfold(w, center: int, left: bool = True) -> tuple:
    """Unfold once: ``(bar(w), center, w)``, or ``(w, center, bar(w))`` when
    ``left`` is false."""
    w = tuple(w)
    if center not in (1, -1):
        raise ValueError("center must be a sign")
    if left:
        return bar(w) + (center,) + w
    return w + (center,) + bar(w)


def gen_n_folding(dirs) -> tuple:
    """The word of length 2**n - 1 with a_{2^r (2m+1)} = (-1)^m dirs[r]."""
    dirs = as_word(dirs)
    n = len(dirs)
    size = (1 << n) - 1
    out = [0] * size
    for k in range(1, size + 1):
        r = (k & -k).bit_length() - 1
        m = k >> (r + 1)
        out[k - 1] = dirs[r] if m % 2 == 0 else -dirs[r]
    return tuple(out)


def folding_level(w):
    """n if ``len(w) == 2**n - 1``, else None."""
    size = len(w) + 1
    if size & (size - 1):
        return None
    return size.bit_length() - 1


def _alternates(layer: np.ndarray) -> bool:
    if layer.size < 2:
        return True
    signs = np.where(np.arange(layer.size) % 2 == 0, 1, -1)
    prod = layer * signs
    return bool(np.all(prod == prod[0]))


def is_n_folding(w) -> bool:
    """True iff ``w`` is an n-folding word for n = log2(len(w) + 1)."""
    if folding_level(w) is None:
        return False
    a = np.asarray(w, dtype=np.int8)
    while a.size:
        # odd positions a_1, a_3, ... must alternate; the even ones recurse
        if not _alternates(a[0::2]):
            return False
        a = a[1::2]
    return True


def is_finite_folding(w) -> bool:
    """True iff ``w`` is a factor of some n-folding word."""
    return _factor_ok(np.asarray(w, dtype=np.int8))


def _factor_ok(a: np.ndarray) -> bool:
    if a.size <= 1:
        return True
    for phase in (0, 1):
        if _alternates(a[phase::2]) and _factor_ok(a[1 - phase::2]):
            return True
    return False


def factors(w, t: int) -> set:
    w = tuple(w)
    return {w[i:i + t] for i in range(len(w) - t + 1)}


def is_periodic(w, p: int) -> bool:
    w = tuple(w)
    return all(w[i] == w[i + p] for i in range(len(w) - p))


def fold_strip(ups) -> tuple:
    """Crease pattern of a paper strip folded in half ``len(ups)`` times.

    Fold i carries the right half of the current stack over (+1) or under
    (-1) the left half.  Creases are read left to right on the unfolded
    strip.  This simulates the physical strip and shares no code with the
    recursive rules above; tests use it as a second route.
    """
    count = 1 << len(ups)
    pos = list(range(count))  # stack column of each unit cell
    face = [1] * count  # +1 while a cell still faces up
    width = count
    crease = [0] * (count - 1)
    for up in ups:
        half = width // 2
        # the crease sign is read in the frame of the cell that stays put
        before = list(face)
        stays = [pos[c] < half for c in range(count)]
        for c in range(count):
            if not stays[c]:
                pos[c] = width - 1 - pos[c]
                face[c] = -face[c]
        for k in range(count - 1):
            if crease[k] == 0 and pos[k] == pos[k + 1]:
                keep = k if stays[k] else k + 1
                crease[k] = up * before[keep]
        width = half
    return tuple(crease)
