import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paperfold.sequences import (ALL_PLUS, ALTERNATING, BadLength,
                                 CompleteSpec, InfFoldingSpec,
                                 WindowTooSmall, alternating_spec, complexity,
                                 enumerate_subwords_by_forms, factor_set,
                                 folding_factors, from_infinite,
                                 from_two_adic, is_nonperiodic_window,
                                 positive_spec, recurrence_check,
                                 subword_set, sync_violation)
from paperfold.words import is_finite_folding, is_n_folding

POS = positive_spec()
ALT = alternating_spec()


def test_value_at_positive():
    assert POS.value_at(0) == 1
    assert POS.value_at(3) == -1
    assert POS.value_at(-3) == 1


def test_window_positive():
    assert POS.window(1, 7).word() == (1, 1, -1, 1, 1, -1, -1)
    assert POS.window(5, 5).hole is None


def test_hole_without_limit_sign():
    s = CompleteSpec([], limit_sign=None, rule="all-plus")
    w = s.window(-1, 1)
    assert w.hole == 0
    assert w.letters[0] is not None and w.letters[2] is not None


@pytest.mark.parametrize("bits", [ALL_PLUS, ALTERNATING])
def test_from_infinite_fold_bits(bits):
    s = from_infinite(bits, 1)
    for r in range(11):
        assert s.value_at(1 << r) == bits.bit(r)
    # (bar R, c, R) around index 0
    right = tuple(int(x) for x in s.letters(1, 63))
    left = tuple(int(x) for x in s.letters(-63, -1))
    assert left == tuple(-a for a in reversed(right))
    assert is_n_folding(right)


def test_alternating_recursion():
    # R_{n+1} = (R_n, (-1)^(n+1), bar R_n), starting from R_1 = (-1)
    r = (-1,)
    for n in range(1, 7):
        r = r + ((-1) ** (n + 1),) + tuple(-a for a in reversed(r))
    assert tuple(int(x) for x in ALT.letters(1, len(r))) == r


def _r_value(k: int, bits) -> int:
    r = (k & -k).bit_length() - 1
    m = k >> (r + 1)
    return bits.bit(r) if m % 2 == 0 else -bits.bit(r)


def test_two_adic_oracle():
    # direct evaluation of R(h + theta) with theta reduced mod 2^40
    theta = Fraction(-2, 3)
    M = 40
    tm = (theta.numerator * pow(theta.denominator, -1, 1 << M)) % (1 << M)
    s = from_two_adic(ALTERNATING, theta)
    got = s.letters(-500, 500)
    want = [_r_value(h + tm, ALTERNATING) for h in range(-500, 501)]
    assert got.tolist() == want


def test_bar_and_shift_oracles():
    s = from_two_adic(ALTERNATING, Fraction(-2, 3))
    b = s.bar()
    h = np.arange(-200, 201)
    assert b.letters(-200, 200).tolist() == (-s.letters(-200, 200)[::-1]).tolist()
    sh = s.shifted(5)
    assert sh.letters(-50, 50).tolist() == s.letters(-45, 55).tolist()
    assert s.negated().letters(-9, 9).tolist() == (-s.letters(-9, 9)).tolist()
    assert h.size == 401


def test_record_roundtrip():
    for s in (POS, ALT, from_two_adic(ALTERNATING, Fraction(-2, 3))):
        t = CompleteSpec.from_record(s.to_record())
        assert t.letters(-300, 300).tolist() == s.letters(-300, 300).tolist()


def test_subword_set_examples():
    assert subword_set(POS, 1) == {(1,), (-1,)}
    assert len(subword_set(POS, 7)) == 28
    assert len(subword_set(POS, 4)) == 12
    with pytest.raises(WindowTooSmall):
        subword_set(POS, 7, half_width=10)


def test_forms_counts():
    pairs = enumerate_subwords_by_forms(POS, 2, 7)
    assert len(pairs) == 28
    pairs = enumerate_subwords_by_forms(POS, 3, 8)
    assert len(pairs) == 32
    with pytest.raises(BadLength):
        enumerate_subwords_by_forms(POS, 3, 16)


@pytest.mark.parametrize("spec", [POS, ALT])
def test_forms_match_window_scan(spec):
    for t in range(7, 16):
        n = 2 if t < 8 else 3
        words = [w for _, w in enumerate_subwords_by_forms(spec, n, t)]
        assert len(words) == len(set(words)) == 4 * t
        assert set(words) == subword_set(spec, t)


def test_recurrence_examples():
    assert recurrence_check(POS, 3, trials=50)[0]
    for h in range(-40, 40):
        assert set(POS.letters(h + 1, h + 8).tolist()) == {1, -1}


def test_folding_factors_eight():
    for n in range(3, 6):
        assert len(folding_factors(POS, n)) == 8
        assert len(folding_factors(ALT, n)) == 8


def test_negation_not_locally_isomorphic():
    assert not folding_factors(POS, 4) & folding_factors(POS.negated(), 4)


def test_nonperiodic_helper():
    assert is_nonperiodic_window([1, -1] * 10, 4) == 2
    assert is_nonperiodic_window(POS.letters(-4096, 4096), 1024) is None


def test_black_box_bits():
    b = InfFoldingSpec(lambda r: 1 if r % 3 else -1)
    s = from_infinite(b, -1)
    assert s.value_at(0) == -1
    assert s.value_at(1) == -1 and s.value_at(2) == 1


def _random_spec(seed: int) -> CompleteSpec:
    rng = random.Random(seed)
    choices = [(rng.randint(0, 1), rng.choice((1, -1))) for _ in range(65)]
    return CompleteSpec(choices, limit_sign=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_spec_complexity(seed):
    s = _random_spec(seed)
    for t, want in zip(range(1, 7), (2, 4, 8, 12, 18, 23)):
        assert complexity(s, t) == want
    for t in (7, 9, 16, 17):
        assert complexity(s, t) == 4 * t


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_random_spec_windows_fold(seed, h):
    s = _random_spec(seed)
    w = tuple(int(x) for x in s.letters(h, h + 40))
    assert is_finite_folding(w)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_spec_sync(seed):
    s = _random_spec(seed)
    for n in range(1, 4):
        assert sync_violation(s, n, 1024) is None


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_spec_bar_same_factors(seed):
    s = _random_spec(seed)
    for t in (5, 11, 20):
        assert subword_set(s, t) == subword_set(s.bar(), t)


def test_factor_set_short():
    assert factor_set([1, -1], 3) == set()
    assert factor_set([1, -1, 1], 0) == {()}
