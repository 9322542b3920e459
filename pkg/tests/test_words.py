import itertools

import pytest
from hypothesis import given, settings, strategies as st

from paperfold.words import (as_word, bar, factors, fold_strip,
                             folding_level, format_word, gen_n_folding,
                             is_finite_folding, is_n_folding, is_periodic,
                             negate, parse_word, unfold)

signs = st.sampled_from((1, -1))
dirs_st = st.lists(signs, min_size=0, max_size=10)


def test_gen_examples():
    assert gen_n_folding(()) == ()
    assert gen_n_folding((-1, 1, 1)) == (-1, 1, 1, 1, -1, -1, 1)
    assert gen_n_folding((1, 1)) == (1, 1, -1)


def test_is_n_folding_examples():
    assert not is_n_folding((1, 1, 1))
    assert is_n_folding((-1, 1, 1, 1, -1, -1, 1))
    assert is_n_folding((1,))
    assert is_n_folding(())
    assert not is_n_folding((1, 1))


def test_bar_examples():
    assert bar(()) == ()
    assert bar((1,)) == (-1,)
    assert bar((-1, 1, 1, 1, -1, -1, 1)) == (-1, 1, 1, -1, -1, -1, 1)


def test_unfold_examples():
    assert unfold((), 1) == (1,)
    assert unfold((1,), 1) == (-1, 1, 1)
    assert unfold((1, 1, -1), 1, left=False) == (1, 1, -1, 1, 1, -1, -1)
    with pytest.raises(ValueError):
        unfold((1,), 0)


def test_finite_folding_examples():
    assert is_finite_folding((1, 1, 1))
    assert not is_finite_folding((1, 1, 1, 1))
    assert is_finite_folding((1, -1))
    assert is_finite_folding(())


def test_parse_format_roundtrip():
    assert parse_word("+ - −+") == (1, -1, -1, 1)
    assert format_word((1, -1, -1)) == "+--"
    with pytest.raises(ValueError):
        parse_word("+x")
    with pytest.raises(ValueError):
        as_word((1, 0))


def test_folding_level():
    assert folding_level(()) == 0
    assert folding_level((1,) * 7) == 3
    assert folding_level((1,) * 6) is None


def test_count_exhaustive_small():
    # brute force over every word of length 2^n - 1
    for n in range(1, 5):
        hits = [w for w in itertools.product((1, -1), repeat=(1 << n) - 1)
                if is_n_folding(w)]
        assert len(hits) == 1 << n
        assert set(hits) == {gen_n_folding(d) for d in
                             itertools.product((1, -1), repeat=n)}


def test_finite_folding_matches_factor_scan():
    # oracle: factors of all 5-folding words
    pool = set()
    for d in itertools.product((1, -1), repeat=5):
        w = gen_n_folding(d)
        for t in range(0, 9):
            pool |= factors(w, t)
    for t in range(0, 9):
        for w in itertools.product((1, -1), repeat=t):
            assert is_finite_folding(w) == (w in pool), w


@given(dirs_st)
def test_fold_strip_agrees(dirs):
    # physical strip simulation vs the closed form; the first physical fold
    # makes the middle crease a_{2^(n-1)}
    assert fold_strip(dirs) == gen_n_folding(dirs[::-1])


@given(dirs_st, signs)
def test_unfold_property(dirs, c):
    w = gen_n_folding(dirs)
    for left in (True, False):
        u = unfold(w, c, left=left)
        assert is_n_folding(u)
        assert u[len(w)] == c


@given(dirs_st)
def test_bar_is_involution_and_keeps_folding(dirs):
    w = gen_n_folding(dirs)
    assert bar(bar(w)) == w
    assert is_n_folding(bar(w))
    assert is_n_folding(negate(w))


@given(st.lists(signs, min_size=2, max_size=10))
def test_even_positions_drop_first_fold(dirs):
    w = gen_n_folding(dirs)
    assert w[1::2] == gen_n_folding(dirs[1:])


@given(st.lists(signs, min_size=1, max_size=8), st.data())
def test_factors_are_finite_folding(dirs, data):
    w = gen_n_folding(dirs)
    i = data.draw(st.integers(0, len(w)))
    j = data.draw(st.integers(i, len(w)))
    assert is_finite_folding(w[i:j])


@settings(max_examples=50)
@given(st.lists(signs, min_size=1, max_size=7))
def test_odd_positions_alternate(dirs):
    w = gen_n_folding(dirs)
    odd = w[0::2]
    assert all(odd[k] == (-1) ** k * dirs[0] for k in range(len(odd)))


def test_periodic_helper():
    assert is_periodic((1, -1, 1, -1), 2)
    assert not is_periodic((1, -1, -1, 1), 2)
