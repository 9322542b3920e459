import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paperfold.curves import (Ambiguous, Curve, NotDerivable, NotFolding,
                              all_folding_curves, antiderivatives,
                              covered_diamonds, curve_from_turns,
                              curve_type, derivative, diameter_delta,
                              exterior_components, find_parallel,
                              folding_curve, is_self_avoiding, rho_constant,
                              rho_law_holds, rho_sign, segment_rhos,
                              sigma_map, sigma_sign, square_config_check,
                              square_config_violations,
                              visits_vertices_once)

signs = st.sampled_from((1, -1))


def _turtle(start, d, turns):
    # plain turtle walk oracle
    steps = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    x, y = start
    pts = [(x, y)]
    for k in range(len(turns) + 1):
        dx, dy = steps[d]
        x, y = x + dx, y + dy
        pts.append((x, y))
        if k < len(turns):
            d = (d + turns[k]) % 4
    return pts


def test_single_segment():
    c = curve_from_turns((0, 0), "E", ())
    assert c.vertices().tolist() == [[0, 0], [1, 0]]
    assert diameter_delta(c) == 1


@settings(max_examples=60)
@given(st.lists(signs, max_size=30), st.integers(0, 3),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_vertices_match_turtle(turns, d, start):
    c = Curve(start, d, tuple(turns), 0)
    assert [tuple(p) for p in c.vertices().tolist()] == _turtle(start, d,
                                                                 turns)


def test_two_folding_shape():
    c = curve_from_turns((0, 0), 0, (1, 1, -1))
    assert c.n_segments == 4
    assert c.end == (0, 2)


def test_self_avoiding_examples():
    square = curve_from_turns((0, 0), 0, (1, 1, 1))
    # four distinct supports; the walk only closes up at the origin
    assert is_self_avoiding(square)
    assert not visits_vertices_once(square)
    assert square.end == square.start
    assert is_self_avoiding(curve_from_turns((0, 0), 0, (1, -1)))
    assert not is_self_avoiding(curve_from_turns((0, 0), 0, (1, 1, 1, 1)))


def test_folding_curves_touch_at_corners():
    # supports are distinct, yet some vertex is met twice
    assert any(not visits_vertices_once(c) for c in all_folding_curves(4))


@pytest.mark.parametrize("n", range(1, 9))
def test_folding_curves_self_avoiding_and_square(n):
    for c in all_folding_curves(n):
        assert is_self_avoiding(c)
        assert square_config_check(c)


def test_square_config_counterexamples():
    # three corners with only one edge at the middle corner
    c = curve_from_turns((0, 0), 0, (1, 1, 1, -1, 1, 1))
    assert is_self_avoiding(c)
    kinds = {v[0] for v in square_config_violations(c)}
    assert "three" in kinds
    # two opposite corners of a unit square, the others unused
    c = curve_from_turns((0, 0), 0, (1, -1, 1, 1, -1, 1, 1, -1, 1))
    assert is_self_avoiding(c)
    assert "two" in {v[0] for v in square_config_violations(c)}
    assert not square_config_check(c)


def test_derivative_examples():
    c = curve_from_turns((0, 0), 0, (1, 1, -1))
    d = derivative(c)
    assert d.turns == (1,) and d.level == 1
    assert d.start == c.start and d.end == c.end
    with pytest.raises(Ambiguous):
        derivative(curve_from_turns((0, 0), 0, (1, -1)), trim=True)
    with pytest.raises(NotDerivable):
        derivative(curve_from_turns((0, 0), 0, (1, 1)))


@pytest.mark.parametrize("n", range(2, 9))
def test_derivative_lowers_order(n):
    for dirs in itertools.product((1, -1), repeat=n):
        c = folding_curve(dirs)
        d = derivative(c)
        assert d.turns == folding_curve(dirs[1:]).turns
        # every other vertex of c is a vertex of d
        assert (c.vertices()[::2] == d.vertices()).all()


def test_antiderivatives_of_segment():
    seg = Curve((0, 0), 0, (), 1)
    a, b = antiderivatives(seg)
    assert a.turns == (-1,) and b.turns == (1,)
    for c in (a, b):
        assert c.start == seg.start and c.end == seg.end
        assert c.level == 0
    with pytest.raises(ValueError):
        antiderivatives(Curve((0, 0), 0, (), 0))


@settings(max_examples=60)
@given(st.lists(signs, min_size=0, max_size=7), st.integers(0, 3))
def test_antiderivative_roundtrip(dirs, d):
    c = folding_curve(dirs, start_dir=d, level=1)
    for a in antiderivatives(c):
        assert derivative(a) == c
        assert is_self_avoiding(a)


def test_rho_examples():
    c = folding_curve((1, -1, 1, 1))
    v = c.vertices()
    first = (tuple(v[0]), tuple(v[1]))
    assert rho_sign(c, first) == segment_rhos(c)[0]
    e = ((3, 5), (4, 5))
    f = ((4, 6), (5, 6))
    assert rho_sign(c, e) == rho_sign(c, f)
    h = ((2, 2), (3, 2))
    w = ((2, 2), (2, 3))
    assert rho_sign(c, h) == -rho_sign(c, w)
    with pytest.raises(ValueError):
        rho_sign(c, ((0, 0), (1, 1)))


@pytest.mark.parametrize("n", range(1, 9))
def test_rho_law_all_folding(n):
    for c in all_folding_curves(n):
        assert rho_law_holds(c)
        assert rho_constant(c) in (1, -1)


def test_sigma_examples():
    c = curve_from_turns((0, 0), 0, (1, 1, -1))
    v = c.vertices()
    assert sigma_sign(c, v[1]) == 1
    assert sigma_sign(c, v[0]) is None
    assert sigma_sign(c, v[-1]) is None


@pytest.mark.parametrize("n", range(1, 9))
def test_sigma_well_defined(n):
    # a vertex met twice carries the same turn
    for c in all_folding_curves(n):
        sigma_map(c)


def test_exterior_trivial():
    win = (0, 0, 4, 4)
    full = {(x, y) for x in range(5) for y in range(5)}
    assert exterior_components(full, win).components == []
    rep = exterior_components(set(), win)
    assert len(rep.components) == 1
    assert rep.components[0].size == 25
    assert rep.components[0].touches_boundary


def test_exterior_enclosed_hole():
    ring = {(x, y) for x in range(3) for y in range(3)} - {(1, 1)}
    rep = exterior_components(ring, (-2, -2, 4, 4))
    sizes = sorted((c.size, c.touches_boundary) for c in rep.components)
    assert sizes == [(1, False), (40, True)]


def test_exterior_sides():
    c = folding_curve((1, 1, 1, 1, 1, 1))
    rep = exterior_components({tuple(p) for p in c.vertices().tolist()},
                              (-20, -20, 20, 20), c)
    assert any(comp.side is not None for comp in rep.components)


def test_find_parallel_unit():
    c = folding_curve((1,) * 8)
    m = find_parallel(c, 0, 1, 0)
    assert m is not None and c.octants()[m.index] == c.octants()[0]
    mo = find_parallel(c, 0, 1, 0, opposite=True)
    assert mo is not None
    assert (c.octants()[mo.index] - c.octants()[0]) % 8 == 4
    with pytest.raises(IndexError):
        find_parallel(c, 0, 4, 200)


def test_find_parallel_offsets():
    rng = random.Random(7)
    c = folding_curve(tuple(rng.choice((1, -1)) for _ in range(12)))
    v = c.vertices()
    for _ in range(10):
        n = rng.randint(1, 8)
        i = rng.randrange(0, c.n_segments - n)
        j = rng.randrange(0, c.n_segments - 88 * n + 1)
        for opp in (False, True):
            m = find_parallel(c, i, n, j, opposite=opp)
            assert m is not None
            a = v[i:i + n + 1] - v[i]
            b = v[m.index:m.index + n + 1] - v[m.index]
            assert (b == (-a if opp else a)).all()


def test_curve_type_rotation_flips():
    c = folding_curve((1, -1, 1))
    t = curve_type(c)
    assert t in "HV"
    assert curve_type(c.rotated(1)) != t
    assert curve_type(c.rotated(2)) == t
    assert curve_type(c) == t
    with pytest.raises(NotFolding):
        curve_type(curve_from_turns((0, 0), 0, (1, 1, 1, 1, 1)))


def test_curve_type_stable_under_extension():
    dirs = (1, -1, 1)
    t = curve_type(folding_curve(dirs))
    for extra in itertools.product((1, -1), repeat=2):
        # the 3-folding curve sits at the start of its 5-folding extension
        big = folding_curve(extra + dirs)
        assert big.turns[: 7] != () and curve_type(big) in "HV"
    assert t == curve_type(folding_curve(dirs, start_dir=0))


def test_diameter_small_bound():
    assert max(diameter_delta(c) for c in all_folding_curves(4)) <= 5


def test_covered_diamonds_small():
    hits = [covered_diamonds(c, 2) for c in all_folding_curves(7)]
    assert all(hits)


def test_record_roundtrip():
    for c in (folding_curve((1, -1, 1)), Curve((2, -3), 1, (1, -1), 1)):
        assert Curve.from_record(c.to_record()) == c


def test_scaled_and_normalized():
    c = folding_curve((1, -1, 1, 1))
    s = c.scaled2()
    assert (s.vertices() == 2 * c.vertices()).all()
    assert s.normalized().turns == c.turns
    assert np.array_equal(c.mirrored().mirrored().vertices(), c.vertices())
