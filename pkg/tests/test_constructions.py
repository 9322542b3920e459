import itertools

import pytest

from paperfold.constructions import (NoExtension, Triangle,
                                     alternating_covering, covered_triangle,
                                     covering_case, covers_triangle,
                                     effective_seed,
                                     effective_single_covering, extend_once,
                                     extend_covering_step, fig9_covering,
                                     inner_box, positive_covering, t_spec)
from paperfold.covering import (curve_types, f_level, li_patch_check,
                                validate_covering)
from paperfold.curves import folding_curve
from paperfold.sequences import (ALL_PLUS, ALTERNATING, InfFoldingSpec,
                                 Unclassifiable, from_infinite,
                                 positive_spec)
from paperfold.words import folding_level, is_n_folding


def test_hook_covers_unit_triangle():
    c = folding_curve((1,))
    assert covered_triangle(c) == Triangle((0, 0), (1, 1), (1, -1))
    assert covers_triangle(c, Triangle((1, 1), (0, 0), (2, 0)))


def test_small_folding_curves_cover_triangles():
    # every 2-folding curve covers a triangle with legs 2
    for dirs in itertools.product((1, -1), repeat=2):
        t = covered_triangle(folding_curve(dirs))
        assert t is not None
        p, q, r = t.ccw()
        assert abs(q - p).max() == 2 and abs(r - p).max() == 2


def test_exterior_support_fails():
    c = folding_curve((1, 1))
    t = covered_triangle(c)
    assert t == Triangle((0, 0), (0, 2), (2, 0))
    # the mirror image triangle leaves the supports outside
    assert not covers_triangle(c, Triangle((0, 0), (0, -2), (2, 0)))
    assert not covers_triangle(c.translated(1, 0), t)


def test_extend_step():
    c, t = effective_seed()
    assert c.turns == (-1, 1, 1, -1, -1, -1, 1)
    assert t == Triangle((2, -2), (0, 0), (4, 0))
    nxt = extend_covering_step(c, t, Triangle((0, 0), (0, -4), (4, 0)))
    assert nxt == extend_once(c, t, -1)
    nxt = extend_covering_step(c, t, Triangle((4, 0), (0, 0), (4, -4)))
    assert nxt == extend_once(c, t, 1)
    assert folding_level(nxt.turns) == 4
    with pytest.raises(NoExtension):
        extend_covering_step(c.translated(1, 0), t, t)
    with pytest.raises(NoExtension):
        extend_covering_step(c, t, Triangle((0, 0), (0, 8), (8, 0)))


def test_effective_rounds():
    one = effective_single_covering(1)
    c = one.pieces[0].curve
    assert is_n_folding(c.turns) and folding_level(c.turns) == 9
    assert one.meta["schedules"] == [(-1, -1, 1, -1, -1, 1)]
    tris = one.meta["triangles"]
    assert tris[1].contains_strictly(tris[0])
    rep = validate_covering(one)
    assert rep.ok and rep.n_curves == 1
    assert one.window == inner_box(tris[-1])
    two = effective_single_covering(2)
    assert folding_level(two.pieces[0].curve.turns) == 15
    with pytest.raises(ValueError):
        effective_single_covering(0)


@pytest.mark.parametrize("build, n", [(positive_covering, 2),
                                      (alternating_covering, 6),
                                      (fig9_covering, 8)])
def test_constructions_valid(build, n):
    rep = validate_covering(build(8))
    assert rep.ok, rep.violations[:3]
    assert rep.n_curves == n


def test_alternating_landmarks():
    cov = alternating_covering(32)
    for n in range(5):
        assert f_level(cov, (1 << n, 0)) == 2 * n
        assert f_level(cov, (1 << n, 1 << n)) == 2 * n + 1


def test_alternating_one_type():
    assert len(set(curve_types(alternating_covering(16)).values())) == 1


def test_fig9_not_li():
    rep = li_patch_check(fig9_covering(16), 8)
    assert not rep.ok and not rep.structural


def test_t_spec_nested_copies():
    # R_2n sits in R_2n+2 at offset 2^(2n+1); follow the copies outward
    from paperfold.sequences import alternating_spec
    s, t = alternating_spec(), t_spec()
    start = -1
    for n in range(1, 7):
        r = s.letters(1, 4 ** n - 1).tolist()
        assert t.letters(start, start + 4 ** n - 2).tolist() == r
        start -= 2 ** (2 * n + 1)


def test_covering_case():
    assert covering_case(from_infinite(ALL_PLUS, 1)) == 2
    assert covering_case(from_infinite(ALTERNATING, 1)) == 6
    assert covering_case(ALL_PLUS) == 2
    assert covering_case(InfFoldingSpec(prefix=(-1,), period=(1,))) == 2
    with pytest.raises(Unclassifiable):
        covering_case(InfFoldingSpec(lambda r: 1))
    with pytest.raises(Unclassifiable):
        covering_case(positive_spec().negated())
