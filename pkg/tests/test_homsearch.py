import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tavkit.fingroup import alternating, cyclic, dihedral, symmetric
from tavkit.fpgroup import verify_hom
from tavkit.homsearch import (SearchCapExceeded, hurwitz_act, hurwitz_braid,
                              hurwitz_fixed_tuples, make_hom, transport_hom, wirtinger_homs)
from tavkit.knots import BraidWord, braid_closure_presentation, braid_pd, pd_wirtinger
from tavkit.knots import unknot_presentation

TEST_BRAIDS = [("1", 2), ("1 1 1", 2), ("1 1", 2), ("1 -2 1 -2", 3), ("1 1 1 1 1", 2),
               ("1 2 1 2", 3), ("1 1 2 2", 3)]


def test_hurwitz_generator(s3):
    for a, b in itertools.product(range(6), repeat=2):
        assert hurwitz_act(s3, 1, (a, b)) == (s3.mul(s3.mul(a, b), s3.inv(a)), a)
        assert hurwitz_act(s3, -1, hurwitz_act(s3, 1, (a, b))) == (a, b)
    with pytest.raises(ValueError):
        hurwitz_act(s3, 2, (0, 1))


def test_braid_relation_exhaustive(s3):
    lhs = BraidWord(3, [1, 2, 1])
    rhs = BraidWord(3, [2, 1, 2])
    for tup in itertools.product(range(6), repeat=3):
        assert hurwitz_braid(s3, lhs, tup) == hurwitz_braid(s3, rhs, tup)


def test_fixed_tuples(s3):
    fixed = hurwitz_fixed_tuples(BraidWord(2, [1, 1, 1]), s3)
    assert len(fixed) == 12
    assert sum(1 for a, b in fixed if a == b) == 6
    for g in (s3, dihedral(5), alternating(4)):
        un = hurwitz_fixed_tuples(BraidWord(2, [1]), g)
        assert all(a == b for a, b in un) and len(un) == g.order
    f1 = set(hurwitz_fixed_tuples(BraidWord(2, [1]), s3))
    f3 = set(hurwitz_fixed_tuples(BraidWord(2, [1, 1, 1]), s3))
    f9 = set(hurwitz_fixed_tuples(BraidWord(2, [1] * 9), s3))
    assert f1 <= f3 <= f9


@pytest.mark.parametrize("word,n", TEST_BRAIDS)
def test_fixed_tuples_count_homs(word, n):
    b = BraidWord.parse(word, n)
    p = pd_wirtinger(braid_pd(b))
    for g in (symmetric(3), dihedral(5), cyclic(4)):
        assert len(hurwitz_fixed_tuples(b, g)) == len(wirtinger_homs(p, g))


def test_epimorphisms(trefoil, s3, k235, d15, k235_d15_epis):
    assert len(wirtinger_homs(trefoil, s3)) == 12
    epis = wirtinger_homs(trefoil, s3, epi=True)
    assert len(epis) == 6 and all(h.surjective and h.valid for h in epis)
    assert wirtinger_homs(unknot_presentation(), s3, epi=True) == []
    assert k235_d15_epis
    assert all(verify_hom(k235, d15, h.images) and h.surjective for h in k235_d15_epis)


def test_meridian_constraint(trefoil, s3):
    m = s3.index_of((1, 0, 2))
    hs = wirtinger_homs(trefoil, s3, meridian_image=m)
    assert len(hs) == 3 and all(h.images[0] == m for h in hs)


def test_modulo_conjugacy_covers_all_classes(trefoil):
    for g in (symmetric(3), symmetric(4), dihedral(5)):
        full = wirtinger_homs(trefoil, g, epi=True)
        reduced = wirtinger_homs(trefoil, g, epi=True, modulo_conjugacy=True)
        classes = {min(tuple(g.conj(x, c) for x in h.images) for c in range(g.order)) for h in full}
        seen = {min(tuple(g.conj(x, c) for x in h.images) for c in range(g.order)) for h in reduced}
        assert seen == classes and len(reduced) <= len(full)


def test_search_cap(k235):
    with pytest.raises(SearchCapExceeded):
        wirtinger_homs(k235, symmetric(4), cap=5)
    with pytest.raises(SearchCapExceeded):
        hurwitz_fixed_tuples(BraidWord(3, [1, 2]), symmetric(4), cap=100)


def test_transport(s3):
    b = BraidWord(2, [1, 1, 1])
    p = braid_closure_presentation(b)
    for h in wirtinger_homs(p, s3, epi=True):
        h9 = transport_hom(b, h, 3)
        assert h9.valid and h9.surjective == h.surjective
        h1 = transport_hom(b, h, 1)
        assert h1.images == h.images
    non = make_hom(p, s3, [s3.identity] * p.ngens)
    assert transport_hom(b, non, 3).surjective is False


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8), st.data())
@settings(max_examples=60, deadline=None)
def test_hurwitz_inverse_braid(letters, data):
    g = symmetric(3)
    tup = tuple(data.draw(st.integers(0, 5)) for _ in range(3))
    b = BraidWord(3, letters)
    back = BraidWord(3, [-x for x in reversed(letters)])
    assert hurwitz_braid(g, back, hurwitz_braid(g, b, tup)) == tup
    # the product of the tuple is invariant
    prod = lambda t: g.mul(g.mul(t[0], t[1]), t[2])
    assert prod(hurwitz_braid(g, b, tup)) == prod(tup)
