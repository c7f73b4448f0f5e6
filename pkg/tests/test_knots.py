import pytest

from tavkit.exact import cyclotomic_poly
from tavkit.fingroup import dihedral, symmetric
from tavkit.fpgroup import abelianization, knot_phi, phi_of, tietze_simplify, verify_hom, word_eval
from tavkit.homsearch import make_hom, wirtinger_homs
from tavkit.knots import (BraidWord, PDCode, antiparallel_slots, braid_closure_presentation,
                          braid_pd, braid_power, collapse_pattern, encircle, knot_presentation,
                          longitude_word, pattern_link, pd_wirtinger, quotient_hom_data,
                          satellite_glue, torus_presentation, unknot_presentation)
from tavkit.twisted import alexander_polynomial

TREFOIL_PD = {"crossings": [[1, 5, 2, 4, 1], [3, 1, 4, 6, 1], [5, 3, 6, 2, 1]]}


def B(word, n=2):
    return BraidWord.parse(word, n)


def test_braid_basics():
    b = B("1 -2 1 -2", 3)
    assert b.is_knot()
    assert B("1 1", 2).components() == [[0], [1]]
    assert braid_power(B("1 1 1"), 3).letters == [1] * 9
    with pytest.raises(ValueError):
        B("3", 3)
    with pytest.raises(ValueError):
        braid_power(B("1"), 2)


def test_braid_closures():
    tre = braid_closure_presentation(B("1 1 1"))
    assert tre.deficiency == 1
    assert alexander_polynomial(tre) == cyclotomic_poly(6)
    r = tietze_simplify(tre)
    assert r.pres.ngens == 2 and len(r.pres.relators) == 1
    assert len(r.pres.relators[0]) == 6
    unknot = tietze_simplify(braid_closure_presentation(B("1")))
    assert unknot.pres.ngens == 1 and unknot.pres.relators == []
    t215 = braid_closure_presentation(B(" ".join(["1"] * 15)))
    d = alexander_polynomial(t215)
    assert d.degree() == 14 and d == cyclotomic_poly(30) * cyclotomic_poly(10) * cyclotomic_poly(6)


def test_pd_presentations():
    pd = PDCode.from_json(TREFOIL_PD)
    assert alexander_polynomial(knot_presentation(pd)) == cyclotomic_poly(6)
    p = pd_wirtinger(PDCode([], loops=[1]))
    assert p.ngens == 1 and p.relators == []
    p = pd_wirtinger(PDCode([], loops=[1, 2]))
    assert p.ngens == 2 and p.relators == [] and abelianization(p).rank == 2


def test_malformed_pd():
    with pytest.raises(ValueError):
        PDCode.from_json({"crossings": [[1, 5, 2, 4, -1], [3, 1, 4, 6, -1], [5, 3, 6, 2, -1]]})
    with pytest.raises(ValueError):
        PDCode.from_json({"crossings": [[1, 2, 3, 4]]})


def test_pd_json_roundtrip():
    pd = braid_pd(B("1 1 1"))
    link = encircle(pd, 1, 1)
    again = PDCode.from_json(link.to_json())
    assert again.to_json() == link.to_json()
    assert again.origin == link.origin


def test_longitudes(s3):
    assert longitude_word(PDCode([], loops=[1])) == ()
    pd = PDCode.from_json(TREFOIL_PD)
    p = knot_presentation(pd)
    lam = p.marks["longitude"]
    assert sum(1 if x > 0 else -1 for x in lam) == 0
    assert phi_of(knot_phi(p), lam) == 0
    for h in wirtinger_homs(p, s3, epi=True):
        m = word_eval(s3, p.marks["meridian"], h.images)
        l = word_eval(s3, lam, h.images)
        assert s3.mul(m, l) == s3.mul(l, m)
        # a transposition meridian forces a longitude in its centralizer {e, m}
        assert l in (s3.identity, m)


def test_encircle():
    pd = braid_pd(B(" ".join(["1"] * 15)))
    slots = antiparallel_slots(pd)
    assert (1, 1) in slots
    link = encircle(pd, 1, 1)
    assert len(link.components) == 2 and link.linking_number(0, 1) == 0
    circle = PDCode([], loops=[1], levels=[[(1, 1), (1, -1)]])
    un = encircle(circle, 0, 0)
    assert len(un.components) == 2 and un.linking_number(0, 1) == 0
    assert abelianization(pd_wirtinger(un)).rank == 2
    with pytest.raises(ValueError):
        encircle(pd, 99, 1)


def test_torus_knots():
    p = torus_presentation(2, 3)
    assert phi_of(knot_phi(p), p.marks["meridian"]) == 1
    assert alexander_polynomial(p) == cyclotomic_poly(6)
    assert alexander_polynomial(torus_presentation(3, 5)) == cyclotomic_poly(15)
    a = alexander_polynomial(torus_presentation(2, 15))
    b = alexander_polynomial(braid_closure_presentation(B(" ".join(["1"] * 15))))
    assert a == b
    with pytest.raises(ValueError):
        torus_presentation(2, 4)


def test_satellite_structure(k235):
    assert k235.deficiency == 1
    phi = knot_phi(k235)
    n = k235.meta["link_gens"]
    assert all(x == 0 for x in phi[n:])
    assert phi_of(phi, k235.marks["meridian"]) == 1
    assert phi_of(phi, k235.marks["longitude"]) == 0


def test_trivial_satellite_keeps_alexander(t215_pd):
    base = knot_presentation(t215_pd)
    sat = satellite_glue(pattern_link(t215_pd, 1, 1), unknot_presentation())
    assert alexander_polynomial(sat) == alexander_polynomial(base)


def test_k235_alexander(k235):
    # the companion contributes Delta_J(t^lk) = Delta_J(1) = 1
    assert alexander_polynomial(k235) == alexander_polynomial(torus_presentation(2, 15))


def test_collapse_gives_homs(k235, t215_pd, d15):
    imgs = collapse_pattern(k235)
    n = k235.meta["link_gens"]
    assert all(len(w) == 1 for w, a in zip(imgs, k235.meta["parent"]) if a is not None)
    assert all(len(w) == 0 for w, a in zip(imgs, k235.meta["parent"]) if a is None)
    for h in wirtinger_homs(knot_presentation(t215_pd), d15, epi=True, modulo_conjugacy=True):
        glued = [word_eval(d15, w, h.images) for w in imgs]
        assert verify_hom(k235, d15, glued)
    assert len(imgs) == k235.ngens and n < k235.ngens


def test_transport_to_braid_power(s3):
    b = B("1 1 1")
    p = braid_closure_presentation(b)
    p9 = braid_closure_presentation(braid_power(b, 3))
    epis = wirtinger_homs(p, s3, epi=True)
    assert len(epis) == 6
    for h in epis:
        imgs = quotient_hom_data(b, 3, s3, h.images)
        h9 = make_hom(p9, s3, imgs)
        assert h9.valid and h9.surjective
        assert quotient_hom_data(b, 1, s3, h.images) == h.images
