"""The twelve acceptance criteria.  Each test carries a ``criterion`` marker; the
terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import time

import pytest

from builders import factored_instance, nonfactoring_instances, power_braid
from tavkit.census import (count_tav_p2qr, count_tav_p3q, count_tav_pqr, count_tav_pqrs,
                           count_tav_squarefree, enumerate_squarefree, holder_count, tav_filter)
from tavkit.exact import LaurentPoly, cyclotomic_poly, divisors, is_prime, is_squarefree
from tavkit.fingroup import (abelian, alternating, catalog, cyclic, dicyclic, dihedral,
                             from_spec, gpqr, is_abelian, is_isomorphic, is_seed, is_tav,
                             normal_subgroups, semidirect_cyclic, symmetric)
from tavkit.fpgroup import GroupRingElem, Word, fox_derivative, tietze_simplify
from tavkit.homsearch import hurwitz_braid, hurwitz_fixed_tuples, wirtinger_homs
from tavkit.knots import (BraidWord, braid_closure_presentation, braid_pd, knot_presentation,
                          pd_wirtinger, torus_presentation, unknot_presentation)
from tavkit.reps import (character_table_check, dihedral_irreps, fixed_subspace, is_faithful,
                         one_dim_reps, regular_rep, schmidt_irreps, trivial_rep)
from tavkit.twisted import (braid_power_divisibility_check, construct_vanishing_pair_cyclic,
                            satellite_vanishing, tav_order_search, twisted_alexander,
                            wada_invariant)

C1 = cyclic(1)


def report(n, ok, detail=""):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t


@pytest.mark.criterion(1, "census golden values for order 30030")
def test_c01_census_golden():
    with Timer() as tm:
        ok = holder_count(30030) == 144 and count_tav_squarefree(30030) == 132
    report(1, ok and tm.elapsed < 1, f"144/132 in {tm.elapsed:.3f}s")


@pytest.mark.criterion(2, "closed formula instances")
def test_c02_formulas():
    with Timer() as tm:
        primes = [p for p in range(2, 1000) if is_prime(p)]
        p3q_zero = all(count_tav_p3q(p, q) == 0 for p, q in itertools.product(primes, primes)
                       if p != q and p ** 3 * q <= 1000 and (p, q) != (2, 3))
        ok = (count_tav_pqr(2, 3, 5) == 1 and count_tav_pqr(3, 7, 13) == 2
              and count_tav_p3q(2, 3) == 1 and p3q_zero
              and count_tav_p2qr(2, 3, 5) == 3 and count_tav_pqrs(2, 3, 5, 7) == 6)
    report(2, ok and tm.elapsed < 1, f"{tm.elapsed:.3f}s")


@pytest.mark.criterion(3, "formula against enumeration, square-free n <= 2000")
def test_c03_formula_vs_enumeration():
    mismatches = []
    with Timer() as tm:
        for n in range(1, 2001):
            if not is_squarefree(n):
                continue
            rows = enumerate_squarefree(n)
            if len(rows) != holder_count(n) or len(tav_filter(rows)) != count_tav_squarefree(n):
                mismatches.append(n)
    report(3, not mismatches and tm.elapsed < 120, f"mismatches={mismatches} in {tm.elapsed:.1f}s")


@pytest.mark.criterion(4, "structural verdicts against Cayley tables, square-free n <= 200")
def test_c04_structural_vs_cayley():
    problems, count = [], 0
    with Timer() as tm:
        for n in range(1, 201):
            if not is_squarefree(n):
                continue
            rows = enumerate_squarefree(n)
            groups = [from_spec(x.group_spec()) for x in rows]
            count += len(groups)
            for x, g in zip(rows, groups):
                if g.order != n or is_tav(g) != x.tav:
                    problems.append((n, x.m, x.h))
            for (x, g), (y, h) in itertools.combinations(zip(rows, groups), 2):
                if is_isomorphic(g, h):
                    problems.append((n, x.h, y.h))
    report(4, not problems and count > 100 and tm.elapsed < 600,
           f"{count} groups, problems={problems} in {tm.elapsed:.1f}s")


@pytest.mark.criterion(5, "TAV and seed verdicts")
def test_c05_verdicts():
    with Timer() as tm:
        g1, g2 = gpqr(3, 7, 13, 4, 9), gpqr(3, 7, 13, 2, 9)
        yes = [symmetric(4), alternating(5), dihedral(15), dicyclic(15), g1, g2]
        no = [cyclic(30), dicyclic(2), alternating(4), dihedral(6)]
        no += [g for g in catalog(60) if is_abelian(g)]
        ok = (all(is_tav(g) for g in yes) and not any(is_tav(g) for g in no)
              and is_seed(alternating(5)) and not is_seed(dicyclic(15)) and is_seed(dihedral(105))
              and not is_isomorphic(g1, g2))
    report(5, ok and tm.elapsed < 60, f"{len(no)} non-TAV checks in {tm.elapsed:.1f}s")


def _trivial(p):
    return p, C1, [C1.identity] * p.ngens, trivial_rep(C1)


def _cross(a, b):
    return (a.numerator * b.denominator).normalize() == (b.numerator * a.denominator).normalize()


@pytest.mark.criterion(6, "classical Alexander polynomials and Wada invariance")
def test_c06_classical():
    with Timer() as tm:
        oks = []
        for (p, q), expected in (((2, 3), cyclotomic_poly(6)), ((3, 5), cyclotomic_poly(15))):
            pres = torus_presentation(p, q)
            oks.append(twisted_alexander(*_trivial(pres)).polynomial == expected)
            # column choice, on the raw presentation and on a Wirtinger one
            for P in (pres, braid_closure_presentation(BraidWord(2, [1] * 3)) if p == 2 else pres):
                rs = [wada_invariant(*_trivial(P), column=j) for j in range(P.ngens)]
                oks.append(all(_cross(rs[0], r) for r in rs))
            tz = tietze_simplify(pres)
            oks.append(_cross(wada_invariant(*_trivial(pres)), wada_invariant(*_trivial(tz.pres))))
        s3 = symmetric(3)
        tre = braid_closure_presentation(power_braid(3))
        tz = tietze_simplify(tre)
        for h in wirtinger_homs(tre, s3, epi=True):
            a = wada_invariant(tre, s3, h.images, regular_rep(s3))
            b = wada_invariant(tz.pres, s3, tz.map_images(h.images), regular_rep(s3))
            oks.append(_cross(a, b))
    report(6, all(oks) and tm.elapsed < 10, f"{sum(oks)}/{len(oks)} checks in {tm.elapsed:.1f}s")


@pytest.mark.criterion(7, "vanishing for the (2,3,5) satellite and its TAV order 30")
def test_c07_vanishing_reproduction(k235, d15, k235_d15_epis):
    with Timer() as tm:
        # the pattern diagram is the closure of sigma_1^15, whose group is T(2,15)'s
        same_base = (twisted_alexander(*_trivial(knot_presentation(braid_pd(power_braid(15))))).polynomial
                     == twisted_alexander(*_trivial(torus_presentation(2, 15))).polynomial)
        rep = regular_rep(d15)
        assert rep.dim == 30
        images = k235_d15_epis[0].images
        r = twisted_alexander(k235, d15, images, rep, numerator=False)
        vanishes = r.vanished and r.certificate.verify(k235, d15, images, rep)
        s4 = symmetric(4)
        epis = wirtinger_homs(k235, s4, epi=True)
        nonvanishing = all(not twisted_alexander(k235, s4, h.images, regular_rep(s4),
                                                 numerator=False).vanished for h in epis)
        order = tav_order_search(k235, 30)
        witness = from_spec(next(x.group_spec() for x in tav_filter(enumerate_squarefree(30))))
        below = [e for e in order["strata"] if e["order"] < 30]
        ok = (same_base and vanishes and len(epis) > 0 and nonvanishing
              and order["order"] == 30 and order["lower_bound_certified"]
              and all(e["status"] == "complete" for e in below)
              and is_isomorphic(witness, d15))
    report(7, ok and tm.elapsed < 3600,
           f"{len(epis)} S4 epis nonvanishing, O(K)={order['order']} in {tm.elapsed:.1f}s")


@pytest.mark.criterion(8, "satellite dichotomy against direct computation")
def test_c08_dichotomy(t215_pd, t215_d15_epi, d15):
    with Timer() as tm:
        rep = regular_rep(d15)
        base = (knot_presentation(t215_pd), d15, t215_d15_epi.images, rep)
        rows = []
        for d in (15, 5, 3):
            sat, images = factored_instance(t215_pd, d15, t215_d15_epi.images, d)
            predicted = satellite_vanishing(base, torus_presentation(3, 5), d)
            direct = twisted_alexander(sat, d15, images, rep, numerator=False).vanished
            rows.append((d, predicted, direct))
        sat, homs = nonfactoring_instances()
        s4 = symmetric(4)
        nf = [twisted_alexander(sat, s4, im, regular_rep(s4), numerator=False).vanished
              for im in homs]
        predicted_nf = satellite_vanishing((None, s4, None, None), None, None, factored=False)
        ok = (all(p == q for _, p, q in rows) and rows[0][1] and not rows[1][1]
              and homs and all(x == predicted_nf for x in nf))
    report(8, ok and tm.elapsed < 1800, f"factored {rows}, non-factoring {len(nf)} in {tm.elapsed:.1f}s")


@pytest.mark.criterion(9, "vanishing pair from a faithful 2-dim irreducible of D_15")
def test_c09_faithful_irreducible(t215_pd, t215_d15_epi):
    with Timer() as tm:
        irr = dihedral_irreps(15)
        rho1 = next(r for r in irr if r.name == "rho_1")
        rho5 = next(r for r in irr if r.name == "rho_5")
        g = rho1.group
        rot = g.index_of((1, 0))
        sat, hom, cert = construct_vanishing_pair_cyclic(g, rho1, rot, t215_pd, t215_d15_epi.images)
        ok = is_faithful(rho1) and hom.surjective and cert.verify(sat, g, hom.images, rho1)
        try:
            construct_vanishing_pair_cyclic(g, rho5, rot, t215_pd, t215_d15_epi.images)
            rejected = False
        except ValueError:
            rejected = True
    report(9, ok and rejected and tm.elapsed < 300, f"{tm.elapsed:.1f}s")


@pytest.mark.criterion(10, "divisibility for closures of braid powers")
def test_c10_divisibility(s3):
    with Timer() as tm:
        b = power_braid(3)
        p = braid_closure_presentation(b)
        homs = wirtinger_homs(p, s3)
        ok = all(braid_power_divisibility_check(b, 3, s3, h.images, regular_rep(s3)) for h in homs)
    report(10, ok and tm.elapsed < 300, f"{len(homs)} homs in {tm.elapsed:.1f}s")


@pytest.mark.criterion(11, "representation properties")
def test_c11_representations():
    with Timer() as tm:
        families = [dihedral_irreps(n) for n in (3, 4, 5, 15)]
        families += [schmidt_irreps(semidirect_cyclic(m, k, b)) for m, k, b in ((7, 2, 3), (13, 3, 3))]
        families += [one_dim_reps(g) for g in (cyclic(6), symmetric(4), alternating(4))]
        dichotomy = True
        for irr in families:
            g = irr[0].group
            for rho in irr:
                for n in normal_subgroups(g):
                    dim, _ = fixed_subspace(rho, n)
                    dichotomy &= dim in (0, rho.dim)
                    if is_faithful(rho) and n.order > 1:
                        dichotomy &= dim == 0
        sch = schmidt_irreps(semidirect_cyclic(7, 2, 3))
        gram = character_table_check(sch)
        schmidt_ok = (sum(r.dim ** 2 for r in sch) == 21
                      and all(x == (1 if i == j else 0) for i, row in enumerate(gram)
                              for j, x in enumerate(row)))
        irr = dihedral_irreps(3)
        d3 = irr[0].group
        tre = braid_closure_presentation(power_braid(3))
        fact = True
        for h in wirtinger_homs(tre, d3, epi=True):
            reg = wada_invariant(tre, d3, h.images, regular_rep(d3), column=0)
            num, den = LaurentPoly.const(1), LaurentPoly.const(1)
            for rho in irr:
                r = wada_invariant(tre, d3, h.images, rho, column=0)
                num, den = num * r.numerator ** rho.dim, den * r.denominator ** rho.dim
            fact &= (reg.numerator * den).monic() == (num * reg.denominator).monic()
    report(11, dichotomy and schmidt_ok and fact and tm.elapsed < 300, f"{tm.elapsed:.1f}s")


def _fox_identity(w, n):
    e = GroupRingElem.of(Word())
    rhs = GroupRingElem()
    for j in range(n):
        rhs = rhs + fox_derivative(w, j) * (GroupRingElem.of(Word.gen(j)) - e)
    return GroupRingElem.of(w) - e == rhs


TEST_BRAIDS = [(2, [1]), (2, [1, 1, 1]), (2, [1, 1]), (3, [1, -2, 1, -2]), (2, [1] * 5),
               (3, [1, 2, 1, 2]), (3, [1, 1, 2, 2]), (3, [1, 2])]


@pytest.mark.criterion(12, "property suites")
def test_c12_properties(k235):
    with Timer() as tm:
        presentations = [torus_presentation(2, 3), torus_presentation(3, 5), torus_presentation(2, 15),
                         unknot_presentation(), k235]
        presentations += [pd_wirtinger(braid_pd(BraidWord(n, ls))) for n, ls in TEST_BRAIDS]
        fox = all(_fox_identity(r, p.ngens) for p in presentations for r in p.relators)
        s3 = symmetric(3)
        lhs, rhs = BraidWord(3, [1, 2, 1]), BraidWord(3, [2, 1, 2])
        hurwitz = all(hurwitz_braid(s3, lhs, t) == hurwitz_braid(s3, rhs, t)
                      for t in itertools.product(range(6), repeat=3))
        fixed = all(len(hurwitz_fixed_tuples(BraidWord(n, ls), g))
                    == len(wirtinger_homs(pd_wirtinger(braid_pd(BraidWord(n, ls))), g))
                    for n, ls in TEST_BRAIDS for g in (s3, dihedral(5)))
        t = LaurentPoly.t()
        cyclo = True
        for n in range(1, 201):
            prod = LaurentPoly.const(1)
            for d in divisors(n):
                prod = prod * cyclotomic_poly(d)
            cyclo &= prod == t ** n - 1
    report(12, fox and hurwitz and fixed and cyclo and tm.elapsed < 300,
           f"fox={fox} hurwitz={hurwitz} fixed={fixed} cyclotomic={cyclo} in {tm.elapsed:.1f}s")
