import itertools

import pytest

from tavkit.census import (c, cbar, count_tav_p2qr, count_tav_p3q, count_tav_pqr,
                           count_tav_pqrs, count_tav_squarefree, enumerate_squarefree,
                           holder_count, p2qr_terms, stratum_status, tav_filter)
from tavkit.exact import divisors, is_prime, is_squarefree, prime_divisors
from tavkit.fingroup import (FiniteGroup, abelian, cyclic, derived_subgroup, dihedral,
                             direct_product, from_spec, is_isomorphic, is_tav)


def test_indicator_counts():
    assert cbar(30030, 7) == 2
    assert cbar(30030, 2) == 0
    assert c(15, 2) == 2


def test_pqr():
    assert count_tav_pqr(2, 3, 5) == 1
    assert count_tav_pqr(3, 7, 13) == 2
    assert count_tav_pqr(3, 5, 7) == 0
    with pytest.raises(ValueError):
        count_tav_pqr(2, 3, 4)
    with pytest.raises(ValueError):
        count_tav_pqr(5, 3, 2)


def test_p3q():
    assert count_tav_p3q(2, 3) == 1
    primes = [p for p in range(2, 100) if is_prime(p)]
    for p, q in itertools.product(primes, primes):
        if p != q and p ** 3 * q <= 1000 and (p, q) != (2, 3):
            assert count_tav_p3q(p, q) == 0


def test_p2qr():
    assert count_tav_p2qr(2, 3, 5) == 3
    assert count_tav_p2qr(2, 3, 7) == 2
    assert [i for i, x in enumerate(p2qr_terms(2, 3, 7), 1) if x] == [4, 11]
    # the theorem-text and table readings differ only in the bare summand
    assert count_tav_p2qr(5, 2, 3) == 4
    assert count_tav_p2qr(5, 2, 3, variant="table") == 7
    with pytest.raises(ValueError):
        p2qr_terms(2, 3, 5, variant="other")


def _generalized_dihedral(a):
    """A x| C_2 with inversion, for an abelian table group a."""
    n = a.order
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for x in range(n):
        for e in range(2):
            for y in range(n):
                for f in range(2):
                    yy = a.inv(y) if e else y
                    table[x + n * e][y + n * f] = a.mul(x, yy) + n * ((e + f) % 2)
    return FiniteGroup(table)


def test_order_150_has_tav_groups():
    """Three pairwise non-isomorphic TAV groups of order 5^2*2*3 bound the count below."""
    gs = [dihedral(75),
          direct_product([cyclic(5), dihedral(15)]),
          _generalized_dihedral(abelian([5, 15]))]
    assert all(g.order == 150 and is_tav(g) for g in gs)
    for g, h in itertools.combinations(gs, 2):
        assert not is_isomorphic(g, h)
    assert count_tav_p2qr(5, 2, 3) >= len(gs)


def test_pqrs():
    assert count_tav_pqrs(2, 3, 5, 7) == 6
    assert count_tav_pqrs(2, 3, 5, 11) == len(tav_filter(enumerate_squarefree(330)))
    assert count_tav_pqrs(3, 5, 7, 11) == len(tav_filter(enumerate_squarefree(1155)))


def test_holder():
    assert holder_count(30030) == 144
    assert holder_count(30) == 4
    assert holder_count(1) == 1
    with pytest.raises(ValueError):
        holder_count(12)


def test_squarefree_tav_counts():
    assert count_tav_squarefree(30030) == 132
    assert count_tav_squarefree(30) == 1 == count_tav_pqr(2, 3, 5)
    assert count_tav_squarefree(273) == 2


def test_enumeration_small():
    six = enumerate_squarefree(6)
    assert sorted((x.m, x.h) for x in six) == [(3, (1,)), (6, (0, 0))]
    assert len(enumerate_squarefree(30)) == 4
    assert len(enumerate_squarefree(1)) == 1
    kept = tav_filter(enumerate_squarefree(30))
    assert len(kept) == 1 and is_isomorphic(from_spec(kept[0].group_spec()), dihedral(15))
    assert tav_filter(enumerate_squarefree(6)) == []
    assert len(tav_filter(enumerate_squarefree(30030))) == 132


def test_param_rows():
    row = enumerate_squarefree(30)[0].to_json()
    assert set(row) == {"m", "H", "derived", "tav"}


def test_pqr_agrees_with_squarefree():
    primes = [p for p in range(2, 40) if is_prime(p)]
    for p, q, r in itertools.combinations(primes, 3):
        if p * q * r <= 5000:
            assert count_tav_squarefree(p * q * r) == count_tav_pqr(p, q, r)


def test_prime_derived_classes():
    """Classes with |G'| = p prime number 2^cbar - 1."""
    for n in range(2, 2001):
        if not is_squarefree(n):
            continue
        rows = enumerate_squarefree(n)
        for p in prime_divisors(n):
            got = sum(1 for x in rows if x.derived == p)
            assert got == 2 ** cbar(n, p) - 1, (n, p)


def test_materialized_groups_small():
    """Structural verdicts agree with Cayley-table computations at small orders."""
    for n in (6, 30, 42, 66, 70):
        rows = enumerate_squarefree(n)
        gs = [from_spec(x.group_spec()) for x in rows]
        for x, g in zip(rows, gs):
            assert g.order == n
            assert derived_subgroup(g).order == x.derived
            assert is_tav(g) == x.tav


def test_stratum_status():
    assert stratum_status(24) == (1, "p^3 q")
    assert stratum_status(36)[0] == 0
    assert stratum_status(60)[0] == 3
    assert stratum_status(32)[0] == 0
    assert stratum_status(72)[0] is None
