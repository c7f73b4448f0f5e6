from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tavkit.exact import (CyclotomicNum, LaurentPoly, check_rank_witness, cyclotomic_poly,
                          det_bareiss, det_cofactor, divisors, factorize, field_rref,
                          full_rank_witness, is_squarefree, matmul, nullspace, poly_gcd,
                          poly_matrix_det, poly_matrix_kernel, mat_vec, smith_normal_form,
                          totient)

t = LaurentPoly.t()
ONE = LaurentPoly.const(1)

laurent = st.dictionaries(st.integers(-3, 5), st.integers(-4, 4), max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero())


def test_basic_ring():
    assert (t - 1) * (t + 1) == t ** 2 - 1
    assert (-(t ** 3) + t ** 2).normalize() == t - 1
    assert LaurentPoly().is_zero() and LaurentPoly().coeffs == {}
    assert LaurentPoly({2: 0, 1: 3}).coeffs == {1: 3}


def test_divides_example():
    # roots of t^2-t+1 are primitive 6th roots of unity, where t^6+1 takes the value 2
    assert not (t * t - t + 1).divides(t ** 6 + 1)
    assert (t * t - t + 1).divides(t ** 3 + 1)
    assert (t * t + 1).divides(t ** 6 + 1)


@pytest.mark.parametrize("n,expected", [
    (1, [-1, 1]),
    (6, [1, -1, 1]),
    (15, [1, -1, 0, 1, -1, 1, 0, -1, 1]),
])
def test_cyclotomic_values(n, expected):
    assert cyclotomic_poly(n) == LaurentPoly.from_list(expected)


def test_cyclotomic_mobius_oracle():
    # (t^15-1)(t-1) / ((t^5-1)(t^3-1))
    num = (t ** 15 - 1) * (t - 1)
    den = (t ** 5 - 1) * (t ** 3 - 1)
    q, r = num.divmod(den)
    assert r.is_zero() and q == cyclotomic_poly(15)


def test_cyclotomic_numbers():
    z4 = CyclotomicNum.zeta(4)
    assert z4 * z4 == CyclotomicNum.rational(-1)
    assert CyclotomicNum.zeta(15) ** 15 == CyclotomicNum.rational(1)
    assert (1 + CyclotomicNum.zeta(3)) + (1 + CyclotomicNum.zeta(3, 2)) == CyclotomicNum.rational(1)
    # embedding between levels preserves equality and hashing
    assert CyclotomicNum.zeta(3) == CyclotomicNum.zeta(6, 2)
    assert hash(CyclotomicNum.zeta(3)) == hash(CyclotomicNum.zeta(6, 2))


@given(st.integers(1, 30), st.lists(st.integers(-3, 3), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_cyclotomic_inverse(n, coeffs):
    x = CyclotomicNum(n, coeffs)
    if x.is_zero():
        return
    assert x * x.inverse() == CyclotomicNum.rational(1)


@given(st.integers(1, 24), st.integers(0, 50))
@settings(max_examples=50, deadline=None)
def test_zeta_powers(n, k):
    z = CyclotomicNum.zeta(n)
    assert z ** k == CyclotomicNum.zeta(n, k)
    assert z ** n == CyclotomicNum.rational(1)


@given(laurent, laurent, laurent)
@settings(max_examples=80, deadline=None)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly()


@given(laurent, nonzero_laurent)
@settings(max_examples=80, deadline=None)
def test_divmod_reconstructs(a, b):
    q, r = (a * b).divmod(b)
    assert r.is_zero() and q == a
    assert b.divides(a * b)


@given(nonzero_laurent, st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_normalize_is_unit_invariant(a, k):
    n = a.normalize()
    assert n.normalize() == n
    assert n.min_degree() == 0
    assert (a.shift(k)).normalize() == n
    assert (-a).normalize() == n


@given(nonzero_laurent, nonzero_laurent)
@settings(max_examples=50, deadline=None)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert g.divides(a) and g.divides(b)


def test_json_roundtrip():
    p = 3 * t ** 2 - t ** -1 + 7
    assert LaurentPoly.from_json(p.to_json()) == p
    c = CyclotomicNum(15, [1, Fraction(2, 3), 0, -1])
    assert CyclotomicNum.from_json(c.to_json()) == c


# -- integer matrices --------------------------------------------------------------------

def test_smith_examples():
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])[0] == [1, 1, 1]
    assert smith_normal_form([[0]])[0] == [0]


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_smith_properties(m):
    diag, u, v = smith_normal_form(m)
    prod = matmul(matmul(u, m), v)
    for i, row in enumerate(prod):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j else 0)
    nz = [abs(d) for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert det_cofactor(u).normalize() == ONE and det_cofactor(v).normalize() == ONE


def test_number_theory():
    assert factorize(30030) == {2: 1, 3: 1, 5: 1, 7: 1, 11: 1, 13: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert totient(15) == 8
    assert is_squarefree(30030) and not is_squarefree(36)


# -- polynomial matrices ------------------------------------------------------------------

def test_det_examples():
    assert poly_matrix_det([[t, LaurentPoly()], [LaurentPoly(), t]]) == t ** 2
    assert poly_matrix_det([[t, ONE], [ONE, t]]) == t ** 2 - 1
    assert poly_matrix_det([[ONE + t * t - t]]) == t * t - t + 1


@given(st.lists(laurent, min_size=9, max_size=9))
@settings(max_examples=40, deadline=None)
def test_det_two_routes(entries):
    m = [entries[0:3], entries[3:6], entries[6:9]]
    assert poly_matrix_det(m) == det_cofactor(m)
    assert det_bareiss(m) == det_cofactor(m)


def test_kernel_examples():
    k = poly_matrix_kernel([[t - 1, 1 - t]])
    assert len(k) == 1 and k[0][0] == k[0][1] and not k[0][0].is_zero()
    assert poly_matrix_kernel([[ONE, LaurentPoly()], [LaurentPoly(), ONE]]) == []
    k = poly_matrix_kernel([[t, t * t]])
    assert len(k) == 1
    a, b = k[0]
    assert (a * t + b * t * t).is_zero() and not b.is_zero()


@given(st.lists(laurent, min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_kernel_vectors_annihilate(entries):
    m = [entries[0:3], entries[3:6]]
    for v in poly_matrix_kernel(m):
        assert all(x.is_zero() for x in mat_vec(m, v))


def test_rank_witness():
    m = [[t, ONE], [ONE, t]]
    w = full_rank_witness(m)
    assert w is not None and check_rank_witness(m, w)
    assert full_rank_witness([[t - 1, 1 - t], [t - 1, 1 - t]]) is None


def test_field_linear_algebra():
    z = CyclotomicNum.zeta(3)
    rows = [[1, z], [z, z * z]]          # rank one
    red, piv = field_rref(rows)
    assert piv == [0]
    ns = nullspace(rows, 2)
    assert len(ns) == 1
    v = ns[0]
    assert (v[0] + z * v[1]).is_zero()


@given(laurent, nonzero_laurent)
@settings(max_examples=80, deadline=None)
def test_division_with_remainder(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
