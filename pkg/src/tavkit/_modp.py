"""Word-size modular linear algebra behind the exact polynomial matrix routines.

A LaurentPoly matrix over Q(zeta_N) is cleared row by row (denominators and
lowest t-power), giving integer polynomials in t whose coefficients are residues
in Z[z]/Phi_N.  Modulo a prime p = 1 (mod N) the variable z is sent to each
primitive N-th root of unity in F_p, so every scalar determinant is an ordinary
determinant over F_p.  Results are lifted by interpolation and the Chinese
remainder theorem against an a priori coefficient bound.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, prod, isqrt
import os
import random

import numpy as np

from .exact import (CyclotomicNum, LaurentPoly, totient, prime_divisors, residue_bound,
                    mat_vec, _power_residues)

PRIME_TOP = 2**31
CHUNK_BYTES = 96 * 2**20


def thread_count():
    try:
        return max(1, int(os.environ.get("TAV_THREADS", "1")))
    except ValueError:
        return 1


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def primes(level, count):
    """The `count` largest primes below 2^31 congruent to 1 mod level."""
    out = []
    k = (PRIME_TOP - 2) // level
    while len(out) < count:
        p = k * level + 1
        if _is_prime(p):
            out.append(p)
        k -= 1
    return tuple(out)


def prime_stream(level):
    count = 8
    i = 0
    while True:
        ps = primes(level, count)
        while i < len(ps):
            yield ps[i]
            i += 1
        count *= 2


@lru_cache(maxsize=None)
def roots_of_unity(level, p):
    """The primitive level-th roots of unity in F_p, ordered by exponent."""
    if level == 1:
        return (1,)
    qs = prime_divisors(level)
    for g in range(2, p):
        y = pow(g, (p - 1) // level, p)
        if all(pow(y, level // q, p) != 1 for q in qs):
            return tuple(pow(y, k, p) for k in range(1, level + 1) if gcd(k, level) == 1)
    raise ArithmeticError("no primitive root of unity found")


# -- clearing ------------------------------------------------------------------

def _as_cyc(c, level):
    if isinstance(c, CyclotomicNum):
        return c if c.level == level else c.embed(level)
    return CyclotomicNum(level, [Fraction(c)])


class Prepared:
    """Integer form of a polynomial matrix: row i equals t^shift[i]/scale[i] times
    a matrix of polynomials with nonnegative exponents and Z[z] coefficients."""

    def __init__(self, m):
        self.nrows = len(m)
        self.ncols = len(m[0]) if m else 0
        if any(len(r) != self.ncols for r in m):
            raise ValueError("ragged matrix")
        rows = [[LaurentPoly._wrap(x) for x in r] for r in m]
        self.level = lcm(1, *(x.level() for r in rows for x in r))
        self.f = totient(self.level)
        self.entries = []          # (i, j, {e: tuple of ints})
        self.shift = []
        self.scale = []
        self.spread = []
        for i, r in enumerate(rows):
            exps = [e for x in r for e in x.coeffs]
            lo = min(exps) if exps else 0
            hi = max(exps) if exps else 0
            cyc = [{e: _as_cyc(c, self.level) for e, c in x.coeffs.items()} for x in r]
            den = lcm(1, *(c.den for x in cyc for c in x.values()))
            self.shift.append(lo)
            self.scale.append(den)
            self.spread.append(hi - lo)
            for j, x in enumerate(cyc):
                if x:
                    self.entries.append((i, j, {e - lo: tuple(a * (den // c.den) for a in c.coeffs)
                                                for e, c in x.items()}))
        self.maxdeg = max(self.spread, default=0)

    def norm_bound(self):
        """Bound for every coefficient of every maximal minor's residue."""
        row_sums = [0] * self.nrows
        for i, _, poly in self.entries:
            row_sums[i] += sum(abs(a) for c in poly.values() for a in c)
        top = sorted(row_sums, reverse=True)[:min(self.nrows, self.ncols)]
        b = prod(max(s, 1) for s in top)
        return b * (residue_bound(self.level) if self.level > 1 else 1)

    def coeff_tensor(self, p, omega):
        """Array C[i, j, e] of entry coefficients mod p with z -> omega."""
        powers = [pow(omega, b, p) for b in range(self.f)]
        c = np.zeros((self.nrows, self.ncols, self.maxdeg + 1), dtype=np.int64)
        for i, j, poly in self.entries:
            for e, coeffs in poly.items():
                c[i, j, e] = sum(a * w for a, w in zip(coeffs, powers)) % p
        return c

    def evaluate(self, p, omega, pts):
        """Matrices at the given t values, shape (len(pts), nrows, ncols)."""
        c = self.coeff_tensor(p, omega)
        pts = np.asarray(pts, dtype=np.int64) % p
        out = np.broadcast_to(c[:, :, -1], (len(pts),) + c.shape[:2]).copy()
        for e in range(self.maxdeg - 1, -1, -1):
            out = (out * pts[:, None, None] + c[None, :, :, e]) % p
        return out


# -- modular kernels -------------------------------------------------------------

def inv_vec(x, p):
    x = np.asarray(x, dtype=np.int64) % p
    r = np.ones_like(x)
    b = x.copy()
    e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def det_batch(a, p):
    """Determinants mod p of a stack of square matrices (destroys a)."""
    bsz, n, _ = a.shape
    det = np.ones(bsz, dtype=np.int64)
    rows = np.arange(bsz)
    for k in range(n):
        nz = a[:, k:, k] != 0
        piv = nz.argmax(axis=1) + k
        has = nz[rows, piv - k]
        det[~has] = 0
        swap = np.nonzero(has & (piv != k))[0]
        if len(swap):
            tmp = a[swap, k, :].copy()
            a[swap, k, :] = a[swap, piv[swap], :]
            a[swap, piv[swap], :] = tmp
            det[swap] = (p - det[swap]) % p
        pv = a[:, k, k]
        det = det * pv % p
        if k + 1 == n:
            break
        inv = inv_vec(np.where(pv == 0, 1, pv), p)
        fac = a[:, k + 1:, k] * inv[:, None] % p
        a[:, k + 1:, k:] = (a[:, k + 1:, k:] - fac[:, :, None] * a[:, k:k + 1, k:]) % p
    return det


def rref(a, p):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    a = a.copy() % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, col]), p - 2, p) % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != r]
        if len(others):
            a[others] = (a[others] - a[others, col][:, None] * a[r][None, :]) % p
        pivots.append(col)
        r += 1
    return a, pivots


def rank_mod(a, p):
    return len(rref(a, p)[1])


def interpolate_consecutive(vals, p):
    """Coefficients of the polynomials taking vals[k] at t = k (rows = points)."""
    vals = np.asarray(vals, dtype=np.int64) % p
    d = vals.shape[0] - 1
    c = vals.copy()
    for j in range(1, d + 1):
        c[j:] = (c[j:] - c[j - 1:d]) * pow(j, p - 2, p) % p
    poly = np.zeros_like(c)
    poly[0] = c[d]
    for j in range(d - 1, -1, -1):
        # poly <- poly * (t - j) + c[j]
        shifted = np.zeros_like(poly)
        shifted[1:] = poly[:-1]
        poly = (shifted - (j * poly) % p) % p
        poly[0] = (poly[0] + c[j]) % p
    return poly


def interpolate_points(xs, vals, p):
    """Polynomial through (xs[k], vals[k]) mod p for small point sets; vals (k, K)."""
    xs = [x % p for x in xs]
    k = len(xs)
    vals = np.asarray(vals, dtype=object) % p
    c = [vals[i].copy() for i in range(k)]
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) * pow(xs[i] - xs[i - j], p - 2, p) % p
    poly = [c[k - 1]] + [0 * c[0] for _ in range(k - 1)]
    for j in range(k - 2, -1, -1):
        new = [0 * c[0] for _ in range(k)]
        for e in range(k - 1):
            new[e + 1] = (new[e + 1] + poly[e]) % p
            new[e] = (new[e] - xs[j] * poly[e]) % p
        new[0] = (new[0] + c[j]) % p
        poly = new
    return poly


def crt_pair(r1, m1, r2, m2):
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def symmetric(x, m):
    x %= m
    return x - m if x > m // 2 else x


def rational_reconstruct(a, m):
    """Fraction n/d with n^2, d^2 < m/2 congruent to a mod m, or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


# -- determinant -----------------------------------------------------------------

def _det_values(prep, p, omega, npts):
    """det of the cleared matrix at t = 0..npts-1, mod p."""
    n = prep.nrows
    chunk = max(1, CHUNK_BYTES // (8 * n * n * 3))
    out = np.empty(npts, dtype=np.int64)
    for start in range(0, npts, chunk):
        pts = np.arange(start, min(npts, start + chunk))
        out[start:start + len(pts)] = det_batch(prep.evaluate(p, omega, pts), p)
    return out


def _det_mod(prep, p, dt):
    """Residue coefficients of det mod p: array (dt+1, f)."""
    roots = roots_of_unity(prep.level, p)
    per_root = np.stack([interpolate_consecutive(_det_values(prep, p, w, dt + 1), p)
                         for w in roots], axis=1)
    if prep.level == 1:
        return per_root
    coeffs = interpolate_points(list(roots), per_root.T.astype(object), p)
    return np.array([[int(x) for x in row] for row in coeffs], dtype=object).T


def det(m):
    prep = Prepared(m)
    dt = sum(prep.spread)
    bound = 2 * prep.norm_bound() + 1
    modulus = 1
    acc = None
    stream = prime_stream(prep.level)
    with ThreadPoolExecutor(thread_count()) as pool:
        while modulus <= bound:
            batch = []
            need = bound
            while need >= 1 and len(batch) < thread_count():
                p = next(stream)
                batch.append(p)
                need //= p
            for p, res in zip(batch, pool.map(lambda q: _det_mod(prep, q, dt), batch)):
                res = [[int(x) for x in row] for row in np.asarray(res, dtype=object)]
                if acc is None:
                    acc = res
                else:
                    acc = [[crt_pair(a, modulus, b, p)[0] for a, b in zip(ra, rb)]
                           for ra, rb in zip(acc, res)]
                modulus *= p
    scale = prod(prep.scale)
    out = {}
    for e, row in enumerate(acc):
        ints = [symmetric(x, modulus) for x in row]
        if any(ints):
            out[e] = CyclotomicNum(prep.level, ints, scale) if prep.level > 1 else Fraction(ints[0], scale)
    return LaurentPoly(out).shift(sum(prep.shift))


# -- point evaluation and witnesses ----------------------------------------------

def eval_scalar(c, p, omega):
    if isinstance(c, CyclotomicNum):
        lvl = c.level
        num = sum(a * pow(omega, k, p) for k, a in enumerate(c.coeffs)) % p
        return num * pow(c.den, p - 2, p) % p
    c = Fraction(c)
    return c.numerator * pow(c.denominator, p - 2, p) % p


def _omega_for(level, target_level, p, k=0):
    """Image of zeta_level in F_p when zeta_target is sent to the k-th primitive root."""
    w = roots_of_unity(target_level, p)[k]
    return pow(w, target_level // level, p)


def eval_poly(x, t0, p, omega, level):
    total = 0
    for e, c in x.coeffs.items():
        lvl = c.level if isinstance(c, CyclotomicNum) else 1
        w = pow(omega, level // lvl, p) if lvl > 1 else 1
        total += eval_scalar(c, p, w) * pow(t0, e % (p - 1), p)
    return total % p


def full_rank_witness(m, attempts=4, seed=0):
    """(t0, prime, root index, rows) with the chosen rows invertible at t0, or None."""
    prep = Prepared(m)
    if prep.ncols == 0:
        return {"t": 1, "prime": primes(prep.level, 1)[0], "root": 0, "rows": []}
    if prep.nrows < prep.ncols:
        return None
    rng = random.Random(seed)
    for p in primes(prep.level, attempts):
        roots = roots_of_unity(prep.level, p)
        ridx = rng.randrange(len(roots))
        t0 = rng.randrange(2, p - 1)
        a = prep.evaluate(p, roots[ridx], [t0])[0]
        _, piv = rref(a.T.copy(), p)
        if len(piv) == prep.ncols:
            return {"t": t0, "prime": p, "root": ridx, "rows": piv}
    return None


def check_witness(m, w):
    prep = Prepared(m)
    p = w["prime"]
    omega = roots_of_unity(prep.level, p)[w["root"]]
    a = prep.evaluate(p, omega, [w["t"]])[0]
    sub = a[w["rows"], :]
    if sub.shape[0] != prep.ncols:
        return False
    return prep.ncols == 0 or int(det_batch(sub[None].copy(), p)[0]) != 0


def generic_rank(prep, attempts=3, seed=1):
    rng = random.Random(seed)
    best = 0
    for p in primes(prep.level, attempts):
        roots = roots_of_unity(prep.level, p)
        t0 = rng.randrange(2, p - 1)
        a = prep.evaluate(p, roots[rng.randrange(len(roots))], [t0])[0]
        best = max(best, rank_mod(a, p))
    return best


# -- kernel ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mult_columns(level, coeffs):
    """Matrix (f x f) of multiplication by the residue `coeffs` in the power basis."""
    f = totient(level)
    table = _power_residues(level)
    cols = []
    for b in range(f):
        acc = [0] * f
        for k, a in enumerate(coeffs):
            if a:
                for j, r in enumerate(table[(k + b) % level]):
                    acc[j] += a * r
        cols.append(acc)
    return tuple(tuple(cols[b][j] for b in range(f)) for j in range(f))


def _ansatz_system(prep, delta):
    """Sparse integer system for kernel vectors with entries of degree <= delta."""
    f = prep.f
    row_off = []
    off = 0
    for i in range(prep.nrows):
        row_off.append(off)
        off += (prep.spread[i] + delta + 1) * f
    triples = {}
    for i, j, poly in prep.entries:
        for e, coeffs in poly.items():
            mult = _mult_columns(prep.level, coeffs)
            for a in range(delta + 1):
                r0 = row_off[i] + (e + a) * f
                c0 = (j * (delta + 1) + a) * f
                for bp in range(f):
                    for b in range(f):
                        v = mult[bp][b]
                        if v:
                            key = (r0 + bp, c0 + b)
                            triples[key] = triples.get(key, 0) + v
    return off, prep.ncols * (delta + 1) * f, triples


def _vector_from_solution(prep, delta, sol):
    f = prep.f
    vec = []
    for j in range(prep.ncols):
        coeffs = {}
        for a in range(delta + 1):
            base = (j * (delta + 1) + a) * f
            part = sol[base:base + f]
            if any(part):
                coeffs[a] = CyclotomicNum(prep.level, part) if prep.level > 1 else part[0]
        vec.append(LaurentPoly(coeffs))
    return vec


def _clear(vec):
    """Scale a kernel vector to integral coefficients with trivial content."""
    dens = []
    nums = []
    for x in vec:
        for c in x.coeffs.values():
            if isinstance(c, CyclotomicNum):
                dens.append(c.den)
                nums.extend(c.coeffs)
            else:
                c = Fraction(c)
                dens.append(c.denominator)
    d = lcm(1, *dens)
    vec = [x.scale(d) for x in vec]
    nums = []
    for x in vec:
        for c in x.coeffs.values():
            nums.extend(c.coeffs if isinstance(c, CyclotomicNum) else [int(c)])
    g = gcd(*nums) if nums else 1
    if g > 1:
        vec = [x.scale(Fraction(1, g)) for x in vec]
    lows = [x.min_degree() for x in vec if not x.is_zero()]
    lo = min(lows) if lows else 0
    return [x.shift(-lo) for x in vec]


def _independent(prep, vecs, p, rng):
    roots = roots_of_unity(prep.level, p)
    omega = roots[rng.randrange(len(roots))]
    t0 = rng.randrange(2, p - 1)
    rows = [[eval_poly(x, t0, p, omega, prep.level) for x in v] for v in vecs]
    return rank_mod(np.array(rows, dtype=np.int64), p) if rows else 0


def _ansatz_kernel(m, prep, delta, want, max_primes=60):
    nr, nc, triples = _ansatz_system(prep, delta)
    keys = list(triples)
    ridx = np.array([k[0] for k in keys], dtype=np.int64)
    cidx = np.array([k[1] for k in keys], dtype=np.int64)
    vals = [triples[k] for k in keys]
    best_piv = None
    acc = None
    modulus = 1
    rng = random.Random(delta)
    for count, p in enumerate(prime_stream(prep.level)):
        if count >= max_primes:
            return []
        a = np.zeros((nr, nc), dtype=np.int64)
        a[ridx, cidx] = np.array([v % p for v in vals], dtype=np.int64)
        red, piv = rref(a, p)
        # an unlucky prime drops rank or moves pivots to later columns
        if best_piv is None or (-len(piv), piv) < (-len(best_piv), best_piv):
            best_piv, acc, modulus = piv, None, 1
        elif piv != best_piv:
            continue
        pivset = set(best_piv)
        free = [c for c in range(nc) if c not in pivset]
        if not free:
            return []
        block = np.array([[(-int(red[r, fc])) % p for fc in free] for r in range(len(best_piv))],
                         dtype=object)
        if acc is None:
            acc = block
        else:
            acc = np.vectorize(lambda x, y: crt_pair(x, modulus, y, p)[0], otypes=[object])(acc, block)
        modulus *= p
        if count == 0:
            continue
        rec = np.vectorize(lambda x: rational_reconstruct(x, modulus), otypes=[object])(acc)
        if any(x is None for x in rec.flat):
            continue
        # candidate solutions, one per free column
        cands = []
        piv_pos = {c: r for r, c in enumerate(best_piv)}
        for k, fc in enumerate(free):
            sol = [Fraction(0)] * nc
            sol[fc] = Fraction(1)
            for c, r in piv_pos.items():
                sol[c] = rec[r, k]
            cands.append(_vector_from_solution(prep, delta, sol))
        chosen = []
        for v in cands:
            if _independent(prep, chosen + [v], p, rng) > len(chosen):
                chosen.append(v)
            if len(chosen) == want:
                break
        if all(all(x.is_zero() for x in mat_vec(m, v)) for v in chosen):
            return [_clear(v) for v in chosen]
    return []


def kernel(m):
    prep = Prepared(m)
    rank = generic_rank(prep)
    want = prep.ncols - rank
    if want == 0:
        return []
    top = sum(sorted(prep.spread, reverse=True)[:rank]) if rank else 0
    delta = 0
    tried = set()
    while True:
        d = min(delta, top)
        if d not in tried:
            tried.add(d)
            vecs = _ansatz_kernel(m, prep, d, want)
            if len(vecs) == want:
                return vecs
        if d == top:
            raise ArithmeticError("kernel reconstruction failed")
        delta = 1 if delta == 0 else 2 * delta
