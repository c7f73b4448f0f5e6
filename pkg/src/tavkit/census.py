"""Counting TAV groups: closed formulas for orders pqr, p^3q, p^2qr, pqrs and
square-free n, and a structural enumeration of all groups of square-free order.

A group of square-free order n is C_m x| H with H a subgroup of order n/m of
Aut(C_m) = prod_{q | m} C_(q-1).  H is recorded by the exponents of a generator
with respect to fixed primitive roots, one per prime q | m.
"""

from dataclasses import dataclass, field
from itertools import product
from math import prod

from .exact import divisors, factorize, is_prime, is_squarefree, prime_divisors


def divides_ind(u, v):
    if u < 1:
        raise ValueError("D_u^v needs u >= 1")
    return 1 if v % u == 0 else 0


D = divides_ind


def c(m, p):
    return sum(1 for q in prime_divisors(m) if (q - 1) % p == 0)


def cbar(n, p):
    return sum(1 for q in prime_divisors(n) if (p - 1) % q == 0)


def _check_primes(*ps):
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    if len(set(ps)) != len(ps):
        raise ValueError("primes must be distinct")


def count_tav_pqr(p, q, r):
    _check_primes(p, q, r)
    if not p < q < r:
        raise ValueError("expected p < q < r")
    return (p - 1) * D(p, q - 1) * D(p, r - 1)


def count_tav_p3q(p, q):
    _check_primes(p, q)
    return 1 if (p, q) == (2, 3) else 0


def p2qr_terms(p, q, r, variant="theorem"):
    """The fourteen summands of the p^2qr count, in printed order."""
    _check_primes(p, q, r)
    if not q < r:
        raise ValueError("expected q < r")
    if variant not in ("theorem", "table"):
        raise ValueError("variant must be 'theorem' or 'table'")
    d2q = D(2, q)
    bare = (p - 1) * d2q if variant == "table" else d2q
    half1 = q * (q - 1 - d2q) * D(q, p - 1) * D(q, r - 1)
    half2 = (q - 1 - d2q) * D(q, p + 1) * D(q, r - 1)
    assert half1 % 2 == 0 and half2 % 2 == 0
    return [
        D(p, r - 1) * D(q, p - 1),
        (q - 1) * D(q, r - 1) * D(q, p - 1),
        (q - 1) * D(p, r - 1) * D(q, r - 1) * D(q, p - 1),
        (p - 1) * D(p, q - 1) * D(p, r - 1),
        (p - 1) * D(p * p, q - 1) * D(p, r - 1),
        (p - 1) * D(p, q - 1) * D(p * p, r - 1),
        (p * p - p) * D(p * p, q - 1) * D(p * p, r - 1),
        (q - 1) * D(q, p - 1) * D(q, r - 1),
        bare,
        half1 // 2,
        half2 // 2,
        d2q * D(r, p - 1),
        d2q * D(r, p + 1),
        D(2, p) * D(3, q) * D(5, r),
    ]


def count_tav_p2qr(p, q, r, variant="theorem"):
    return sum(p2qr_terms(p, q, r, variant))


def count_tav_pqrs(p, q, r, s):
    _check_primes(p, q, r, s)
    if not p < q < r < s:
        raise ValueError("expected p < q < r < s")
    return ((p - 1) * D(p, q - 1) * D(p, r - 1)
            + (p - 1) * D(p, q - 1) * D(p, s - 1)
            + D(p, q - 1) * D(r, s - 1)
            + (p - 1) * D(p, q - 1) * D(p, s - 1) * D(r, s - 1)
            + D(p, r - 1) * D(q, s - 1)
            + D(p, s - 1) * D(q, r - 1)
            + (p - 1) * D(p, r - 1) * D(p, s - 1)
            + (q - 1) * D(q, r - 1) * D(q, s - 1)
            + (p - 1) * D(p, r - 1) * D(p, s - 1) * D(q, r - 1)
            + (p - 1) * D(p, r - 1) * D(p, s - 1) * D(q, s - 1)
            + (q - 1) * D(q, r - 1) * D(q, s - 1) * D(p, r - 1)
            + (q - 1) * D(q, r - 1) * D(q, s - 1) * D(p, s - 1)
            + (p * q - p - q + 1) * D(p, r - 1) * D(p, s - 1) * D(q, r - 1) * D(q, s - 1)
            + (p - 1) ** 2 * D(p, q - 1) * D(p, r - 1) * D(p, s - 1))


def _require_squarefree(n):
    if not is_squarefree(n):
        raise ValueError(f"{n} is not square-free")


def holder_count(n):
    _require_squarefree(n)
    total = 0
    for m in divisors(n):
        total += prod((p ** c(m, p) - 1) // (p - 1) for p in prime_divisors(n // m))
    return total


def count_tav_squarefree(n):
    return holder_count(n) - sum(2 ** cbar(n, p) - 1 for p in prime_divisors(n)) - 1


@dataclass(frozen=True)
class SquarefreeGroupParam:
    n: int
    m: int
    h: tuple              # generator exponent per prime of m (w.r.t. a primitive root)
    derived: int = field(compare=False)

    @property
    def tav(self):
        return len(prime_divisors(self.derived)) >= 2

    def to_json(self):
        return {"m": self.m, "H": list(self.h), "derived": self.derived, "tav": self.tav}

    def group_spec(self):
        return {"kind": "metacyclic_holder", "n": self.n, "m": self.m, "h": list(self.h)}


def _projective_points(r, dim):
    """Nonzero vectors of F_r^dim whose first nonzero coordinate is 1."""
    for v in product(range(r), repeat=dim):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            yield v


def _subgroups_for(m, k):
    """Generator tuples of all subgroups of order k in prod_{q|m} C_(q-1)."""
    qs = prime_divisors(m)
    choices = []
    for r in prime_divisors(k):
        slots = [i for i, q in enumerate(qs) if (q - 1) % r == 0]
        pts = list(_projective_points(r, len(slots)))
        if not pts:
            return []
        choices.append([(r, slots, v) for v in pts])
    out = []
    for combo in product(*choices):
        h = [0] * len(qs)
        for r, slots, v in combo:
            for i, x in zip(slots, v):
                h[i] = (h[i] + (qs[i] - 1) // r * x) % (qs[i] - 1)
        out.append(tuple(h))
    return out


def enumerate_squarefree(n):
    _require_squarefree(n)
    out = []
    for m in divisors(n):
        qs = prime_divisors(m)
        for h in _subgroups_for(m, n // m):
            derived = prod(q for q, e in zip(qs, h) if e % (q - 1))
            out.append(SquarefreeGroupParam(n, m, h, derived))
    return out


def tav_filter(params):
    return [x for x in params if x.tav]


def stratum_status(n):
    """What the counting results say about TAV groups of order n.

    Returns (count or None, reason); None means no complete classification is known here.
    """
    f = factorize(n)
    exps = sorted(f.values())
    ps = sorted(f)
    if n == 1 or len(f) == 1:
        return 0, "prime power"
    if is_squarefree(n):
        return count_tav_squarefree(n), "square-free"
    if exps == [1, 2]:
        return 0, "p^2 q"
    if exps == [2, 2]:
        return 0, "p^2 q^2"
    if exps == [1, 3]:
        p = next(x for x in ps if f[x] == 3)
        q = next(x for x in ps if f[x] == 1)
        return count_tav_p3q(p, q), "p^3 q"
    if exps == [1, 1, 2]:
        p = next(x for x in ps if f[x] == 2)
        q, r = sorted(x for x in ps if f[x] == 1)
        return count_tav_p2qr(p, q, r), "p^2 q r"
    return None, "unverified"
