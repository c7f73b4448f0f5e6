"""Exact arithmetic: Laurent polynomials, cyclotomic numbers, Smith normal form
and determinants/kernels of matrices over Laurent polynomial rings.

Polynomial matrices are plain lists of rows of LaurentPoly.  The heavy lifting
for determinants and kernels happens in `_modp` (word-size modular arithmetic
with numpy), this module only exposes exact results.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import json


# -- elementary number theory -------------------------------------------------

def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n):
    """Prime factorization as {prime: exponent} by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n):
    return sorted(factorize(n))


def divisors(n):
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def totient(n):
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def is_squarefree(n):
    return n >= 1 and all(e == 1 for e in factorize(n).values())


# -- integer polynomial helpers (coefficient lists, low degree first) ---------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod_monic(a, b):
    """Divide integer list a by monic integer list b."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, _trim(a[:db])


@lru_cache(maxsize=None)
def _phi(n):
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, r = _divmod_monic(num, _phi(d))
        assert not r
    return tuple(num)


@lru_cache(maxsize=None)
def _power_residues(n):
    """Residues of z^k mod Phi_n for 0 <= k < n."""
    f = totient(n)
    out = []
    for k in range(n):
        c = [0] * (k + 1)
        c[k] = 1
        _, r = _divmod_monic(c, _phi(n))
        r = list(r) + [0] * (f - len(r))
        out.append(tuple(r))
    return tuple(out)


def residue_bound(n):
    """Largest coefficient in absolute value among the residues of z^k."""
    return max(max((abs(c) for c in r), default=0) for r in _power_residues(n))


def _reduce(coeffs, n):
    """Reduce an integer coefficient list modulo z^n - 1 and then Phi_n."""
    f = totient(n)
    if len(coeffs) <= f:
        return list(coeffs) + [0] * (f - len(coeffs))
    folded = [0] * n
    for k, c in enumerate(coeffs):
        folded[k % n] += c
    out = [0] * f
    table = _power_residues(n)
    for k, c in enumerate(folded):
        if c:
            for j, r in enumerate(table[k]):
                if r:
                    out[j] += c * r
    return out


# -- cyclotomic numbers --------------------------------------------------------

class CyclotomicNum:
    """Element of Q(zeta_N): integer residue mod Phi_N over a positive denominator."""

    __slots__ = ("level", "coeffs", "den")

    def __init__(self, level, coeffs, den=1):
        if level < 1:
            raise ValueError("level must be positive")
        fr = [Fraction(c) for c in coeffs]
        den = Fraction(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        common = lcm(*(c.denominator for c in fr), 1) if fr else 1
        ints = [int(c * common) for c in fr]
        ints = _reduce(ints, level)
        d = den * common
        num_scale, den_scale = d.denominator, d.numerator
        ints = [c * num_scale for c in ints]
        if den_scale < 0:
            ints = [-c for c in ints]
            den_scale = -den_scale
        g = gcd(den_scale, *ints)
        if g > 1:
            ints = [c // g for c in ints]
            den_scale //= g
        if not any(ints):
            den_scale = 1
        self.level = level
        self.coeffs = tuple(ints)
        self.den = den_scale

    @classmethod
    def zeta(cls, n, k=1):
        k %= n
        c = [0] * (k + 1)
        c[k] = 1
        return cls(n, c)

    @classmethod
    def rational(cls, x, n=1):
        return cls(n, [Fraction(x)])

    def embed(self, m):
        if m % self.level:
            raise ValueError(f"level {self.level} does not divide {m}")
        step = m // self.level
        c = [0] * (step * (len(self.coeffs) - 1) + 1)
        for k, a in enumerate(self.coeffs):
            c[k * step] = a
        return CyclotomicNum(m, c, self.den)

    def _lift(self, other):
        if isinstance(other, CyclotomicNum):
            m = lcm(self.level, other.level)
            a = self if self.level == m else self.embed(m)
            b = other if other.level == m else other.embed(m)
            return a, b
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNum(self.level, [other])
        return None, None

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.coeffs[0], self.den)

    def __add__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return CyclotomicNum(a.level, [x * b.den + y * a.den for x, y in zip(a.coeffs, b.coeffs)],
                             a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNum(self.level, [-c for c in self.coeffs], self.den)

    def __sub__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        prod = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNum(a.level, prod, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        n = self.level
        # extended Euclid in Q[z] against Phi_n
        r0, r1 = [Fraction(c) for c in _phi(n)], _ftrim([Fraction(c) for c in self.coeffs])
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fsub(s0, _fmul(q, s1))
            if not r1:
                raise ArithmeticError("Phi_n is irreducible; nonzero element must be invertible")
        c = r1[0]
        return CyclotomicNum(n, [x / c for x in s1], Fraction(1, self.den))

    def __truediv__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNum(self.level, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k):
        """Apply zeta -> zeta^k (k coprime to the level)."""
        n = self.level
        if gcd(k, n) != 1:
            raise ValueError("Galois exponent must be coprime to the level")
        c = [0] * n
        for j, a in enumerate(self.coeffs):
            c[(j * k) % n] += a
        return CyclotomicNum(n, c, self.den)

    def conjugate(self):
        return self.galois(-1)

    def __eq__(self, other):
        a, b = self._lift(other)
        if a is None:
            return NotImplemented
        return a.den == b.den and a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash("cyclotomic")

    def to_json(self):
        return {"level": self.level,
                "coeffs": [_frac_str(Fraction(c, self.den)) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["level"]), [Fraction(c) for c in obj["coeffs"]])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms) or "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"Cyc{self.level}[{body}]"


def _ftrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ftrim(out)


def _fsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _ftrim([x - y for x, y in zip(a, b)])


def _fdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _ftrim(q), _ftrim(a[:len(b) - 1])


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def canon_coeff(c):
    """Canonical scalar: ints stay ints, integral fractions become ints and
    rational cyclotomic numbers drop to the rationals."""
    if isinstance(c, CyclotomicNum):
        if c.is_rational():
            c = c.rational_value()
        else:
            return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_zero(c):
    return c.is_zero() if isinstance(c, CyclotomicNum) else c == 0


def _sign_of(c):
    """Sign of the 'leading rational part' of a scalar."""
    if isinstance(c, CyclotomicNum):
        for a in c.coeffs:
            if a:
                return 1 if a > 0 else -1
        return 0
    return (c > 0) - (c < 0)


def _inv(c):
    if isinstance(c, CyclotomicNum):
        return c.inverse()
    return Fraction(1) / Fraction(c)


# -- Laurent polynomials -------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in t with exact scalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        out = {}
        for k, c in (coeffs or {}).items():
            c = canon_coeff(c)
            if not _is_zero(c):
                out[int(k)] = c
        self.coeffs = out

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def from_list(cls, coeffs, shift=0):
        return cls({shift + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def t(cls):
        return cls({1: 1})

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def span(self):
        return self.degree() - self.min_degree() if self.coeffs else 0

    def leading(self):
        return self.coeffs[self.degree()]

    def level(self):
        return lcm(1, *(c.level for c in self.coeffs.values() if isinstance(c, CyclotomicNum)))

    @staticmethod
    def _wrap(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction, CyclotomicNum)):
            return LaurentPoly.const(x)
        return None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                out[k] = out[k] + a * b if k in out else a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.coeffs.items()
            return LaurentPoly({-e * (-k): _inv(c) ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def scale(self, c):
        return LaurentPoly({e: a * c for e, a in self.coeffs.items()})

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)

    def __hash__(self):
        return hash(frozenset((k, hash(c)) for k, c in self.coeffs.items()))

    def normalize(self):
        """Representative modulo +-t^k: lowest exponent 0, leading part positive."""
        if not self.coeffs:
            return self
        p = self.shift(-self.min_degree())
        return -p if _sign_of(p.leading()) < 0 else p

    def monic(self):
        """Representative modulo all units c*t^k of a field coefficient ring."""
        if not self.coeffs:
            return self
        p = self.shift(-self.min_degree())
        return p.scale(_inv(p.leading()))

    def equiv(self, other):
        """Equality up to +-t^k."""
        return self.normalize() == other.normalize()

    def associated(self, other):
        """Equality up to a nonzero scalar times t^k."""
        return self.monic() == other.monic()

    def divmod(self, other):
        """Polynomial division after clearing negative exponents of both operands."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        a_shift, b_shift = self.min_degree(), other.min_degree()
        a = self.shift(-a_shift)
        b = other.shift(-b_shift)
        rem = dict(a.coeffs)
        db = b.degree()
        lead_inv = _inv(b.leading())
        quo = {}
        while rem:
            top = max(rem)
            if top < db:
                break
            c = canon_coeff(rem[top] * lead_inv)
            quo[top - db] = c
            for e, bc in b.coeffs.items():
                k = top - db + e
                v = rem.get(k, 0) - c * bc
                v = canon_coeff(v)
                if _is_zero(v):
                    rem.pop(k, None)
                else:
                    rem[k] = v
        q = LaurentPoly(quo).shift(a_shift - b_shift)
        r = LaurentPoly(rem).shift(a_shift)
        return q, r

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("not divisible")
        return q

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        return self.scale(_inv(other))

    def divides(self, other):
        """True iff other = self * q for some Laurent polynomial q."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        total = 0
        for e, c in self.coeffs.items():
            if e >= 0:
                total = total + c * x**e
            else:
                xi = x.inverse() if isinstance(x, CyclotomicNum) else Fraction(1) / x
                total = total + c * xi**(-e)
        return canon_coeff(total) if not isinstance(total, int) else total

    def substitute_power(self, k):
        """p(t) -> p(t^k)."""
        return LaurentPoly({e * k: c for e, c in self.coeffs.items()})

    def to_json(self):
        out = {}
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            out[str(e)] = c.to_json() if isinstance(c, CyclotomicNum) else _frac_str(c)
        return out

    @classmethod
    def from_json(cls, obj):
        out = {}
        for e, c in obj.items():
            out[int(e)] = CyclotomicNum.from_json(c) if isinstance(c, dict) else Fraction(c)
        return cls(out)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if isinstance(c, CyclotomicNum):
                term = f"{c!r}*{mono}" if mono else repr(c)
                parts.append(("+", term))
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono and a == 1:
                term = mono
            elif mono:
                term = f"{_frac_str(a)}*{mono}"
            else:
                term = _frac_str(a)
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s


T = LaurentPoly.t()


def poly_gcd(a, b):
    """Monic gcd over the coefficient field, lowest exponent 0."""
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.monic()
    return a


def cyclotomic_poly(n):
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    return LaurentPoly.from_list(_phi(n))


# -- integer matrices ----------------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def smith_normal_form(m):
    """Return (diag, U, V) with U*M*V diagonal, diag[i] | diag[i+1], U, V unimodular."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u, v = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                       if a[i][j] % a[t][t]]
                if not bad:
                    break
                add_row(bad[0][0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] for i in range(min(rows, cols))]
    return diag, u, v


# -- polynomial matrices -------------------------------------------------------

def poly_matrix_det(m):
    """Exact determinant of a square LaurentPoly matrix (modular evaluation)."""
    from . import _modp
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return LaurentPoly.const(1)
    return _modp.det(m)


def det_bareiss(m):
    """Fraction-free elimination over the Laurent ring; oracle for small sizes."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return LaurentPoly.const(1)
    a = [[LaurentPoly._wrap(x) for x in r] for r in m]
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_cofactor(m):
    """Laplace expansion along the first row; only for tiny matrices."""
    n = len(m)
    if n == 0:
        return LaurentPoly.const(1)
    if n == 1:
        return LaurentPoly._wrap(m[0][0])
    total = LaurentPoly()
    for j in range(n):
        if LaurentPoly._wrap(m[0][j]).is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in m[1:]]
        term = LaurentPoly._wrap(m[0][j]) * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def mat_vec(m, v):
    return [sum((LaurentPoly._wrap(a) * b for a, b in zip(row, v)), LaurentPoly()) for row in m]


def poly_matrix_kernel(m):
    """Basis of the kernel over the fraction field, entries cleared to polynomials.

    Every returned vector has been checked with an exact product M*v = 0.
    """
    from . import _modp
    if not m:
        return []
    return _modp.kernel(m)


def full_rank_witness(m):
    """Evaluation data proving that m has full column rank, or None if none was found."""
    from . import _modp
    return _modp.full_rank_witness(m)


def check_rank_witness(m, witness):
    from . import _modp
    return _modp.check_witness(m, witness)


# -- scalar matrices over Q or Q(zeta) -----------------------------------------------

def field_rref(rows, ncols=None):
    """Reduced row echelon form over the scalar field; returns (rows, pivots)."""
    a = [[canon_coeff(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if not _is_zero(a[i][c])), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = _inv(a[r][c])
        a[r] = [canon_coeff(x * inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and not _is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [canon_coeff(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows, ncols):
    """Basis of {v : rows * v = 0}."""
    red, piv = field_rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in zip(red, piv):
            v[c] = canon_coeff(-r[f])
        out.append(v)
    return out


def scalar_matmul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for l in range(k):
                x = a[i][l]
                if not _is_zero(x):
                    y = b[l][j]
                    if not _is_zero(y):
                        s = s + x * y
            row.append(canon_coeff(s))
        out.append(row)
    return out
