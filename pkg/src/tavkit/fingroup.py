"""Finite groups as Cayley tables, a catalog of constructors and the structural
predicates used throughout (weight one, TAV criterion, seeds, isomorphism)."""

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
import json
import random

import numpy as np

from .exact import factorize, is_prime, prime_divisors

FULL_ASSOC_LIMIT = 256
ISO_LIMIT = 512


class FiniteGroup:
    """Group on {0..n-1} given by its multiplication table; element 0 need not be e."""

    def __init__(self, table, labels=None, gens=None, name="", spec=None, check=True):
        self.table = np.asarray(table, dtype=np.int32)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("table must be square")
        self.order = n
        self.rows = self.table.tolist()
        self.labels = labels
        self.name = name
        self.spec = spec
        ident = [i for i in range(n) if self.rows[i] == list(range(n))]
        if len(ident) != 1:
            raise ValueError("table has no unique identity")
        self.identity = ident[0]
        inv = [0] * n
        for a in range(n):
            b = self.rows[a].index(self.identity)
            inv[a] = b
        self.inverse = inv
        self.gens = list(gens) if gens is not None else None
        if check:
            self._check()
        if self.gens is None:
            self.gens = small_generating_set(self)

    def _check(self):
        n = self.order
        t = self.table
        full = np.arange(n)
        if not all((np.sort(t[i]) == full).all() for i in range(n)):
            raise ValueError("table rows are not permutations")
        if not all((np.sort(t[:, j]) == full).all() for j in range(n)):
            raise ValueError("table columns are not permutations")
        if n <= FULL_ASSOC_LIMIT:
            left = t[t, :]                       # left[a, b, c] = (ab)c
            right = t[:, t]                      # right[a, b, c] = a(bc)
            if not (left == right).all():
                raise ValueError("table is not associative")
        else:
            rng = random.Random(n)
            for _ in range(4000):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if t[t[a, b], c] != t[a, t[b, c]]:
                    raise ValueError("table is not associative")

    def mul(self, a, b):
        return self.rows[a][b]

    def inv(self, a):
        return self.inverse[a]

    def prod(self, elems):
        out = self.identity
        for g in elems:
            out = self.rows[out][g]
        return out

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        base = a
        while k:
            if k & 1:
                out = self.rows[out][base]
            base = self.rows[base][base]
            k >>= 1
        return out

    def conj(self, a, g):
        """g a g^-1."""
        return self.rows[self.rows[g][a]][self.inverse[g]]

    def commutator(self, a, b):
        r = self.rows
        return r[r[r[a][b]][self.inverse[a]]][self.inverse[b]]

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.rows[x][a]
            k += 1
        return k

    def label(self, a):
        return self.labels[a] if self.labels is not None else a

    def index_of(self, label):
        if self.labels is None:
            return label
        if not hasattr(self, "_label_index"):
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        return self._label_index[label]

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def to_json(self):
        return {"order": self.order, "table": self.rows}


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_cache")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cache", s)
        return s

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)


def _subgroup(g, elems):
    return Subgroup(g, tuple(sorted(elems)))


# -- closures ----------------------------------------------------------------------

def subgroup_generated(g, gens):
    elems = {g.identity}
    frontier = [g.identity]
    gens = list(dict.fromkeys(gens))
    while frontier:
        nxt = []
        for x in frontier:
            row = g.rows[x]
            for s in gens:
                y = row[s]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return _subgroup(g, elems)


def conjugacy_class(g, a):
    t = g.table
    allg = np.arange(g.order)
    inv = np.asarray(g.inverse)
    return sorted(set(t[t[allg, a], inv].tolist()))


def conjugacy_classes(g):
    seen = set()
    classes = []
    for a in range(g.order):
        if a not in seen:
            c = conjugacy_class(g, a)
            seen.update(c)
            classes.append(c)
    classes.sort(key=lambda c: (len(c), c[0] != g.identity, c[0]))
    return classes


def normal_closure(g, elems):
    conj = set()
    for a in elems:
        conj.update(conjugacy_class(g, a))
    return subgroup_generated(g, conj)


def is_normal(g, h):
    return all(set(conjugacy_class(g, a)) <= h._set for a in h.elements)


def derived_subgroup(g):
    t = g.table
    inv = np.asarray(g.inverse)
    comm = t[t, inv[t.T]]          # [a,b] = (ab)(ba)^-1
    return subgroup_generated(g, set(comm.ravel().tolist()))


def center(g):
    t = g.table
    return _subgroup(g, [a for a in range(g.order) if (t[a] == t[:, a]).all()])


def is_abelian(g):
    return (g.table == g.table.T).all()


def is_p_group(h):
    n = h.order
    return n == 1 or len(factorize(n)) == 1


def element_order(g, a):
    return g.element_order(a)


def sylow_subgroup(g, p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p ** factorize(g.order).get(p, 0)
    cur = _subgroup(g, [g.identity])
    while cur.order < target:
        norm = normalizer(g, cur)
        for x in norm.elements:
            if x in cur:
                continue
            o = g.element_order(x)
            while o % p == 0:
                o //= p
            y = g.power(x, o)
            if y not in cur:
                cur = subgroup_generated(g, list(cur.elements) + [y])
                break
        else:
            raise ArithmeticError("Sylow extension failed")
    return cur


def normalizer(g, h):
    hs = h._set
    return _subgroup(g, [x for x in range(g.order)
                         if all(g.conj(a, x) in hs for a in h.elements)])


def all_cyclic_subgroups(g):
    subs = {subgroup_generated(g, [a]) for a in range(g.order)}
    return sorted(subs, key=lambda s: (s.order, s.elements))


def normal_subgroups(g):
    base = {normal_closure(g, [c[0]]) for c in conjugacy_classes(g)}
    found = set(base)
    frontier = list(base)
    while frontier:
        nxt = []
        for a in frontier:
            for b in base:
                j = subgroup_generated(g, a.elements + b.elements)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda s: (s.order, s.elements))


def is_nilpotent(g):
    return all(is_normal(g, sylow_subgroup(g, p)) for p in prime_divisors(g.order)) if g.order > 1 else True


def weight_is_one(g):
    """(True, witness) if some element normally generates g, else (False, None)."""
    if g.order == 1:
        return True, g.identity
    for c in conjugacy_classes(g):
        if normal_closure(g, [c[0]]).order == g.order:
            return True, c[0]
    return False, None


def is_tav(g):
    ok, _ = weight_is_one(g)
    return ok and not is_p_group(derived_subgroup(g))


def is_seed(g):
    ok, _ = weight_is_one(g)
    if not ok:
        raise ValueError("seed criterion undefined for groups of weight > 1")
    dset = derived_subgroup(g)._set
    for z in center(g).elements:
        if z == g.identity:
            continue
        cyc = subgroup_generated(g, [z]).elements
        if all(x == g.identity or x not in dset for x in cyc):
            return False
    return True


def small_generating_set(g):
    if g.order == 1:
        return []
    order_of = [g.element_order(a) for a in range(g.order)]
    cand = sorted(range(g.order), key=lambda a: -order_of[a])
    gens = []
    sub = _subgroup(g, [g.identity])
    while sub.order < g.order:
        best = None
        for a in cand:
            if a in sub:
                continue
            s = subgroup_generated(g, gens + [a])
            if best is None or s.order > best[1].order:
                best = (a, s)
            if s.order == g.order:
                break
        gens.append(best[0])
        sub = best[1]
    return gens


# -- isomorphism -------------------------------------------------------------------

def _profile(g):
    orders = [g.element_order(a) for a in range(g.order)]
    classes = conjugacy_classes(g)
    csize = {}
    for c in classes:
        for a in c:
            csize[a] = len(c)
    return orders, csize


def is_isomorphic(g, h):
    if g.order != h.order:
        return False
    if g.order > ISO_LIMIT:
        raise ValueError("size limit")
    og, cg = _profile(g)
    oh, ch = _profile(h)
    key = lambda o, c: sorted(zip(o, (c[a] for a in range(len(o)))))
    if key(og, cg) != key(oh, ch):
        return False
    if center(g).order != center(h).order or derived_subgroup(g).order != derived_subgroup(h).order:
        return False
    gens = small_generating_set(g)
    cands = [[b for b in range(h.order) if oh[b] == og[a] and ch[b] == cg[a]] for a in gens]

    def extend(assigned):
        images = [img for _, img in assigned]
        src = [s for s, _ in assigned]
        phi = {g.identity: h.identity}
        used = {h.identity}
        frontier = [g.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, im in zip(src, images):
                    y = g.rows[x][s]
                    fy = h.rows[phi[x]][im]
                    if y in phi:
                        if phi[y] != fy:
                            return None
                    else:
                        if fy in used:
                            return None
                        phi[y] = fy
                        used.add(fy)
                        nxt.append(y)
            frontier = nxt
        return phi

    def search(k, assigned):
        if k == len(gens):
            phi = extend(assigned)
            return phi is not None and len(phi) == g.order
        for b in cands[k]:
            trial = assigned + [(gens[k], b)]
            if extend(trial) is not None and search(k + 1, trial):
                return True
        return False

    return search(0, [])


# -- constructors ------------------------------------------------------------------

def _build(elements, mul, name, spec, gens=None, check=True):
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    gen_idx = [index[x] for x in gens] if gens is not None else None
    return FiniteGroup(table, labels=list(elements), gens=gen_idx, name=name, spec=spec, check=check)


def cyclic(n):
    return _build(list(range(n)), lambda a, b: (a + b) % n, f"C{n}", {"kind": "cyclic", "n": n},
                  gens=[1 % n] if n > 1 else [])


def abelian(ns):
    ns = list(ns)
    elems = list(product(*[range(n) for n in ns]))
    gens = []
    for i, n in enumerate(ns):
        if n > 1:
            gens.append(tuple(int(j == i) for j in range(len(ns))))
    return _build(elems, lambda a, b: tuple((x + y) % n for x, y, n in zip(a, b, ns)),
                  "x".join(f"C{n}" for n in ns), {"kind": "abelian", "ns": ns}, gens=gens)


def dihedral(n):
    """D_n of order 2n; labels (k, e) mean r^k s^e."""
    if n < 1:
        raise ValueError("dihedral needs n >= 1")
    elems = [(k, e) for e in range(2) for k in range(n)]

    def mul(a, b):
        return ((a[0] + (b[0] if a[1] == 0 else -b[0])) % n, (a[1] + b[1]) % 2)

    return _build(elems, mul, f"D{n}", {"kind": "dihedral", "n": n}, gens=[(1 % n, 0), (0, 1)])


def dicyclic(n):
    """Dic_n of order 4n: <a, x | a^(2n), x^2 = a^n, x a x^-1 = a^-1>; labels (k, e)."""
    if n < 1:
        raise ValueError("dicyclic needs n >= 1")
    m = 2 * n
    elems = [(k, e) for e in range(2) for k in range(m)]

    def mul(a, b):
        k1, e1 = a
        k2, e2 = b
        if e1 == 0:
            return ((k1 + k2) % m, e2)
        if e2 == 0:
            return ((k1 - k2) % m, 1)
        return ((k1 - k2 + n) % m, 0)

    return _build(elems, mul, f"Dic{n}", {"kind": "dicyclic", "n": n}, gens=[(1, 0), (0, 1)])


def _perm_mul(a, b):
    # (a*b)(i) = a(b(i)): apply b first
    return tuple(a[i] for i in b)


def symmetric(n):
    elems = sorted(permutations(range(n)))
    gens = []
    if n > 1:
        gens = [tuple(list(range(1, n)) + [0]), tuple([1, 0] + list(range(2, n)))]
    return _build(elems, _perm_mul, f"S{n}", {"kind": "symmetric", "n": n}, gens=gens)


def _parity(p):
    seen, sign = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign += length - 1
    return sign % 2


def alternating(n):
    elems = sorted(p for p in permutations(range(n)) if _parity(p) == 0)
    return _build(elems, _perm_mul, f"A{n}", {"kind": "alternating", "n": n})


def semidirect_cyclic(m, k, b):
    """C_m x| C_b with the generator c acting by x -> x^k; labels (x, y) = a^x c^y."""
    if pow(k, b, m) != 1 % m:
        raise ValueError(f"inadmissible action: {k}^{b} = {pow(k, b, m)} != 1 mod {m}")
    elems = [(x, y) for y in range(b) for x in range(m)]
    kp = [pow(k, y, m) for y in range(b)]
    return _build(elems, lambda u, v: ((u[0] + kp[u[1]] * v[0]) % m, (u[1] + v[1]) % b),
                  f"C{m}:C{b}", {"kind": "semidirect_cyclic", "m": m, "k": k, "b": b},
                  gens=[(1 % m, 0), (0, 1 % b)])


def gpqr(p, q, r, a, b):
    """G(pqr; a, b) = <x, y, z | x^q, y^r, z^p, [x,y], z x z^-1 x^-a, z y z^-1 y^-b>.

    Labels (i, j, e) stand for x^i y^j z^e.
    """
    for v in (p, q, r):
        if not is_prime(v):
            raise ValueError(f"{v} is not prime")
    if pow(a, p, q) != 1:
        raise ValueError(f"inadmissible: a^p = {a}^{p} = {pow(a, p, q)} != 1 mod {q}")
    if pow(b, p, r) != 1:
        raise ValueError(f"inadmissible: b^p = {b}^{p} = {pow(b, p, r)} != 1 mod {r}")
    if a % q == 1 or b % r == 1:
        raise ValueError("inadmissible: a and b must act nontrivially (a != 1 mod q, b != 1 mod r)")
    ap = [pow(a, e, q) for e in range(p)]
    bp = [pow(b, e, r) for e in range(p)]
    elems = [(i, j, e) for e in range(p) for j in range(r) for i in range(q)]

    def mul(u, v):
        return ((u[0] + ap[u[2]] * v[0]) % q, (u[1] + bp[u[2]] * v[1]) % r, (u[2] + v[2]) % p)

    spec = {"kind": "gpqr", "p": p, "q": q, "r": r, "a": a, "b": b}
    return _build(elems, mul, f"G({p*q*r};{a},{b})", spec, gens=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def primitive_root(p):
    for g in range(1, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_divisors(p - 1)) or p == 2:
            return g
    raise ValueError(f"no primitive root mod {p}")


def holder_unit(m, exps):
    """The unit of Z/m whose component mod each prime p | m is g_p^e (g_p primitive root)."""
    ps = prime_divisors(m)
    if len(exps) != len(ps):
        raise ValueError("one exponent per prime factor of m is required")
    u, mod = 0, 1
    for p, e in zip(ps, exps):
        val = pow(primitive_root(p), e, p)
        # combine by CRT
        t = (val - u) * pow(mod, -1, p) % p
        u, mod = u + mod * t, mod * p
    return u % m if m > 1 else 0


def metacyclic_holder(n, m, h):
    """Square-free group C_m x| C_(n/m) whose generator acts by the unit given by h."""
    k = n // m
    if n % m:
        raise ValueError("m must divide n")
    u = holder_unit(m, h) if m > 1 else 0
    g = semidirect_cyclic(m, u, k) if m > 1 else cyclic(n)
    g.spec = {"kind": "metacyclic_holder", "n": n, "m": m, "h": list(h)}
    g.name = f"H({n};{m};{tuple(h)})"
    return g


def frobenius(p):
    g = semidirect_cyclic(p, primitive_root(p), p - 1)
    g.spec = {"kind": "frobenius", "p": p}
    g.name = f"F{p}"
    return g


def direct_product(groups):
    groups = list(groups)
    elems = list(product(*[range(g.order) for g in groups]))

    def mul(a, b):
        return tuple(g.rows[x][y] for g, x, y in zip(groups, a, b))

    gens = []
    for i, g in enumerate(groups):
        for s in g.gens:
            gens.append(tuple(s if j == i else groups[j].identity for j in range(len(groups))))
    name = "x".join(g.name or str(g.order) for g in groups)
    spec = {"kind": "direct_product", "factors": [g.spec for g in groups]}
    return _build(elems, mul, name, spec, gens=gens, check=len(elems) <= FULL_ASSOC_LIMIT)


def from_spec(spec):
    if isinstance(spec, str):
        spec = json.loads(spec)
    kind = spec.get("kind")
    if kind is None and "table" in spec or kind == "table":
        g = FiniteGroup(spec["table"], name=spec.get("name", ""), spec=spec)
        if "order" in spec and int(spec["order"]) != g.order:
            raise ValueError("table size does not match the stated order")
        return g
    try:
        if kind == "cyclic":
            return cyclic(int(spec["n"]))
        if kind == "abelian":
            return abelian([int(x) for x in spec["ns"]])
        if kind == "dihedral":
            return dihedral(int(spec["n"]))
        if kind == "dicyclic":
            return dicyclic(int(spec["n"]))
        if kind == "symmetric":
            return symmetric(int(spec["n"]))
        if kind == "alternating":
            return alternating(int(spec["n"]))
        if kind == "semidirect_cyclic":
            return semidirect_cyclic(int(spec["m"]), int(spec["k"]), int(spec["b"]))
        if kind == "gpqr":
            return gpqr(*(int(spec[x]) for x in "pqrab"))
        if kind == "metacyclic_holder":
            return metacyclic_holder(int(spec["n"]), int(spec["m"]), [int(x) for x in spec["h"]])
        if kind == "direct_product":
            return direct_product([from_spec(s) for s in spec["factors"]])
        if kind == "frobenius":
            return frobenius(int(spec["p"]))
    except KeyError as exc:
        raise ValueError(f"group spec of kind {kind!r} is missing {exc}") from None
    raise ValueError(f"unknown group kind {kind!r}")


def catalog(max_order=60):
    """Small catalog of named groups up to the given order (used by the property suites)."""
    out = []
    for n in range(1, max_order + 1):
        out.append(cyclic(n))
    for n in range(2, max_order // 2 + 1):
        out.append(dihedral(n))
    for n in range(2, max_order // 4 + 1):
        out.append(dicyclic(n))
    for n in (3, 4, 5):
        if _fact(n) <= max_order:
            out.append(symmetric(n))
        if _fact(n) // 2 <= max_order:
            out.append(alternating(n))
    for ns in ([2, 2], [2, 4], [2, 2, 2], [3, 3], [2, 6], [4, 4], [2, 2, 4], [3, 9], [5, 5]):
        if np.prod(ns) <= max_order:
            out.append(abelian(ns))
    for p in (5, 7, 11):
        if p * (p - 1) <= max_order:
            out.append(frobenius(p))
    for m in range(3, max_order):
        for b in range(2, max_order // m + 1):
            for k in range(2, m):
                if gcd(k, m) == 1 and pow(k, b, m) == 1 and m * b <= max_order:
                    out.append(semidirect_cyclic(m, k, b))
    return out


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out
