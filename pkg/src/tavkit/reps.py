"""Representations of finite groups over cyclotomic fields.

Matrices act on column vectors from the left, so rho(gh) = rho(g) rho(h).
Entries are ints, Fractions or CyclotomicNum values.
"""

from collections import deque
from fractions import Fraction
from math import gcd, lcm

from .exact import (CyclotomicNum, LaurentPoly, _is_zero, canon_coeff, cyclotomic_poly,
                    factorize, nullspace, poly_gcd, poly_matrix_det, scalar_matmul)
from .fingroup import (conjugacy_classes, derived_subgroup, is_nilpotent, is_normal,
                       subgroup_generated)


def _identity(d):
    return [[int(i == j) for j in range(d)] for i in range(d)]


def _mat_key(m):
    return tuple(tuple(canon_coeff(x) for x in r) for r in m)


class Representation:
    """Either a permutation representation (``perms[g][x]`` is the image of basis
    vector x) or a matrix representation with one matrix per group element."""

    def __init__(self, group, dim, level=1, mats=None, perms=None, name=""):
        self.group = group
        self.dim = dim
        self.level = level
        self.mats = mats
        self.perms = perms
        self.name = name

    @classmethod
    def from_generators(cls, group, gens, images, level=1, name=""):
        """Close generator images over the group, checking rho(gs) = rho(g) rho(s)
        along every edge of the Cayley graph (which makes rho a homomorphism)."""
        d = len(images[0]) if images else 1
        mats = [None] * group.order
        mats[group.identity] = _identity(d)
        queue = deque([group.identity])
        imgs = [[[canon_coeff(x) for x in r] for r in m] for m in images]
        while queue:
            g = queue.popleft()
            for s, ms in zip(gens, imgs):
                h = group.mul(g, s)
                m = scalar_matmul(mats[g], ms)
                if mats[h] is None:
                    mats[h] = m
                    queue.append(h)
                elif _mat_key(mats[h]) != _mat_key(m):
                    raise ValueError("generator images do not define a representation")
        if any(m is None for m in mats):
            raise ValueError("generators do not generate the group")
        return cls(group, d, level, mats=mats, name=name)

    @property
    def is_permutation(self):
        return self.perms is not None

    def matrix(self, g):
        if self.perms is not None:
            m = [[0] * self.dim for _ in range(self.dim)]
            for x, y in enumerate(self.perms[g]):
                m[y][x] = 1
            return m
        return self.mats[g]

    def entries(self, g):
        """Nonzero entries of rho(g) as (row, col, value)."""
        if self.perms is not None:
            return [(y, x, 1) for x, y in enumerate(self.perms[g])]
        return [(i, j, v) for i, r in enumerate(self.mats[g]) for j, v in enumerate(r)
                if not _is_zero(v)]

    def apply(self, g, v):
        if self.perms is not None:
            out = [0] * self.dim
            for x, y in enumerate(self.perms[g]):
                out[y] = v[x]
            return out
        m = self.mats[g]
        return [sum((m[i][j] * v[j] for j in range(self.dim) if not _is_zero(m[i][j])),
                    _zero_like(v)) for i in range(self.dim)]

    def trace(self, g):
        if self.perms is not None:
            return sum(1 for x, y in enumerate(self.perms[g]) if x == y)
        return canon_coeff(sum((self.mats[g][i][i] for i in range(self.dim)), 0))

    def character(self):
        return [self.trace(g) for g in range(self.group.order)]

    def to_json(self):
        g = self.group
        gens = {}
        for s in g.gens:
            gens[str(g.label(s))] = [[_scalar_json(x) for x in r] for r in self.matrix(s)]
        return {"group": g.spec, "dim": self.dim, "level": self.level, "gens": gens}

    def __repr__(self):
        return f"Representation({self.name or '?'}, dim={self.dim})"


def _zero_like(v):
    for x in v:
        if isinstance(x, LaurentPoly):
            return LaurentPoly()
    return 0


def _scalar_json(x):
    x = canon_coeff(x)
    if isinstance(x, CyclotomicNum):
        return x.to_json()
    return str(x)


def _scalar_from_json(x):
    if isinstance(x, dict):
        return canon_coeff(CyclotomicNum.from_json(x))
    return canon_coeff(Fraction(x))


def rep_from_json(obj, group=None):
    from .fingroup import from_spec
    if group is None:
        group = from_spec(obj["group"])
    gens, imgs = [], []
    for lab, m in obj["gens"].items():
        idx = _parse_label(group, lab)
        gens.append(idx)
        imgs.append([[_scalar_from_json(x) for x in r] for r in m])
    return Representation.from_generators(group, gens, imgs, int(obj.get("level", 1)))


def _parse_label(group, text):
    import ast
    for g in range(group.order):
        if str(group.label(g)) == text:
            return g
    return group.index_of(ast.literal_eval(text))


# -- constructions --------------------------------------------------------------------

def regular_rep(group):
    """Right regular representation: rho(g) e_x = e_(x g^-1)."""
    rows = group.rows
    inv = group.inverse
    perms = [[rows[x][inv[g]] for x in range(group.order)] for g in range(group.order)]
    return Representation(group, group.order, 1, perms=perms, name=f"regular({group.name})")


def trivial_rep(group):
    return Representation(group, 1, 1, perms=[[0]] * group.order, name="trivial")


def permutation_rep(group):
    """Natural action of a group of permutation tuples on its points."""
    n = len(group.label(group.identity))
    perms = [list(group.label(g)) for g in range(group.order)]
    rep = Representation(group, n, 1, perms=perms, name=f"perm({group.name})")
    _check_perm_hom(rep)
    return rep


def _check_perm_hom(rep):
    g = rep.group
    for a in g.gens:
        for b in range(g.order):
            ab = g.mul(a, b)
            if [rep.perms[a][x] for x in rep.perms[b]] != rep.perms[ab]:
                raise ValueError("permutation labels do not give a left action")


def _abelianization_data(group):
    d = derived_subgroup(group)
    return d, group.order // d.order


def one_dim_reps(group):
    """All characters of G/G' lifted to G."""
    d, m = _abelianization_data(group)
    if m == 1:
        return [trivial_rep(group)]
    gens = list(group.gens)
    # exponent of G/G' divides lcm of generator orders modulo G'
    dset = set(d.elements)
    orders = []
    for s in gens:
        k, x = 1, s
        while x not in dset:
            x = group.mul(x, s)
            k += 1
        orders.append(k)
    n = lcm(*orders)
    out = []
    from itertools import product
    for ks in product(*[range(0, n, n // o) for o in orders]):
        imgs = [[[CyclotomicNum.zeta(n, k)]] for k in ks]
        try:
            rep = Representation.from_generators(group, gens, imgs, n, name=f"chi{list(ks)}")
        except ValueError:
            continue
        out.append(rep)
    if len(out) != m:
        raise AssertionError("character count does not match |G/G'|")
    return out


def dihedral_irreps(n):
    """Irreducibles of D_n (order 2n) built on fingroup.dihedral(n)."""
    from .fingroup import dihedral
    if n < 3:
        raise ValueError("dihedral_irreps needs n >= 3")
    g = dihedral(n)
    r, s = g.index_of((1, 0)), g.index_of((0, 1))
    out = one_dim_reps(g)
    for k in range(1, (n + 1) // 2):
        z = CyclotomicNum.zeta(n, k)
        rot = [[canon_coeff(z), 0], [0, canon_coeff(z.conjugate())]]
        ref = [[0, 1], [1, 0]]
        out.append(Representation.from_generators(g, [r, s], [rot, ref], n, name=f"rho_{k}"))
    return out


def _prime_power(n):
    f = factorize(n)
    if len(f) != 1:
        return None
    return next(iter(f.items()))


def schmidt_irreps(h):
    """Irreducibles of a metabelian Schmidt group with cyclic derived subgroup:
    the characters eta_k and the p-dimensional tau_j (x) eta_k."""
    if is_nilpotent(h):
        raise ValueError("group is nilpotent, not a Schmidt group")
    for a in range(h.order):
        for b in range(a, h.order):
            s = subgroup_generated(h, [a, b])
            if s.order < h.order and not _subgroup_nilpotent(h, s):
                raise ValueError("some proper subgroup is not nilpotent")
    dq = derived_subgroup(h)
    qq = _prime_power(dq.order)
    if qq is None:
        raise ValueError("derived subgroup is not of prime-power order")
    y = next((x for x in dq.elements if h.element_order(x) == dq.order), None)
    if y is None:
        raise ValueError("derived subgroup is not cyclic")
    ph = _prime_power(h.order // dq.order)
    if ph is None:
        raise ValueError("abelianization is not of prime-power order")
    p, e = ph
    ord_z = p ** e
    z = next((x for x in range(h.order) if h.element_order(x) == ord_z), None)
    if z is None:
        raise ValueError("abelianization is not cyclic")
    qb = dq.order
    # z y z^-1 = y^k
    zy = h.conj(y, z)
    k = next(i for i in range(qb) if h.power(y, i) == zy)
    if pow(k, p, qb) != 1 or k % qb == 1:
        raise ValueError("conjugation by z does not act with order p")
    out = []
    for kk in range(ord_z):
        eta = Representation.from_generators(h, [y, z], [[[1]], [[CyclotomicNum.zeta(ord_z, kk)]]],
                                             ord_z, name=f"eta_{kk}")
        out.append(eta)
    seen, reps = set(), []
    for c in range(1, qb):
        if c in seen:
            continue
        orbit = {c * pow(k, i, qb) % qb for i in range(p)}
        seen |= orbit
        reps.append(c)
    level = lcm(qb, ord_z)
    for j, c in enumerate(reps, 1):
        # tau(y) e_i = chi(z^-i y z^i) e_i with chi(y) = zeta^c; z^-i y z^i = y^(k^-i)
        kinv = pow(k, -1, qb)
        ydiag = [[canon_coeff(CyclotomicNum.zeta(qb, c * pow(kinv, i, qb))) if i == l else 0
                  for l in range(p)] for i in range(p)]
        zmat = [[int(i == (l + 1) % p) for l in range(p)] for i in range(p)]
        tau = Representation.from_generators(h, [y, z], [ydiag, zmat], qb, name=f"tau_{j}")
        for kk in range(p ** (e - 1)):
            out.append(tensor_with_char(tau, out[kk], name=f"tau_{j}*eta_{kk}", level=level))
    return out


def _subgroup_nilpotent(g, s):
    """Nilpotent iff every Sylow subgroup is normal (checked inside s)."""
    elems = list(s.elements)
    n = len(elems)
    for p in factorize(n):
        pe = p ** factorize(n)[p]
        pel = [x for x in elems if _is_p_power_order(g.element_order(x), p)]
        if len(pel) != pe:
            return False
    return True


def _is_p_power_order(o, p):
    while o % p == 0:
        o //= p
    return o == 1


def tensor_with_char(rho, eta, name="", level=None):
    if rho.group is not eta.group:
        raise ValueError("representations of different groups")
    if eta.dim != 1:
        raise ValueError("second factor must be one-dimensional")
    mats = []
    for g in range(rho.group.order):
        c = eta.matrix(g)[0][0]
        mats.append([[canon_coeff(x * c) for x in r] for r in rho.matrix(g)])
    return Representation(rho.group, rho.dim, level or lcm(rho.level, eta.level), mats=mats,
                          name=name or f"{rho.name}*{eta.name}")


def direct_sum(reps):
    reps = list(reps)
    g = reps[0].group
    if any(r.group is not g for r in reps):
        raise ValueError("representations of different groups")
    d = sum(r.dim for r in reps)
    mats = []
    for x in range(g.order):
        m = [[0] * d for _ in range(d)]
        off = 0
        for r in reps:
            mx = r.matrix(x)
            for i in range(r.dim):
                for j in range(r.dim):
                    m[off + i][off + j] = mx[i][j]
            off += r.dim
        mats.append(m)
    return Representation(g, d, lcm(*(r.level for r in reps)), mats=mats,
                          name="+".join(r.name for r in reps))


# -- characters and predicates ---------------------------------------------------------

def inner_product(chi, psi, group):
    total = 0
    for a, b in zip(chi, psi):
        if isinstance(b, CyclotomicNum):
            b = b.conjugate()
        total = total + a * b
    return canon_coeff(Fraction(1, group.order) * total if not isinstance(total, CyclotomicNum)
                       else total * Fraction(1, group.order))


def is_irreducible(rho):
    chi = rho.character()
    return inner_product(chi, chi, rho.group) == 1


def is_faithful(rho):
    ident = _identity(rho.dim)
    g = rho.group
    for x in range(g.order):
        if x == g.identity:
            continue
        if rho.perms is not None:
            if rho.perms[x] == list(range(rho.dim)):
                return False
        elif _mat_key(rho.mats[x]) == _mat_key(ident):
            return False
    return True


def _subgroup_gens(g, elems):
    gens, cur = [], {g.identity}
    for x in sorted(elems):
        if x not in cur:
            gens.append(x)
            cur = set(subgroup_generated(g, gens).elements)
    return gens


def fixed_subspace(rho, n):
    """Vectors fixed by every element of the normal subgroup n: (dim, basis)."""
    g = rho.group
    if not is_normal(g, n):
        raise ValueError("subgroup is not normal")
    rows = []
    for x in _subgroup_gens(g, n.elements):
        m = rho.matrix(x)
        for i in range(rho.dim):
            rows.append([canon_coeff(m[i][j] - (1 if i == j else 0)) for j in range(rho.dim)])
    basis = nullspace(rows, rho.dim)
    return len(basis), basis


def charpoly(rho, g):
    if rho.perms is not None:
        perm, seen, out = rho.perms[g], set(), LaurentPoly.const(1)
        t = LaurentPoly.t()
        for x in range(rho.dim):
            if x in seen:
                continue
            k, y = 0, x
            while y not in seen:
                seen.add(y)
                y = perm[y]
                k += 1
            out = out * (t ** k - 1)
        return out
    m = rho.matrix(g)
    t = LaurentPoly.t()
    mat = [[(t if i == j else LaurentPoly()) - LaurentPoly.const(m[i][j]) for j in range(rho.dim)]
           for i in range(rho.dim)]
    return poly_matrix_det(mat)


def eigenvalue_orders(rho, g):
    """Orders of the eigenvalues of rho(g), with multiplicity, in increasing order."""
    d = rho.group.element_order(g)
    cp = charpoly(rho, g)
    out = []
    for n in range(1, d + 1):
        if d % n:
            continue
        phi = cyclotomic_poly(n)
        while True:
            f = poly_gcd(cp, phi)
            if f.degree() <= 0:
                break
            out.extend([n] * f.degree())
            cp = cp.exact_div(f)
    assert len(out) == rho.dim
    return out


def character_table_check(reps):
    """Gram matrix of characters (should be the identity for distinct irreducibles)."""
    g = reps[0].group
    chars = [r.character() for r in reps]
    return [[inner_product(a, b, g) for b in chars] for a in chars]
