"""Twisted Alexander polynomials through Fox calculus, with vanishing certificates.

Conventions: V is a space of column vectors and G acts on the left, so a group
element g contributes Phi(g) = rho(f(g)) t^phi(g).  A derivation d satisfies
d(uv) = d(u) + Phi(u) d(v); its values on the generators form a kernel vector of
the Fox matrix, whose block (i, j) is Phi applied to the derivative of r_i by x_j.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .exact import (LaurentPoly, CyclotomicNum, _is_zero, canon_coeff, check_rank_witness,
                    cyclotomic_poly, field_rref, full_rank_witness, nullspace,
                    poly_matrix_det, poly_matrix_kernel)
from .fingroup import (conjugacy_class, cyclic, derived_subgroup, normal_closure,
                       subgroup_generated, symmetric)
from .fpgroup import (Presentation, Word, abelianization, knot_phi, phi_of, tietze_simplify,
                      verify_hom, word_eval)
from .reps import eigenvalue_orders, is_faithful, regular_rep, trivial_rep
from . import _modp


def _lp(x):
    return LaurentPoly._wrap(x)


def _units_equal(a, b):
    """Equality up to units of the coefficient ring (c t^k, c a nonzero scalar)."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.monic() == b.monic()


def _unit_normal(p, over_field=False):
    """Units are +-t^k over Z and c t^k over a cyclotomic field."""
    if p.is_zero():
        return p
    if over_field or any(isinstance(c, CyclotomicNum) for c in p.coeffs.values()):
        return p.monic()
    return p.normalize()


# -- the twisted setting -------------------------------------------------------------

class Twist:
    """A presentation with a hom to a finite group, a representation and phi."""

    def __init__(self, pres, group, images, rep, phi=None):
        images = list(images)
        if len(images) != pres.ngens:
            raise ValueError("need one image per generator")
        if not verify_hom(pres, group, images):
            raise ValueError("images do not define a homomorphism")
        if rep.group is not group and rep.group.order != group.order:
            raise ValueError("representation is for a different group")
        self.pres = pres
        self.group = group
        self.images = images
        self.rep = rep
        self.d = rep.dim
        self.phi = list(phi) if phi is not None else knot_phi(pres)
        self.over_field = rep.perms is None and rep.level > 1

    def fox_terms(self, word):
        """Evaluated Fox derivatives of word: {generator: {(g, k): coefficient}}."""
        g = self.group
        rows, inv = g.rows, g.inverse
        out = {}
        pg, pk = g.identity, 0
        for x in word:
            j = abs(x) - 1
            a = self.images[j]
            if x > 0:
                d = out.setdefault(j, {})
                d[(pg, pk)] = d.get((pg, pk), 0) + 1
                pg, pk = rows[pg][a], pk + self.phi[j]
            else:
                pg, pk = rows[pg][inv[a]], pk - self.phi[j]
                d = out.setdefault(j, {})
                d[(pg, pk)] = d.get((pg, pk), 0) - 1
        return out

    def act(self, g, k, vec):
        """Phi(g) t^k applied to a vector of Laurent polynomials."""
        out = [LaurentPoly() for _ in range(self.d)]
        for r, c, v in self.rep.entries(g):
            x = vec[c]
            if not x.is_zero():
                out[r] = out[r] + x.scale(v)
        return [x.shift(k) if k else x for x in out]

    def derive(self, word, vectors):
        """Value of the derivation with generator values ``vectors`` on word."""
        g = self.group
        rows, inv = g.rows, g.inverse
        acc = [LaurentPoly() for _ in range(self.d)]
        pg, pk = g.identity, 0
        for x in word:
            j = abs(x) - 1
            a = self.images[j]
            if x > 0:
                acc = [u + w for u, w in zip(acc, self.act(pg, pk, vectors[j]))]
                pg, pk = rows[pg][a], pk + self.phi[j]
            else:
                pg, pk = rows[pg][inv[a]], pk - self.phi[j]
                acc = [u - w for u, w in zip(acc, self.act(pg, pk, vectors[j]))]
        return acc

    def matrix(self):
        p, d = self.pres, self.d
        cells = [[{} for _ in range(d * p.ngens)] for _ in range(d * len(p.relators))]
        for i, r in enumerate(p.relators):
            for j, terms in self.fox_terms(r).items():
                for (g, k), c in terms.items():
                    if c == 0:
                        continue
                    for a, b, v in self.rep.entries(g):
                        cell = cells[i * d + a][j * d + b]
                        cell[k] = cell.get(k, 0) + c * v
        return [[LaurentPoly(c) for c in row] for row in cells]

    def scalar(self, g):
        return self.rep.matrix(g)

    def column_denominator(self, j):
        """det(rho(f(x_j)) t^phi_j - I)."""
        e = self.phi[j]
        g = self.images[j]
        rep = self.rep
        if rep.perms is not None:
            out = LaurentPoly.const(1)
            perm, seen = rep.perms[g], set()
            for x in range(self.d):
                if x in seen:
                    continue
                n, y = 0, x
                while y not in seen:
                    seen.add(y)
                    y = perm[y]
                    n += 1
                out = out * (LaurentPoly.monomial(e * n) - 1)
            return _unit_normal(out)
        m = rep.matrix(g)
        mat = [[LaurentPoly.monomial(e, m[a][b]) - (1 if a == b else 0) for b in range(self.d)]
               for a in range(self.d)]
        return _unit_normal(poly_matrix_det(mat), self.over_field)


def twist_matrix(pres, group, images, rep, phi=None):
    """Fox matrix with block (i, j) = Phi(d r_i / d x_j); (d*#relators) x (d*#gens)."""
    return Twist(pres, group, images, rep, phi).matrix()


# -- certificates ------------------------------------------------------------------------

@dataclass
class DerivationCertificate:
    vectors: list               # per generator, a list of d Laurent polynomials
    meridian_zero: bool = True

    def verify(self, pres, group, images, rep, phi=None):
        tw = Twist(pres, group, images, rep, phi)
        if len(self.vectors) != pres.ngens or any(len(v) != tw.d for v in self.vectors):
            return False
        if all(x.is_zero() for v in self.vectors for x in v):
            return False
        for r in pres.relators:
            if not all(x.is_zero() for x in tw.derive(r, self.vectors)):
                return False
        if self.meridian_zero:
            m = pres.marks.get("meridian")
            if m is None or not all(x.is_zero() for x in tw.derive(m, self.vectors)):
                return False
        return True

    def value(self, pres, group, images, rep, word, phi=None):
        return Twist(pres, group, images, rep, phi).derive(word, self.vectors)

    def to_json(self):
        return {"kind": "derivation", "meridian_zero": self.meridian_zero,
                "vectors": [[x.to_json() for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, obj):
        return cls([[LaurentPoly.from_json(x) for x in v] for v in obj["vectors"]],
                   bool(obj.get("meridian_zero", True)))


@dataclass
class NonzeroWitness:
    """The square numerator matrix is invertible mod ``prime`` at t = ``t``."""
    t: int
    prime: int
    root: int
    rows: list
    column_removed: int

    def verify(self, pres, group, images, rep, phi=None):
        a = _square(Twist(pres, group, images, rep, phi), self.column_removed)
        return check_rank_witness(a, {"t": self.t, "prime": self.prime, "root": self.root,
                                      "rows": self.rows})

    def to_json(self):
        return {"kind": "nonzero", "t": self.t, "prime": self.prime, "root": self.root,
                "rows": list(self.rows), "column_removed": self.column_removed}


def _square(tw, j):
    m = tw.matrix()
    d = tw.d
    return [row[:j * d] + row[(j + 1) * d:] for row in m]


# -- results ------------------------------------------------------------------------------

@dataclass
class TwistedResult:
    numerator: object           # LaurentPoly, or None when not computed
    denominator: LaurentPoly
    column_removed: int
    vanished: bool
    certificate: object = None
    witness: object = None
    h0_order: object = None
    presentation: object = field(default=None, repr=False)
    over_field: bool = False
    images: list = field(default=None, repr=False)
    phi: list = field(default=None, repr=False)

    @property
    def polynomial(self):
        """Order of the twisted H_1: numerator * h0_order / denominator."""
        if self.vanished:
            return LaurentPoly()
        if self.numerator is None or self.h0_order is None:
            return None
        q, r = (self.numerator * self.h0_order).divmod(self.denominator)
        return _unit_normal(q, self.over_field) if r.is_zero() else None

    def wada(self):
        """numerator / denominator when the division is exact, else None."""
        if self.vanished:
            return LaurentPoly()
        if self.numerator is None:
            return None
        q, r = self.numerator.divmod(self.denominator)
        return _unit_normal(q, self.over_field) if r.is_zero() else None

    def to_json(self):
        out = {"vanished": self.vanished, "column_removed": self.column_removed,
               "denominator": self.denominator.to_json(),
               "numerator": None if self.numerator is None else self.numerator.to_json()}
        h1 = self.polynomial
        out["polynomial"] = None if h1 is None else h1.to_json()
        out["h0_order"] = None if self.h0_order is None else self.h0_order.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _meridian_index(pres):
    m = pres.marks.get("meridian")
    if m is not None and len(m) == 1 and m[0] > 0:
        return m[0] - 1
    return None


def _pick_column(tw):
    j = _meridian_index(tw.pres)
    if j is not None and tw.phi[j] != 0:
        return j
    cands = [(abs(e), i) for i, e in enumerate(tw.phi) if e != 0]
    if not cands:
        raise ValueError("denominator vanishes for all generators")
    return min(cands)[1]


def _charpoly(a):
    n = len(a)
    t = LaurentPoly.t()
    return poly_matrix_det([[(t if i == j else LaurentPoly()) - _lp(a[i][j]) for j in range(n)]
                            for i in range(n)])


def h0_order(tw, j):
    """Order of H_0 = V[t^+-1] / sum_g (Phi(g) - 1), using x_j with phi = +-1 to
    identify V[t^+-1]/(Phi(x_j) - 1) with V, t acting as T = rho(x_j)^(-phi_j)."""
    e = tw.phi[j]
    if abs(e) != 1:
        return None
    d = tw.d
    g = tw.group
    tmat = tw.scalar(g.power(tw.images[j], -e))
    gens = []
    for i, a in enumerate(tw.images):
        ga = tw.scalar(a)
        tk = tw.scalar(g.power(tw.images[j], -e * tw.phi[i]))
        m = _smul(tk, ga)
        gens.extend([[canon_coeff(m[r][c] - (1 if r == c else 0)) for r in range(d)]
                     for c in range(d)])
    span, _ = field_rref(gens, d) if gens else ([], [])
    basis = [list(v) for v in span]
    # close under T
    while True:
        more = [[sum((tmat[r][c] * v[c] for c in range(d) if not _is_zero(tmat[r][c])), 0)
                 for r in range(d)] for v in basis]
        new, _ = field_rref(basis + more, d)
        if len(new) == len(basis):
            break
        basis = [list(v) for v in new]
    # T on the quotient V / S: complete the basis and read off the block
    k = len(basis)
    if k == d:
        return LaurentPoly.const(1)
    piv = field_rref(basis, d)[1] if basis else []
    comp = [c for c in range(d) if c not in piv]
    full = basis + [[int(i == c) for i in range(d)] for c in comp]
    # coordinates of T f_c in the basis `full`
    cols = []
    for c in comp:
        v = [tmat[r][c] for r in range(d)]
        cols.append(_solve(full, v)[k:])
    q = [[cols[b][a] for b in range(len(comp))] for a in range(len(comp))]
    return _unit_normal(_charpoly(q), tw.over_field)


def _smul(a, b):
    from .exact import scalar_matmul
    return scalar_matmul(a, b)


def _solve(basis, v):
    """Coordinates of v in the given basis of the whole space."""
    n = len(v)
    aug = [[basis[c][r] for c in range(n)] + [v[r]] for r in range(n)]
    red, piv = field_rref(aug, n + 1)
    out = [0] * n
    for row, c in zip(red, piv):
        out[c] = row[n]
    return out


def wada_invariant(pres, group, images, rep, phi=None, column=None, numerator=True,
                   certificate=True):
    """Wada's invariant with the column block of one generator removed.

    Vanishing is decided by a modular full-rank witness (nonzero) or by an exact
    kernel vector turned into a derivation and verified along every relator.
    """
    tw = Twist(pres, group, images, rep, phi)
    if pres.deficiency != 1:
        raise ValueError("presentation must have deficiency one")
    j = _pick_column(tw) if column is None else column
    if tw.phi[j] == 0:
        raise ValueError("denominator vanishes for this generator")
    den = tw.column_denominator(j)
    if den.is_zero():
        raise ValueError("denominator vanishes for this generator")
    a = _square(tw, j)
    h0 = h0_order(tw, j)
    w = full_rank_witness(a) if a else {"t": 1, "prime": 2, "root": 0, "rows": []}
    if w is not None:
        num = _unit_normal(poly_matrix_det(a), tw.over_field) if numerator else None
        wit = NonzeroWitness(w["t"], w["prime"], w["root"], w["rows"], j)
        return TwistedResult(num, den, j, False, None, wit, h0, pres, tw.over_field, images, tw.phi)
    ker = poly_matrix_kernel(a)
    if not ker:
        num = poly_matrix_det(a)
        if not num.is_zero():
            return TwistedResult(_unit_normal(num, tw.over_field), den, j, False, None, None, h0,
                                 pres, tw.over_field, images, tw.phi)
        raise ArithmeticError("determinant vanishes but no kernel vector was found")
    cert = None
    if certificate:
        cert = _certificate_from_kernel(tw, j, ker[0])
    return TwistedResult(LaurentPoly(), den, j, True, cert, None, h0, pres, tw.over_field, images, tw.phi)


def _certificate_from_kernel(tw, j, vec):
    d = tw.d
    vectors = []
    pos = 0
    for i in range(tw.pres.ngens):
        if i == j:
            vectors.append([LaurentPoly() for _ in range(d)])
        else:
            vectors.append(list(vec[pos:pos + d]))
            pos += d
    cert = DerivationCertificate(vectors, meridian_zero=_meridian_index(tw.pres) == j)
    if not cert.verify(tw.pres, tw.group, tw.images, tw.rep, tw.phi):
        raise ArithmeticError("kernel vector failed symbolic verification")
    return cert


def vanishing_certificate(pres, group, images, rep, phi=None):
    """A DerivationCertificate with d(meridian) = 0, or a NonzeroWitness."""
    r = wada_invariant(pres, group, images, rep, phi, column=_meridian_index(pres),
                       numerator=False)
    return r.certificate if r.vanished else r.witness


# -- the full pipeline: meridian generator, simplification, invariant ---------------------

def with_meridian_generator(pres, images=None):
    """Ensure the meridian mark is a single generator, adding one if needed."""
    m = pres.marks.get("meridian")
    if m is None:
        raise ValueError("presentation has no meridian mark")
    if _meridian_index(pres) is not None:
        return pres, images
    n = pres.ngens
    x = Word.gen(n)
    rels = list(pres.relators) + [x.inverse() * m]
    marks = dict(pres.marks)
    marks["meridian"] = x
    out = Presentation(pres.names + ["m"], rels, marks)
    if images is None:
        return out, None
    return out, list(images) + [None]


def _cost(p, phi):
    spans = 0
    for r in p.relators:
        s = lo = hi = 0
        for x in r:
            s += phi[abs(x) - 1] * (1 if x > 0 else -1)
            lo, hi = min(lo, s), max(hi, s)
        spans += hi - lo
    n = max(p.ngens - 1, 1)
    return n ** 3 * (spans + 1) + sum(len(r) for r in p.relators)


def simplify_for_twist(pres, phi=None, caps=(100, 200, 400, 800, 1600, 3200)):
    """Tietze simplification keeping the meridian, with the total relator length
    capped; the cap giving the cheapest Fox matrix wins."""
    keep = [_meridian_index(pres)]
    best = None
    for cap in caps:
        tz = tietze_simplify(pres, keep=keep, max_len=cap)
        ph = knot_phi(tz.pres) if phi is None else [phi_of(phi, w) for w in tz.back]
        c = _cost(tz.pres, ph)
        if best is None or c < best[0]:
            best = (c, tz, ph)
    return best[1], best[2]


def twisted_alexander(pres, group, images, rep, phi=None, simplify=True, numerator=True,
                      certificate=True):
    """Wada's invariant of (pres, f, rho) after normalizing the meridian and
    simplifying; a vanishing certificate is transported back to ``pres``."""
    p2, imgs = with_meridian_generator(pres, images)
    if imgs is not None and imgs[-1] is None and len(imgs) > len(images):
        imgs[-1] = word_eval(group, pres.marks["meridian"], images)
    ph2 = None
    if phi is not None:
        ph2 = list(phi) + ([phi_of(phi, pres.marks["meridian"])] if p2 is not pres else [])
    if not simplify:
        return wada_invariant(p2, group, imgs, rep, ph2, numerator=numerator,
                              certificate=certificate)
    tz, ph = simplify_for_twist(p2, ph2)
    new_images = tz.map_images(imgs)
    res = wada_invariant(tz.pres, group, new_images, rep, ph, column=_meridian_index(tz.pres),
                         numerator=numerator, certificate=certificate)
    if res.certificate is not None:
        tw = Twist(tz.pres, group, new_images, rep, ph)
        vectors = [tw.derive(w, res.certificate.vectors) for w in tz.forth[:pres.ngens]]
        cert = DerivationCertificate(vectors, True)
        if not cert.verify(pres, group, images, rep, phi):
            raise ArithmeticError("transported certificate failed verification")
        res.certificate = cert
    return res


def alexander_polynomial(pres):
    g = cyclic(1)
    r = twisted_alexander(pres, g, [g.identity] * pres.ngens, trivial_rep(g))
    return r.polynomial


# -- satellites -------------------------------------------------------------------------

def satellite_vanishing(base, companion, d, factored=True, lk=0):
    """Vanishing verdict for K(alpha, J) from the base invariant and Delta_J.

    ``base`` is (presentation, group, images, rep) for the pattern knot K and the
    hom f_0; ``d`` is the order of the cyclic image of G(J).
    """
    if lk != 0:
        raise ValueError("nonzero linking number: use satellite_vanishing_linked")
    if not factored:
        return True
    pres, group, images, rep = base
    if twisted_alexander(pres, group, images, rep, numerator=False).vanished:
        return True
    return cyclotomic_poly(d).divides(alexander_polynomial(companion))


def satellite_vanishing_linked(link, companion):
    """Disjunction for lk(K, alpha) != 0: the twisted invariant of K u alpha or of J
    vanishes.  Both arguments are (presentation, group, images, rep, phi)."""
    out = []
    for pres, group, images, rep, phi in (link, companion):
        r = wada_invariant(pres, group, images, rep, phi, numerator=False)
        out.append(r.vanished)
    return out[0] or out[1]


def _conjugator(group, a, b):
    """Some c with c a c^-1 = b, or None."""
    for c in range(group.order):
        if group.conj(a, c) == b:
            return c
    return None


def _place_alpha(base_pd, group, images, target):
    """PatternLink with f_0(lambda_alpha) = target, conjugating f_0 if needed."""
    from .knots import choose_alpha
    for h in conjugacy_class(group, target):
        try:
            link, img = choose_alpha(base_pd, group, images, want=h)
        except ValueError:
            continue
        c = _conjugator(group, img, target)
        new = [group.conj(x, c) for x in images]
        return link, new
    raise ValueError("alpha placement failed")


def _glue_images(sat, group, base_images, companion_images=None):
    from .knots import collapse_pattern
    imgs = collapse_pattern(sat)
    out = [word_eval(group, w, base_images) for w in imgs]
    if companion_images is not None:
        n = sat.meta["link_gens"]
        out[n:] = list(companion_images)
    return out


def construct_vanishing_pair_cyclic(group, rep, g, base_pd, base_images):
    """Satellite of the base knot with a torus knot T(p, q), pq = order of g, and
    the glued epimorphism; returns (presentation, Hom, certificate)."""
    from .homsearch import make_hom
    from .knots import satellite_glue, torus_presentation
    from .exact import factorize
    if g not in derived_subgroup(group):
        raise ValueError("g is not in the derived subgroup")
    f = factorize(group.element_order(g))
    if len(f) != 2 or any(e != 1 for e in f.values()):
        raise ValueError("order of g is not a product of two distinct primes")
    p, q = sorted(f)
    if p * q not in eigenvalue_orders(rep, g):
        raise ValueError(f"rho(g) has no primitive {p * q}-th root of unity as eigenvalue")
    if subgroup_generated(group, base_images).order != group.order:
        raise ValueError("base hom is not surjective")
    link, imgs0 = _place_alpha(base_pd, group, base_images, g)
    sat = satellite_glue(link, torus_presentation(p, q))
    images = _glue_images(sat, group, imgs0)
    hom = make_hom(sat, group, images)
    if not (hom.valid and hom.surjective):
        raise ArithmeticError("glued hom is not an epimorphism")
    res = twisted_alexander(sat, group, images, rep, numerator=False)
    if not res.vanished:
        raise ArithmeticError("constructed pair does not vanish")
    return sat, hom, res.certificate


def _subgroup_normal_closure(group, h_elems, x):
    hs = set(h_elems)
    gens = {group.conj(x, c) for c in hs}
    return set(subgroup_generated(group, list(gens)).elements)


def construct_vanishing_pair_weight(group, rep, subgroup, h, base_pd, base_images,
                                    companion, companion_images):
    """Satellite with a companion J whose hom onto the subgroup H sends the meridian
    to h and the longitude to e; the certificate is the explicit coboundary
    d(u) = (Phi(u) - 1) v on the J side and zero on the pattern side."""
    from .homsearch import make_hom
    from .knots import satellite_glue
    hs = set(subgroup.elements) if hasattr(subgroup, "elements") else set(subgroup)
    if not is_faithful(rep):
        raise ValueError("representation is not faithful")
    if not hs <= set(derived_subgroup(group).elements):
        raise ValueError("H is not contained in the derived subgroup")
    if all(group.mul(a, b) == group.mul(b, a) for a in hs for b in hs):
        raise ValueError("H is commutative")
    if h not in hs or _subgroup_normal_closure(group, hs, h) != hs:
        raise ValueError("h is not a weight element of H")
    if 1 not in eigenvalue_orders(rep, h):
        raise ValueError("rho(h) does not have eigenvalue 1")
    jimg = list(companion_images)
    if not verify_hom(companion, group, jimg):
        raise ValueError("companion images do not define a homomorphism")
    if set(subgroup_generated(group, jimg).elements) != hs:
        raise ValueError("companion hom is not onto H")
    if word_eval(group, companion.marks["meridian"], jimg) != h:
        raise ValueError("companion meridian does not map to h")
    if word_eval(group, companion.marks["longitude"], jimg) != group.identity:
        raise ValueError("companion longitude does not map to e")
    d = rep.dim
    mh = rep.matrix(h)
    fix = nullspace([[canon_coeff(mh[r][c] - (1 if r == c else 0)) for c in range(d)]
                     for r in range(d)], d)
    v0 = None
    for h2 in sorted({group.conj(h, c) for c in hs} - {h}):
        m2 = rep.matrix(h2)
        for v in fix:
            img = [sum((m2[r][c] * v[c] for c in range(d)), 0) for r in range(d)]
            if any(not _is_zero(canon_coeff(a - b)) for a, b in zip(img, v)):
                v0 = v
                break
        if v0 is not None:
            break
    if v0 is None:
        raise ValueError("faithfulness insufficient on eigenspace")
    if subgroup_generated(group, base_images).order != group.order:
        raise ValueError("base hom is not surjective")
    link, imgs0 = _place_alpha(base_pd, group, base_images, h)
    sat = satellite_glue(link, companion)
    images = _glue_images(sat, group, imgs0, jimg)
    hom = make_hom(sat, group, images)
    if not (hom.valid and hom.surjective):
        raise ArithmeticError("glued hom is not an epimorphism")
    tw = Twist(sat, group, images, rep)
    n = sat.meta["link_gens"]
    vec = [_lp(x) for x in v0]
    vectors = [[LaurentPoly() for _ in range(d)] for _ in range(n)]
    for i in range(n, sat.ngens):
        w = tw.act(images[i], tw.phi[i], vec)
        vectors.append([a - b for a, b in zip(w, vec)])
    cert = DerivationCertificate(vectors, True)
    if not cert.verify(sat, group, images, rep):
        raise ArithmeticError("explicit derivation failed verification")
    return sat, hom, cert


# -- TAV order search ---------------------------------------------------------------------

def _stratum_groups(n, catalog):
    """(groups, status, reason) for the TAV groups of order n."""
    from .census import enumerate_squarefree, stratum_status, tav_filter
    from .fingroup import from_spec, is_tav
    count, reason = stratum_status(n)
    supplied = [g for g in catalog if g.order == n] if catalog else []
    if count == 0:
        return [], "complete", reason
    if reason == "square-free":
        gs = [from_spec(x.group_spec()) for x in tav_filter(enumerate_squarefree(n))]
        return gs, "complete", reason
    if reason == "p^3 q" and n == 24:
        return [symmetric(4)], "complete", reason
    tav = [g for g in supplied if is_tav(g)]
    return tav, "unverified", reason if count is None else f"{reason}: {count} expected"


def _regular_test(args):
    pres, group, images, rep = args
    return twisted_alexander(pres, group, images, rep, numerator=False, certificate=True)


def tav_order_search(pres, max_order, catalog=None, cap=10 ** 7, threads=None):
    """Smallest order of a TAV group of the knot among orders <= max_order."""
    from .homsearch import SearchCapExceeded, wirtinger_homs
    threads = threads or _modp.thread_count()
    report = {"strata": [], "order": None, "witness": None, "partial": False,
              "lower_bound_certified": True}
    for n in range(2, max_order + 1):
        groups, status, reason = _stratum_groups(n, catalog)
        entry = {"order": n, "status": status, "reason": reason, "groups": []}
        if status != "complete":
            report["lower_bound_certified"] = False
        found = None
        for g in groups:
            rec = {"group": g.name, "epimorphisms": 0, "vanishing": False}
            try:
                homs = wirtinger_homs(pres, g, epi=True, cap=cap, modulo_conjugacy=True)
            except SearchCapExceeded:
                rec["capped"] = True
                report["partial"] = True
                report["lower_bound_certified"] = False
                entry["groups"].append(rec)
                continue
            rec["epimorphisms"] = len(homs)
            rep = regular_rep(g)
            jobs = [(pres, g, h.images, rep) for h in homs]
            with ThreadPoolExecutor(threads) as pool:
                results = list(pool.map(_regular_test, jobs))
            for h, r in zip(homs, results):
                if r.vanished:
                    rec["vanishing"] = True
                    if found is None:
                        found = {"group": g.name, "order": n, "images": list(h.images),
                                 "certificate_verified": r.certificate is not None}
            entry["groups"].append(rec)
        if groups or status != "complete" or reason not in ("prime power",):
            report["strata"].append(entry)
        if found is not None:
            report["order"] = n
            report["witness"] = found
            break
    return report


def braid_power_divisibility_check(b, k, group, images, rep=None):
    """Does the invariant of closure(b) divide that of closure(b^k) for the
    transported hom?"""
    from .knots import braid_closure_presentation, braid_power, quotient_hom_data
    rep = rep or regular_rep(group)
    p1 = braid_closure_presentation(b)
    pk = braid_closure_presentation(braid_power(b, k))
    imgs_k = quotient_hom_data(b, k, group, images)
    if imgs_k is None:
        raise ValueError("hom does not transport to the braid power")
    d1 = twisted_alexander(p1, group, images, rep).polynomial
    dk = twisted_alexander(pk, group, imgs_k, rep).polynomial
    if d1 is None or dk is None:
        raise ArithmeticError("H_1 order not available")
    return d1.divides(dk)
