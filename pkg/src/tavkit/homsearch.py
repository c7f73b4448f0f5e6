"""Homomorphisms from finitely presented groups to finite groups: depth-first
search with relator propagation, and the Hurwitz action of braids on tuples."""

from dataclasses import dataclass, field
from itertools import product

from .fingroup import conjugacy_classes, normal_closure, subgroup_generated
from .fpgroup import verify_hom, word_eval


class SearchCapExceeded(RuntimeError):
    pass


@dataclass
class Hom:
    presentation: object
    target: object
    images: list
    valid: bool = True
    surjective: bool = False

    def to_json(self):
        return {"images": list(self.images), "valid": self.valid, "surjective": self.surjective}


def make_hom(p, g, images):
    images = list(images)
    ok = verify_hom(p, g, images)
    onto = ok and subgroup_generated(g, images).order == g.order
    return Hom(p, g, images, ok, onto)


# -- Hurwitz action --------------------------------------------------------------------

def hurwitz_act(g, letter, tup):
    i = abs(letter) - 1
    if letter == 0 or i + 1 >= len(tup):
        raise ValueError(f"braid letter {letter} out of range for {len(tup)} strands")
    t = list(tup)
    a, b = t[i], t[i + 1]
    if letter > 0:
        t[i], t[i + 1] = g.conj(b, a), a
    else:
        t[i], t[i + 1] = b, g.conj(a, g.inv(b))
    return tuple(t)


def hurwitz_braid(g, braid, tup):
    for x in braid.letters:
        tup = hurwitz_act(g, x, tup)
    return tup


def hurwitz_fixed_tuples(braid, g, cap=10 ** 8):
    n = braid.strands
    if g.order ** n > cap:
        raise SearchCapExceeded(f"|G|^n = {g.order ** n} exceeds the cap {cap}; use wirtinger_homs")
    return [t for t in product(range(g.order), repeat=n) if hurwitz_braid(g, braid, t) == t]


# -- DFS with propagation -----------------------------------------------------------------

class _Search:
    def __init__(self, p, g, allowed, cap):
        self.p, self.g, self.cap = p, g, cap
        self.allowed = allowed
        self.nodes = 0
        self.rels = [list(r) for r in p.relators]
        self.gens_in = [sorted({abs(x) - 1 for x in r}) for r in self.rels]
        self.watch = [[] for _ in range(p.ngens)]
        for k, gs in enumerate(self.gens_in):
            for x in gs:
                self.watch[x].append(k)
        self.allowed_set = set(allowed)

    def _eval(self, letters, img):
        g = self.g
        rows, inv = g.rows, g.inverse
        out = g.identity
        for x in letters:
            a = img[abs(x) - 1]
            out = rows[out][a if x > 0 else inv[a]]
        return out

    def propagate(self, img, changed):
        """Check relators and solve forced generators; returns the list of newly
        assigned generators or None on contradiction."""
        g = self.g
        assigned = []
        queue = list(changed)
        while queue:
            x = queue.pop()
            for k in self.watch[x]:
                r = self.rels[k]
                free = [y for y in self.gens_in[k] if img[y] is None]
                if not free:
                    if self._eval(r, img) != g.identity:
                        return self._undo(img, assigned)
                    continue
                if len(free) > 1:
                    continue
                y = free[0]
                pos = [i for i, c in enumerate(r) if abs(c) - 1 == y]
                if len(pos) != 1:
                    continue
                i = pos[0]
                u = self._eval(r[:i], img)
                v = self._eval(r[i + 1:], img)
                val = g.inv(g.mul(v, u))          # x^e = u^-1 v^-1
                if r[i] < 0:
                    val = g.inv(val)
                if val not in self.allowed_set:
                    return self._undo(img, assigned)
                img[y] = val
                assigned.append(y)
                queue.append(y)
        return assigned

    @staticmethod
    def _undo(img, assigned):
        for y in assigned:
            img[y] = None
        return None

    def pick(self, img):
        best, score = None, None
        for y in range(self.p.ngens):
            if img[y] is not None:
                continue
            s = sum(1 for k in self.watch[y]
                    if sum(1 for z in self.gens_in[k] if img[z] is None) == 2)
            if score is None or s > score:
                best, score = y, s
        return best

    def run(self, img, out):
        self.nodes += 1
        if self.nodes > self.cap:
            raise SearchCapExceeded(f"search exceeded {self.cap} nodes")
        y = self.pick(img)
        if y is None:
            out.append(list(img))
            return
        for a in self.allowed:
            img[y] = a
            got = self.propagate(img, [y])
            if got is not None:
                self.run(img, out)
                for z in got:
                    img[z] = None
            img[y] = None


def wirtinger_homs(p, g, meridian_image=None, subgroup=None, epi=False, cap=10 ** 7,
                   modulo_conjugacy=False, first=None):
    """All homs P -> G meeting the constraints, in deterministic order.

    ``first`` is the generator whose image is fixed or restricted (defaults to
    the meridian when it is a single generator, else generator 0).  With
    ``modulo_conjugacy`` that image ranges over conjugacy-class representatives
    only, so every conjugacy class of homs appears at least once.
    """
    allowed = sorted(subgroup) if subgroup is not None else list(range(g.order))
    if first is None:
        m = p.marks.get("meridian")
        first = abs(m[0]) - 1 if m is not None and len(m) == 1 else 0
    if p.ngens == 0:
        return [Hom(p, g, [], True, g.order == 1)] if not epi or g.order == 1 else []
    if meridian_image is not None:
        firsts = [meridian_image]
    elif modulo_conjugacy:
        firsts = [cls[0] for cls in conjugacy_classes(g) if cls[0] in set(allowed)]
    else:
        firsts = allowed
    if epi and meridian_image is None and "meridian" in p.marks:
        firsts = [a for a in firsts if normal_closure(g, [a]).order == g.order]
    s = _Search(p, g, allowed, cap)
    raw = []
    for a in firsts:
        img = [None] * p.ngens
        img[first] = a
        got = s.propagate(img, [first])
        if got is None:
            continue
        s.run(img, raw)
    out = []
    for images in raw:
        h = make_hom(p, g, images)
        assert h.valid
        if epi and not h.surjective:
            continue
        out.append(h)
    return out


def transport_hom(braid, hom, k):
    """Reuse the bottom tuple of a hom of closure(b) for closure(b^k)."""
    from .knots import braid_closure_presentation, braid_power, quotient_hom_data
    bk = braid_power(braid, k)
    images = quotient_hom_data(braid, k, hom.target, hom.images)
    if images is None:
        raise ValueError("tuple is not fixed by the braid")
    return make_hom(braid_closure_presentation(bk), hom.target, images)
