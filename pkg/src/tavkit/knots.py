"""Knot and link groups from braids and planar diagrams, peripheral words, the
encircling loop alpha, torus knots, satellite gluing and the collapse map psi.

Diagram conventions.  A crossing is stored oriented: under-strand in/out edges,
over-strand in/out edges and a sign.  Its PD 4-tuple lists the edges
counterclockwise starting from the incoming under edge, so the under strand runs
a -> c; for a positive crossing the over strand runs d -> b, for a negative one
b -> d.  The Wirtinger relation at a crossing with over generator o reads
    x_out = o^s x_in o^-s,   s = sign.
With braids drawn upward, sigma_i (strand i+1 passing under strand i) is a
positive crossing, which makes the relation agree with the Hurwitz action.
"""

from dataclasses import dataclass
from math import gcd
import json

from .fpgroup import Presentation, Word, abelianization, gen_names, phi_of, word_eval


@dataclass(frozen=True)
class Crossing:
    ui: int
    uo: int
    oi: int
    oo: int
    sign: int

    def pd(self):
        if self.sign > 0:
            return (self.ui, self.oo, self.uo, self.oi)
        return (self.ui, self.oi, self.uo, self.oo)

    @classmethod
    def from_pd(cls, t, sign):
        a, b, c, d = t
        if sign > 0:
            return cls(a, c, d, b, 1)
        if sign < 0:
            return cls(a, c, b, d, -1)
        raise ValueError("crossing sign must be +1 or -1")

    def relabel(self, f):
        return Crossing(f(self.ui), f(self.uo), f(self.oi), f(self.oo), self.sign)


class BraidWord:
    def __init__(self, strands, letters):
        self.strands = int(strands)
        self.letters = [int(x) for x in letters]
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"braid letter {x} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text, strands):
        return cls(strands, text.replace(",", " ").split())

    def __mul__(self, other):
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return BraidWord(self.strands, [-x for x in reversed(self.letters)]) ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def permutation(self):
        """perm[i] = final position of the strand starting at position i (0-based)."""
        pos = list(range(self.strands))       # pos[p] = strand now at position p
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for p, s in enumerate(pos):
            perm[s] = p
        return perm

    def components(self):
        perm = self.permutation()
        seen, out = set(), []
        for i in range(self.strands):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = perm[j]
            out.append(cyc)
        return out

    def is_knot(self):
        return len(self.components()) == 1

    def __repr__(self):
        return f"BraidWord({self.strands}, {self.letters})"


def braid_power(b, k):
    out = b ** k
    if not out.is_knot():
        raise ValueError("closure is a link")
    return out


class PDCode:
    """Oriented planar diagram.  ``loops`` are crossingless components; ``levels``
    optionally records horizontal slices as left-to-right (edge, direction) lists
    with direction +1 for upward and -1 for downward strands."""

    def __init__(self, crossings, loops=(), levels=None, origin=None):
        self.crossings = list(crossings)
        self.loops = list(loops)
        self.levels = levels
        self.origin = origin or {}
        self._validate()
        self._walk()

    def _validate(self):
        ins, outs = {}, {}
        for k, c in enumerate(self.crossings):
            for e in (c.ui, c.oi):
                ins.setdefault(e, []).append(k)
            for e in (c.uo, c.oo):
                outs.setdefault(e, []).append(k)
        edges = set(ins) | set(outs)
        for e in edges:
            ni, no = len(ins.get(e, [])), len(outs.get(e, []))
            if ni != 1 or no != 1:
                raise ValueError(f"malformed code: edge {e} enters {ni} and leaves {no} crossings")
        for e in self.loops:
            if e in edges:
                raise ValueError(f"malformed code: loop edge {e} also meets a crossing")
        self._head = {e: ins[e][0] for e in ins}     # crossing the edge runs into
        self.edges = sorted(edges) + list(self.loops)

    def _walk(self):
        comps, seen = [], set()
        for e0 in sorted(self._head) + self.loops:
            if e0 in seen:
                continue
            comp, e = [], e0
            while e not in seen:
                seen.add(e)
                comp.append(e)
                if e in self.loops:
                    break
                c = self.crossings[self._head[e]]
                e = c.uo if e == c.ui else c.oo
            comps.append(comp)
        self.components = comps
        self.component_of = {e: i for i, comp in enumerate(comps) for e in comp}

    def next_edge(self, e):
        c = self.crossings[self._head[e]]
        return (c.uo if e == c.ui else c.oo), c

    def to_json(self):
        out = {"crossings": [list(c.pd()) + [c.sign] for c in self.crossings]}
        if self.loops:
            out["loops"] = self.loops
        if self.levels is not None:
            out["levels"] = [[[e, d] for e, d in lev] for lev in self.levels]
        if self.origin:
            out["origin"] = {"base_edge": {str(k): v for k, v in self.origin["base_edge"].items()},
                             "alpha_edges": list(self.origin["alpha_edges"])}
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, list):
            obj = {"crossings": obj}
        xs = []
        signs = obj.get("signs")
        for k, row in enumerate(obj["crossings"]):
            if len(row) == 5:
                xs.append(Crossing.from_pd(row[:4], row[4]))
            elif len(row) == 4 and signs is not None:
                xs.append(Crossing.from_pd(row, signs[k]))
            else:
                raise ValueError(f"crossing {k} needs 4 edges and a sign")
        levels = obj.get("levels")
        if levels is not None:
            levels = [[(e, d) for e, d in lev] for lev in levels]
        origin = obj.get("origin")
        if origin:
            origin = {"base_edge": {int(k): v for k, v in origin["base_edge"].items()},
                      "alpha_edges": list(origin["alpha_edges"])}
        return cls(xs, obj.get("loops", ()), levels, origin)

    def linking_number(self, i, j):
        total = 0
        for c in self.crossings:
            a, b = self.component_of[c.ui], self.component_of[c.oi]
            if {a, b} == {i, j} and a != b:
                total += c.sign
        return total // 2

    def writhe(self, comp):
        return sum(c.sign for c in self.crossings
                   if self.component_of[c.ui] == comp and self.component_of[c.oi] == comp)


# -- braid diagrams --------------------------------------------------------------------

def braid_pd(b):
    n = b.strands
    cur = list(range(1, n + 1))
    nxt = n + 1
    raw, levels = [], []

    def level():
        return [(e, 1) for e in cur] + [(j, -1) for j in range(n, 0, -1)]

    levels.append(level())
    for x in b.letters:
        i = abs(x) - 1
        left, right = cur[i], cur[i + 1]
        new_l, new_r = nxt, nxt + 1
        nxt += 2
        if x > 0:
            raw.append(Crossing(right, new_l, left, new_r, 1))
        else:
            raw.append(Crossing(left, new_r, right, new_l, -1))
        cur[i], cur[i + 1] = new_l, new_r
        levels.append(level())
    rename = {cur[j]: j + 1 for j in range(n)}
    f = lambda e: rename.get(e, e)
    xs = [c.relabel(f) for c in raw]
    levels = [[(f(e), d) for e, d in lev] for lev in levels]
    touched = {e for c in xs for e in (c.ui, c.uo, c.oi, c.oo)}
    loops = [j for j in range(1, n + 1) if j not in touched]
    return PDCode(xs, loops, levels)


# -- Wirtinger presentations -------------------------------------------------------------

class Wirtinger:
    """Wirtinger presentation of a diagram with the arc bookkeeping kept."""

    def __init__(self, pd):
        self.pd = pd
        parent = {e: e for e in pd.edges}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for c in pd.crossings:
            parent[find(c.oi)] = find(c.oo)
        arc_of_root, order = {}, []
        for comp in pd.components:
            for e in comp:
                r = find(e)
                if r not in arc_of_root:
                    arc_of_root[r] = len(order)
                    order.append(r)
        self.arc = {e: arc_of_root[find(e)] for e in pd.edges}
        self.narcs = len(order)
        self.arc_edges = [[] for _ in range(self.narcs)]
        for e in pd.edges:
            self.arc_edges[self.arc[e]].append(e)
        self.relators = []
        for c in pd.crossings:
            o, s = self.arc[c.oi] + 1, c.sign
            self.relators.append(Word([o * s, self.arc[c.ui] + 1, -o * s, -(self.arc[c.uo] + 1)]))

    def meridian(self, comp):
        return Word.gen(self.arc[self.pd.components[comp][0]])

    def longitude(self, comp):
        pd = self.pd
        start = pd.components[comp][0]
        if start in pd.loops:
            return Word()
        letters, e = [], start
        while True:
            e2, c = pd.next_edge(e)
            if e == c.ui:
                letters.append((self.arc[c.oi] + 1) * c.sign)
            e = e2
            if e == start:
                break
        w = Word(reversed(letters))
        own = [a for a in range(self.narcs) if pd.component_of[self.arc_edges[a][0]] == comp]
        total = sum(1 if x > 0 else -1 for x in w if abs(x) - 1 in own)
        return w * Word.gen(self.arc[start], -total)

    def presentation(self, drop=None):
        rels = [r for k, r in enumerate(self.relators) if k != drop]
        marks = {}
        for i in range(len(self.pd.components)):
            pre = "" if i == 0 else f"c{i}_"
            marks[pre + "meridian"] = self.meridian(i)
            marks[pre + "longitude"] = self.longitude(i)
        return Presentation(gen_names(self.narcs), rels, marks)


def pd_wirtinger(pd):
    return Wirtinger(pd).presentation()


def longitude_word(pd, component=0):
    return Wirtinger(pd).longitude(component)


def braid_closure_presentation(b, knot=True):
    if knot and not b.is_knot():
        raise ValueError("closure is a link")
    pd = braid_pd(b)
    return knot_presentation(pd) if knot else pd_wirtinger(pd)


def knot_presentation(pd):
    """Deficiency-one Wirtinger presentation (the last crossing relator is a
    consequence of the others for a connected diagram)."""
    w = Wirtinger(pd)
    return w.presentation(drop=len(w.relators) - 1 if w.relators else None)


# -- encircling loop ---------------------------------------------------------------------

def encircle(pd, level, position):
    """Add an unknotted loop alpha around the strands at slots ``position`` and
    ``position + 1`` of ``pd.levels[level]``.  Alpha passes over both strands
    below the level and under both above it."""
    if pd.levels is None:
        raise ValueError("diagram has no level data")
    if not 0 <= level < len(pd.levels):
        raise ValueError("level out of range")
    lev = pd.levels[level]
    if not 0 <= position < len(lev) - 1:
        raise ValueError("position out of range")
    (p, dp), (q, dq) = lev[position], lev[position + 1]
    if dp == dq:
        raise ValueError("nonzero linking: strands are parallel")
    if pd.component_of[p] != pd.component_of[q]:
        raise ValueError("strands belong to different components")
    used = set(pd.edges)
    fresh = max(used, default=0) + 1
    a1, a2, a3, a4 = range(fresh, fresh + 4)
    fresh += 4
    pieces = {}                         # strand -> (e0, e1, e2): below/inside/above in its own direction
    if p == q:
        if p not in pd.loops:
            raise ValueError("both slots show the same edge; pick another level")
        mid, p1, q1 = fresh, fresh + 1, fresh + 2
        fresh += 3
        pieces[0] = (p, p1, mid)
        pieces[1] = (mid, q1, p)
    else:
        for k, e in enumerate((p, q)):
            pieces[k] = (e, fresh, fresh + 1)
            fresh += 2
    # strand k runs upward iff its direction is +1; left strand is k=0
    left_up = dp > 0
    bottom, top = [], []
    for k, up in ((0, left_up), (1, not left_up)):
        e0, e1, e2 = pieces[k]
        below_in, below_out = (e0, e1) if up else (e1, e2)
        above_in, above_out = (e1, e2) if up else (e0, e1)
        sgn = 1 if up else -1          # alpha runs left-to-right below, right-to-left above
        bottom.append((below_in, below_out, sgn))
        top.append((above_in, above_out, sgn))
    # alpha: a1 from bottom-left to bottom-right, a2 up the right side,
    # a3 from top-right to top-left, a4 down the left side
    new = [
        Crossing(bottom[0][0], bottom[0][1], a4, a1, bottom[0][2]),
        Crossing(bottom[1][0], bottom[1][1], a1, a2, bottom[1][2]),
        Crossing(a2, a3, top[1][0], top[1][1], top[1][2]),
        Crossing(a3, a4, top[0][0], top[0][1], top[0][2]),
    ]
    # the original edges keep their tails; their heads now carry the top pieces
    heads = {} if p == q else {pieces[k][0]: pieces[k][2] for k in (0, 1)}
    xs = [Crossing(heads.get(c.ui, c.ui), c.uo, heads.get(c.oi, c.oi), c.oo, c.sign)
          for c in pd.crossings]
    loops = [e for e in pd.loops if e not in (p, q)]
    edge_map = {e: (p if k == 0 else q) for k in (0, 1) for e in pieces[k]}
    origin = {"base_edge": edge_map, "alpha_edges": [a1, a2, a3, a4]}
    out = PDCode(xs + new, loops, None, origin)
    if out.linking_number(out.component_of[p], out.component_of[a1]) != 0:
        raise ValueError("nonzero linking")
    return out


def antiparallel_slots(pd):
    """All (level, position) pairs where encircle applies."""
    out = []
    for li, lev in enumerate(pd.levels or []):
        for k in range(len(lev) - 1):
            (p, dp), (q, dq) = lev[k], lev[k + 1]
            if dp != dq and (p != q or p in pd.loops) and pd.component_of[p] == pd.component_of[q]:
                out.append((li, k))
    return out


class PatternLink:
    """K union alpha with its Wirtinger data and the map back to the diagram of K."""

    def __init__(self, base_pd, link_pd):
        self.base_pd = base_pd
        self.pd = link_pd
        self.base = Wirtinger(base_pd)
        self.wirt = Wirtinger(link_pd)
        a_edges = link_pd.origin["alpha_edges"]
        self.alpha_comp = link_pd.component_of[a_edges[0]]
        self.k_comp = 1 - self.alpha_comp if len(link_pd.components) == 2 else 0
        emap = link_pd.origin["base_edge"]
        self.parent = []            # link arc -> base arc index, or None for alpha arcs
        for a in range(self.wirt.narcs):
            e = self.wirt.arc_edges[a][0]
            if e in a_edges:
                self.parent.append(None)
            else:
                self.parent.append(self.base.arc[emap.get(e, e)])
        # relators of alpha's under-crossings, in walk order
        self.alpha_under = [k for k, c in enumerate(link_pd.crossings)
                            if link_pd.component_of[c.ui] == self.alpha_comp]
        self.k_crossings = [k for k, c in enumerate(link_pd.crossings)
                            if link_pd.component_of[c.ui] == self.k_comp]

    def presentation(self, drop=()):
        rels = [r for k, r in enumerate(self.wirt.relators) if k not in drop]
        marks = {
            "meridian": self.wirt.meridian(self.k_comp),
            "longitude": self.wirt.longitude(self.k_comp),
            "alpha_meridian": self.wirt.meridian(self.alpha_comp),
            "alpha_longitude": self.wirt.longitude(self.alpha_comp),
        }
        p = Presentation(gen_names(self.wirt.narcs), rels, marks)
        p.meta = {"parent": self.parent}
        return p

    def collapse_images(self):
        """psi on link generators: K arcs to base arcs, alpha arcs to e."""
        return [Word() if a is None else Word.gen(a) for a in self.parent]


def pattern_link(base_pd, level, position):
    return PatternLink(base_pd, encircle(base_pd, level, position))


def choose_alpha(base_pd, group, images, target_order=None, want=None):
    """First encircle slot whose alpha longitude maps under f_0 to an element of the
    requested order (or equal to ``want``).  Returns (PatternLink, element)."""
    base = Wirtinger(base_pd)
    for li, k in antiparallel_slots(base_pd):
        try:
            link = pattern_link(base_pd, li, k)
        except ValueError:
            continue
        lam = link.wirt.longitude(link.alpha_comp)
        img = word_eval(group, lam.substitute(link.collapse_images()), images)
        if want is not None and img == want:
            return link, img
        if want is None and target_order is not None and group.element_order(img) == target_order:
            return link, img
    raise ValueError("alpha placement failed")


# -- torus knots --------------------------------------------------------------------------

def torus_presentation(p, q):
    if gcd(p, q) != 1:
        raise ValueError("torus link, not knot")
    if p < 2 or q < 2:
        raise ValueError("torus knot parameters must be at least 2")
    s = next(s for s in range(q + p + 1) if (s * q - 1) % p == 0)
    r = (s * q - 1) // p
    u, v = Word.gen(0), Word.gen(1)
    mu = u ** s * v ** (-r)
    lam = u ** p * mu ** (-p * q)
    pres = Presentation(["u", "v"], [u ** p * v ** (-q)], {"meridian": mu, "longitude": lam})
    phi = abelianization(pres, require_z=True).phi
    assert phi == [q, p] and phi_of(phi, mu) == 1 and phi_of(phi, lam) == 0
    return pres


def unknot_presentation():
    x = Word.gen(0)
    return Presentation(["x"], [], {"meridian": x, "longitude": Word()})


# -- satellites -----------------------------------------------------------------------------

def satellite_glue(link, companion, drop_alpha_relator=True):
    """Glue the exterior of the companion J into the exterior of alpha.

    ``link`` is a PatternLink.  One K-crossing relator of the link is dropped (it
    is implied by the rest), and by default the relator at alpha's last
    under-crossing too: once mu_alpha and lambda_alpha are identified with the
    commuting pair lambda_J, mu_J it follows from the others.  The result has
    deficiency one.
    """
    for key in ("meridian", "longitude"):
        if key not in companion.marks:
            raise ValueError(f"companion is missing its {key} mark")
    drop = {link.k_crossings[-1]}
    if drop_alpha_relator:
        drop.add(link.alpha_under[-1])
    lp = link.presentation(drop)
    for key in ("alpha_meridian", "alpha_longitude"):
        if key not in lp.marks:
            raise ValueError(f"link is missing its {key} mark")
    n = lp.ngens
    shift = lambda w: Word((abs(x) + n) * (1 if x > 0 else -1) for x in w)
    rels = list(lp.relators) + [shift(r) for r in companion.relators]
    mu_j, lam_j = shift(companion.marks["meridian"]), shift(companion.marks["longitude"])
    rels.append(mu_j * lp.marks["alpha_longitude"].inverse())
    rels.append(lam_j * lp.marks["alpha_meridian"].inverse())
    names = lp.names + [f"j{i + 1}" for i in range(companion.ngens)]
    marks = {"meridian": lp.marks["meridian"], "longitude": lp.marks["longitude"]}
    sat = Presentation(names, rels, marks)
    ab = abelianization(sat, require_z=True)
    sat.meta = {"link_gens": n, "parent": link.parent, "companion": companion,
                "alpha_longitude": lp.marks["alpha_longitude"], "phi": ab.phi}
    return sat


def collapse_pattern(sat, base=None):
    """Word images of the satellite generators in the base knot's Wirtinger
    generators: K arcs to their base arcs, alpha arcs to e, a companion generator
    u to psi(lambda_alpha)^phi_J(u)."""
    meta = sat.meta
    n = meta["link_gens"]
    parent = meta["parent"]
    link_imgs = [Word() if a is None else Word.gen(a) for a in parent]
    comp = meta["companion"]
    phi_j = abelianization(comp, require_z=True).phi
    c = meta["alpha_longitude"].substitute(link_imgs)
    imgs = link_imgs + [c ** phi_j[i] for i in range(comp.ngens)]
    return imgs


def quotient_hom_data(b, k, group, images):
    """Transport a hom of closure(b), given by its Wirtinger arc images, to
    closure(b^k) by reusing the bottom tuple."""
    pd = braid_pd(b)
    w = Wirtinger(pd)
    tup = [images[w.arc[j]] for j in range(1, b.strands + 1)]
    bk = braid_power(b, k)
    return arc_images_from_tuple(bk, group, tup)


def arc_images_from_tuple(b, group, tup):
    """Arc images of closure(b) determined by the bottom tuple; None if the tuple
    is not fixed by b."""
    pd = braid_pd(b)
    w = Wirtinger(pd)
    img = {j: tup[j - 1] for j in range(1, b.strands + 1)}
    for c in pd.crossings:
        o = img[c.oi]
        x = img[c.ui]
        y = group.conj(x, o) if c.sign > 0 else group.conj(x, group.inv(o))
        for e, v in ((c.uo, y), (c.oo, o)):
            if e in img and img[e] != v:
                return None
            img[e] = v
    out = [None] * w.narcs
    for e, a in w.arc.items():
        if out[a] is None:
            out[a] = img[e]
        elif out[a] != img[e]:
            return None
    return out
