"""Free-group words, finite presentations, Fox calculus, Tietze moves and
abelianization.

Letters are signed 1-based generator indices: generator i is the letter i+1 and
its inverse is -(i+1).
"""

import json
import re

from .exact import smith_normal_form


def _reduce(letters):
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


class Word(tuple):
    """Freely reduced word in the free group."""

    def __new__(cls, letters=()):
        return super().__new__(cls, _reduce(letters))

    @classmethod
    def gen(cls, i, e=1):
        return cls([i + 1] * e if e >= 0 else [-(i + 1)] * (-e))

    def __mul__(self, other):
        return Word(tuple(self) + tuple(other))

    def inverse(self):
        return Word(-x for x in reversed(self))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return Word(tuple(self) * k)

    def cyclic_reduce(self):
        w = list(self)
        while len(w) > 1 and w[0] == -w[-1]:
            w = w[1:-1]
        return Word(w)

    def rotations(self):
        return [Word(self[i:] + self[:i]) for i in range(max(len(self), 1))]

    def exponent_sums(self, ngens):
        out = [0] * ngens
        for x in self:
            out[abs(x) - 1] += 1 if x > 0 else -1
        return out

    def occurrences(self, i):
        return sum(1 for x in self if abs(x) == i + 1)

    def substitute(self, images):
        """Replace generator i by the word images[i]."""
        out = []
        for x in self:
            w = images[abs(x) - 1]
            out.extend(w if x > 0 else Word(w).inverse())
        return Word(out)

    def __repr__(self):
        return f"Word({list(self)})"


def word_exponent_sum(w, ngens=None):
    if ngens is None:
        ngens = max((abs(x) for x in w), default=0)
    return Word(w).exponent_sums(ngens)


class GroupRingElem:
    """Finite Z-combination of free-group words."""

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            self._add(Word(w), c)

    def _add(self, w, c):
        v = self.terms.get(w, 0) + c
        if v:
            self.terms[w] = v
        else:
            self.terms.pop(w, None)

    @classmethod
    def of(cls, w, c=1):
        return cls({Word(w): c})

    def __add__(self, other):
        out = GroupRingElem(self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __neg__(self):
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Word):
            other = GroupRingElem.of(other)
        out = GroupRingElem()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(w1 * w2, c1 * c2)
        return out

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return " + ".join(f"{c}*{list(w)}" for w, c in sorted(self.terms.items())) or "0"


ONE = Word()


def fox_derivative(w, j):
    out = GroupRingElem()
    prefix = []
    for x in w:
        if x == j + 1:
            out._add(Word(prefix), 1)
        prefix.append(x)
        if x == -(j + 1):
            out._add(Word(prefix), -1)
    return out


def fox_walk(w):
    """Yield (letter, prefix-before, prefix-after) along w; the skeleton of every
    evaluated Fox derivative."""
    prefix = Word()
    for x in w:
        after = prefix * Word([x])
        yield x, prefix, after
        prefix = after


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


class Presentation:
    def __init__(self, names, relators=(), marks=None):
        self.names = list(names)
        self.ngens = len(self.names)
        if len(set(self.names)) != self.ngens:
            raise ValueError("duplicate generator names")
        self.relators = [Word(r) for r in relators]
        self.marks = {k: Word(v) for k, v in (marks or {}).items()}
        for r in list(self.relators) + list(self.marks.values()):
            for x in r:
                if abs(x) > self.ngens:
                    raise ValueError(f"letter {x} out of range for {self.ngens} generators")

    @property
    def deficiency(self):
        return self.ngens - len(self.relators)

    def with_marks(self, **marks):
        m = dict(self.marks)
        m.update({k: Word(v) for k, v in marks.items()})
        return Presentation(self.names, self.relators, m)

    def __repr__(self):
        return f"Presentation({self.ngens} gens, {len(self.relators)} rels)"

    # text / json

    def word_str(self, w):
        toks = []
        for x in w:
            n = self.names[abs(x) - 1]
            toks.append(n if x > 0 else _invert_name(n))
        return " ".join(toks)

    def parse_word(self, text):
        index = {n: i for i, n in enumerate(self.names)}
        letters = []
        for tok in text.split():
            mt = _TOKEN.match(tok)
            if not mt:
                raise ValueError(f"bad token {tok!r}")
            base, exp = mt.group(1), int(mt.group(2) or 1)
            if base in index:
                i, s = index[base], 1
            elif _invert_name(base) in index:
                i, s = index[_invert_name(base)], -1
            else:
                raise ValueError(f"unknown generator {base!r}")
            letters.extend([s * (i + 1)] * abs(exp) if exp > 0 else [-s * (i + 1)] * abs(exp))
        return Word(letters)

    def to_text(self):
        lines = ["gens: " + " ".join(self.names)]
        for r in self.relators:
            lines.append("rel: " + self.word_str(r))
        for k, w in self.marks.items():
            lines.append(f"mark {k}: " + self.word_str(w))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        names, rels, marks = None, [], {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(":")
            key = key.strip()
            if key == "gens":
                names = rest.split()
                for n in names:
                    if not n[0].islower():
                        raise ValueError(f"generator names must start lowercase: {n!r}")
                shell = cls(names)
            elif names is None:
                raise ValueError("'gens:' line must come first")
            elif key == "rel":
                rels.append(shell.parse_word(rest))
            elif key.startswith("mark "):
                marks[key[5:].strip()] = shell.parse_word(rest)
            else:
                raise ValueError(f"unrecognized line {raw!r}")
        if names is None:
            raise ValueError("missing 'gens:' line")
        return cls(names, rels, marks)

    def to_json(self):
        def letters(w):
            return self.word_str(w).split()
        return {"gens": self.names,
                "relators": [letters(r) for r in self.relators],
                "marks": {k: letters(w) for k, w in self.marks.items()}}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        shell = cls(obj["gens"])
        rels = [shell.parse_word(" ".join(r)) for r in obj.get("relators", [])]
        marks = {k: shell.parse_word(" ".join(v)) for k, v in obj.get("marks", {}).items()}
        return cls(obj["gens"], rels, marks)

    @classmethod
    def load(cls, text):
        s = text.lstrip()
        return cls.from_json(s) if s.startswith("{") else cls.from_text(text)


def _invert_name(n):
    return n[0].swapcase() + n[1:]


def gen_names(n, prefix="x"):
    return [f"{prefix}{i}" for i in range(1, n + 1)]


# -- abelianization ---------------------------------------------------------------

class Abelianization:
    def __init__(self, invariants, rank, phi):
        self.invariants = invariants    # torsion coefficients > 1
        self.rank = rank
        self.phi = phi                  # images in Z when H_1 = Z, else None

    @property
    def is_z(self):
        return self.rank == 1 and not self.invariants

    def describe(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.invariants]
        return " + ".join(parts) or "0"


def abelianization(p, require_z=False):
    n = p.ngens
    mat = [r.exponent_sums(n) for r in p.relators] or [[0] * n]
    diag, _, v = smith_normal_form(mat)
    nz = [abs(d) for d in diag if d != 0]
    rank = n - len(nz)
    torsion = [d for d in nz if d > 1]
    phi = None
    if rank == 1 and not torsion:
        phi = [v[i][n - 1] for i in range(n)]
        ref = p.marks.get("meridian")
        s = sum(a * b for a, b in zip(ref.exponent_sums(n), phi)) if ref is not None else 0
        if s == 0:
            s = next((x for x in phi if x), 1)
        if s < 0:
            phi = [-x for x in phi]
    ab = Abelianization(torsion, rank, phi)
    if require_z and not ab.is_z:
        raise ValueError(f"not a knot-like presentation (H_1 = {ab.describe()})")
    return ab


def knot_phi(p):
    return abelianization(p, require_z=True).phi


def phi_of(phi, w):
    return sum(phi[abs(x) - 1] * (1 if x > 0 else -1) for x in w)


# -- evaluation in finite groups ---------------------------------------------------

def word_eval(group, w, images):
    out = group.identity
    rows = group.rows
    for x in w:
        g = images[abs(x) - 1]
        out = rows[out][g if x > 0 else group.inverse[g]]
    return out


def verify_hom(p, group, images):
    if len(images) != p.ngens:
        raise ValueError("need one image per generator")
    return all(word_eval(group, r, images) == group.identity for r in p.relators)


def hom_is_surjective(group, images):
    from .fingroup import subgroup_generated
    return subgroup_generated(group, images).order == group.order


# -- Tietze simplification ---------------------------------------------------------

class TietzeResult:
    """Simplified presentation with word maps: forth[i] expresses old generator i
    in the new generators, back[j] expresses new generator j in the old ones."""

    def __init__(self, pres, forth, back):
        self.pres = pres
        self.forth = forth
        self.back = back

    def map_images(self, images):
        """Images of the new generators from images of the old ones (as indices)."""
        return [images[abs(w[0]) - 1] for w in self.back]


def _canonical_relator(w):
    w = Word(w).cyclic_reduce()
    if not w:
        return ()
    cands = w.rotations() + w.inverse().rotations()
    return min(tuple(c) for c in cands)


def tietze_simplify(p, keep=(), max_len=100000, max_steps=10000):
    keep = set(keep)
    n = p.ngens
    rels = [Word(r).cyclic_reduce() for r in p.relators]
    forth = [Word.gen(i) for i in range(n)]
    alive = list(range(n))
    for _ in range(max_steps):
        best = None
        for ri, r in enumerate(rels):
            for x in set(abs(c) - 1 for c in r):
                if x in keep or r.occurrences(x) != 1:
                    continue
                cost = (len(r), -x)
                if best is None or cost < best[0]:
                    best = (cost, ri, x)
        if best is None:
            break
        _, ri, x = best
        r = rels[ri]
        k = next(i for i, c in enumerate(r) if abs(c) == x + 1)
        # r = u x^e v  =>  x^e = u^-1 v^-1
        u, v = Word(r[:k]), Word(r[k + 1:])
        sol = u.inverse() * v.inverse()
        if r[k] < 0:
            sol = sol.inverse()
        images = [Word.gen(i) for i in range(n)]
        images[x] = sol
        new_rels = [w.substitute(images).cyclic_reduce() for j, w in enumerate(rels) if j != ri]
        if sum(len(w) for w in new_rels) > max_len:
            keep.add(x)
            continue
        rels = new_rels
        forth = [w.substitute(images) for w in forth]
        alive.remove(x)
    # drop trivial and duplicate relators
    seen, kept = set(), []
    for r in rels:
        c = _canonical_relator(r)
        if c and c not in seen:
            seen.add(c)
            kept.append(r)
    renum = {old: new for new, old in enumerate(alive)}

    def rename(w):
        return Word((renum[abs(c) - 1] + 1) * (1 if c > 0 else -1) for c in w)

    new = Presentation([p.names[i] for i in alive], [rename(r) for r in kept],
                       {k: rename(w.substitute(forth)) for k, w in p.marks.items()})
    return TietzeResult(new, [rename(w) for w in forth], [Word.gen(i) for i in alive])
