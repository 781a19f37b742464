"""Endomorphisms of finite G-sets for abelian G.

Maps compose right to left here, (f g)(x) = f(g(x)), so the Cayley table
entry [f, g] is f after g.  Conjugacy relations are unchanged under the
resulting anti-isomorphism.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import BoundExceeded, KindMismatch, ParseError
from .semigroup import build_semigroup
from .transformations import FunctionalDigraph, canonical_form

MAX_POINTS = 12


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple

    @cached_property
    def elements(self):
        return list(product(*[range(m) for m in self.moduli]))

    @property
    def zero(self):
        return tuple(0 for _ in self.moduli)

    @property
    def order(self):
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def subgroup(self, gens):
        H = {self.zero}
        frontier = [self.zero]
        gens = [tuple(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in H:
                    H.add(y)
                    frontier.append(y)
        return frozenset(H)

    def subgroups(self):
        seen = set()
        for x in self.elements:
            for y in self.elements:
                seen.add(self.subgroup([x, y]))
        return sorted(seen, key=lambda H: (len(H), sorted(H)))

    def coset_rep(self, k, H):
        return min(self.add(k, h) for h in H)

    def __str__(self):
        return "x".join(str(m) for m in self.moduli) if self.moduli else "1"


@dataclass(frozen=True)
class GSet:
    group: AbelianGroup
    stabs: tuple  # one subgroup per orbit

    @cached_property
    def orbit_points(self):
        G = self.group
        return [sorted({G.coset_rep(k, H) for k in G.elements}) for H in self.stabs]

    @cached_property
    def points(self):
        return [(i, c) for i, reps in enumerate(self.orbit_points) for c in reps]

    @cached_property
    def point_index(self):
        return {p: i for i, p in enumerate(self.points)}

    @property
    def size(self):
        return len(self.points)

    def act(self, k, p):
        i, c = p
        return (i, self.group.coset_rep(self.group.add(k, c), self.stabs[i]))


@dataclass(frozen=True)
class GEndomorphism:
    gset: GSet
    images: tuple  # per orbit: (target orbit, coset representative)

    def __call__(self, p):
        i, c = p
        j, k = self.images[i]
        G = self.gset.group
        return (j, G.coset_rep(G.add(c, k), self.gset.stabs[j]))

    @cached_property
    def as_map(self):
        X = self.gset
        return tuple(X.point_index[self(p)] for p in X.points)

    def __mul__(self, other):
        """self after other."""
        X = self.gset
        out = []
        for i in range(len(X.stabs)):
            p = other((i, X.group.zero))
            out.append(self(p))
        return GEndomorphism(X, tuple(out))

    def power(self, k):
        out = self
        for _ in range(k - 1):
            out = self * out
        return out

    def __str__(self):
        return "[" + " ".join(f"({j},{','.join(map(str, k))})" for j, k in self.images) + "]"


def make_endomorphism(X, images):
    G = X.group
    out = []
    for i, (j, k) in enumerate(images):
        k = tuple(k)
        if not X.stabs[i] <= X.stabs[j]:
            raise KindMismatch(f"orbit {i} cannot map to orbit {j}: stabilizer would shrink")
        out.append((j, G.coset_rep(k, X.stabs[j])))
    return GEndomorphism(X, tuple(out))


def enumerate_end(X, bound=MAX_POINTS):
    if X.size > bound:
        raise BoundExceeded(f"G-set has {X.size} points, above the bound {bound}")
    choices = []
    for i, H in enumerate(X.stabs):
        opts = []
        for j, K in enumerate(X.stabs):
            if H <= K:
                opts += [(j, c) for c in X.orbit_points[j]]
        choices.append(opts)
    return [GEndomorphism(X, imgs) for imgs in product(*choices)]


def cayley_end(endos):
    endos = list(endos)
    index = {f.as_map: i for i, f in enumerate(endos)}
    table = []
    for f in endos:
        table.append([index[tuple(f.as_map[x] for x in g.as_map)] for g in endos])
    return build_semigroup(table, labels=[str(f) for f in endos], check=False)


# -------------------------------------------------------------- orbit graphs

@dataclass(frozen=True)
class LabeledOrbitGraph:
    graph: FunctionalDigraph
    stabs: dict
    labels: dict  # cycle vertex -> canonical coset representative


def orbit_graph(f):
    X = f.gset
    succ = tuple((i, j) for i, (j, _) in enumerate(f.images))
    return FunctionalDigraph(frozenset(range(len(X.stabs))), succ)


def cycle_labels(f, point=None):
    """Label k G_O of each cycle orbit O, where f^len(x) = k.x for x in O.

    ``point`` optionally picks the orbit point used (for each orbit), to check
    that the coset does not depend on it.
    """
    X = f.gset
    G = X.group
    succ = {i: j for i, (j, _) in enumerate(f.images)}
    labels = {}
    for i in succ:
        x, length = succ[i], 1
        while x != i and length <= len(succ):
            x, length = succ[x], length + 1
        if x != i:
            continue
        c = G.zero if point is None else point[i]
        p = (i, c)
        q = p
        for _ in range(length):
            q = f(q)
        k = G.add(q[1], G.neg(c))
        labels[i] = G.coset_rep(k, X.stabs[i])
    return labels


def g_trim(f):
    X = f.gset
    H = X.stabs
    g = orbit_graph(f)
    succ = g.succ_map
    init = g.initial

    def S(o):
        return [p for p in g.vertices if succ[p] == succ[o]]

    step1 = {o for o in init if any(H[o] < H[p] for p in S(o))}
    left = init - step1
    step2 = {o for o in left if any(p not in init and H[p] == H[o] for p in S(o))}
    left = left - step2
    removed = step1 | step2
    for o in sorted(left):
        if o in removed:
            continue
        removed |= {p for p in S(o) if p != o and H[p] == H[o] and p > o}
    keep = g.vertices - removed
    labels = cycle_labels(f)
    return LabeledOrbitGraph(g.induced(keep), {o: H[o] for o in keep}, labels)


def _tag(G, stab, label):
    s = ";".join(",".join(map(str, h)) for h in sorted(stab))
    lab = "" if label is None else ",".join(map(str, label))
    return f"{s}|{lab}"


def gset_key(f):
    t = g_trim(f)
    G = f.gset.group
    color = {v: _tag(G, t.stabs[v], t.labels.get(v)) for v in t.graph.vertices}
    return canonical_form(t.graph, color)


def conj_n_gset(f1, f2):
    if f1.gset != f2.gset:
        raise KindMismatch("endomorphisms of different G-sets")
    return gset_key(f1) == gset_key(f2)


# -------------------------------------------------------------------- text I/O

def parse_gset(text):
    lines = [l.split("#", 1)[0].strip() for l in text.splitlines()]
    lines = [(k + 1, l) for k, l in enumerate(lines) if l]
    if not lines or not lines[0][1].startswith("G="):
        raise ParseError("first line must be G=<m1>x<m2>...", 1)
    body = lines[0][1][2:].strip()
    try:
        moduli = tuple(int(m) for m in body.split("x")) if body not in ("", "1") else ()
    except ValueError:
        raise ParseError(f"bad group {body!r}", lines[0][0]) from None
    G = AbelianGroup(moduli)
    stabs = []
    for ln, line in lines[1:]:
        if not line.startswith("orbit"):
            raise ParseError(f"expected 'orbit stab={{...}}', got {line!r}", ln)
        rest = line[5:].strip()
        gens = []
        if rest:
            if not rest.startswith("stab=") or "{" not in rest or not rest.endswith("}"):
                raise ParseError(f"bad orbit line {line!r}", ln)
            inner = rest[rest.index("{") + 1:-1]
            for tok in inner.replace(" ", "").split(")"):
                tok = tok.strip(",(")
                if tok:
                    try:
                        gens.append(tuple(int(v) % m for v, m in zip(tok.split(","), moduli)))
                    except ValueError:
                        raise ParseError(f"bad tuple {tok!r}", ln) from None
        stabs.append(G.subgroup(gens))
    return GSet(G, tuple(stabs))


def parse_endomorphism(X, text):
    toks = text.replace(" ", "").strip("[]")
    imgs = []
    for tok in toks.split(")"):
        tok = tok.strip(",(")
        if not tok:
            continue
        vals = [int(v) for v in tok.split(",")]
        imgs.append((vals[0], tuple(vals[1:]) or X.group.zero))
    if len(imgs) != len(X.stabs):
        raise ParseError(f"need {len(X.stabs)} orbit images, got {len(imgs)}")
    return make_endomorphism(X, imgs)


def gset_from(moduli, stab_gens):
    G = AbelianGroup(tuple(moduli))
    return GSet(G, tuple(G.subgroup(g) for g in stab_gens))
