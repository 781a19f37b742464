"""Partial transformations of {1..n}, their functional digraphs, and n-conjugacy deciders.

Maps act on the right and compose left to right: x(ab) = (xa)b.  Internally
points are 0-based and -1 marks an undefined image; literals are 1-based.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product

import numpy as np

from .errors import (
    ImageNotInY,
    KindMismatch,
    NotInjective,
    NotOrderPreserving,
    NotOrderPreservingInjective,
    NotSurjective,
    ParseError,
    SizeMismatch,
)
from .semigroup import CayleyTable


@dataclass(frozen=True)
class PartialMap:
    n: int
    img: tuple

    def __call__(self, x):
        return self.img[x]

    def __mul__(self, other):
        if self.n != other.n:
            raise SizeMismatch(f"maps on {self.n} and {other.n} points")
        return PartialMap(self.n, tuple(-1 if y < 0 else other.img[y] for y in self.img))

    def __str__(self):
        return "[" + ",".join("-" if y < 0 else str(y + 1) for y in self.img) + "]"

    @property
    def dom(self):
        return frozenset(x for x, y in enumerate(self.img) if y >= 0)

    @property
    def ima(self):
        return frozenset(y for y in self.img if y >= 0)

    @property
    def span(self):
        return self.dom | self.ima

    @property
    def rank(self):
        return len(self.ima)

    @property
    def is_full(self):
        return all(y >= 0 for y in self.img)

    @property
    def is_injective(self):
        ys = [y for y in self.img if y >= 0]
        return len(ys) == len(set(ys))

    @property
    def is_surjective(self):
        return self.is_full and len(self.ima) == self.n

    @property
    def is_order_preserving(self):
        ys = [y for y in self.img if y >= 0]
        return all(a <= b for a, b in zip(ys, ys[1:]))

    @property
    def is_order_preserving_injective(self):
        ys = [y for y in self.img if y >= 0]
        return all(a < b for a, b in zip(ys, ys[1:]))

    def power(self, k):
        out = self
        for _ in range(k - 1):
            out = out * self
        return out


def pmap(images, n=None):
    """Build a map from 1-based images, with None or '-' for undefined."""
    img = tuple(-1 if y in (None, "-") else int(y) - 1 for y in images)
    n = len(img) if n is None else n
    if any(y >= n or y < -1 for y in img):
        raise ParseError(f"image outside 1..{n}")
    return PartialMap(n, img)


def parse_map(text):
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"map literal must look like [a1,...,an]: {text!r}")
    parts = [p.strip() for p in s[1:-1].split(",")] if s[1:-1].strip() else []
    out = []
    for p in parts:
        if p == "-":
            out.append(None)
        else:
            try:
                out.append(int(p))
            except ValueError:
                raise ParseError(f"bad image {p!r} in {text!r}") from None
    return pmap(out)


def parse_subset(text):
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"subset literal must look like {{1,2}}: {text!r}")
    body = s[1:-1].strip()
    try:
        return frozenset(int(p) - 1 for p in body.split(",")) if body else frozenset()
    except ValueError:
        raise ParseError(f"bad subset {text!r}") from None


# ------------------------------------------------------------ enumeration

def enumerate_maps(kind, n, Y=None):
    """All maps of the given kind on n points, in lexicographic order of images.

    kind: T (full), P (partial), I (partial injective), S (permutations),
    O (order-preserving full), OI (order-preserving partial injective),
    TXY (full with image inside Y, a 0-based set).
    """
    kind = kind.upper()
    if kind in ("T", "O", "TXY", "S"):
        choices = range(n)
    else:
        choices = range(-1, n)
    out = []
    for img in product(choices, repeat=n):
        a = PartialMap(n, img)
        if kind == "I" and not a.is_injective:
            continue
        if kind == "S" and not a.is_injective:
            continue
        if kind == "O" and not a.is_order_preserving:
            continue
        if kind == "OI" and not a.is_order_preserving_injective:
            continue
        if kind == "TXY" and not a.ima <= set(Y):
            continue
        out.append(a)
    return out


def cayley(maps, labels=True):
    """Cayley table of a list of maps closed under composition."""
    maps = list(maps)
    n = maps[0].n
    k = len(maps)
    A = np.array([m.img for m in maps], dtype=np.int64).reshape(k, n)
    A[A < 0] = n
    ext = np.concatenate([A, np.full((k, 1), n)], axis=1)
    base = (n + 1) ** np.arange(n, dtype=np.int64)
    codes = A @ base
    order = np.argsort(codes)
    sorted_codes = codes[order]
    table = np.empty((k, k), dtype=np.int32)
    for a in range(k):
        comp = ext[:, A[a]]          # comp[b, x] = (x a) b
        c = comp @ base
        pos = np.searchsorted(sorted_codes, c)
        if (pos >= k).any() or (sorted_codes[np.minimum(pos, k - 1)] != c).any():
            raise KindMismatch("map set is not closed under composition")
        table[a] = order[pos]
    ar = np.arange(k)
    identity = None
    for e in range(k):
        if (table[e] == ar).all() and (table[:, e] == ar).all():
            identity = e
            break
    zero = None
    for z in range(k):
        if (table[z] == z).all() and (table[:, z] == z).all():
            zero = z
            break
    labs = [str(m) for m in maps] if labels else None
    return CayleyTable(table, identity, zero, labs)


# -------------------------------------------------------- functional digraphs

@dataclass(frozen=True)
class FunctionalDigraph:
    vertices: frozenset
    succ: tuple  # sorted (x, y) edges

    @cached_property
    def succ_map(self):
        return dict(self.succ)

    @cached_property
    def preds(self):
        out = {v: [] for v in self.vertices}
        for x, y in self.succ:
            out[y].append(x)
        return out

    @property
    def initial(self):
        return frozenset(v for v in self.vertices if not self.preds[v])

    @property
    def terminal(self):
        return frozenset(v for v in self.vertices if v not in self.succ_map)

    @property
    def bottom_initial(self):
        init = self.initial
        out = set()
        for x in init:
            y = self.succ_map.get(x)
            if y is not None and all(z in init for z in self.preds[y]):
                out.add(x)
        return frozenset(out)

    def initial_bundles(self):
        bundles = {}
        for x in sorted(self.bottom_initial):
            y = self.succ_map[x]
            bundles[y] = frozenset(self.preds[y])
        return [bundles[y] for y in sorted(bundles)]

    def induced(self, keep):
        keep = frozenset(keep)
        return FunctionalDigraph(keep, tuple((x, y) for x, y in self.succ if x in keep and y in keep))


def digraph(a):
    span = a.span
    return FunctionalDigraph(span, tuple((x, y) for x, y in enumerate(a.img) if y >= 0))


def extended_digraph(a):
    return FunctionalDigraph(frozenset(range(a.n)), digraph(a).succ)


def prune(g):
    return g.induced(g.vertices - g.initial)


def trim(g):
    keep = set(g.vertices - g.initial)
    for bundle in g.initial_bundles():
        keep.add(min(bundle))
    return g.induced(keep)


def cycle_part(g):
    """Subgraph induced by the vertices lying on cycles."""
    return g.induced(_cycle_vertices(g.vertices, g.succ_map))


def _cycle_vertices(vertices, succ):
    on_cycle = set()
    state = {}
    for v in vertices:
        path = []
        x = v
        while x is not None and x in vertices and x not in state:
            state[x] = 1
            path.append(x)
            x = succ.get(x)
        if x is not None and state.get(x) == 1:
            i = path.index(x)
            on_cycle.update(path[i:])
        for p in path:
            state[p] = 2
    return on_cycle


def canonical_form(g, color=None):
    """Isomorphism invariant of a functional digraph, complete for out-degree <= 1.

    ``color`` optionally maps vertices to string tags that isomorphisms must keep.
    """
    succ = g.succ_map
    vs = g.vertices
    cyc = _cycle_vertices(vs, succ)
    preds = g.preds

    def col(v):
        return "" if color is None else str(color[v])

    memo = {}

    def code(v):
        if v not in memo:
            memo[v] = (col(v), tuple(sorted(code(p) for p in preds[v] if p not in cyc)))
        return memo[v]

    comps = []
    for v in sorted(vs):
        if v not in succ:
            comps.append(("T", code(v)))
    seen = set()
    for v in sorted(cyc):
        if v in seen:
            continue
        ring = [v]
        seen.add(v)
        x = succ[v]
        while x != v:
            ring.append(x)
            seen.add(x)
            x = succ[x]
        seq = [code(x) for x in ring]
        best = min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))
        comps.append(("C", best))
    return tuple(sorted(comps))


def iso_digraph(g1, g2, color1=None, color2=None):
    return canonical_form(g1, color1) == canonical_form(g2, color2)


# ------------------------------------------------------------ deciders

def _same_n(a, b):
    if a.n != b.n:
        raise SizeMismatch(f"maps on {a.n} and {b.n} points")


def conj_n_full(a, b):
    """n-conjugacy in P_n and T_n: isomorphic prunes."""
    _same_n(a, b)
    return iso_digraph(prune(digraph(a)), prune(digraph(b)))


def conj_n_injective(a, b):
    """n-conjugacy in I_n, and among surjective full maps: isomorphic digraphs."""
    _same_n(a, b)
    for x in (a, b):
        if not x.is_injective and not x.is_surjective:
            raise NotInjective(f"{x} is neither injective nor surjective")
    return iso_digraph(digraph(a), digraph(b))


def conj_n_surjective(a, b):
    _same_n(a, b)
    for x in (a, b):
        if not x.is_surjective:
            raise NotSurjective(f"{x} is not surjective")
    return iso_digraph(digraph(a), digraph(b))


def conj_n_txy(a, b, Y):
    """n-conjugacy in T(X, Y)."""
    _same_n(a, b)
    Y = frozenset(Y)
    for x in (a, b):
        if not x.is_full or not x.ima <= Y:
            raise ImageNotInY(f"{x} is not in T(X,Y)")
    if a == b:
        return True
    if not conj_n_full(a, b):
        return False
    for x in (a, b):
        if any(not (Z & Y) for Z in digraph(x).initial_bundles()):
            return False
    return True


def _relabel_equal(ga, gb):
    va, vb = sorted(ga.vertices), sorted(gb.vertices)
    if len(va) != len(vb):
        return False
    f = dict(zip(va, vb))
    return sorted((f[x], f[y]) for x, y in ga.succ) == sorted(gb.succ)


def conj_n_on(a, b):
    """n-conjugacy in O_n: prunes equal after the order-preserving relabelling."""
    _same_n(a, b)
    for x in (a, b):
        if not x.is_full or not x.is_order_preserving:
            raise NotOrderPreserving(f"{x} is not a full order-preserving map")
    return _relabel_equal(prune(digraph(a)), prune(digraph(b)))


def conj_n_oin(a, b):
    """n-conjugacy in OI_n: whole digraphs equal after the order relabelling."""
    _same_n(a, b)
    for x in (a, b):
        if not x.is_order_preserving_injective:
            raise NotOrderPreservingInjective(f"{x} is not order-preserving injective")
    return _relabel_equal(digraph(a), digraph(b))


def class_oin(a):
    """The n-class of a in OI_n, one member per k-subchain of {1..n}."""
    if not a.is_order_preserving_injective:
        raise NotOrderPreservingInjective(f"{a} is not order-preserving injective")
    span = sorted(a.span)
    out = []
    for ys in combinations(range(a.n), len(span)):
        f = dict(zip(span, ys))
        img = [-1] * a.n
        for x, y in enumerate(a.img):
            if y >= 0:
                img[f[x]] = f[y]
        out.append(PartialMap(a.n, tuple(img)))
    return out


def conj_by_permutation(a, b):
    _same_n(a, b)
    return iso_digraph(extended_digraph(a), extended_digraph(b))


def permutation_conjugator(a, b):
    """Brute-force sigma in S_n with b = sigma^-1 a sigma, or None."""
    _same_n(a, b)
    n = a.n
    for p in permutations(range(n)):
        # b(p(x)) = p(a(x)), undefined on both sides together
        if all((b.img[p[x]] < 0) if a.img[x] < 0 else b.img[p[x]] == p[a.img[x]] for x in range(n)):
            return p
    return None


def rank_sequence(a, kmax):
    out, x = [], a
    for _ in range(kmax):
        out.append(x.rank)
        x = x * a
    return out


def conj_lin_tn(a, b):
    _same_n(a, b)
    if rank_sequence(a, 2 * a.n) != rank_sequence(b, 2 * b.n):
        return False
    return iso_digraph(cycle_part(digraph(a)), cycle_part(digraph(b)))


conj_lin_pn = conj_lin_tn


def conj_lin_in(a, b):
    for x in (a, b):
        if not x.is_injective:
            raise NotInjective(f"{x} is not injective")
    return conj_by_permutation(a, b)


# ---------------------------------------------------------------- examples

FOREST22 = pmap([2, 1, 1, 1, 3, 3, 3, 5, 5, 5, 7, 7, 7, 7, None, 15, 16, 17, 18, 18, 17, 21])
O6_ALPHA = pmap([4, 4, 4, 5, 5, 6])
O6_BETA = pmap([3, 4, 4, 4, 5, 5])
O6_DELTA = pmap([2, 2, 4, 5, 5, 5])


def oi_from_cycles_and_chains(n, fixed=(), chains=()):
    """Join of 1-cycles (x) and chains [v0 v1 .. vk], all 1-based."""
    img = [None] * n
    for x in fixed:
        img[x - 1] = x
    for ch in chains:
        for u, v in zip(ch, ch[1:]):
            img[u - 1] = v
    return pmap(img, n)


def lin_example_tn(n):
    """Pair in T_n (n >= 6) that is linearly but not n-conjugate."""
    rest = list(range(7, n + 1))
    return pmap([2, 1, 4, 1, 6, 1] + rest), pmap([2, 1, 4, 1, 6, 2] + rest)


def lin_example_on(n):
    """Pair in O_n (n >= 3) that is linearly but not n-conjugate."""
    rest = list(range(4, n + 1))
    return pmap([2, 3, 3] + rest), pmap([1, 1, 2] + rest)
