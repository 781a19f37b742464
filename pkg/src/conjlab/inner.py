"""Partial inner automorphisms phi_{g,h} and the inverse monoid Inn(S)."""
from collections import deque
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BoundExceeded, ZeroElement
from .semigroup import build_semigroup, group_inverse, green_relations, rees_index

MAX_INN_SOURCE = 200
MAX_INN = 20000


@dataclass(frozen=True)
class PartialAutomorphism:
    img: tuple  # img[a] = image of a, or -1 when a is outside the domain
    source: tuple = None  # (g, h) when this is a generator

    @property
    def domain(self):
        return frozenset(a for a, b in enumerate(self.img) if b >= 0)

    @property
    def image(self):
        return frozenset(b for b in self.img if b >= 0)

    def __mul__(self, other):
        """self first, then other."""
        return PartialAutomorphism(tuple(other.img[b] if b >= 0 else -1 for b in self.img))

    def inverse(self):
        out = [-1] * len(self.img)
        for a, b in enumerate(self.img):
            if b >= 0:
                out[b] = a
        return PartialAutomorphism(tuple(out))

    def __eq__(self, other):
        return isinstance(other, PartialAutomorphism) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __le__(self, other):
        return all(b < 0 or other.img[a] == b for a, b in enumerate(self.img))


def domain_gh(S, g, h):
    """D_{g,h} = {a in S : gh.a = a.gh = a}, with g, h in S^1."""
    t1 = S.table1
    p = t1[g, h]
    ar = np.arange(S.order)
    ok = (t1[p, ar] == ar) & (t1[ar, p] == ar)
    return frozenset(int(a) for a in np.flatnonzero(ok))


def phi_gh(S, g, h):
    t1 = S.table1
    dom = domain_gh(S, g, h)
    img = [-1] * S.order
    for a in dom:
        img[a] = int(t1[t1[h, a], g])
    return PartialAutomorphism(tuple(img), (g, h))


def is_isomorphism(S, phi):
    t = S.table
    dom = phi.domain
    if len(phi.image) != len(dom):
        return False
    for a in dom:
        for b in dom:
            ab = int(t[a, b])
            if ab in dom and phi.img[ab] != t[phi.img[a], phi.img[b]]:
                return False
    return True


def generators(S):
    n1 = S.order1
    seen = {}
    for g in range(n1):
        for h in range(n1):
            f = phi_gh(S, g, h)
            seen.setdefault(f.img, f)
    return list(seen.values())


@dataclass
class InnMonoid:
    elements: list
    generators: list

    @property
    def order(self):
        return len(self.elements)

    def index(self):
        return {f.img: i for i, f in enumerate(self.elements)}

    def cayley(self):
        idx = self.index()
        table = [[idx[(f * g).img] for g in self.elements] for f in self.elements]
        return build_semigroup(table, check=False)

    def idempotents(self):
        return [f for f in self.elements if f * f == f]

    def summary(self):
        """Order, generator count, idempotent count and D-class shapes (R x L x H)."""
        C = self.cayley()
        gd = green_relations(C)
        shapes = []
        for cls in gd.classes("D"):
            r = len({int(gd.r[x]) for x in cls})
            l = len({int(gd.l[x]) for x in cls})
            shapes.append((r, l, len(cls) // (r * l)))
        return {
            "order": self.order,
            "generators": len(self.generators),
            "idempotents": len(self.idempotents()),
            "d_classes": sorted(shapes, reverse=True),
            "pairs": sorted((len(f.domain), len(f.image)) for f in self.elements),
        }


def generate_inn(S, bound=MAX_INN):
    if S.order > MAX_INN_SOURCE:
        raise BoundExceeded(f"|S| = {S.order} is above the bound {MAX_INN_SOURCE} for Inn generation")
    gens = generators(S)
    seen = {f.img: f for f in gens}
    if len(seen) > bound:
        raise BoundExceeded(f"Inn(S) exceeds {bound} elements")
    queue = deque(gens)
    while queue:
        f = queue.popleft()
        for g in gens:
            fg = f * g
            if fg.img not in seen:
                seen[fg.img] = fg
                queue.append(fg)
                if len(seen) > bound:
                    raise BoundExceeded(f"Inn(S) exceeds {bound} elements")
    elems = sorted(seen.values(), key=lambda f: (-len(f.domain), f.img))
    return InnMonoid(elems, gens)


def new_domains(inn):
    """Domains of Inn(S) elements that no generator phi_{g,h} has."""
    have = {f.domain for f in inn.generators}
    return {f.domain for f in inn.elements} - have


def composition_inclusion(S, g1, h1, g2, h2):
    """phi_{g1,h1} phi_{g2,h2} is contained in phi_{g1 g2, h2 h1}."""
    t1 = S.table1
    left = phi_gh(S, g1, h1) * phi_gh(S, g2, h2)
    right = phi_gh(S, int(t1[g1, g2]), int(t1[h2, h1]))
    return left <= right, left == right


def inverse_embedding(S):
    """g -> phi_{g, g^-1} for an inverse semigroup; returns the list of maps."""
    inv = [-1] * S.order
    t = S.table
    for a in range(S.order):
        for b in range(S.order):
            if t[t[a, b], a] == a and t[t[b, a], b] == b:
                inv[a] = b
                break
    return [phi_gh(S, g, inv[g]) for g in range(S.order)]


def check_inverse_embedding(S, inn=None):
    """The map g -> phi_{g,g^-1} is a bijective homomorphism S -> Inn(S)."""
    inn = inn or generate_inn(S)
    maps = inverse_embedding(S)
    if len({f.img for f in maps}) != S.order or inn.order != S.order:
        return False
    if {f.img for f in maps} != {f.img for f in inn.elements}:
        return False
    t = S.table
    return all(maps[a] * maps[b] == maps[int(t[a, b])] for a in range(S.order) for b in range(S.order))


# ------------------------------------------------------------- T_n census

def _set_partitions(xs):
    if not xs:
        yield []
        return
    first, rest = xs[0], xs[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _sections(P):
    """Partial sections of P meeting every singleton part."""
    out = [[]]
    for block in P:
        nxt = []
        for sec in out:
            if len(block) >= 2:
                nxt.append(sec)
            nxt += [sec + [x] for x in block]
        out = nxt
    return out


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def tn_tuple_count(n):
    """Number of generators predicted by the (P, P', I, I', alpha, beta) classification."""
    shapes = {}
    for P in _set_partitions(list(range(n))):
        for I in _sections(P):
            if len(I) >= 2:
                key = (len(P), len(I))
                shapes[key] = shapes.get(key, 0) + 1
    big = sum(c * c * _factorial(k) * _factorial(m - k) for (m, k), c in shapes.items())
    small = n * n + (1 if n != 1 else 0)
    return big + small


def tn_generator_census(n):
    from .transformations import cayley, enumerate_maps

    if n > 4:
        raise BoundExceeded("generator census is limited to n <= 4")
    S = cayley(enumerate_maps("T", n))
    brute = len(generators(S))
    return {"n": n, "brute_force": brute, "tuples": tn_tuple_count(n)}


# ------------------------------------------------------------ Rees matrices

def rees_conj_n(spec, a, b):
    """(A,x,alpha) ~n (B,y,beta) in M^0(G; I, Lambda; P); triples are 0-based."""
    if a is None or b is None:
        raise ZeroElement("the zero of the Rees matrix semigroup has no triple")
    G = spec.group
    t = G.table
    inv = group_inverse(G)
    if tuple(a) == tuple(b):
        # g = h = 1 from S^1; a nilpotent triple is only conjugate to itself
        return True
    A, x, alpha = a
    B, y, beta = b
    p_a = spec.sandwich[alpha][A]
    p_b = spec.sandwich[beta][B]
    if p_a is None or p_b is None:
        return False
    lhs = t[p_b, y]
    xp = t[x, p_a]
    return any(t[t[inv[g], xp], g] == lhs for g in range(G.order))


def rees_domain(spec, g_triple, h_triple):
    """D_{g,h} in M(G; I, Lambda; P) as a set of element indices."""
    from .semigroup import rees_matrix_semigroup

    S = rees_matrix_semigroup(spec, with_zero=any(x is None for row in spec.sandwich for x in row))
    return domain_gh(S, rees_index(spec, *g_triple), rees_index(spec, *h_triple))


def rees_inverse_partner(spec, g_triple, eta, H):
    """h = (p_{eta G} g p_{gamma H})^-1 so that D is {G} x Gamma x {eta}."""
    G_, g, gamma = g_triple
    t = spec.group.table
    inv = group_inverse(spec.group)
    return (H, inv[t[t[spec.sandwich[eta][G_], g], spec.sandwich[gamma][H]]], eta)


def inner_automorphism_group(G):
    """Conjugation maps a -> h a g with h = g^-1, as partial maps (all total)."""
    inv = group_inverse(G)
    return {phi_gh(G, g, inv[g]).img for g in range(G.order)}


def all_sandwiches(k, i_size, l_size, allow_zero=True):
    vals = list(range(k)) + ([None] if allow_zero else [])
    for flat in product(vals, repeat=i_size * l_size):
        P = tuple(tuple(flat[l * i_size:(l + 1) * i_size]) for l in range(l_size))
        if any(all(x is None for x in row) for row in P):
            continue
        if any(all(P[l][i] is None for l in range(l_size)) for i in range(i_size)):
            continue
        yield P


__all__ = [
    "PartialAutomorphism", "InnMonoid", "domain_gh", "phi_gh", "generators", "generate_inn",
    "composition_inclusion", "new_domains", "inverse_embedding", "check_inverse_embedding", "tn_tuple_count",
    "tn_generator_census", "rees_conj_n", "rees_domain", "rees_inverse_partner",
    "inner_automorphism_group", "all_sandwiches", "is_isomorphism",
]
