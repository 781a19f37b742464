"""The polycyclic monoid P_n: elements y x^-1 over {p_1..p_n}, plus zero.

A nonzero element is a pair (y, x) of tuples of generator indices 0..n-1;
ZERO is None.  Lengths: |y x^-1| = |y| + |x| and |0| = 1.
"""
from functools import lru_cache
from itertools import product

import sympy
from sympy.functions.combinatorial.numbers import mobius, totient

from .errors import BoundExceeded, ParseError

ZERO = None
ONE = ((), ())
MAX_BALL = 7


def multiply(a, b):
    if a is ZERO or b is ZERO:
        return ZERO
    y, x = a
    v, u = b
    if v[:len(x)] == x:
        return (y + v[len(x):], u)
    if x[:len(v)] == v:
        return (y, u + x[len(v):])
    return ZERO


def product_of(*xs):
    out = ONE
    for x in xs:
        out = multiply(out, x)
    return out


def inverse(a):
    return ZERO if a is ZERO else (a[1], a[0])


def length(a):
    return 1 if a is ZERO else len(a[0]) + len(a[1])


def gen(i):
    return ((i,), ())


def gen_inv(i):
    return ((), (i,))


def cyclic_reduce(a):
    if a is ZERO:
        return ZERO
    y, x = a
    k = 0
    while k < min(len(y), len(x)) and y[k] == x[k]:
        k += 1
    return (y[k:], x[k:])


def rho(a):
    """Normal form of x^-1 y for a = y x^-1."""
    if a is ZERO:
        return ZERO
    y, x = a
    return multiply(((), x), (y, ()))


def _positive(a):
    return a is not ZERO and not a[1]


def _negative(a):
    return a is not ZERO and not a[0]


def _rotations(w):
    return {w[i:] + w[:i] for i in range(len(w))} if w else {w}


def is_rotation(u, v):
    return len(u) == len(v) and v in _rotations(u)


def poly_conj(rel, a, b):
    rel = rel.upper().replace("*", "STAR")
    ta, tb = cyclic_reduce(a), cyclic_reduce(b)
    if rel == "N":
        return (a is ZERO and b is ZERO) or (a is not ZERO and b is not ZERO and ta == tb)
    if rel == "C":
        if a is ZERO or b is ZERO:
            return a is ZERO and b is ZERO
        if ta == tb:
            return True
        return _negative(ta) and _negative(tb) and is_rotation(ta[1], tb[1])
    if rel == "P":
        ra, rb = rho(a), rho(b)
        if (a is ZERO and rb is ZERO) or (ra is ZERO and b is ZERO):
            return True
        if ra is ZERO and rb is ZERO and ta == tb:
            return True
        if _positive(ta) and _positive(tb) and is_rotation(ta[0], tb[0]):
            return True
        return _negative(ta) and _negative(tb) and is_rotation(ta[1], tb[1])
    if rel == "PSTAR":
        if rho(a) is ZERO and rho(b) is ZERO:
            return True
        if _positive(ta) and _positive(tb) and is_rotation(ta[0], tb[0]):
            return True
        return _negative(ta) and _negative(tb) and is_rotation(ta[1], tb[1])
    raise ParseError(f"polycyclic deciders cover n, c, p and pstar, not {rel!r}")


# ------------------------------------------------------------------ text I/O

def parse_element(text, n):
    text = text.strip()
    if text == "0":
        return ZERO
    if text == "1":
        return ONE
    if "/" in text:
        left, right = text.split("/", 1)
    else:
        left, right = text, ""

    def word(s):
        out = []
        for tok in s.split():
            if tok == "1":
                continue
            if not tok.startswith("p"):
                raise ParseError(f"bad generator {tok!r}")
            try:
                i = int(tok[1:])
            except ValueError:
                raise ParseError(f"bad generator {tok!r}") from None
            if not 1 <= i <= n:
                raise ParseError(f"generator {tok!r} outside p1..p{n}")
            out.append(i - 1)
        return tuple(out)

    return (word(left), word(right))


def format_element(a):
    if a is ZERO:
        return "0"
    y, x = a
    if not y and not x:
        return "1"

    def word(w):
        return " ".join(f"p{i + 1}" for i in w) or "1"

    return word(y) if not x else f"{word(y)} / {word(x)}"


# ------------------------------------------------------------ growth counts

def sigma(n, m):
    if m == 0:
        return 1
    if m == 1:
        return 2 * n + 1
    return (m + 1) * n ** m


def necklaces(n, m):
    """Rotation classes of words of length m over n letters."""
    if m == 0:
        return 1
    total = 0
    for d in sympy.divisors(m):
        total += sum(mobius(d // e) * n ** e for e in sympy.divisors(d)) // d
    return int(total)


def cgf(rel, n, m):
    rel = rel.lower().replace("*", "star")
    if rel == "sigma":
        return sigma(n, m)
    if m == 0:
        return 1
    if m == 1:
        return 2 * n + 1
    if rel == "n":
        return 2 * n ** m + (m - 1) * n ** (m - 1) * (n - 1)
    if rel == "c":
        return n ** m + (m - 1) * n ** (m - 1) * (n - 1) + necklaces(n, m)
    if rel == "pstar":
        return 2 * necklaces(n, m)
    raise ParseError(f"no growth formula for {rel!r}")


def growth_functions(n, M, rels=("sigma", "n", "c", "pstar")):
    return {r: [cgf(r, n, m) for m in range(M + 1)] for r in rels}


def _necklace_series_coeffs(n, M):
    """Coefficients of sum_{r,s>=1} n^r phi(s) z^{rs} / (rs), up to z^M."""
    out = [sympy.Rational(0)] * (M + 1)
    for r in range(1, M + 1):
        for s in range(1, M // r + 1):
            out[r * s] += sympy.Rational(n ** r * totient(s), r * s)
    return out


def _rational_coeffs(expr, z, M):
    poly = sympy.series(expr, z, 0, M + 1).removeO()
    return [sympy.Rational(poly.coeff(z, k)) for k in range(M + 1)]


def series_coefficients(rel, n, M):
    z = sympy.symbols("z")
    rel = rel.lower().replace("*", "star")
    neck = _necklace_series_coeffs(n, M)
    if rel == "sigma":
        # the zero adds z to the series of words y x^-1
        out = _rational_coeffs(1 / (1 - n * z) ** 2 + z, z, M)
    elif rel == "n":
        out = _rational_coeffs(z + (1 - n * z ** 2) / (1 - n * z) ** 2, z, M)
    elif rel == "n_squared":
        out = _rational_coeffs(z + (1 - n * z ** 2) / (1 - n * z ** 2) ** 2, z, M)
    elif rel == "c":
        base = _rational_coeffs(1 / (1 - n * z) + z + (n ** 2 - n) * z ** 2 / (1 - n * z) ** 2, z, M)
        out = [b + c for b, c in zip(base, neck)]
    elif rel == "pstar":
        out = [2 * c for c in neck]
        out[0] += 1
        if M >= 1:
            out[1] += 1
    else:
        raise ParseError(f"no growth series for {rel!r}")
    if any(c.q != 1 for c in out):
        raise ValueError("series has a non-integer coefficient")
    return [int(c) for c in out]


# ------------------------------------------------------------- ball oracle

@lru_cache(maxsize=None)
def words(n, max_len):
    out = []
    for k in range(max_len + 1):
        out += list(product(range(n), repeat=k))
    return out


@lru_cache(maxsize=None)
def ball(n, M):
    """All elements of length <= M, zero included when M >= 1."""
    if M > MAX_BALL:
        raise BoundExceeded(f"ball radius {M} above the bound {MAX_BALL}")
    out = []
    for k in range(M + 1):
        for i in range(k + 1):
            for y in product(range(n), repeat=i):
                for x in product(range(n), repeat=k - i):
                    out.append((y, x))
    if M >= 1:
        out.append(ZERO)
    return out


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _prefixes(w):
    return [w[:k] for k in range(len(w) + 1)]


def _n_edges(n, M, elems):
    """Pairs (a, b) with b = g^-1 a g and a = g b g^-1, g = g+ g-^-1.

    g+ ranges over prefixes of a+ and a- (a nonzero product forces g+ to be
    prefix comparable with both); g- over words short enough that the
    conjugate stays inside the ball.
    """
    inball = set(elems)
    for a in elems:
        if a is ZERO:
            continue
        y, x = a
        for gp in set(_prefixes(y)) | set(_prefixes(x)):
            c = product_of(((), gp), a, (gp, ()))
            if c is ZERO:
                continue
            room = (M - length(c)) // 2
            for gm in words(n, max(room, 0)):
                g = (gp, gm)
                b = product_of(inverse(g), a, g)
                if b in inball and b is not ZERO and product_of(g, b, inverse(g)) == a:
                    yield a, b


def _p_edges(n, M, elems):
    """Pairs (uv, vu) over all factorizations of each nonzero a = uv."""
    inball = set(elems)
    room = M // 2
    for a in elems:
        if a is ZERO:
            continue
        y, x = a
        # v+ = u- z with u+ z = y, v- = x
        for k in range(len(y) + 1):
            up, z = y[:k], y[k:]
            for um in words(n, room):
                u, v = (up, um), (um + z, x)
                if multiply(u, v) == a:
                    b = multiply(v, u)
                    if b in inball:
                        yield a, b
        # u- = v+ z (z nonempty) with u+ = y, v- z = x
        for k in range(len(x)):
            vm, z = x[:k], x[k:]
            for vp in words(n, room):
                u, v = (y, vp + z), (vp, vm)
                if multiply(u, v) == a:
                    b = multiply(v, u)
                    if b in inball:
                        yield a, b


def p_set(a, n, max_len):
    """{g in P_n : ma != 0 implies mag != 0 for every m}, restricted to |g-| <= max_len.

    For a = y x^-1 this is g+ g-^-1 with g+ a prefix of x (a short argument from
    the multiplication rule: g+ must be comparable with every extension of x).
    """
    if a is ZERO:
        return [ONE]
    return [(gp, gm) for gp in _prefixes(a[1]) for gm in words(n, max_len)]


def _solve_left(g, t):
    """All b with g b = t (g, t nonzero)."""
    gp, gm = g
    tp, tm = t
    out = []
    # b+ = g- s: g b = g+ s b-^-1
    if tp[:len(gp)] == gp:
        s = tp[len(gp):]
        out.append((gm + s, tm))
    # g- = b+ s with s nonempty: g b = g+ (b- s)^-1
    if tp == gp:
        for k in range(len(gm)):
            bp, s = gm[:k], gm[k:]
            if tm[len(tm) - len(s):] == s and len(tm) >= len(s):
                out.append((bp, tm[:len(tm) - len(s)]))
    return out


def _c_half(n, M, a, inball):
    """All b in the ball with ag = gb for some g in p(a)."""
    found = set()
    if a is ZERO:
        return {ZERO}
    for g in p_set(a, n, M):
        t = multiply(a, g)
        if t is ZERO:
            continue
        for b in _solve_left(g, t):
            if b in inball and multiply(g, b) == t:
                found.add(b)
    return found


def ball_classes(rel, n, M):
    """Classes of the ball under the relation, by verified conjugator search."""
    rel = rel.lower().replace("*", "star")
    elems = ball(n, M)
    dsu = _DSU(elems)
    if rel == "n":
        for a, b in _n_edges(n, M, elems):
            dsu.union(a, b)
    elif rel in ("p", "pstar"):
        for a, b in _p_edges(n, M, elems):
            dsu.union(a, b)
    elif rel == "c":
        inball = set(elems)
        # c is an equivalence containing n, so pairs of cyclically reduced representatives suffice
        for a, b in _n_edges(n, M, elems):
            dsu.union(a, b)
        reps = [a for a in elems if a is ZERO or cyclic_reduce(a) == a]
        half = {a: _c_half(n, M, a, inball) for a in reps}
        for a in reps:
            for b in half[a]:
                if b in half and a in half[b]:
                    dsu.union(a, b)
    else:
        raise ParseError(f"no ball oracle for {rel!r}")
    classes = {}
    for a in elems:
        classes.setdefault(dsu.find(a), []).append(a)
    return list(classes.values())


def ball_oracle(n, M, rel):
    """Number of classes whose shortest member has length exactly m, m = 0..M."""
    rel = rel.lower().replace("*", "star")
    if rel == "sigma":
        counts = [0] * (M + 1)
        for a in ball(n, M):
            counts[length(a)] += 1
        return counts
    counts = [0] * (M + 1)
    for cls in ball_classes(rel, n, M):
        counts[min(length(a) for a in cls)] += 1
    return counts
