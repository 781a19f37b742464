"""Partition, partial Brauer and Brauer diagrams.

Points 0..n-1 are the top row {1..n}; points n..2n-1 are the bottom row
{1'..n'}.  A diagram is stored as a restricted growth string over the 2n
points, so equal diagrams have equal encodings.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations

import networkx as nx

from .errors import BoundExceeded, ParseError, SizeMismatch
from .semigroup import CayleyTable

MAX_ENUM = 5000


def _rgs(labels):
    remap = {}
    return tuple(remap.setdefault(x, len(remap)) for x in labels)


@dataclass(frozen=True)
class Diagram:
    n: int
    lab: tuple

    @classmethod
    def from_blocks(cls, n, blocks):
        lab = [-1] * (2 * n)
        for i, b in enumerate(blocks):
            for p in b:
                if not 0 <= p < 2 * n or lab[p] != -1:
                    raise ParseError(f"point {p} repeated or out of range")
                lab[p] = i
        if -1 in lab:
            raise ParseError("blocks do not cover every point")
        return cls(n, _rgs(lab))

    @cached_property
    def blocks(self):
        out = {}
        for p, c in enumerate(self.lab):
            out.setdefault(c, []).append(p)
        return tuple(frozenset(b) for b in out.values())

    def block_of(self, p):
        c = self.lab[p]
        return frozenset(q for q, d in enumerate(self.lab) if d == c)

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return format_diagram(self)

    @property
    def transversals(self):
        n = self.n
        return [b for b in self.blocks if min(b) < n <= max(b)]

    @property
    def rank(self):
        return len(self.transversals)

    @property
    def is_brauer(self):
        return all(len(b) == 2 for b in self.blocks)

    @property
    def is_partial_brauer(self):
        return all(len(b) <= 2 for b in self.blocks)

    def act(self, sigma):
        """a^sigma: x -> x sigma on both rows."""
        n = self.n
        lab = [0] * (2 * n)
        for p, c in enumerate(self.lab):
            q = sigma[p] if p < n else n + sigma[p - n]
            lab[q] = c
        return Diagram(n, _rgs(lab))

    def power(self, k):
        out = self
        for _ in range(k - 1):
            out = out * self
        return out


def identity(n):
    return Diagram(n, _rgs([i % n for i in range(2 * n)]))


def multiply(a, b):
    if a.n != b.n:
        raise SizeMismatch(f"diagrams of size {a.n} and {b.n}")
    n = a.n
    parent = list(range(3 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    # a on points 0..2n-1 (bottom row = middle), b on n..3n-1 (top row = middle)
    first = {}
    for p, c in enumerate(a.lab):
        if c in first:
            union(first[c], p)
        else:
            first[c] = p
    first = {}
    for p, c in enumerate(b.lab):
        q = p + n
        if c in first:
            union(first[c], q)
        else:
            first[c] = q
    keep = list(range(n)) + list(range(2 * n, 3 * n))
    return Diagram(n, _rgs([find(p) for p in keep]))


# ----------------------------------------------------------------- text I/O

def _parse_point(tok, n):
    tok = tok.strip()
    primed = tok.endswith("'")
    try:
        x = int(tok.rstrip("'"))
    except ValueError:
        raise ParseError(f"bad point {tok!r}") from None
    if not 1 <= x <= n:
        raise ParseError(f"point {tok!r} outside 1..{n}")
    return x - 1 + (n if primed else 0)


def parse_diagram(text):
    if ";" not in text:
        raise ParseError("diagram literal must look like 'n; {1,2'}{...}'")
    head, body = text.split(";", 1)
    try:
        n = int(head.strip())
    except ValueError:
        raise ParseError(f"bad diagram size {head!r}") from None
    blocks = []
    body = body.strip()
    while body:
        if not body.startswith("{") or "}" not in body:
            raise ParseError(f"expected a block in braces at {body!r}")
        end = body.index("}")
        inner = body[1:end]
        blocks.append([_parse_point(t, n) for t in inner.split(",") if t.strip()])
        body = body[end + 1:].strip()
    return Diagram.from_blocks(n, blocks)


def format_point(p, n):
    return f"{p + 1}" if p < n else f"{p - n + 1}'"


def format_diagram(a):
    n = a.n
    parts = []
    for b in sorted(a.blocks, key=min):
        parts.append("{" + ",".join(format_point(p, n) for p in sorted(b)) + "}")
    return f"{n}; " + "".join(parts)


# -------------------------------------------------------------- enumeration

def _set_partitions(m):
    lab = [0] * m

    def rec(i, k):
        if i == m:
            yield tuple(lab)
            return
        for c in range(k + 1):
            lab[i] = c
            yield from rec(i + 1, max(k, c + 1))

    if m == 0:
        yield ()
        return
    yield from rec(1, 1)


def _matchings(points, partial):
    if not points:
        yield []
        return
    p, rest = points[0], points[1:]
    if partial:
        for m in _matchings(rest, partial):
            yield [(p,)] + m
    for i, q in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1:], partial):
            yield [(p, q)] + m


def enumerate_diagrams(kind, n, bound=MAX_ENUM):
    kind = kind.upper()
    size = diagram_count(kind, n)
    if size > bound:
        raise BoundExceeded(f"{kind}_{n} has {size} elements, above the bound {bound}")
    if kind == "P":
        out = [Diagram(n, lab) for lab in _set_partitions(2 * n)]
    elif kind in ("B", "PB"):
        out = [Diagram.from_blocks(n, m) for m in _matchings(list(range(2 * n)), kind == "PB")]
    else:
        raise ParseError(f"unknown diagram kind {kind!r}")
    return sorted(out, key=lambda d: d.lab)


def _bell(m):
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def diagram_count(kind, n):
    kind = kind.upper()
    if kind == "P":
        return _bell(2 * n)
    if kind == "B":
        out = 1
        for k in range(1, 2 * n, 2):
            out *= k
        return out if n > 0 else 1
    if kind == "PB":
        # involutions on 2n points
        a, b = 1, 1
        for m in range(2, 2 * n + 1):
            a, b = b, b + (m - 1) * a
        return b if n > 0 else 1
    raise ParseError(f"unknown diagram kind {kind!r}")


def cayley(diagrams):
    diagrams = list(diagrams)
    index = {d: i for i, d in enumerate(diagrams)}
    k = len(diagrams)
    table = [[index[x * y] for y in diagrams] for x in diagrams]
    ident = index.get(identity(diagrams[0].n))
    zero = None
    for z in range(k):
        if all(table[z][x] == z and table[x][z] == z for x in range(k)):
            zero = z
            break
    return CayleyTable(table, ident, zero, [str(d) for d in diagrams])


@lru_cache(maxsize=None)
def monoid(kind, n):
    """Elements and Cayley table of P_n, PB_n or B_n."""
    ds = enumerate_diagrams(kind, n)
    return ds, cayley(ds)


# ----------------------------------------------------------------- statistics

@dataclass(frozen=True)
class DiagramStats:
    kernel: frozenset
    cokernel: frozenset
    domain: frozenset
    codomain_hat: frozenset
    ker_t: frozenset
    coker_t: frozenset
    rank: int


def stats(a):
    n = a.n
    ker, coker = set(), set()
    dom, codom = set(), set()
    for b in a.blocks:
        top = frozenset(p for p in b if p < n)
        bot = frozenset(p - n for p in b if p >= n)
        if top:
            ker.add(top)
        if bot:
            coker.add(bot)
        if top and bot:
            dom |= top
            codom |= bot
    ker_t = frozenset(A for A in ker if A <= dom)
    coker_t = frozenset(B for B in coker if B <= codom)
    return DiagramStats(frozenset(ker), frozenset(coker), frozenset(dom), frozenset(codom),
                        ker_t, coker_t, a.rank)


def _join_classes(a, cols=None):
    """Blocks of ker(a) v coker^(a), optionally restricted to a column set."""
    n = a.n
    cols = set(range(n)) if cols is None else set(cols)
    g = nx.Graph()
    g.add_nodes_from(cols)
    for b in a.blocks:
        top = [p for p in b if p < n and p in cols]
        bot = [p - n for p in b if p >= n and p - n in cols]
        for row in (top, bot):
            for x, y in zip(row, row[1:]):
                g.add_edge(x, y)
    return [frozenset(c) for c in nx.connected_components(g)]


def is_group_element(a):
    n = a.n
    trans = a.transversals
    for P in _join_classes(a):
        top_hits = sum(1 for t in trans if any(p < n and p in P for p in t))
        bot_hits = sum(1 for t in trans if any(p >= n and p - n in P for p in t))
        if top_hits == 0 and bot_hits == 0:
            continue
        if top_hits == 1 and bot_hits == 1:
            continue
        return False
    return True


def is_idempotent(a):
    return a * a == a


def omega_powers(a):
    """(a^omega, a^(omega+1)) by iterating the power sequence."""
    seen = {}
    powers = [None]
    x, k = a, 1
    while x not in seen:
        seen[x] = k
        powers.append(x)
        x = x * a
        k += 1
    i = seen[x]
    p = k - i
    w = p * (-(-i // p))

    def pw(e):
        return powers[i + (e - i) % p]

    return pw(w), pw(w + 1)


def cycle_type(u):
    """Cycle type of a group element, as (k_1, .., k_m), or (0,) when m = 0."""
    n = u.n
    classes = _join_classes(u)
    where = {x: i for i, P in enumerate(classes) for x in P}
    tau = {}
    for t in u.transversals:
        i = where[min(p for p in t if p < n)]
        j = where[min(p - n for p in t if p >= n)]
        tau[i] = j
    m = len(tau)
    if m == 0:
        return (0,)
    counts = [0] * m
    seen = set()
    for s in tau:
        if s in seen:
            continue
        length, x = 0, s
        while x not in seen:
            seen.add(x)
            x = tau[x]
            length += 1
        counts[length - 1] += 1
    return tuple(counts)


def cycle_type_omega_plus_one(a):
    return cycle_type(omega_powers(a)[1])


def _padded(ct, n):
    if ct == (0,):
        return (0,) * n
    return tuple(ct) + (0,) * (n - len(ct))


# ------------------------------------------------------------ conjugacy deciders

def conj_tr_diagram(a, b):
    if a.n != b.n:
        raise SizeMismatch("diagrams of different size")
    return cycle_type_omega_plus_one(a) == cycle_type_omega_plus_one(b)


def conj_o_diagram(a, b, kind):
    if a.n != b.n:
        raise SizeMismatch("diagrams of different size")
    if kind.upper() in ("P", "PB"):
        return True
    n = a.n
    k = _padded(cycle_type_omega_plus_one(a), n)
    l = _padded(cycle_type_omega_plus_one(b), n)
    return all(k[i] % 2 == l[i] % 2 for i in range(0, n, 2))


def _has_zero(kind, n):
    # a zero exists iff the minimal ideal (the minimal-rank D-class) is a single element
    if n > 4:
        return False
    ds = enumerate_diagrams(kind, n)
    r = min(d.rank for d in ds)
    return sum(1 for d in ds if d.rank == r) == 1


def conj_c_diagram(a, b, kind):
    if a.n != b.n:
        raise SizeMismatch("diagrams of different size")
    if not _has_zero(kind, a.n):
        return conj_o_diagram(a, b, kind)
    from .conjugacy import decide

    ds, S = monoid(kind.upper(), a.n)
    index = {d: i for i, d in enumerate(ds)}
    return decide("C", S, index[a], index[b]) is not None


# ------------------------------------------------------------ n-normal forms

def _col_graph_connected(a, A):
    return len(_join_classes(a, A)) == 1


def _restricted_blocks(a, A):
    n = a.n
    pts = set(A) | {x + n for x in A}
    out = []
    for b in a.blocks:
        r = b & pts
        if r:
            out.append((b, frozenset(r)))
    return out


def _subsets(n, min_size=2):
    out = []
    for k in range(n, min_size - 1, -1):
        out.extend(combinations(range(n), k))
    return out


def _p_violation(a):
    """First subset violating the partition normal form, with the lemma to apply."""
    n = a.n
    for A in _subsets(n):
        if not _col_graph_connected(a, A):
            continue
        rb = _restricted_blocks(a, A)
        trans = [(b, r) for b, r in rb if min(r) < n <= max(r)]
        if not trans:
            ext_up = [(b, r) for b, r in rb if b != r and max(r) < n]
            ext_lo = [(b, r) for b, r in rb if b != r and min(r) >= n]
            if len(ext_up) <= 1 and len(ext_lo) <= 1:
                ups = ext_up or sorted([(b, r) for b, r in rb if max(r) < n], key=lambda br: min(br[1]))
                los = ext_lo or sorted([(b, r) for b, r in rb if min(r) >= n], key=lambda br: min(br[1]))
                return "2-bridge", A, ups[0], los[0]
        elif len(trans) == 1:
            s = trans[0]
            if all(b == r for b, r in rb if (b, r) != s):
                return "1-bridge", A, s, None
    return None


def _diagram_from_partial(n, blocks):
    """Blocks given for some points; every other top/bottom pair x, x' is a block."""
    covered = set().union(*blocks) if blocks else set()
    full = list(blocks)
    for x in range(n):
        if x not in covered and x + n not in covered:
            full.append({x, x + n})
        elif x not in covered or x + n not in covered:
            raise ValueError("partial block list leaves a point uncovered")
    return Diagram.from_blocks(n, full)


def _bridge_conjugators(a, lemma, A, s, t):
    n = a.n
    y = min(A)
    Aset = set(A)
    Ap = {x + n for x in A}
    g_blocks, h_blocks = [], []
    if lemma == "2-bridge":
        sb, sA = s
        tb, tA = t
        for b, r in _restricted_blocks(a, A):
            if max(r) < n and r != sA:
                g_blocks.append(set(r))
            if min(r) >= n and r != tA:
                h_blocks.append(set(r))
        g_blocks.append(set(sA) | {y + n})
        g_blocks += [{p} for p in Ap if p != y + n]
        h_blocks.append(set(tA) | {y})
        h_blocks += [{x} for x in Aset if x != y]
    else:
        sb, sA = s
        s_top = {p for p in sA if p < n}
        s_bot = {p for p in sA if p >= n}
        for b, r in _restricted_blocks(a, A):
            if r == sA:
                continue
            if max(r) < n:
                g_blocks.append(set(r))
            else:
                h_blocks.append(set(r))
        g_blocks.append(s_top | {y + n})
        g_blocks += [{p} for p in Ap if p != y + n]
        h_blocks.append(s_bot | {y})
        h_blocks += [{x} for x in Aset if x != y]
    return _diagram_from_partial(n, g_blocks), _diagram_from_partial(n, h_blocks)


def _b_violation(a):
    """Lexicographically first (x, y, z) with blocks {x,y}, {y',z'} and z != x."""
    n = a.n
    for x in range(n):
        for y in range(n):
            if y == x or a.lab[x] != a.lab[y]:
                continue
            for z in range(n):
                if z in (x, y):
                    continue
                if a.lab[y + n] == a.lab[z + n]:
                    return x, y, z
    return None


def _pb_collapse(a):
    """First two-column component with no transversal and no block leaving it.

    Such a component ({x,y} over singletons, singletons under {x',y'}, or both
    pairs) is conjugate in PB_n to the all-singleton pattern on its columns.
    """
    n = a.n
    for x, y in combinations(range(n), 2):
        up = a.lab[x] == a.lab[y]
        lo = a.lab[x + n] == a.lab[y + n]
        if not (up or lo):
            continue
        cols = {x, y, x + n, y + n}
        if all(b <= cols for b in a.blocks if b & cols) and any(len(b) == 2 for b in a.blocks if b & cols):
            if not any(min(b) < n <= max(b) for b in a.blocks if b & cols):
                return x, y, up, lo
    return None


def _pb_collapse_conjugators(a, x, y, up, lo):
    n = a.n
    g = [{x, y}] if up else [{x}, {y}]
    g += [{x + n}, {y + n}]
    h = [{x + n, y + n}] if lo else [{x + n}, {y + n}]
    h += [{x}, {y}]
    return _diagram_from_partial(n, g), _diagram_from_partial(n, h)


def _b_conjugators(a, x, y, z):
    n = a.n
    g = _diagram_from_partial(n, [{x, y}, {z, z + n}, {x + n, y + n}])
    h = _diagram_from_partial(n, [{x, y}, {z, x + n}, {y + n, z + n}])
    return g, h


@dataclass(frozen=True)
class NormalForm:
    diagram: Diagram
    steps: tuple  # (before, after, g, h) with g, h witnessing before ~n after


def check_n_step(b, c, g, h):
    """The equations ag=gb, bh=ha, hag=b, gbh=a for a=b (before), b=c (after)."""
    return b * g == g * c and c * h == h * b and h * b * g == c and g * c * h == b


def normalize_n(a, kind="P"):
    kind = kind.upper()
    steps = []
    cur = a
    limit = 4 * a.n * a.n + 4
    for _ in range(limit):
        if kind == "B":
            v = _b_violation(cur)
            if v is None:
                break
            g, h = _b_conjugators(cur, *v)
        elif kind == "PB":
            v = _b_violation(cur)
            if v is not None:
                g, h = _b_conjugators(cur, *v)
            else:
                v = _pb_collapse(cur)
                if v is None:
                    break
                g, h = _pb_collapse_conjugators(cur, *v)
        else:
            v = _p_violation(cur)
            if v is None:
                break
            g, h = _bridge_conjugators(cur, *v)
        nxt = h * cur * g
        steps.append((cur, nxt, g, h))
        cur = nxt
    else:
        raise RuntimeError("normal form rewriting did not terminate")
    return NormalForm(cur, tuple(steps))


def is_normal(a, kind="P"):
    kind = kind.upper()
    n = a.n
    if kind == "P":
        return _p_violation(a) is None
    if kind == "PB":
        return _b_violation(a) is None and _pb_collapse(a) is None
    trans_pts = set().union(*a.transversals) if a.transversals else set()
    for b in a.blocks:
        if len(b) != 2:
            continue
        p, q = sorted(b)
        if q < n:
            mirror = {p + n, q + n}
            ok = p + n in trans_pts and q + n in trans_pts
            ok = ok or a.block_of(p + n) == frozenset(mirror)
            if not ok:
                return False
        elif p >= n:
            mirror = {p - n, q - n}
            ok = p - n in trans_pts and q - n in trans_pts
            ok = ok or a.block_of(p - n) == frozenset(mirror)
            if not ok:
                return False
    return True


def orbit_key(a):
    """Least encoding of a^sigma over sigma in S_n."""
    return min(a.act(s).lab for s in permutations(range(a.n)))


def _diagram_graph(a):
    n = a.n
    g = nx.Graph()
    for p in range(2 * n):
        g.add_node(("pt", p), kind="top" if p < n else "bot")
    for i, b in enumerate(a.blocks):
        g.add_node(("blk", i), kind="blk")
        for p in b:
            g.add_edge(("blk", i), ("pt", p), kind="in")
    for x in range(n):
        g.add_edge(("pt", x), ("pt", x + n), kind="col")
    return g


def same_orbit(a, b):
    if a.n != b.n:
        raise SizeMismatch("diagrams of different size")
    if a.n <= 7:
        return orbit_key(a) == orbit_key(b)
    match = nx.algorithms.isomorphism.categorical_node_match("kind", None)
    ematch = nx.algorithms.isomorphism.categorical_edge_match("kind", None)
    return nx.is_isomorphic(_diagram_graph(a), _diagram_graph(b), node_match=match, edge_match=ematch)


def conj_n_diagram(a, b, kind="P"):
    if a.n != b.n:
        raise SizeMismatch("diagrams of different size")
    return same_orbit(normalize_n(a, kind).diagram, normalize_n(b, kind).diagram)


def n_class_key(a, kind="P"):
    return orbit_key(normalize_n(a, kind).diagram)
