"""Finite semigroups given by Cayley tables.

Elements are the integers ``0 .. order-1``; ``table[a, b]`` is ``a*b``.
When a semigroup has no identity, ``S^1`` is realised by appending one
extra element with index ``order``.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import AllZeroRowOrColumn, IndexOutOfRange, NonAssociative, ParseError


def _first_identity(t):
    n = t.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            return e
    return None


def _first_zero(t):
    n = t.shape[0]
    for z in range(n):
        if (t[z] == z).all() and (t[:, z] == z).all():
            return z
    return None


def check_associative(t):
    n = t.shape[0]
    for a in range(n):
        lhs = t[t[a]]      # (a*b)*c indexed [b, c]
        rhs = t[a][t]      # a*(b*c)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            raise NonAssociative(a, int(b), int(c))


def normalize_labels(lab):
    """Relabel classes 0, 1, ... in order of their smallest member."""
    lab = np.asarray(lab)
    _, first = np.unique(lab, return_index=True)
    order = np.argsort(first)
    remap = np.empty(len(first), dtype=np.int64)
    remap[order] = np.arange(len(first))
    _, inv = np.unique(lab, return_inverse=True)
    return remap[inv]


def labels_to_classes(lab):
    lab = normalize_labels(lab)
    out = [[] for _ in range(int(lab.max()) + 1 if len(lab) else 0)]
    for i, c in enumerate(lab):
        out[c].append(i)
    return [tuple(c) for c in out]


def components(n, src, dst, strong=False):
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    g = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, lab = connected_components(g, directed=strong, connection="strong" if strong else "weak")
    return normalize_labels(lab)


class CayleyTable:
    """An associative multiplication table, immutable after construction."""

    def __init__(self, table, identity=None, zero=None, labels=None):
        t = np.array(table, dtype=np.int32)
        t.setflags(write=False)
        self.table = t
        self.order = t.shape[0]
        self.identity = identity
        self.zero = zero
        if labels is None:
            labels = [str(i) for i in range(self.order)]
        self.labels = tuple(labels)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"CayleyTable(order={self.order}, identity={self.identity}, zero={self.zero})"

    def mul(self, a, b):
        return int(self.table1[a, b])

    def product(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = int(self.table1[out, x])
        return out

    def label(self, i):
        if i == self.order and self.identity is None:
            return "1"
        return self.labels[i]

    def index_of(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            pass
        if label == "1" and self.identity is None:
            return self.order
        try:
            i = int(label)
        except ValueError:
            raise IndexOutOfRange(f"unknown element {label!r}") from None
        if not 0 <= i < self.order1:
            raise IndexOutOfRange(f"element {i} out of range")
        return i

    @property
    def is_monoid(self):
        return self.identity is not None

    @cached_property
    def table1(self):
        if self.identity is not None:
            return self.table
        n = self.order
        t = np.empty((n + 1, n + 1), dtype=np.int32)
        t[:n, :n] = self.table
        t[n, :] = np.arange(n + 1)
        t[:, n] = np.arange(n + 1)
        t.setflags(write=False)
        return t

    @property
    def one(self):
        return self.identity if self.identity is not None else self.order

    @property
    def order1(self):
        return self.table1.shape[0]

    def power(self, a, k):
        x = a
        for _ in range(k - 1):
            x = int(self.table1[x, a])
        return x

    @cached_property
    def idempotents(self):
        t = self.table
        return np.flatnonzero(t[np.arange(self.order), np.arange(self.order)] == np.arange(self.order))

    @cached_property
    def epigroup1(self):
        return _epigroup(self.table1)

    @cached_property
    def green(self):
        return green_relations(self)

    @cached_property
    def units1(self):
        """Units of S^1 and their inverses, as two aligned arrays."""
        t = self.table1
        one = self.one
        us, inv = [], []
        for u in range(self.order1):
            vs = np.flatnonzero((t[u] == one) & (t[:, u] == one))
            if len(vs):
                us.append(u)
                inv.append(int(vs[0]))
        return np.array(us, dtype=np.int64), np.array(inv, dtype=np.int64)

    @cached_property
    def is_inverse(self):
        return is_inverse_semigroup(self)

    @cached_property
    def is_completely_regular(self):
        ep = self.epigroup1
        n = self.order
        return bool((ep.omega_plus_one[:n] == np.arange(n)).all())


def build_semigroup(raw, labels=None, identity=None, zero=None, check=True):
    """Validate a raw table and return a CayleyTable with identity/zero detected."""
    try:
        t = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise IndexOutOfRange(f"table is not a rectangular integer matrix: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise IndexOutOfRange(f"table must be a non-empty square matrix, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise IndexOutOfRange(f"entry at {tuple(int(x) for x in bad)} is outside 0..{n - 1}")
    if labels is not None and len(labels) != n:
        raise IndexOutOfRange(f"expected {n} labels, got {len(labels)}")
    if check:
        check_associative(t)
    found_id = _first_identity(t)
    found_zero = _first_zero(t)
    if identity is not None and identity != found_id:
        raise IndexOutOfRange(f"element {identity} is not an identity")
    if zero is not None and zero != found_zero:
        raise IndexOutOfRange(f"element {zero} is not a zero")
    return CayleyTable(t, found_id, found_zero, labels)


# ---------------------------------------------------------------- Green

@dataclass(frozen=True)
class GreenData:
    r: np.ndarray
    l: np.ndarray
    h: np.ndarray
    d: np.ndarray
    j: np.ndarray

    def classes(self, kind):
        return labels_to_classes(getattr(self, kind.lower()))


def green_relations(S):
    n = S.order
    t = S.table
    src = np.repeat(np.arange(n), n)
    r = components(n, src, t.ravel(), strong=True)
    l = components(n, src, t.T.ravel(), strong=True)
    j = components(n, np.concatenate([src, src]), np.concatenate([t.ravel(), t.T.ravel()]), strong=True)
    h = normalize_labels(r * n + l)
    rep_r = np.array([np.flatnonzero(r == c)[0] for c in r])
    rep_l = np.array([np.flatnonzero(l == c)[0] for c in l])
    ar = np.arange(n)
    d = components(n, np.concatenate([ar, ar]), np.concatenate([rep_r, rep_l]))
    return GreenData(r, l, h, d, j)


def natural_partial_order(S):
    """Boolean matrix ``le`` with ``le[a, b]`` iff a <= b."""
    t = S.table1
    n = S.order
    le = np.zeros((n, n), dtype=bool)
    for a in range(n):
        s = t[:, a] == a
        left = (t[s][:, :n] == a).any(axis=0)
        u = t[a] == a
        right = (t[:n][:, u] == a).any(axis=1)
        le[a] = left & right
    return le


# ------------------------------------------------------------- epigroups

@dataclass(frozen=True)
class EpigroupData:
    index: np.ndarray
    omega: np.ndarray
    pseudo_inverse: np.ndarray
    omega_plus_one: np.ndarray
    period: np.ndarray


def _epigroup(t):
    m = t.shape[0]
    index = np.zeros(m, dtype=np.int64)
    period = np.zeros(m, dtype=np.int64)
    omega = np.zeros(m, dtype=np.int64)
    pinv = np.zeros(m, dtype=np.int64)
    op1 = np.zeros(m, dtype=np.int64)
    for a in range(m):
        seen = {}
        powers = [None]
        x, k = a, 1
        while x not in seen:
            seen[x] = k
            powers.append(x)
            x = int(t[x, a])
            k += 1
        i = seen[x]
        p = k - i
        w = p * (-(-i // p))  # least multiple of p that is >= i
        def pw(e):
            return powers[i + (e - i) % p]
        index[a], period[a] = i, p
        omega[a] = pw(w)
        op1[a] = pw(w + 1)
        pinv[a] = pw(w + p - 1) if p > 1 else pw(w)
    return EpigroupData(index, omega, pinv, op1, period)


def epigroup_data(S):
    ep = S.epigroup1
    n = S.order
    return EpigroupData(ep.index[:n], ep.omega[:n], ep.pseudo_inverse[:n], ep.omega_plus_one[:n], ep.period[:n])


# ---------------------------------------------------------- constructions

def _sub_table(S, elems):
    elems = sorted(set(int(e) for e in elems))
    pos = {e: i for i, e in enumerate(elems)}
    t1 = S.table1
    raw = [[pos[int(t1[a, b])] for b in elems] for a in elems]
    labels = [S.label(e) for e in elems]
    return build_semigroup(raw, labels=labels, check=False), tuple(elems)


def subsemigroup(S, seeds):
    """Closure of ``seeds`` (indices of S^1) under the product, with its embedding."""
    t1 = S.table1
    elems = set(int(s) for s in seeds)
    frontier = list(elems)
    while frontier:
        new = []
        for x in frontier:
            for y in list(elems):
                for z in (int(t1[x, y]), int(t1[y, x])):
                    if z not in elems:
                        elems.add(z)
                        new.append(z)
        frontier = new
    return _sub_table(S, elems)


def centralizer(S, a):
    t = S.table
    elems = np.flatnonzero(t[a] == t[:, a])
    return _sub_table(S, elems)


def adjoin_identity(S):
    if S.identity is not None:
        return S
    return CayleyTable(S.table1, S.order, S.zero, list(S.labels) + ["1"])


def units_group(S):
    us, _ = S.units1
    return _sub_table(S, us)


def is_inverse_semigroup(S):
    t = S.table
    n = S.order
    ar = np.arange(n)
    for a in range(n):
        aba = t[t[a], a]        # a*b*a over b
        bab = t[t[:, a], ar]    # b*a*b over b
        if int(((aba == a) & (bab == ar)).sum()) != 1:
            return False
    return True


def direct_product(S, T):
    n, m = S.order, T.order
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    raw = S.table[a[:, None], a[None, :]] * m + T.table[b[:, None], b[None, :]]
    labels = [f"({S.labels[x]},{T.labels[y]})" for x, y in zip(a, b)]
    return build_semigroup(raw, labels=labels, check=False)


def cyclic_group(k):
    ar = np.arange(k)
    return build_semigroup((ar[:, None] + ar[None, :]) % k, check=False)


def group_inverse(G):
    e = G.identity
    t = G.table
    inv = []
    for g in range(G.order):
        hs = np.flatnonzero((t[g] == e) & (t[:, g] == e))
        if not len(hs):
            return None
        inv.append(int(hs[0]))
    return inv


@dataclass(frozen=True)
class ReesMatrixSpec:
    """Group, index set sizes, and a Lambda x I sandwich matrix (None = zero)."""
    group: CayleyTable
    i_size: int
    lambda_size: int
    sandwich: tuple


def rees_matrix_semigroup(spec, with_zero=False):
    G = spec.group
    if G.identity is None or group_inverse(G) is None:
        raise IndexOutOfRange("sandwich group must be a group")
    P = [list(row) for row in spec.sandwich]
    nI, nL, k = spec.i_size, spec.lambda_size, G.order
    if len(P) != nL or any(len(row) != nI for row in P):
        raise IndexOutOfRange(f"sandwich must be {nL} x {nI}")
    has_zero_entry = any(x is None for row in P for x in row)
    if has_zero_entry and not with_zero:
        raise AllZeroRowOrColumn("zero sandwich entries need the with_zero construction")
    if with_zero:
        if any(all(x is None for x in row) for row in P) or any(
            all(P[l][i] is None for l in range(nL)) for i in range(nI)
        ):
            raise AllZeroRowOrColumn("sandwich matrix has an all-zero row or column")
    size = nI * k * nL
    n = size + (1 if with_zero else 0)
    z = size

    def idx(i, g, l):
        return (i * k + g) * nL + l

    raw = np.full((n, n), z, dtype=np.int64)
    gt = G.table
    for i in range(nI):
        for g in range(k):
            for l in range(nL):
                a = idx(i, g, l)
                for j in range(nI):
                    p = P[l][j]
                    if p is None:
                        continue
                    gp = gt[g, p]
                    for h in range(k):
                        for m in range(nL):
                            raw[a, idx(j, h, m)] = idx(i, gt[gp, h], m)
    labels = [f"({i + 1},{G.labels[g]},{l + 1})" for i in range(nI) for g in range(k) for l in range(nL)]
    if with_zero:
        labels.append("0")
    return build_semigroup(raw, labels=labels, check=False)


def rees_index(spec, i, g, l):
    return (i * spec.group.order + g) * spec.lambda_size + l


# ---------------------------------------------------------------- text I/O

def parse_table(text):
    lines = []
    for num, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s and not s.startswith("#"):
            lines.append((num, s))
    if not lines:
        raise ParseError("empty input")
    num, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"expected the order, got {first!r}", num) from None
    if n <= 0:
        raise ParseError("order must be positive", num)
    if len(lines) < n + 1:
        raise ParseError(f"expected {n} table rows, found {len(lines) - 1}", lines[-1][0])
    rows = []
    for num, s in lines[1 : n + 1]:
        try:
            row = [int(x) for x in s.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in row {s!r}", num) from None
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", num)
        if any(not 0 <= x < n for x in row):
            raise ParseError(f"entry outside 0..{n - 1}", num)
        rows.append(row)
    identity = zero = None
    labels = [str(i) for i in range(n)]
    for num, s in lines[n + 1 :]:
        if s.startswith("identity="):
            identity = _parse_index(s[9:], n, num)
        elif s.startswith("zero="):
            zero = _parse_index(s[5:], n, num)
        elif s.startswith("label "):
            parts = s.split(None, 2)
            if len(parts) != 3:
                raise ParseError("expected 'label <i> <string>'", num)
            labels[_parse_index(parts[1], n, num)] = parts[2]
        else:
            raise ParseError(f"unrecognised line {s!r}", num)
    return build_semigroup(rows, labels=labels, identity=identity, zero=zero)


def _parse_index(s, n, num):
    try:
        i = int(s)
    except ValueError:
        raise ParseError(f"expected an element index, got {s!r}", num) from None
    if not 0 <= i < n:
        raise ParseError(f"index {i} outside 0..{n - 1}", num)
    return i


def format_table(S):
    out = [str(S.order)]
    out += [" ".join(str(int(x)) for x in row) for row in S.table]
    if S.identity is not None:
        out.append(f"identity={S.identity}")
    if S.zero is not None:
        out.append(f"zero={S.zero}")
    for i, lab in enumerate(S.labels):
        if lab != str(i):
            out.append(f"label {i} {lab}")
    return "\n".join(out) + "\n"
