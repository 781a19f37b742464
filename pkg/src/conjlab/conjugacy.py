"""Definition-level deciders for the conjugacy relations on a finite semigroup.

Relations are on the elements of S; conjugators range over S^1 (the table
``S.table1``).  Matrices returned here are boolean ``order x order`` arrays.
"""
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidWitness, RelationUnsupported
from .semigroup import components, labels_to_classes, normalize_labels


class Rel(str, Enum):
    G = "G"
    N = "N"
    P = "P"
    PSTAR = "PSTAR"
    O = "O"
    C = "C"
    W = "W"
    TR = "TR"
    LIN = "LIN"
    I = "I"
    ISTAR = "ISTAR"

    @classmethod
    def parse(cls, s):
        if isinstance(s, cls):
            return s
        key = str(s).strip().upper().replace("*", "STAR")
        try:
            return cls(key)
        except ValueError:
            raise RelationUnsupported(f"unknown relation {s!r}") from None


ALL_RELS = tuple(Rel)


@dataclass(frozen=True)
class PairGH:
    g: int
    h: int


@dataclass(frozen=True)
class Chain:
    steps: tuple   # (u_i, v_i) pairs, or (g_i, g_i^-1) for ISTAR
    path: tuple    # a = x_0, x_1, ..., x_k = b


@dataclass(frozen=True)
class SinglePower:
    g: int
    h: int
    m: int


@dataclass(frozen=True)
class UnitG:
    g: int


@dataclass(frozen=True)
class ClassPartition:
    relation: Rel
    classes: tuple
    representatives: tuple

    def label_of(self):
        out = {}
        for i, c in enumerate(self.classes):
            for x in c:
                out[x] = i
        return out


# ------------------------------------------------------------ helpers

def _ar(S):
    return np.arange(S.order)


def _power_pairs(S, a, b):
    """Distinct pairs (a^m, b^m), m >= 1, with the least m for each."""
    t = S.table1
    seen = {}
    x, y, m = a, b, 1
    while (x, y) not in seen:
        seen[(x, y)] = m
        x, y, m = int(t[x, a]), int(t[y, b]), m + 1
    return seen


def p_mask(S):
    """``mask[a, g]`` iff g lies in the zero-respecting set p(a), g in S^1."""
    n, M = S.order, S.order1
    mask = np.ones((n, M), dtype=bool)
    z = S.zero
    if z is None:
        return mask
    t = S.table1
    for a in range(n):
        if a == z:
            mask[a] = False
            mask[a, S.one] = True
            continue
        ms = np.unique(t[:, a])
        ms = ms[ms != z]
        mask[a] = (t[ms] != z).all(axis=0)
    return mask


def inverse_map(S):
    """Inverse of every element of S^1 for inverse or completely regular S."""
    t = S.table1
    M = S.order1
    if S.is_inverse:
        inv = np.empty(M, dtype=np.int64)
        ar = np.arange(M)
        for a in range(M):
            ok = (t[t[a], a] == a) & (t[t[:, a], ar] == ar)
            inv[a] = np.flatnonzero(ok)[0]
        return inv
    if S.is_completely_regular:
        return S.epigroup1.pseudo_inverse.copy()
    raise RelationUnsupported("i-conjugacy needs an inverse or completely regular semigroup")


def _intertwiners(S, a, b):
    """All g in S^1 with ag = gb."""
    t = S.table1
    return np.flatnonzero(t[a] == t[:, b])


# ------------------------------------------------------------- deciders

def decide(rel, S, a, b):
    rel = Rel.parse(rel)
    return _DECIDERS[rel](S, int(a), int(b))


def _decide_g(S, a, b):
    t = S.table1
    for g in S.units1[0]:
        if t[a, g] == t[g, b]:
            return UnitG(int(g))
    return None


def _decide_n(S, a, b):
    t = S.table1
    for g in _intertwiners(S, a, b):
        gb = t[g, b]
        hs = np.flatnonzero((t[t[:, a], g] == b) & (t[gb] == a))
        if len(hs):
            return PairGH(int(g), int(hs[0]))
    return None


def _p_pairs(S):
    t = S.table1
    n = S.order
    uv = t.ravel()
    vu = t.T.ravel()
    keep = (uv < n) & (vu < n)
    M = S.order1
    us = np.repeat(np.arange(M), M)[keep]
    vs = np.tile(np.arange(M), M)[keep]
    return uv[keep], vu[keep], us, vs


def _decide_p(S, a, b):
    t = S.table1
    hits = np.argwhere((t == a) & (t.T == b))
    if len(hits):
        u, v = hits[0]
        return Chain(((int(u), int(v)),), (a, b))
    return None


def _decide_pstar(S, a, b):
    t = S.table1
    n = S.order
    prev = {a: None}
    q = deque([a])
    while q:
        x = q.popleft()
        if x == b:
            break
        us, vs = np.nonzero(t == x)
        ys = t[vs, us]
        for u, v, y in zip(us, vs, ys):
            y = int(y)
            if y < n and y not in prev:
                prev[y] = (x, int(u), int(v))
                q.append(y)
    if b not in prev:
        return None
    steps, path = [], [b]
    x = b
    while prev[x] is not None:
        px, u, v = prev[x]
        steps.append((u, v))
        path.append(px)
        x = px
    if not steps:
        steps, path = [(a, S.one)], [a, a]
    else:
        steps.reverse()
        path.reverse()
    return Chain(tuple(steps), tuple(path))


def _decide_o(S, a, b, mask=None):
    gs = _intertwiners(S, a, b)
    hs = _intertwiners(S, b, a)
    if mask is not None:
        gs = gs[mask[a, gs]]
        hs = hs[mask[b, hs]]
    if len(gs) and len(hs):
        return PairGH(int(gs[0]), int(hs[0]))
    return None


def _decide_c(S, a, b):
    return _decide_o(S, a, b, p_mask(S))


def _decide_tr(S, a, b):
    t = S.table1
    ep = S.epigroup1
    gs = _intertwiners(S, a, b)
    hs = _intertwiners(S, b, a)
    if not len(gs) or not len(hs):
        return None
    gh = t[np.ix_(gs, hs)]
    hg = t[np.ix_(hs, gs)].T
    hit = np.argwhere((gh == ep.omega[a]) & (hg == ep.omega[b]))
    if len(hit):
        i, j = hit[0]
        return PairGH(int(gs[i]), int(hs[j]))
    return None


def _decide_w(S, a, b):
    t = S.table1
    gs = _intertwiners(S, a, b)
    hs = _intertwiners(S, b, a)
    if not len(gs) or not len(hs):
        return None
    gh = t[np.ix_(gs, hs)]
    hg = t[np.ix_(hs, gs)].T
    best = None
    for (am, bm), m in _power_pairs(S, a, b).items():
        hit = np.argwhere((gh == am) & (hg == bm))
        if len(hit):
            i, j = hit[0]
            cand = (int(gs[i]), int(hs[j]), m)
            if best is None or cand < best:
                best = cand
    return SinglePower(*best) if best else None


def _lin_powers_ok(S, a, b):
    d = S.green.d
    x, y = a, b
    t = S.table
    for _ in range(2 * S.order):
        if d[x] != d[y]:
            return False
        x, y = int(t[x, a]), int(t[y, b])
    return True


def _decide_lin(S, a, b):
    w = _decide_tr(S, a, b)
    if w is None or not _lin_powers_ok(S, a, b):
        return None
    return w


def _decide_i(S, a, b):
    t = S.table1
    inv = inverse_map(S)
    for g in range(S.order1):
        gi = inv[g]
        if t[t[gi, a], g] == b and t[t[g, b], gi] == a:
            return PairGH(g, int(gi))
    return None


def istar_pairs(S):
    """All (g_1..g_k, g_k^-1..g_1^-1) in S^1 x S^1, with the last g used to reach each pair."""
    t = S.table1
    inv = inverse_map(S)
    one = S.one
    prev = {(one, one): None}
    q = deque([(one, one)])
    while q:
        G, Gi = q.popleft()
        for g in range(S.order1):
            nxt = (int(t[G, g]), int(t[inv[g], Gi]))
            if nxt not in prev:
                prev[nxt] = ((G, Gi), g)
                q.append(nxt)
    return prev


def _decide_istar(S, a, b):
    # the product form g_k^-1..g_1^-1 a g_1..g_k = b, g_1..g_k b g_k^-1..g_1^-1 = a
    t = S.table1
    inv = inverse_map(S)
    prev = istar_pairs(S)
    for G, Gi in prev:
        if t[t[Gi, a], G] == b and t[t[G, b], Gi] == a:
            gs = []
            cur = (G, Gi)
            while prev[cur] is not None:
                cur, g = prev[cur]
                gs.append(g)
            gs.reverse()
            if not gs:
                return Chain(((S.one, S.one),), (a, a))
            path = [a]
            for g in gs:
                path.append(int(t[t[inv[g], path[-1]], g]))
            return Chain(tuple((g, int(inv[g])) for g in gs), tuple(path))
    return None


_DECIDERS = {
    Rel.G: _decide_g,
    Rel.N: _decide_n,
    Rel.P: _decide_p,
    Rel.PSTAR: _decide_pstar,
    Rel.O: _decide_o,
    Rel.C: _decide_c,
    Rel.W: _decide_w,
    Rel.TR: _decide_tr,
    Rel.LIN: _decide_lin,
    Rel.I: _decide_i,
    Rel.ISTAR: _decide_istar,
}


# ------------------------------------------------------ witness checks

def verify_witness(rel, S, a, b, w):
    """Re-check a witness by table lookups only."""
    rel = Rel.parse(rel)
    M = S.order1

    def m(*xs):
        return S.product(*xs)

    def inr(*xs):
        return all(0 <= int(x) < M for x in xs)

    if rel is Rel.G:
        us, _ = S.units1
        return isinstance(w, UnitG) and w.g in set(us.tolist()) and m(a, w.g) == m(w.g, b)
    if rel in (Rel.P, Rel.PSTAR):
        if not isinstance(w, Chain) or not w.steps or len(w.path) != len(w.steps) + 1:
            return False
        if rel is Rel.P and len(w.steps) != 1:
            return False
        if w.path[0] != a or w.path[-1] != b:
            return False
        for (u, v), x, y in zip(w.steps, w.path, w.path[1:]):
            if not inr(u, v) or m(u, v) != x or m(v, u) != y:
                return False
        return True
    if rel is Rel.ISTAR:
        inv = inverse_map(S)
        if not isinstance(w, Chain) or not w.steps or len(w.path) != len(w.steps) + 1:
            return False
        if w.path[0] != a or w.path[-1] != b:
            return False
        G, Gi = S.one, S.one
        for (g, gi), x, y in zip(w.steps, w.path, w.path[1:]):
            if not inr(g) or gi != inv[g] or m(gi, x, g) != y:
                return False
            G, Gi = m(G, g), m(gi, Gi)
        return m(G, b, Gi) == a
    if rel is Rel.W:
        if not isinstance(w, SinglePower) or not inr(w.g, w.h) or w.m < 1:
            return False
        g, h = w.g, w.h
        return (m(a, g) == m(g, b) and m(b, h) == m(h, a)
                and m(g, h) == S.power(a, w.m) and m(h, g) == S.power(b, w.m))
    if not isinstance(w, PairGH) or not inr(w.g, w.h):
        return False
    g, h = w.g, w.h
    if rel is Rel.N:
        return (m(a, g) == m(g, b) and m(b, h) == m(h, a)
                and m(h, a, g) == b and m(g, b, h) == a)
    if rel is Rel.O:
        return m(a, g) == m(g, b) and m(b, h) == m(h, a)
    if rel is Rel.C:
        mask = p_mask(S)
        return m(a, g) == m(g, b) and m(b, h) == m(h, a) and mask[a, g] and mask[b, h]
    if rel in (Rel.TR, Rel.LIN):
        ep = S.epigroup1
        ok = (m(a, g) == m(g, b) and m(b, h) == m(h, a)
              and m(g, h) == ep.omega[a] and m(h, g) == ep.omega[b])
        return ok and (rel is Rel.TR or _lin_powers_ok(S, a, b))
    if rel is Rel.I:
        inv = inverse_map(S)
        return h == inv[g] and m(h, a, g) == b and m(g, b, h) == a
    return False


def mutually_inverse_pair(S, g, h):
    """(gh)^w g and h (gh)', a mutually inverse pair in S^1."""
    ep = S.epigroup1
    gh = S.mul(g, h)
    return S.mul(int(ep.omega[gh]), g), S.mul(h, int(ep.pseudo_inverse[gh]))


def normalize_witness(S, a, b, w):
    """Replace n-conjugators g, h by mutually inverse ones."""
    if not isinstance(w, PairGH) or not verify_witness(Rel.N, S, a, b, w):
        raise InvalidWitness(f"{w} does not witness {a} ~n {b}")
    return PairGH(*mutually_inverse_pair(S, w.g, w.h))


# ------------------------------------------------------ full relations

def n_components(S):
    """Class labels of n-conjugacy: a ~ hag whenever gh*a = a = a*gh."""
    t = S.table1
    n, M = S.order, S.order1
    ar = np.arange(n)
    flat = t.ravel()
    order = np.argsort(flat, kind="stable")
    bounds = np.searchsorted(flat[order], np.arange(M + 1))
    src, dst = [ar], [ar]
    for x in range(M):
        dom = np.flatnonzero((t[x, :n] == ar) & (t[:n, x] == ar))
        if not len(dom):
            continue
        idx = order[bounds[x]:bounds[x + 1]]
        gs, hs = idx // M, idx % M
        img = t[t[hs[:, None], dom[None, :]], gs[:, None]]
        src.append(np.broadcast_to(dom, img.shape).ravel())
        dst.append(img.ravel())
    return components(n, np.concatenate(src), np.concatenate(dst))


def _components_to_matrix(lab):
    return lab[:, None] == lab[None, :]


def _intertwine_matrix(S, mask=None):
    t = S.table1
    n = S.order
    R = np.zeros((n, n), dtype=bool)
    for g in range(S.order1):
        hit = t[:n, g][:, None] == t[g, :n][None, :]
        if mask is not None:
            hit &= mask[:, g][:, None]
        R |= hit
    return R


def relation_matrix(rel, S):
    rel = Rel.parse(rel)
    n = S.order
    t = S.table1
    ar = np.arange(n)
    if rel is Rel.N:
        return _components_to_matrix(n_components(S))
    if rel is Rel.G:
        R = np.zeros((n, n), dtype=bool)
        for g, gi in zip(*S.units1):
            R[ar, t[t[gi, :n], g]] = True
        return R
    if rel is Rel.P:
        R = np.zeros((n, n), dtype=bool)
        x, y, _, _ = _p_pairs(S)
        R[x, y] = True
        return R
    if rel is Rel.PSTAR:
        x, y, _, _ = _p_pairs(S)
        return _components_to_matrix(components(n, x, y))
    if rel is Rel.O:
        R = _intertwine_matrix(S)
        return R & R.T
    if rel is Rel.C:
        R = _intertwine_matrix(S, p_mask(S))
        return R & R.T
    if rel is Rel.TR:
        return _tr_matrix(S)
    if rel is Rel.LIN:
        R = _tr_matrix(S)
        d = S.green.d
        pw = ar.copy()
        for _ in range(2 * n):
            R &= d[pw][:, None] == d[pw][None, :]
            pw = t[pw, ar]
        return R
    if rel is Rel.W:
        return _w_matrix(S)
    if rel is Rel.I:
        inv = inverse_map(S)
        R = np.zeros((n, n), dtype=bool)
        for g in range(S.order1):
            gi = inv[g]
            b = t[t[gi, :n], g]
            ok = t[t[g, b], gi] == ar
            R[ar[ok], b[ok]] = True
        return R
    if rel is Rel.ISTAR:
        R = np.zeros((n, n), dtype=bool)
        for G, Gi in istar_pairs(S):
            b = t[t[Gi, :n], G]
            ok = t[t[G, b], Gi] == ar
            R[ar[ok], b[ok]] = True
        return R
    raise RelationUnsupported(str(rel))


def i_chain_matrix(S):
    """Transitive closure of single i-steps; can be smaller than ISTAR."""
    src, dst = np.nonzero(relation_matrix(Rel.I, S))
    return _components_to_matrix(components(S.order, src, dst))


def _tr_matrix(S):
    t = S.table1
    n, M = S.order, S.order1
    ep = S.epigroup1
    omega = ep.omega[:n]
    R = np.zeros((n, n), dtype=bool)
    fibers = {}
    for a in range(n):
        fibers.setdefault(int(omega[a]), []).append(a)
    fibers = {e: np.array(v) for e, v in fibers.items()}
    for g in range(M):
        for h in range(M):
            e, f = int(t[g, h]), int(t[h, g])
            if e not in fibers or f not in fibers:
                continue
            A, B = fibers[e], fibers[f]
            ok = (t[A, g][:, None] == t[g, B][None, :]) & (t[B, h][None, :] == t[h, A][:, None])
            R[np.ix_(A, B)] |= ok
    return R


def _w_matrix(S):
    n = S.order
    R = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            R[a, b] = _decide_w(S, a, b) is not None
    return R


def is_equivalence(R):
    n = R.shape[0]
    if not R.diagonal().all() or not (R == R.T).all():
        return False
    src, dst = np.nonzero(R)
    lab = components(n, src, dst)
    return bool((_components_to_matrix(lab) == R).all())


def classes(rel, S):
    rel = Rel.parse(rel)
    if rel is Rel.N:
        lab = n_components(S)
    else:
        R = relation_matrix(rel, S)
        if not is_equivalence(R):
            raise RelationUnsupported(f"{rel.value} is not an equivalence on this semigroup")
        src, dst = np.nonzero(R)
        lab = components(S.order, src, dst)
    cl = labels_to_classes(lab)
    return ClassPartition(rel, tuple(cl), tuple(c[0] for c in cl))


def inclusion(R1, R2):
    """One of '=', '⊆', '⊇', 'incomparable'."""
    le = not (R1 & ~R2).any()
    ge = not (R2 & ~R1).any()
    if le and ge:
        return "="
    if le:
        return "⊆"
    if ge:
        return "⊇"
    return "incomparable"


def compare(S, rels):
    rels = [Rel.parse(r) for r in rels]
    mats = {r: relation_matrix(r, S) for r in rels}
    return {(r1, r2): inclusion(mats[r1], mats[r2]) for r1 in rels for r2 in rels}


def green_matrix(S, kind="D"):
    lab = getattr(S.green, kind.lower())
    return _components_to_matrix(lab)


__all__ = [
    "Rel", "ALL_RELS", "PairGH", "Chain", "SinglePower", "UnitG", "ClassPartition",
    "decide", "verify_witness", "normalize_witness", "mutually_inverse_pair", "relation_matrix", "classes",
    "compare", "inclusion", "istar_pairs", "i_chain_matrix", "n_components", "p_mask", "inverse_map", "is_equivalence",
    "green_matrix", "normalize_labels",
]
