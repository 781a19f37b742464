"""Oracle-equivalence suites: specialized deciders against brute force on Cayley tables.

Each suite returns a list of Check records; a check passes when its
mismatch count is zero (or its exact comparison holds).
"""
import random
import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from . import diagrams as D
from . import fixtures as F
from . import gsets as GS
from . import inner as I
from . import polycyclic as PC
from . import transformations as T
from .conjugacy import classes, green_matrix, n_components, relation_matrix
from .semigroup import ReesMatrixSpec, normalize_labels, rees_index, rees_matrix_semigroup


@dataclass
class Check:
    name: str
    ok: bool
    seconds: float
    detail: str = ""


def run_check(name, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return Check(name, bool(ok), time.perf_counter() - t0, detail)


def same_partition(keys, labels):
    """keys induce the same partition as the class labels."""
    return bool((normalize_labels([hash(k) for k in keys]) == normalize_labels(labels)).all())


def _key_matrix(keys):
    idx = normalize_labels([hash(k) for k in keys])
    return idx[:, None] == idx[None, :]


# ------------------------------------------------------- relation chains

CHAIN = [("G", "N"), ("N", "PSTAR"), ("PSTAR", "TR"), ("TR", "O"), ("N", "C"), ("C", "O")]


def chain_fixtures(max_order=4):
    out = list(F.named_fixtures().items())
    out += [(f"order{S.order}#{i}", S) for i, S in enumerate(F.small_semigroups(max_order))]
    return out


def inclusions(max_order=4):
    fx = chain_fixtures(max_order)
    bad = {f"{a} ⊆ {b}": 0 for a, b in CHAIN}
    bad.update({"N ⊆ D": 0, "W = TR": 0})
    t0 = time.perf_counter()
    for _, S in fx:
        mats = {r: relation_matrix(r, S) for r in ("G", "N", "PSTAR", "TR", "O", "C", "W")}
        for a, b in CHAIN:
            bad[f"{a} ⊆ {b}"] += int((mats[a] & ~mats[b]).sum())
        bad["N ⊆ D"] += int((mats["N"] & ~green_matrix(S, "D")).sum())
        bad["W = TR"] += int((mats["W"] != mats["TR"]).sum())
    dt = (time.perf_counter() - t0) / len(bad)
    return [Check(k, v == 0, dt, f"{v} violating pairs over {len(fx)} semigroups") for k, v in bad.items()]


def idempotents(max_order=4):
    def run():
        bad = 0
        fx = chain_fixtures(max_order)
        for _, S in fx:
            e = S.idempotents
            N = relation_matrix("N", S)[np.ix_(e, e)]
            Dm = green_matrix(S, "D")[np.ix_(e, e)]
            bad += int((N != Dm).sum())
        return bad == 0, f"{bad} idempotent pairs with N != D over {len(fx)} semigroups"

    return [run_check("N = D on idempotents", run)]


# ------------------------------------------------------ transformations

def _pairwise_agree(maps, lab, decider):
    bad = 0
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            if decider(a, b) != (lab[i] == lab[j]):
                bad += 1
    return bad


def _family_check(kind, n):
    maps = T.enumerate_maps(kind, n)
    lab = n_components(T.cayley(maps))
    if kind in ("T", "P"):
        keys = [T.canonical_form(T.prune(T.digraph(m))) for m in maps]
        return same_partition(keys, lab), f"{len(maps)} maps, {lab.max() + 1} classes"
    if kind == "I":
        keys = [T.canonical_form(T.digraph(m)) for m in maps]
        return same_partition(keys, lab), f"{len(maps)} maps, {lab.max() + 1} classes"
    decider = {"O": T.conj_n_on, "OI": T.conj_n_oin}[kind]
    bad = _pairwise_agree(maps, lab, decider)
    return bad == 0, f"{len(maps)} maps, {bad} mismatching pairs"


def _txy_check(n):
    bad = total = 0
    for k in range(1, n + 1):
        for Y in combinations(range(n), k):
            maps = T.enumerate_maps("TXY", n, Y)
            lab = n_components(T.cayley(maps))
            bad += _pairwise_agree(maps, lab, lambda a, b: T.conj_n_txy(a, b, Y))
            total += 1
    return bad == 0, f"{total} subsets Y, {bad} mismatching pairs"


def _oi_sizes(n):
    bad = 0
    maps = T.enumerate_maps("OI", n)
    lab = n_components(T.cayley(maps))
    sizes = np.bincount(lab)
    for i, a in enumerate(maps):
        k = len(a.span)
        if sizes[lab[i]] != comb(n, k) or len(T.class_oin(a)) != comb(n, k):
            bad += 1
    return bad == 0, f"{bad} maps whose class size is not C(n,k)"


def o6_triple():
    a, b, d = T.O6_ALPHA, T.O6_BETA, T.O6_DELTA
    got = (T.conj_n_on(a, b), T.conj_n_on(a, d))
    return got == (True, False), f"(alpha~beta, alpha~delta) = {got}"


def transformations(n=3, sizes=None):
    sizes = sizes or {"T": n, "P": n, "I": n, "O": n, "OI": n, "TXY": n}
    out = []
    for kind in ("T", "P", "I", "O", "OI"):
        for m in range(1, sizes[kind] + 1):
            out.append(run_check(f"{kind}_{m} n-decider = decide(N)", lambda k=kind, m=m: _family_check(k, m)))
    for m in range(1, sizes["TXY"] + 1):
        out.append(run_check(f"T(X,Y) |X|={m} n-decider = decide(N)", lambda m=m: _txy_check(m)))
    out.append(run_check("O_6 triple (true, false)", o6_triple))
    for m in range(1, sizes["OI"] + 1):
        out.append(run_check(f"OI_{m} class sizes C(n,k)", lambda m=m: _oi_sizes(m)))
    return out


# ------------------------------------------------------------ diagrams

def diagram_relations(kind, n, rels=("N", "TR", "PSTAR", "O")):
    ds, S = D.monoid(kind, n)
    out = []
    if "N" in rels:
        def run_n():
            K = _key_matrix([D.n_class_key(d, kind) for d in ds])
            bad = int((K != relation_matrix("N", S)).sum())
            return bad == 0, f"{len(ds)} diagrams, {bad} mismatching pairs"
        out.append(run_check(f"{kind}_{n} conjN = decide(N)", run_n))
    ct = _key_matrix([D.cycle_type_omega_plus_one(d) for d in ds])
    for r in ("TR", "PSTAR"):
        if r in rels:
            out.append(run_check(f"{kind}_{n} conjTr = decide({r})",
                                 lambda r=r: (bool((ct == relation_matrix(r, S)).all()), "")))
    if "O" in rels:
        def run_o():
            O = np.array([[D.conj_o_diagram(x, y, kind) for y in ds] for x in ds])
            R = relation_matrix("O", S)
            return bool((O == R).all()), "universal" if R.all() else f"{len(classes('O', S).classes)} classes"
        out.append(run_check(f"{kind}_{n} conjO = decide(O)", run_o))
    return out


def c_is_equality(kind, n):
    ds, S = D.monoid(kind, n)
    C = relation_matrix("C", S)
    Cd = np.array([[D.conj_c_diagram(x, y, kind) for y in ds] for x in ds])
    return bool((C == Cd).all()) and bool((C == np.eye(len(ds), dtype=bool)).all())


def rank_classes(n=3):
    ds, S = D.monoid("P", n)
    lab = n_components(S)
    by_rank = {}
    for i, d in enumerate(ds):
        by_rank.setdefault(d.rank, set()).add(int(lab[i]))
    return {r: len(v) for r, v in sorted(by_rank.items())}


def diagrams(n=3):
    out = []
    for kind in ("P", "PB", "B"):
        out += diagram_relations(kind, n)
    if n >= 3:
        out.append(run_check("P_3 rank 0 and rank 1 n-class counts (1, 2)",
                             lambda: ((rank_classes(3)[0], rank_classes(3)[1]) == (1, 2), str(rank_classes(3)))))
    return out


# ------------------------------------------------------------- G-sets

def gset_cases(moduli_list=((2,), (3,), (2, 2)), max_orbits=3, max_points=6):
    for mod in moduli_list:
        G = GS.AbelianGroup(mod)
        subs = G.subgroups()
        for k in range(1, max_orbits + 1):
            for combo in combinations_with_replacement(range(len(subs)), k):
                X = GS.GSet(G, tuple(subs[i] for i in combo))
                if X.size <= max_points:
                    yield X


def _gset_agree():
    bad = total = 0
    for X in gset_cases():
        E = GS.enumerate_end(X)
        lab = n_components(GS.cayley_end(E))
        K = _key_matrix([GS.gset_key(f) for f in E])
        bad += int((K != (lab[:, None] == lab[None, :])).sum())
        total += 1
    return bad == 0, f"{total} G-sets, {bad} mismatching pairs"


def _gset_labels():
    bad = total = 0
    for X in gset_cases():
        for f in GS.enumerate_end(X):
            base = GS.cycle_labels(f)
            for i in base:
                for c in X.orbit_points[i]:
                    point = {j: X.group.zero for j in range(len(X.stabs))}
                    point[i] = c
                    total += 1
                    if GS.cycle_labels(f, point)[i] != base[i]:
                        bad += 1
    return bad == 0, f"{total} (map, point) choices, {bad} label changes"


def gsets():
    return [run_check("conjNGset = decide(N)", _gset_agree),
            run_check("cycle labels independent of the point", _gset_labels)]


# ---------------------------------------------------------------- Inn

def random_inclusion(S, pairs, rng):
    M = S.order1
    bad = 0
    for _ in range(pairs):
        g1, h1, g2, h2 = (rng.randrange(M) for _ in range(4))
        if not I.composition_inclusion(S, g1, h1, g2, h2)[0]:
            bad += 1
    return bad


def inn(n=3, pairs=1000, seed=0):
    out = []

    def chain2(S):
        inn_ = I.generate_inn(S)
        # a 2-chain: two idempotents, one below the other
        ok = inn_.order == 2 and len(inn_.idempotents()) == 2
        return ok, f"order {inn_.order}"

    out.append(run_check("Inn(Z_2) is a 2-chain", lambda: chain2(F.z(2))))
    out.append(run_check("Inn(Z_3) is a 2-chain", lambda: chain2(F.z(3))))

    def s3():
        S = F.symmetric_group(3)
        inn_ = I.generate_inn(S)
        groups = I.inner_automorphism_group(S)
        nonempty = {f.img for f in inn_.elements if f.domain}
        empty = [f for f in inn_.elements if not f.domain]
        return inn_.order == 7 and nonempty == groups and len(empty) == 1, f"order {inn_.order}"

    out.append(run_check("Inn(S_3) = Inn group + empty map", s3))
    for m in range(1, n + 1):
        out.append(run_check(f"Inn(I_{m}) = I_{m} via g -> phi(g, g^-1)",
                             lambda m=m: (I.check_inverse_embedding(F.symmetric_inverse_monoid(m)), "")))
    for m in range(1, n + 1):
        def census(m=m):
            c = I.tn_generator_census(m)
            return c["brute_force"] == c["tuples"], f"{c['brute_force']} generators"
        out.append(run_check(f"T_{m} generator census", census))

    def inclusion():
        rng = random.Random(seed)
        fx = list(F.named_fixtures().items()) + [("Z2", F.z(2)), ("S3", F.symmetric_group(3))]
        bad = sum(random_inclusion(S, pairs, rng) for _, S in fx)
        strict = I.composition_inclusion(F.z(2), 0, 1, 0, 1) == (True, False)
        return bad == 0 and strict, f"{bad} failures over {len(fx)} fixtures, Z_2 strict case {strict}"

    out.append(run_check("composition inclusion", inclusion))
    return out


# ---------------------------------------------------------------- Rees

def rees(groups=None, max_size=2):
    groups = groups or [("Z2", F.z(2)), ("Z3", F.z(3)), ("S3", F.symmetric_group(3))]
    out = []
    for name, G in groups:
        def run(G=G):
            bad = total = 0
            k = G.order
            for ni in range(1, max_size + 1):
                for nl in range(1, max_size + 1):
                    for P in I.all_sandwiches(k, ni, nl):
                        spec = ReesMatrixSpec(G, ni, nl, P)
                        S = rees_matrix_semigroup(spec, with_zero=True)
                        lab = n_components(S)
                        trip = [(i, g, l) for i in range(ni) for g in range(k) for l in range(nl)]
                        idx = [rees_index(spec, *x) for x in trip]
                        for a, ia in zip(trip, idx):
                            for b, ib in zip(trip, idx):
                                if I.rees_conj_n(spec, a, b) != (lab[ia] == lab[ib]):
                                    bad += 1
                        total += 1
            return bad == 0, f"{total} sandwich matrices, {bad} mismatching pairs"
        out.append(run_check(f"reesConjN = decide(N) over {name}", run))
    return out


# ----------------------------------------------------------- polycyclic

def polycyclic(n=2, max_m=6, series_max=10, rels=("sigma", "n", "c", "pstar")):
    out = []
    for rel in rels:
        def run(rel=rel):
            form = [PC.cgf(rel, n, m) for m in range(max_m + 1)]
            oracle = PC.ball_oracle(n, max_m, rel)
            diff = [m for m in range(max_m + 1) if form[m] != oracle[m]]
            return not diff, f"closed {form} oracle {oracle}"
        out.append(run_check(f"n={n} cgf_{rel} = ball oracle (m <= {max_m})", run))
    for rel in rels:
        def run_s(rel=rel):
            ser = PC.series_coefficients(rel, n, series_max)
            form = [PC.cgf(rel, n, m) for m in range(series_max + 1)]
            return ser == form, f"series {ser}"
        out.append(run_check(f"n={n} series_{rel} = cgf (m <= {series_max})", run_s))
    return out


SUITES = {
    "inclusions": inclusions,
    "idempotents": idempotents,
    "transformations": transformations,
    "diagrams": diagrams,
    "gsets": gsets,
    "inn": inn,
    "rees": rees,
    "polycyclic": polycyclic,
}
