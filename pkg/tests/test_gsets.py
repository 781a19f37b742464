import random

import pytest

from conjlab import gsets as GS
from conjlab.conjugacy import decide, n_components
from conjlab.errors import BoundExceeded, KindMismatch, ParseError
from conjlab.transformations import enumerate_maps
from conjlab.verify import _gset_agree, _gset_labels, gset_cases

Z2_FREE = GS.gset_from((2,), [[]])
Z2_FREE_FIXED = GS.gset_from((2,), [[], [(1,)]])
Z2_TWO_FREE = GS.gset_from((2,), [[], []])


def test_group_basics():
    G = GS.AbelianGroup((2, 2))
    assert G.order == 4 and len(G.elements) == 4
    assert len(G.subgroups()) == 5
    assert G.subgroup([(1, 0)]) == frozenset({(0, 0), (1, 0)})


def test_end_counts():
    assert len(GS.enumerate_end(Z2_FREE)) == 2
    assert len(GS.enumerate_end(Z2_FREE_FIXED)) == 3


def test_trivial_group_gives_full_transformations():
    X = GS.gset_from((), [[], [], []])
    E = GS.enumerate_end(X)
    assert len(E) == 27
    assert {f.as_map for f in E} == {m.img for m in enumerate_maps("T", 3)}


def test_equivariance_and_closure():
    for X in gset_cases(max_points=4):
        E = GS.enumerate_end(X)
        maps = {f.as_map for f in E}
        for f in E:
            for k in X.group.elements:
                for p in X.points:
                    assert f(X.act(k, p)) == X.act(k, f(p))
            for g in E:
                assert (f * g).as_map in maps
                assert (f * g).as_map == tuple(f.as_map[x] for x in g.as_map)


def test_stabilizer_never_shrinks():
    with pytest.raises(KindMismatch):
        GS.make_endomorphism(Z2_FREE_FIXED, [(0, (0,)), (0, (0,))])


def test_bound():
    X = GS.gset_from((2,), [[]] * 7)
    with pytest.raises(BoundExceeded):
        GS.enumerate_end(X)


def test_trim_of_automorphism_is_full():
    f = GS.make_endomorphism(Z2_TWO_FREE, [(1, (1,)), (0, (0,))])
    t = GS.g_trim(f)
    assert t.graph.vertices == frozenset({0, 1})


def test_trim_equal_stabilizer_step():
    f = GS.make_endomorphism(Z2_TWO_FREE, [(1, (0,)), (1, (0,))])
    t = GS.g_trim(f)
    assert t.graph.vertices == frozenset({1}) and t.graph.succ_map == {1: 1}


def test_trim_larger_stabilizer_step():
    f = GS.make_endomorphism(Z2_FREE_FIXED, [(1, (0,)), (1, (0,))])
    assert GS.g_trim(f).graph.vertices == frozenset({1})


def test_twisted_swap_not_conjugate():
    f = GS.make_endomorphism(Z2_TWO_FREE, [(1, (0,)), (0, (0,))])
    g = GS.make_endomorphism(Z2_TWO_FREE, [(1, (1,)), (0, (0,))])
    assert GS.cycle_labels(f) == {0: (0,), 1: (0,)}
    assert GS.cycle_labels(g) == {0: (1,), 1: (1,)}
    assert not GS.conj_n_gset(f, g)
    E = GS.enumerate_end(Z2_TWO_FREE)
    S = GS.cayley_end(E)
    idx = {h.as_map: i for i, h in enumerate(E)}
    assert decide("N", S, idx[f.as_map], idx[g.as_map]) is None


def test_constant_maps_to_fixed_point():
    X = GS.gset_from((2,), [[], [], [(1,)]])
    f = GS.make_endomorphism(X, [(2, (0,)), (1, (0,)), (2, (0,))])
    g = GS.make_endomorphism(X, [(0, (0,)), (2, (0,)), (2, (0,))])
    assert GS.conj_n_gset(f, g)


def test_different_gsets():
    f = GS.enumerate_end(Z2_FREE)[0]
    g = GS.enumerate_end(Z2_TWO_FREE)[0]
    with pytest.raises(KindMismatch):
        GS.conj_n_gset(f, g)


def test_decider_matches_brute_force():
    ok, detail = _gset_agree()
    assert ok, detail


def test_labels_independent_of_point():
    ok, detail = _gset_labels()
    assert ok, detail


def _relabel(f, perm):
    """The same endomorphism after renaming orbit i to perm[i]."""
    X = f.gset
    stabs = [None] * len(perm)
    for i, j in enumerate(perm):
        stabs[j] = X.stabs[i]
    Y = GS.GSet(X.group, tuple(stabs))
    imgs = [None] * len(perm)
    for i, (j, k) in enumerate(f.images):
        imgs[perm[i]] = (perm[j], k)
    return GS.GEndomorphism(Y, tuple(imgs))


def test_trim_independent_of_orbit_order():
    rng = random.Random(3)
    for X in gset_cases(max_points=6):
        for f in GS.enumerate_end(X):
            perm = list(range(len(X.stabs)))
            rng.shuffle(perm)
            assert GS.gset_key(f) == GS.gset_key(_relabel(f, perm))


def test_parse():
    X = GS.parse_gset("G=2x2\norbit stab={}\norbit stab={(1,0)}  # half\n")
    assert X.size == 6
    f = GS.parse_endomorphism(X, "[(1,0,0) (1,0,0)]")
    assert f.images == ((1, (0, 0)), (1, (0, 0)))
    with pytest.raises(ParseError):
        GS.parse_gset("orbit stab={}")
    with pytest.raises(ParseError):
        GS.parse_endomorphism(X, "[(0,0,0)]")


def test_cayley_conjugacy_invariant_under_anti_isomorphism():
    X = GS.gset_from((3,), [[], [(1,)]])
    E = GS.enumerate_end(X)
    S = GS.cayley_end(E)
    from conjlab.semigroup import build_semigroup
    T = build_semigroup(S.table.T.tolist(), check=False)
    assert (n_components(S) == n_components(T)).all()
