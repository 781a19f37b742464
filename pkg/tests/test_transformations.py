from math import comb

import pytest

from conjlab import transformations as T
from conjlab.conjugacy import n_components, relation_matrix
from conjlab.errors import ImageNotInY, NotInjective, NotOrderPreserving, NotOrderPreservingInjective, ParseError
from conjlab.verify import _family_check, _txy_check

pm = T.pmap


def test_parse_and_format():
    a = T.parse_map("[2,-,-]")
    assert a.img == (1, -1, -1) and str(a) == "[2,-,-]"
    with pytest.raises(ParseError):
        T.parse_map("2,1")
    with pytest.raises(ParseError):
        T.parse_map("[4,1,1]")


def test_composition_acts_on_the_right():
    a, b = pm([2, 3, 3]), pm([1, 1, 2])
    assert (a * b).img == (0, 1, 1)   # x(ab) = (xa)b


def test_family_sizes():
    sizes = {k: len(T.enumerate_maps(k, 3)) for k in ("T", "P", "I", "S", "O", "OI")}
    assert sizes == {"T": 27, "P": 64, "I": 34, "S": 6, "O": 10, "OI": 20}
    assert len(T.enumerate_maps("O", 4)) == 35


def test_forest22_trim_and_prune():
    g = T.digraph(T.FOREST22)
    assert len(g.initial_bundles()) == 4
    tr, pr = T.trim(g), T.prune(g)
    assert pr.vertices == g.vertices - g.initial
    assert len(tr.vertices) == len(pr.vertices) + 4


def test_permutation_prune_is_whole_digraph():
    a = pm([2, 3, 1, 4])
    assert T.prune(T.digraph(a)) == T.digraph(a)


def test_o6_alpha_prune():
    g = T.prune(T.digraph(T.O6_ALPHA))
    assert g.vertices == {3, 4, 5} and set(g.succ) == {(3, 4), (4, 4), (5, 5)}


def test_o6_triple():
    a, b, d = T.O6_ALPHA, T.O6_BETA, T.O6_DELTA
    assert T.conj_n_on(a, b) and not T.conj_n_on(a, d)
    # the prunes of alpha and delta are isomorphic; only the order-aware test separates them
    assert T.iso_digraph(T.prune(T.digraph(a)), T.prune(T.digraph(d)))
    assert T.conj_n_full(a, b)


def test_constant_maps_conjugate_in_t3():
    assert T.conj_n_full(pm([1, 1, 1]), pm([2, 2, 2]))


def test_injective_examples():
    a, b, c = pm([2, None, None]), pm([None, 3, None]), pm([1, None, None])
    assert T.conj_n_injective(a, b) and not T.conj_n_injective(a, c)
    with pytest.raises(NotInjective):
        T.conj_n_injective(pm([1, 1, None]), a)


def test_txy_examples():
    Y = {0, 1}
    assert T.conj_n_txy(pm([1, 1, 1, 1]), pm([2, 2, 2, 2]), Y)
    maps = T.enumerate_maps("TXY", 4, Y)
    S = T.cayley(maps)
    N = relation_matrix("N", S)
    a, b, c = pm([1, 1, 1, 2]), pm([2, 2, 2, 1]), pm([1, 1, 2, 2])
    for x in (a, b, c):
        for y in (a, b, c):
            assert T.conj_n_txy(x, y, Y) == N[maps.index(x), maps.index(y)]
    # the bundle {4} of a misses Y, so a is only conjugate to itself here
    assert not T.conj_n_txy(a, b, Y) and T.conj_n_txy(a, a, Y)
    with pytest.raises(ImageNotInY):
        T.conj_n_txy(pm([3, 3, 3, 3]), a, Y)


def test_on_errors():
    with pytest.raises(NotOrderPreserving):
        T.conj_n_on(pm([2, 1, 3]), pm([1, 2, 3]))
    with pytest.raises(NotOrderPreservingInjective):
        T.conj_n_oin(pm([1, 1, 3]), pm([1, 2, 3]))


def test_oi_example_11_relabelling():
    # as printed these maps are injective but not order-preserving; the order relabelling still matches
    a = T.oi_from_cycles_and_chains(11, fixed=(1, 4), chains=([3, 5, 7], [10, 9, 8]))
    b = T.oi_from_cycles_and_chains(11, fixed=(2, 5), chains=([3, 6, 7], [11, 10, 8]))
    assert not a.is_order_preserving_injective
    assert T._relabel_equal(T.digraph(a), T.digraph(b))
    assert T.conj_n_injective(a, b)
    with pytest.raises(NotOrderPreservingInjective):
        T.conj_n_oin(a, b)


def test_oi_class_by_subchains():
    a = T.oi_from_cycles_and_chains(6, fixed=(1,), chains=([2, 4],))
    cls = T.class_oin(a)
    assert len(cls) == comb(6, 3) and all(T.conj_n_oin(a, b) for b in cls)


def test_oi_class_sizes():
    a = pm([2, None, None, None, None])
    assert len(T.class_oin(a)) == comb(5, 2)
    empty = pm([None] * 5)
    assert T.class_oin(empty) == [empty]


def test_by_permutation():
    assert T.conj_by_permutation(pm([2, 1, 3]), pm([1, 3, 2]))
    assert not T.conj_by_permutation(pm([2, None, None]), pm([2, 3, None]))
    a, b = pm([2, 1, 3]), pm([3, 2, 1])
    p = T.permutation_conjugator(a, b)
    assert p is not None


def test_bp_vs_n_in_o4():
    maps = T.enumerate_maps("O", 4)
    lab = n_components(T.cayley(maps))
    bp_not_n = n_not_bp = False
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            bp = T.conj_by_permutation(a, b)
            n = lab[i] == lab[j]
            bp_not_n |= bp and not n
            n_not_bp |= n and not bp
    assert bp_not_n and n_not_bp


def test_bp_strictly_inside_n_p3_t4():
    for kind, n in (("P", 3), ("T", 4)):
        maps = T.enumerate_maps(kind, n)
        lab = n_components(T.cayley(maps))
        strict = False
        for i, a in enumerate(maps):
            for j, b in enumerate(maps):
                if T.conj_by_permutation(a, b):
                    assert lab[i] == lab[j]
                elif lab[i] == lab[j]:
                    strict = True
        assert strict


def test_n_inside_bp_oi3():
    maps = T.enumerate_maps("OI", 3)
    lab = n_components(T.cayley(maps))
    strict = False
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            if lab[i] == lab[j]:
                assert T.conj_by_permutation(a, b)
            elif T.conj_by_permutation(a, b):
                strict = True
    assert strict


def test_in_n_equals_bp():
    maps = T.enumerate_maps("I", 3)
    lab = n_components(T.cayley(maps))
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            assert T.conj_by_permutation(a, b) == (lab[i] == lab[j])


def test_lin_examples():
    a, b = T.lin_example_tn(6)
    assert T.conj_lin_tn(a, b) and not T.conj_n_full(a, b)
    a, b = T.lin_example_on(4)
    assert T.conj_lin_tn(a, b) and not T.conj_n_on(a, b)


def test_lin_matches_brute_force_t3_p3():
    for kind in ("T", "P"):
        maps = T.enumerate_maps(kind, 3)
        S = T.cayley(maps)
        R = relation_matrix("LIN", S)
        for i, a in enumerate(maps):
            for j, b in enumerate(maps):
                assert T.conj_lin_tn(a, b) == R[i, j]


def test_rank_sequences_agree_under_n():
    maps = T.enumerate_maps("P", 3)
    for a in maps:
        for b in maps:
            if T.conj_n_full(a, b):
                assert T.rank_sequence(a, 6) == T.rank_sequence(b, 6)


@pytest.mark.parametrize("kind,n", [("T", 4), ("P", 3), ("I", 3), ("O", 4), ("OI", 4)])
def test_family_deciders_small(kind, n):
    assert _family_check(kind, n)[0]


def test_txy_small():
    assert _txy_check(3)[0]
