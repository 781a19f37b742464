import pytest

from conjlab import polycyclic as PC
from conjlab.errors import BoundExceeded, ParseError

ZERO, ONE = PC.ZERO, PC.ONE
p1, p2, p3 = PC.gen(0), PC.gen(1), PC.gen(2)
q1, q2 = PC.gen_inv(0), PC.gen_inv(1)


def el(text, n=3):
    return PC.parse_element(text, n)


def test_defining_relations():
    assert PC.multiply(q1, p1) == ONE
    assert PC.multiply(q1, p2) is ZERO
    assert PC.multiply(p1, q1) == ((0,), (0,))


def test_prefix_cases():
    y, x, z, u = (0,), (1,), (0, 1), (1, 1)
    assert PC.multiply((y, x), (x + z, u)) == (y + z, u)
    assert PC.multiply((y, x + z), (x, u)) == (y, u + z)
    assert PC.multiply(((0,), (1,)), ((0,), ())) is ZERO


def test_identity_and_zero():
    for a in PC.ball(2, 3):
        assert PC.multiply(a, ONE) == a == PC.multiply(ONE, a)
        assert PC.multiply(a, ZERO) is ZERO


def test_cyclic_reduce_and_rho():
    assert PC.cyclic_reduce(((0, 1), (0,))) == ((1,), ())
    a = ((1, 0), (0,))
    assert PC.cyclic_reduce(a) == a
    assert PC.rho(((0, 1), (0, 2))) is ZERO
    assert PC.rho(((0, 1), (0,))) == ((1,), ())


def test_poly_conj_examples():
    a = el("p1 p2 / p1")
    assert PC.poly_conj("N", a, el("p2"))
    ab, ba = el("p1 p2"), el("p2 p1")
    assert not PC.poly_conj("N", ab, ba)
    assert PC.poly_conj("P", ab, ba)
    c = el("p1 / p2")
    assert PC.poly_conj("PSTAR", c, ZERO)
    assert not PC.poly_conj("N", c, ZERO)
    assert PC.poly_conj("N", ZERO, ZERO)
    with pytest.raises(ParseError):
        PC.poly_conj("TR", ab, ba)


def test_strict_inclusions_in_small_ball():
    B = PC.ball(2, 2)
    n_pairs = {(a, b) for a in B for b in B if PC.poly_conj("N", a, b)}
    for rel in ("C", "PSTAR"):
        r_pairs = {(a, b) for a in B for b in B if PC.poly_conj(rel, a, b)}
        assert n_pairs < r_pairs


def test_parse_format():
    assert el("p1 p2 / p1") == ((0, 1), (0,))
    assert el("1 / p3") == ((), (2,))
    assert el("0") is ZERO and el("1") == ONE
    for a in PC.ball(3, 3):
        assert el(PC.format_element(a)) == a
    with pytest.raises(ParseError):
        el("p4")
    with pytest.raises(ParseError):
        el("x1")


def test_sigma():
    assert [PC.sigma(2, m) for m in range(4)] == [1, 5, 12, 32]
    counts = [0] * 5
    for a in PC.ball(2, 4):
        counts[PC.length(a)] += 1
    assert counts == [PC.sigma(2, m) for m in range(5)]


def test_necklaces():
    assert [PC.necklaces(2, m) for m in (1, 2, 3)] == [2, 3, 4]
    from itertools import product
    for n in (2, 3):
        for m in range(1, 6):
            reps = {min(PC._rotations(w)) for w in product(range(n), repeat=m)}
            assert PC.necklaces(n, m) == len(reps)


def test_cgf_values():
    assert PC.cgf("n", 2, 2) == 10
    assert [PC.cgf("n", 2, m) for m in range(6)] == [1, 5, 10, 24, 56, 128]
    assert [PC.cgf("pstar", 2, m) for m in range(4)] == [1, 5, 6, 8]


def test_series_squared_denominator_differs():
    assert PC.series_coefficients("n_squared", 2, 6) == [1, 1, 2, 0, 4, 0, 8]
    assert PC.series_coefficients("n", 2, 6) != PC.series_coefficients("n_squared", 2, 6)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("rel", ["sigma", "n", "c", "pstar"])
def test_series_equals_cgf(n, rel):
    M = 10
    assert PC.series_coefficients(rel, n, M) == [PC.cgf(rel, n, m) for m in range(M + 1)]


def test_c_series_low_terms():
    for n in (2, 3, 4):
        s = PC.series_coefficients("c", n, 1)
        assert s == [1, 2 * n + 1]


@pytest.mark.parametrize("rel", ["sigma", "n", "c", "pstar"])
def test_oracle_vs_formula_n2(rel):
    M = 5
    assert PC.ball_oracle(2, M, rel) == [PC.cgf(rel, 2, m) for m in range(M + 1)]


def test_oracle_vs_formula_n3_small():
    for rel in ("n", "pstar"):
        assert PC.ball_oracle(3, 4, rel) == [PC.cgf(rel, 3, m) for m in range(5)]


def test_oracle_p_is_pstar_count():
    # p is not transitive on P_n; its closure is what the oracle counts
    assert PC.ball_oracle(2, 3, "p") == PC.ball_oracle(2, 3, "pstar")


def test_oracle_classes_agree_with_deciders():
    for rel in ("n", "c"):
        for cls in PC.ball_classes(rel.lower(), 2, 4):
            a = cls[0]
            assert all(PC.poly_conj(rel.upper(), a, b) for b in cls)
    for cls in PC.ball_classes("n", 2, 4):
        shortest = min(cls, key=PC.length)
        assert shortest is ZERO or PC.cyclic_reduce(shortest) == shortest


def test_ball_bound():
    with pytest.raises(BoundExceeded):
        PC.ball(2, PC.MAX_BALL + 1)


def test_p_set_membership():
    a = ((0,), (1, 0))
    B = PC.ball(2, 3)
    allowed = set(PC.p_set(a, 2, 3))
    for g in B:
        if g is ZERO or len(g[1]) > 3:
            continue
        ok = all(PC.multiply(m, a) is ZERO or PC.product_of(m, a, g) is not ZERO for m in B)
        assert ok == (g in allowed)
