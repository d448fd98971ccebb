import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact import moduli as M
from artifact.exact_math import GF, QQ
from artifact.polyring import apply_ring_map, homogeneity_check, ideal_member


def test_special_presentations():
    want = {1: {"delta": 4, "eps": 6}, 2: {"alpha": 2, "beta": 3, "gamma": 4}, 3: {"a": 1, "b": 2, "c": 2, "d": 3}}
    for n, w in want.items():
        I = M.u_n_presentation(n)
        assert dict(zip(I.ring.names, I.ring.weights)) == w
        assert I.gens == []
    assert M.u_n_reduced(4).gens == []
    assert len(M.u_n_reduced(5).gens) == 2


def test_generator_counts():
    assert M.u_n_full(3).gens == [] or all(g.is_zero() for g in M.u_n_full(3).gens)
    assert len(M.u_n_reduced(6).gens) == 7
    for n in (5, 6, 7):
        assert all(g.degree() == 2 for g in M.u_n_reduced(n).gens)
    with pytest.raises(ValueError):
        M.u_n_full(2)
    with pytest.raises(ValueError):
        M.u_n_reduced(3)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_homogeneous_ideals(n):
    assert homogeneity_check(M.u_n_full(n).gens) == []
    assert homogeneity_check(M.u_n_reduced(n).gens) == []
    assert homogeneity_check(M.curve_over_un(n).ideal.gens) == []


@pytest.mark.parametrize("n", [4, 5, 6])
def test_full_and_reduced_agree(n):
    F, R, img = M.full_to_reduced_map(n)
    red = M.u_n_reduced(n)
    gb = red.groebner()
    for g in M.u_n_full(n).gens:
        assert gb.contains(apply_ring_map(g, img, R))


def test_curve_examples():
    R = M.curve_over_un(3).ideal.ring
    assert M.curve_over_un(3).ideal.gens == [R.parse("x2*x3^2 - x2^2*x3 - a*x2*x3 - b*x2 - c*x3 - d")]
    H = M.curve_over_un(3, homogenized=True).ideal
    assert H.gens == [H.ring.parse("X2*X3^2 - X2^2*X3 - a*T*X2*X3 - b*T^2*X2 - c*T^2*X3 - d*T^3")]
    spec = M.curve_over_un(5)
    fib = M.specialize(spec.ideal, M.zero_point(M.reduced_ring(5)), spec.curve_names)
    x = {i: fib.ring.var(M.x_var(i)) for i in range(2, 6)}
    gb = fib.groebner()
    for i in range(2, 6):
        for j in range(i + 1, 6):
            if (i, j) != (2, 3):
                assert gb.contains(x[i] * x[j] - x[2] * x[3])


def test_special_curves():
    for n, pt, eq in ((1, {"delta": 0, "eps": 0}, "y^2 - x^3"), (2, {"alpha": 0, "beta": 0, "gamma": 0}, "y^2 - y*x^2")):
        spec = M.curve_over_un(n)
        fib = M.specialize(spec.ideal, pt, spec.curve_names)
        assert fib.gens == [fib.ring.parse(eq)]


def test_wheel_n2_identity():
    # f1 = y, h12 = x on the wheel of two lines; the identity f1^2 - f1 h12^2 = (f1 - h12^2)/4 is the curve at alpha = 1/4
    spec = M.curve_over_un(2)
    fib = M.specialize(spec.ideal, M.WHEEL_POINT_N2, spec.curve_names)
    R = fib.ring
    assert fib.gens[0] == R.parse("y^2 - y*x^2") - Fraction(1, 4) * R.parse("y - x^2")


def test_special_points():
    R = M.reduced_ring(6)
    p3 = M.p_in_point(6, 3)
    assert {k for k, v in p3.items() if v} == {M.v_cbi(6)}
    p1 = M.p_in_point(7, 1)
    assert {k for k, v in p1.items() if v} == {M.v_ci(7)} | {M.v_cij(i, 7) for i in range(4, 7)}
    for n in (6, 7):
        gb = M.u_n_reduced(n).groebner()
        for i in range(1, n):
            pt = M.p_in_point(n, i)
            assert all(g.evaluate(pt) == 0 for g in M.u_n_reduced(n).gens)
    with pytest.raises(ValueError):
        M.p_in_point(6, 6)
    with pytest.raises(ValueError):
        M.p_in_point(5, 1)


def test_wheel_point():
    pt = M.wheel_point(3)
    assert (pt["a"], pt["b"], pt["c"], pt["d"]) == (-1, 0, 0, 0)
    I = M.u_n_full(6)
    assert all(g.evaluate(M.wheel_point(6)) == 0 for g in I.gens)
    assert M.wheel_parametrization(4)[2][M.x_var(2)] == (1, -1)


def test_c1n_membership():
    assert not M.c1n_membership([[0, 1], [0, 0], [0, 0]])
    assert M.c1n_membership([[5], [5], [5]])
    assert M.c1n_membership([[0, 1], [0, 1], [0, 0]])


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_coordinates_are_functions_on_c1n(n):
    # the zero fibre is the union of the coordinate axes and the diagonal line
    spec = M.curve_over_un(n)
    fib = M.specialize(spec.ideal, M.zero_point(M.reduced_ring(n)), spec.curve_names)
    lines = [[int(i == k) for i in range(2, n + 1)] for k in range(2, n + 1)] + [[1] * (n - 1)]
    for v in lines:
        assert all(g.evaluate(dict(zip(spec.curve_names, v))) == 0 for g in fib.gens)
    for j in range(2, n + 1):
        germs = [[0, 1]] + [[0, int(j == k)] for k in range(2, n + 1)]
        assert M.c1n_membership(germs)
    assert not M.c1n_membership([[0, 1]] + [[0, 0]] * (n - 1))


def test_charp_tables():
    v = M.charp_vector_fields("cusp@2")
    assert (v[1].Q, v[1].lift) == ("y", ({1: 1},))
    assert M.charp_vector_fields("tacnode@2")[3].lift == ({0: 1}, {0: 1})
    with pytest.raises(ValueError):
        M.charp_vector_fields("node@5")


def test_substitution_map_images():
    src, tgt, img = M.substitution_map(5)
    assert img[M.x_var(2)] == tgt.var(M.v_ci(6))
    assert img["a"] == tgt.var("a")


@pytest.mark.parametrize("g", [(1, 3), (2, 3), (2, 4), (4, 5)])
def test_sn_involutions(g):
    R = M.reduced_ring(6)
    s = M.sn_action(6, *g)
    sq = M.compose_maps(R, s, s)
    assert all(sq[nm] == R.var(nm) for nm in R.names)


def test_transposition_45_alias():
    R = M.reduced_ring(6)
    s = M.sn_action(6, 4, 5)
    assert s[M.v_ci(4)] == R.var(M.v_ci(5))
    assert s[M.v_cij(4, 5)] == R.parse("a + c4 + cb4 + c5 + cb5 - c4_5")


@settings(max_examples=8)
@given(st.integers(0, 10**6), st.sampled_from([5, 6, 7]))
def test_random_points_lie_on_un(seed, n):
    pt = M.random_point_un(n, random.Random(seed))
    if pt is None:
        return
    F = GF(101)
    assert all(g.evaluate(pt) == 0 for g in M.u_n_reduced(n, F).gens)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_marked_points_smooth(n):
    base = M.wheel_point(3) if n == 3 else M.wheel_point(n, "reduced")
    zero = {k: 0 for k in base}
    for pt in (base, zero):
        assert [M.marked_point_tangent_dim(n, pt, j) for j in range(1, n + 1)] == [1] * n


@settings(max_examples=5)
@given(st.integers(0, 10**6))
def test_marked_points_smooth_random(seed):
    pt = M.random_point_un(6, random.Random(seed))
    if pt is None:
        return
    assert all(M.marked_point_tangent_dim(6, pt, j, GF(101)) == 1 for j in range(1, 7))


def test_fiber_points_satisfy_fiber_ideal():
    F = GF(101)
    rng = random.Random(5)
    pt = M.random_point_un(6, rng)
    fib = M.fiber_ideal(6, pt, F, "reduced")
    pts = M.fiber_points(6, pt, 101, rng, limit=10)
    assert pts
    for q in pts:
        named = {M.x_var(i): v for i, v in q.items()} if isinstance(next(iter(q)), int) else q
        assert all(g.evaluate(named) == 0 for g in fib.gens)
