import random

import pytest
from hypothesis import given, strategies as st

from artifact import moduli as M
from artifact.exact_math import GF, QQ
from artifact.polyring import (BuchbergerConfig, ExponentOverflowError, Ideal, PolyRing, RingMismatchError,
                               apply_ring_map, cotangent_weights, groebner, homogeneity_check, ideal_from_json,
                               ideal_from_text, ideal_member, ideal_to_cas, ideal_to_json, ideal_to_text, jacobian_at,
                               minimal_generator_degrees, monomials_of_degree, normal_form,
                               standard_monomial_counts, tangent_dimension_at_origin)

R3 = PolyRing.make(["x", "y", "z"], field=QQ, order="wdegrevlex")
coeffs = st.integers(-5, 5)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coeffs, max_size=5).map(
    lambda d: sum((c * R3.monomial(e) for e, c in d.items()), R3.zero()))


def test_arith_examples():
    x, y = R3.var("x"), R3.var("y")
    assert (x + y) * (x - y) == x**2 - y**2
    f = R3.parse("3*x^2*y - z + 1/2")
    assert (f + (-f)).is_zero()
    assert R3.parse(str(f)) == f


def test_ring_mismatch():
    S = PolyRing.make(["x", "y"])
    with pytest.raises(RingMismatchError):
        R3.var("x") + S.var("x")


def test_exponent_overflow():
    with pytest.raises(ExponentOverflowError):
        R3.var("x") ** (1 << 20)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert R3.parse(str(f)) == f


@given(polys, st.lists(polys, max_size=3))
def test_division_certificate(f, basis):
    basis = [g for g in basis if not g.is_zero()]
    r, qs = normal_form(f, basis)
    assert sum((q * g for q, g in zip(qs, basis)), R3.zero()) + r == f
    lms = [g.lm() for g in basis]
    for m in r.terms:
        assert not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)


def test_normal_form_examples():
    R = M.curve_over_un(4).ideal.ring
    g = R.parse("x2*x4 - x2*x3 - c4*x4 - cb4*x2 + c")
    f = R.parse("x2*x4")
    r, _ = normal_form(f, [g])
    assert r == R.parse("x2*x3 + c4*x4 + cb4*x2 - c")
    assert normal_form(g, [g])[0].is_zero()
    assert normal_form(f, [])[0] == f


def test_buchberger_quotient_dimension():
    R = PolyRing.make(["x", "y"], order="wdeglex")
    gb = groebner([R.parse("x^2 - y"), R.parse("y^2 - x")], ring=R)
    lms = gb.leading_monomials()
    # brute force: monomials up to degree 6 not divisible by a leading monomial
    std = [m for d in range(7) for m in monomials_of_degree([1, 1], d)
           if not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)]
    assert len(std) == 4
    assert sum(standard_monomial_counts(gb, 6)) == 4


def test_principal_ideal():
    f = R3.parse("2*x^2 - y*z")
    gb = groebner([f], ring=R3)
    assert [g for g in gb.polys] == [f.monic()]


@given(st.lists(polys, min_size=1, max_size=3), st.integers(0, 10**6))
def test_groebner_members_reduce_to_zero(gens, seed):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = groebner(gens, BuchbergerConfig(degree_cap=8), ring=R3)
    if not gb.complete:
        return
    rng = random.Random(seed)
    f = sum((g * R3.monomial((rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)), rng.randint(-3, 3))
             for g in gens), R3.zero())
    assert gb.reduce(f).is_zero()
    for g in gens:
        assert gb.contains(g)


def test_ideal_member_examples():
    I6 = M.u_n_reduced(6)
    assert ideal_member(I6.gens[0], I6.gens).verdict == "true"
    assert ideal_member(I6.ring.one(), I6.gens).verdict == "false"


def test_truncation_reported():
    R = PolyRing.make(["x", "y", "z"], order="wdegrevlex")
    gens = [R.parse("x^3 - y*z^2"), R.parse("y^3 - x^2*z"), R.parse("z^3 - x*y^2")]
    gb = groebner(gens, BuchbergerConfig(degree_cap=3), ring=R)
    assert gb.status in ("truncated", "complete")
    if not gb.complete:
        m = ideal_member(R.parse("x^7"), gens, degree_cap=3)
        assert m.verdict in ("unknown", "true")


def test_standard_monomial_counts_examples():
    R = PolyRing.make([f"v{i}" for i in range(6)])
    assert standard_monomial_counts(groebner([], ring=R), 2) == [1, 6, 21]
    gb = M.u_n_reduced(6).groebner()
    assert standard_monomial_counts(gb, 2) == [1, 10, 50]


def test_ring_maps():
    I = M.u_n_reduced(6)
    ident = {nm: I.ring.var(nm) for nm in I.ring.names}
    for g in I.gens:
        assert apply_ring_map(g, ident) == g
    inv = M.sn_action(6, 1, 3)
    for g in I.gens:
        assert apply_ring_map(apply_ring_map(g, inv), inv) == g


def test_tangent_dimension_examples():
    for n, want in ((6, 10), (7, 15)):
        I = M.u_n_full(n)
        assert tangent_dimension_at_origin(I.ring, I.gens) == want
    assert tangent_dimension_at_origin(R3, []) == 3
    with pytest.raises(ValueError):
        tangent_dimension_at_origin(R3, [R3.parse("x + 1")])


def test_minimal_generator_degrees_examples():
    assert set(minimal_generator_degrees(M.u_n_reduced(6).gens)) == {2}
    assert minimal_generator_degrees([R3.parse("x^3 + y*z^2")]) == {3: 1}
    assert minimal_generator_degrees(M.u_n_presentation(3).gens) == {}


def test_cotangent_weights_special_presentations():
    assert cotangent_weights(M.u_n_presentation(2).ring, []) == {2: 1, 3: 1, 4: 1}


def test_jacobian_examples():
    F = GF(101)
    R = PolyRing.make(["x", "y", "delta", "eps"], [2, 3, 4, 6], F)
    f = R.parse("y^2 - x^3 - delta*x - eps")
    rng = random.Random(1)
    while True:
        pt = {nm: rng.randrange(101) for nm in ("x", "y", "delta")}
        pt["eps"] = (pt["y"] ** 2 - pt["x"] ** 3 - pt["delta"] * pt["x"]) % 101
        if (2 * pt["y"]) % 101 or (3 * pt["x"] ** 2 + pt["delta"]) % 101:
            break
    _, rank = jacobian_at([f], pt)
    assert rank == 1
    _, rank = jacobian_at([R3.parse("x^2"), R3.parse("y*z")], {"x": 0, "y": 0, "z": 0})
    assert rank == 0


def test_homogeneity_examples():
    assert homogeneity_check(M.u_n_full(6).gens) == []
    R = PolyRing.make(["x", "y"])
    assert homogeneity_check([R.parse("x + y^2")])
    T = PolyRing.make(["x", "y", "alpha", "beta", "gamma"], [1, 2, 2, 3, 4])
    assert homogeneity_check([T.parse("y^2 - y*x^2 - alpha*(y - x^2) - beta*x - gamma")]) == []


@pytest.mark.parametrize("field", [QQ, GF(101)])
def test_serialization_round_trips(field):
    I = M.u_n_full(5, field)
    for dump, load in ((ideal_to_text, ideal_from_text), (ideal_to_json, ideal_from_json)):
        J = load(dump(I))
        assert J.ring == I.ring and J.gens == I.gens and J.names == I.names
        assert dump(J) == dump(I)
    assert "ideal(" in ideal_to_cas(I)
