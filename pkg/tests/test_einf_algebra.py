import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact import einf_algebra as EA
from artifact.exact_math import GF, QQ


@pytest.fixture(scope="module")
def E3():
    return EA.build_e(3)


def test_build_e_examples(E3):
    assert EA.build_e(2).dim == 10
    ix = E3.index
    assert E3.mul(ix("B3"), ix("A3")) == {ix("w"): 1}
    assert E3.mul(ix("w"), ix("w")) == {}
    with pytest.raises(ValueError):
        EA.build_e(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_associative_and_unital(n):
    E = EA.build_e(n)
    assert E.dim == 4 * n + 2
    assert EA.check_associative(E) == []
    one = E.unit()
    for x in range(E.dim):
        assert E.mul_vec(one, {x: 1}) == {x: 1} == E.mul_vec({x: 1}, one)


def test_derived_zero_products(E3):
    ix = E3.index
    zero_pairs = [("w", "B1"), ("A1", "w"), ("l1", "l1"), ("l1", "A1"), ("B1", "l1")]
    for a, b in zero_pairs:
        assert E3.mul(ix(a), ix(b)) == {}


@pytest.mark.parametrize("d,s", [(2, -1), (3, -1), (3, -2), (4, -2)])
def test_delta_squared_zero(E3, d, s):
    C0, C1, C2 = (EA.cochain_space(E3, k, s) for k in (d, d + 1, d + 2))
    d0 = EA.differential_columns(E3, C0, C1)
    d1 = EA.differential_columns(E3, C1, C2)
    for col in d0.values():
        assert EA.apply_columns(d1, col, QQ) == {}


@settings(max_examples=15)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_cocycles_are_first_order_a4_deformations(n, seed):
    E = EA.build_e(n)
    phi = EA.random_cochain(E, 3, random.Random(seed))
    S = EA.AInfStructure(E, 3, {3: phi})
    src, tgt = EA.cochain_space(E, 3, -1), EA.cochain_space(E, 4, -1)
    cols = EA.differential_columns(E, src, tgt)
    vec = {src.index[(t, b)]: c for t, v in phi.items() for b, c in v.items()}
    dphi = EA.apply_columns(cols, vec, QQ)
    for sigma in EA.composable_tuples(E, 4):
        rel = EA.ainf_relation(S, sigma)
        via_matrix = {b: dphi[tgt.index[(sigma, b)]] for b in tgt.outs.get(sigma, ())
                      if tgt.index[(sigma, b)] in dphi}
        assert rel == via_matrix
    assert EA.ainf_check(S)[0] == (not dphi)


def test_hh2_table_n3_and_n5():
    assert [EA.hochschild(3, 2, r).dimension for r in (1, 2, 3, 4)] == [1, 2, 1, 0]
    assert [EA.hochschild(5, 2, r).dimension for r in (1, 2, 3)] == [6, 0, 0]


def test_hh2_char2_n2():
    F = GF(2)
    E = EA.build_e(2, F)
    assert [EA.hochschild(2, 2, r, F, E).dimension for r in (1, 2, 3, 4)] == [1, 1, 1, 1]
    assert [EA.hochschild(2, 2, r).dimension for r in (1, 2, 3, 4)] == [0, 1, 1, 1]


@pytest.mark.parametrize("n", [3, 4])
def test_field_independence(n):
    dims = {}
    for F in (QQ, GF(101), GF(2), GF(3)):
        E = EA.build_e(n, F)
        dims[F.name] = [EA.hochschild(n, j, r, F, E).dimension for j in (1, 2) for r in (1, 2, 3)]
    assert len(set(map(tuple, dims.values()))) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_hh1_vanishes(n):
    E = EA.build_e(n)
    assert all(EA.hochschild(n, 1, r, QQ, E).dimension == 0 for r in range(1, 7))


def test_hochschild_errors():
    with pytest.raises(ValueError):
        EA.hochschild(3, 2, 0)
    with pytest.raises(ValueError):
        EA.hochschild(3, 2, 7)
    with pytest.raises(ValueError):
        EA.hochschild(3, 3, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivial_structure_passes(n):
    assert EA.ainf_check(EA.trivial_structure(EA.build_e(n), 6)) == (True, None)


def test_rescale_identity_and_errors(E3):
    S = EA.AInfStructure(E3, 3, {3: EA.random_cocycle(E3, 3, random.Random(0))})
    assert EA.same_structure(EA.rescale(S, 1), S)
    T = EA.trivial_structure(E3, 6)
    assert EA.same_structure(EA.rescale(T, 5), T)
    with pytest.raises(ValueError):
        EA.rescale(S, 0)


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.fractions(min_value=-9, max_value=9, max_denominator=5),
       st.fractions(min_value=-9, max_value=9, max_denominator=5))
def test_rescale_group_action_and_conjugation(seed, lam, mu):
    if lam == 0 or mu == 0:
        return
    E = EA.build_e(2)
    rng = random.Random(seed)
    S = EA.AInfStructure(E, 4, {3: EA.random_cochain(E, 3, rng), 4: EA.random_cochain(E, 4, rng)})
    assert EA.same_structure(EA.rescale(EA.rescale(S, lam), mu), EA.rescale(S, lam * mu))
    assert EA.same_structure(EA.rescale(S, lam), EA.conjugate_by_grading(S, lam))


def test_text_round_trip(E3):
    S = EA.AInfStructure(E3, 3, {3: EA.random_cocycle(E3, 3, random.Random(4))})
    text = S.to_text()
    T = EA.AInfStructure.from_text(E3, text, 3)
    assert EA.same_structure(S, T)
    assert T.to_text() == text


def test_malformed_structures(E3):
    ix = E3.index
    with pytest.raises(ValueError):
        EA.AInfStructure(E3, 3, {3: {(ix("e0"), ix("A1"), ix("B1")): {ix("w"): 1}}})
    with pytest.raises(ValueError):
        EA.AInfStructure(E3, 3, {3: {(ix("A1"), ix("B1")): {ix("w"): 1}}})
    with pytest.raises(ValueError):
        EA.AInfStructure(E3, 3, {4: {}})
    with pytest.raises(ValueError):  # wrong degree: w has degree 1, needs 3 - 1 = 2
        EA.AInfStructure(E3, 3, {3: {(ix("B1"), ix("A1"), ix("B1")): {ix("w"): 1}}})
    with pytest.raises(ValueError):
        EA.AInfStructure.from_text(E3, "mu 3 A1,B1,A1 -> 1*A1", 3)


def test_mutated_mu3_fails_with_witness(E3):
    v = EA.check_trivial_ainf(3, seed=1, mutate=True)
    assert v.status == "fail" and v.witness["problems"][0]["arity"] == 4


@pytest.mark.parametrize("n,want", [(1, 8), (2, 6), (3, 5), (4, 4), (5, 4), (6, 4), (7, 4)])
def test_stabilization_bound(n, want):
    assert EA.stabilization_bound(n) == want


def test_checks_and_mutations():
    assert EA.check_e_algebra(3).ok
    assert EA.check_e_algebra(3, mutate=True).status == "fail"
    assert EA.check_trivial_ainf(2, seed=0).ok
    assert EA.check_hochschild(2, r_max=4).ok
    assert EA.check_hochschild(2, GF(2), r_max=4).ok
    assert EA.check_hochschild(2, r_max=4, mutate=True).status == "fail"
