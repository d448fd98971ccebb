from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.exact_math import (GF, QQ, FieldMismatchError, Scalar, SparseEchelon, bareiss_rank, field_from_name,
                                 is_probable_prime, matrix_rank, parse_scalar, rank_and_kernel, solve_linear)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
primes = st.sampled_from([2, 3, 5, 101, 211, 2**31 - 1])


def test_scalar_examples():
    assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Scalar(Fraction(5, 6))
    assert Scalar(2, 3) * Scalar(2, 3) == Scalar(1, 3)
    q = Scalar(7) / Scalar(-14)
    assert q.value == Fraction(-1, 2) and q.value.denominator > 0
    assert q.serialize() == "-1/2"


def test_scalar_errors():
    with pytest.raises(FieldMismatchError):
        Scalar(1, 5) + Scalar(1, 7)
    with pytest.raises(FieldMismatchError):
        Scalar(1) + Scalar(1, 7)
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)
    with pytest.raises(ZeroDivisionError):
        Scalar(1, 5) / Scalar(5, 5)


def test_parse_and_fields():
    assert parse_scalar("3 mod 7") == Scalar(3, 7)
    assert parse_scalar("-4/6") == Scalar(Fraction(-2, 3))
    assert field_from_name("Fp:101") == GF(101)
    assert field_from_name("Q") is QQ
    with pytest.raises(ValueError):
        field_from_name("R")
    with pytest.raises(ValueError):
        GF(100)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    F = QQ
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@given(primes, st.integers(), st.integers())
def test_prime_field_inverse(p, a, b):
    F = GF(p)
    x, y = F.convert(a), F.convert(b)
    assert F.add(x, F.neg(x)) == F.zero
    if x != F.zero:
        assert F.mul(x, F.inv(x)) == F.one
        assert F.mul(F.div(y, x), x) == y


@given(st.integers(2, 10**6))
def test_primality_matches_trial_division(n):
    assert is_probable_prime(n) == all(n % d for d in range(2, int(n**0.5) + 1))


def test_rank_examples():
    assert rank_and_kernel([[1, 0], [0, 1]]) == (2, [])
    r, ker = rank_and_kernel([[0] * 4 for _ in range(3)])
    assert r == 0 and len(ker) == 4


matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=6))


@given(matrices, st.sampled_from([QQ, GF(2), GF(7), GF(101)]))
def test_rank_nullity_and_kernel(rows, F):
    r, ker = rank_and_kernel(rows, F)
    ncols = len(rows[0])
    assert r + len(ker) == ncols
    for v in ker:
        for row in rows:
            acc = F.zero
            for a, b in zip(row, v):
                acc = F.add(acc, F.mul(F.convert(a), b))
            assert acc == F.zero
    assert matrix_rank(rows, F) == r
    ech = SparseEchelon(F)
    for row in rows:
        ech.add({i: F.convert(x) for i, x in enumerate(row) if F.convert(x) != F.zero})
    assert ech.rank == r


@given(matrices)
def test_bareiss_agrees_with_gauss_jordan(rows):
    assert bareiss_rank([list(r) for r in rows]) == rank_and_kernel(rows)[0]


@given(matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_solve_linear_consistent(rows, x):
    x = x[:len(rows[0])]
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    sol = solve_linear(rows, rhs)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in rows] == rhs
