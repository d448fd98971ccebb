import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact import ncrewrite as NC
from artifact.exact_math import GF, QQ


def test_e2_completion_adds_cubic_rules():
    S = NC.complete(NC.e_system(2))
    lhs = {"*".join(r.lhs.arrows) for r in S.rules}
    assert lhs == {"A1*B2", "A2*B1", "B2*A2", "A1*B1*A1", "B1*A1*B1"}
    assert S.completed and not S.truncated


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
def test_e_basis_dimension(n):
    S = NC.complete(NC.e_system(n))
    assert len(S.rules) == n * n + 1
    basis = NC.basis_by_degree(S, 3)
    assert sum(len(v) for v in basis.values()) == 4 * n + 2
    dims = NC.graded_quotient_dims(NC.e_quiver(n), NC.e_relations(n), 6)
    assert dims[:4] == [n + 1, 2 * n, n + 1, 0] and sum(dims) == 4 * n + 2


def test_nf_examples():
    S = NC.complete(NC.e_system(3))
    Q = S.quiver
    assert S.nf({NC.path(Q, ["A2", "B3"]): 1}) == {}
    assert S.nf({NC.path(Q, ["B2", "A2"]): 1}) == {NC.path(Q, ["B1", "A1"]): 1}


def test_empty_system_unchanged():
    Q = NC.e_quiver(2)
    S = NC.system_from_relations(Q, [], NC.e_precedence(2))
    T = NC.complete(S)
    assert T.rules == [] and T.completed


def test_basis_requires_completion():
    with pytest.raises(ValueError):
        NC.basis_by_degree(NC.e_system(2), 3)


def test_truncation_is_flagged(caplog):
    S = NC.complete(NC.e_system(3), max_len=2)
    assert S.truncated and not S.completed


def test_text_round_trip():
    Q, rels = NC.e_quiver(3), NC.e_relations(3)
    text = NC.quiver_to_text(Q, rels)
    Q2, rels2 = NC.quiver_from_text(text)
    assert NC.quiver_to_text(Q2, rels2) == text


@settings(max_examples=30)
@given(st.integers(2, 5), st.integers(0, 10**6), st.sampled_from([QQ, GF(3)]))
def test_multiplication_associative_on_random_elements(n, seed, F):
    S = NC.complete(NC.e_system(n, F))
    words = NC.normal_words(S, 3)
    rng = random.Random(seed)

    def rand():
        return {w: F.convert(rng.randint(-2, 2)) for w in rng.sample(words, 3)}

    a, b, c = rand(), rand(), rand()
    assert S.multiply(S.multiply(a, b), c) == S.multiply(a, S.multiply(b, c))


@settings(max_examples=30)
@given(st.integers(2, 5), st.lists(st.integers(0, 100), min_size=1, max_size=7))
def test_normal_form_idempotent_and_reduced(n, picks):
    S = NC.complete(NC.e_system(n))
    paths = [p for p in NC.all_paths(S.quiver, 7) if p.arrows]
    w = paths[picks[0] % len(paths)]
    nf = S.nf({w: 1})
    assert S.nf(nf) == nf
    assert all(S.is_normal(u) for u in nf)
    assert S.nf({w: 1}, rightmost=True) == nf
