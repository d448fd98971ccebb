import random

import pytest
from hypothesis import given, strategies as st

from artifact import grassmannian as G
from artifact.exact_math import GF, QQ

rows = st.lists(st.integers(-6, 6), min_size=5, max_size=5)


@given(rows, rows)
def test_wedges_satisfy_plucker_relations(u, v):
    try:
        p = G.wedge([u, v])
    except ValueError:  # dependent rows
        return
    assert p.on_grassmannian()


def test_plucker_ideal_shape():
    I = G.plucker_ideal()
    assert len(I.gens) == 5 and all(g.degree() == 2 for g in I.gens)


def test_l_points_and_p5():
    pts, forms = G.L_data()
    for p in pts + [G.P5]:
        assert p.on_grassmannian()
        d = p.as_dict()
        assert all(f.evaluate(d) == 0 for f in forms)


def test_L_intersection_hilbert_function():
    v = G.check_L_intersection()
    assert v.ok and v.witness["hilbert_function"] == [1, 4, 5, 5, 5, 5]
    assert G.check_L_intersection(mutate=True).status == "fail"


@pytest.mark.parametrize("name", G.L_FORM_NAMES)
def test_dropping_any_form_gives_degree_five_curve(name):
    assert G.check_section_curve(drop=name).ok


@pytest.mark.parametrize("field", [QQ, GF(211)])
def test_random_sections(field):
    for seed in range(3):
        assert G.check_section_curve(seed=seed, field=field).ok


def test_all_six_forms_give_points():
    comb = [[int(i == j) for j in range(6)] for i in range(6)]
    assert G.section_curve(comb, upto=4) == [1, 4, 5, 5, 5]
    assert G.check_section_curve(mutate=True).status == "fail"


def test_dependent_forms_rejected():
    with pytest.raises(ValueError):
        G.section_curve([[1, 0, 0, 0, 0, 0]] * 5)


def test_point_validation():
    with pytest.raises(ValueError):
        G.PluckerPoint((0,) * 10)
    with pytest.raises(ValueError):
        G.PluckerPoint((1, 2))
    assert G.P5.reduce_mod(101).normalized()[0] == 1
