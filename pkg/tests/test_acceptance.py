"""End-to-end acceptance battery: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the lines
interleaved with pytest's own output).
"""

import random
import time

import pytest

from artifact import einf_algebra as E
from artifact import grassmannian as G
from artifact import moduli as M
from artifact import verify as V
from artifact.exact_math import GF, QQ


@pytest.fixture
def report(capsys):
    """Print ``criterion k: PASS/FAIL`` with timing and assert the verdicts and the time budget."""

    t0 = time.perf_counter()

    def _report(k, verdicts, budget, detail=""):
        secs = time.perf_counter() - t0
        failed = [v for v in verdicts if not v.ok]
        ok = not failed and secs <= budget
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({len(verdicts)} cases, {secs:.1f}s / {budget}s)"
        if detail:
            line += f" {detail}"
        if failed:
            line += " failing: " + ", ".join(f"{v.check}{v.params}" for v in failed)
        with capsys.disabled():
            print("\n" + line)
        assert not failed, [(v.check, v.params, v.witness) for v in failed]
        assert secs <= budget, f"{secs:.1f}s over the {budget}s budget"

    return _report


def _mutant(check):
    """The mutated case of ``check`` as a verdict that passes iff the mutant fails."""
    v = V.run_mutation(check)
    return V.Verdict(f"mutation:{check}", {"check": check}, "pass" if v.status == "fail" else "fail", {})


def test_criterion_01_diamond(report):
    vs = [V.check_diamond_symbolic(n) for n in range(4, 9)]
    t8 = vs[-1].millis / 1000
    vs.append(_mutant("diamond-symbolic"))
    assert t8 <= 60
    report(1, vs, 120, f"n=8 took {t8:.1f}s")


def test_criterion_02_hilbert_series(report):
    vs = [V.check_hilbert_series(n, D=8) for n in range(5, 10)]
    assert vs[1].witness["counts"][:3] == [1, 10, 50]
    report(2, vs, 120)


def test_criterion_03_fiber_hilbert(report):
    vs = []
    for n in (4, 5, 6, 7):
        R = M.reduced_ring(n)
        vs.append(V.check_fiber_hilbert(n, M.zero_point(R)))
        vs.append(V.check_fiber_hilbert(n, M.wheel_point(n, "reduced")))
        if n >= 6:
            vs.extend(V.check_fiber_hilbert(n, M.p_in_point(n, i)) for i in range(1, n))
        if n >= 5:
            rng = random.Random(n)
            pts = [M.random_point_un(n, rng, 101) for _ in range(5)]
            assert all(p is not None for p in pts)
            vs.extend(V.check_fiber_hilbert(n, p, field=GF(101)) for p in pts)
    report(3, vs, 60)


def test_criterion_04_substitution(report):
    vs = [V.check_substitution_iso(n) for n in range(4, 9)]
    vs.append(_mutant("substitution-iso"))
    report(4, vs, 90)


def test_criterion_05_weights(report):
    vs = [V.check_tangent_and_weights(n) for n in range(1, 8)]
    got = {n: v.witness["weights"] for n, v in zip(range(1, 8), vs)}
    assert got[1] == {"4": 1, "6": 1}
    assert got[2] == {"2": 1, "3": 1, "4": 1}
    assert got[3] == {"1": 1, "2": 2, "3": 1}
    assert got[6] == {"1": 10}
    report(5, vs, 10)


def test_criterion_06_hochschild(report):
    vs = [E.check_hochschild(n, F) for n in range(2, 6) for F in (QQ, GF(101))]
    vs.append(E.check_hochschild(2, GF(2)))
    assert E.hh2_table(2, GF(2)) == {1: 1, 2: 1, 3: 1, 4: 1}
    for n in range(2, 6):
        for r in range(1, 7):
            assert E.hochschild(n, 1, r).dimension == 0
    report(6, vs, 300)


def test_criterion_07_sn_action(report):
    vs = [V.check_sn_action(n, i, j) for n in (5, 6, 7) for i, j in ((1, 3), (2, 3), (2, 4), (3, 5), (1, 4))]
    report(7, vs, 60)


def test_criterion_08_blowup(report):
    vs = [V.check_blowup_points(n) for n in (6, 7)]
    vs.extend(V.check_component_ideals(n, i) for n in (6, 7) for i in (1, 2, 4))
    report(8, vs, 120)


def test_criterion_09_grassmannian(report):
    vs = [G.check_L_intersection()]
    vs.extend(G.check_section_curve(seed=k, field=F) for k in range(10) for F in (QQ, GF(211)))
    report(9, vs, 60)


def test_criterion_10_wheel(report):
    vs = [V.check_wheel(n) for n in range(3, 9)]
    report(10, vs, 5)


def test_criterion_11_charp(report):
    vs = [V.check_charp_fields(case) for case in M.CHARP_CASES]
    vs.append(_mutant("charp-fields"))
    report(11, vs, 1)


def test_criterion_12_e_algebra(report):
    vs = [E.check_e_algebra(n) for n in range(2, 9)]
    vs.extend(E.check_trivial_ainf(n, seed=0, d_max=6) for n in range(2, 7))
    assert [E.stabilization_bound(n) for n in (5, 4, 3, 2, 1)] == [4, 4, 5, 6, 8]
    report(12, vs, 60)


def test_criterion_13_mutations(report):
    vs = [_mutant(name) for name in V.registry()]
    report(13, vs, 120)
