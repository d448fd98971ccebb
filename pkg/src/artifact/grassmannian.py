"""Pluecker geometry of Gr(2,5) in P^9: quadrics, the four-point P^3, linear sections."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Sequence

from .exact_math import GF, QQ, Field, Raw, matrix_rank
from .polyring import Ideal, Poly, PolyRing, groebner, standard_monomial_counts
from .verify import Verdict, _finish

PAIRS = list(itertools.combinations(range(1, 6), 2))
PLUCKER_NAMES = [f"z{i}{j}" for i, j in PAIRS]
L_FORM_NAMES = ["z12-z24", "z13-z35", "z14+z24", "z15+z35", "z25", "z34"]


def plucker_ring(field: Field = QQ) -> PolyRing:
    return PolyRing.make(PLUCKER_NAMES, field=field, order="wdegrevlex")


@dataclass(frozen=True)
class PluckerPoint:
    coords: tuple
    field: Field = QQ

    def __post_init__(self):
        if len(self.coords) != 10:
            raise ValueError("need 10 homogeneous coordinates")
        if all(self.field.convert(c) == self.field.zero for c in self.coords):
            raise ValueError("all coordinates zero")

    def as_dict(self) -> dict[str, Raw]:
        return {nm: self.field.convert(c) for nm, c in zip(PLUCKER_NAMES, self.coords)}

    def on_grassmannian(self) -> bool:
        pt = self.as_dict()
        return all(q.evaluate(pt) == self.field.zero for q in plucker_ideal(self.field).gens)

    def normalized(self) -> tuple:
        F = self.field
        vals = [F.convert(c) for c in self.coords]
        k = next(i for i, v in enumerate(vals) if v != F.zero)
        inv = F.inv(vals[k])
        return tuple(F.mul(v, inv) for v in vals)

    def reduce_mod(self, p: int) -> "PluckerPoint":
        F = GF(p)
        return PluckerPoint(tuple(F.convert(c) for c in self.coords), F)


def wedge(rows: Sequence[Sequence[Raw]], field: Field = QQ) -> PluckerPoint:
    """Pluecker coordinates of the row span of a 2 x 5 matrix."""
    F = field
    u, v = rows
    coords = tuple(F.sub(F.mul(F.convert(u[i - 1]), F.convert(v[j - 1])),
                         F.mul(F.convert(u[j - 1]), F.convert(v[i - 1]))) for i, j in PAIRS)
    return PluckerPoint(coords, F)


def plucker_ideal(field: Field = QQ) -> Ideal:
    """The five quadrics cutting out Gr(2,5)."""
    R = plucker_ring(field)
    z = {nm: R.var(nm) for nm in PLUCKER_NAMES}
    gens = [
        z["z12"] * z["z34"] + z["z14"] * z["z23"] - z["z13"] * z["z24"],
        z["z13"] * z["z45"] + z["z15"] * z["z34"] - z["z14"] * z["z35"],
        z["z12"] * z["z45"] + z["z15"] * z["z24"] - z["z14"] * z["z25"],
        z["z12"] * z["z35"] + z["z15"] * z["z23"] - z["z13"] * z["z25"],
        z["z23"] * z["z45"] + z["z25"] * z["z34"] - z["z24"] * z["z35"],
    ]
    return Ideal(R, gens, [f"q{i + 1}" for i in range(5)])


def L_points() -> list[PluckerPoint]:
    return [PluckerPoint(c) for c in (
        (1, 0, -1, 0, 0, 1, 0, 0, 0, 0),
        (0, 1, 0, -1, 0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    )]


P5 = PluckerPoint((1, -1, -1, 1, 1, 1, 0, 0, -1, -1))


def L_forms(field: Field = QQ) -> list[Poly]:
    R = plucker_ring(field)
    return [R.parse(t) for t in L_FORM_NAMES]


def L_data(field: Field = QQ) -> tuple[list[PluckerPoint], list[Poly]]:
    """The four spanning points and the six linear forms defining their span."""
    return L_points(), L_forms(field)


def form_matrix(forms: Sequence[Poly]) -> list[list[Raw]]:
    R = forms[0].ring
    rows = []
    for f in forms:
        row = [R.field.zero] * R.nvars
        for m, c in f.terms.items():
            if sum(m) != 1:
                raise ValueError(f"not a linear form: {f}")
            row[m.index(1)] = c
        rows.append(row)
    return rows


def hilbert_function(gens: Sequence[Poly], upto: int) -> list[int]:
    gb = groebner(gens, ring=gens[0].ring)
    return standard_monomial_counts(gb, upto)


def check_L_intersection(field: Field = QQ, upto: int = 5, mutate: bool = False) -> Verdict:
    """The span of the four points meets Gr(2,5) in a reduced scheme of degree 5 containing p5.

    Expected Hilbert function 1, 4, 5, 5, ...: the five points span the P^3.
    The mutated input flips the sign of z45 in p5.
    """
    t0 = time.perf_counter()
    params = {"field": field.name, "upto": upto, "mutate": mutate}
    pts, forms = L_data(field)
    p5 = PluckerPoint(P5.coords[:-1] + (1,)) if mutate else P5
    Q = plucker_ideal(field)
    problems = []
    for k, p in enumerate(pts + [p5], start=1):
        pp = PluckerPoint(p.coords, field)
        if not pp.on_grassmannian():
            problems.append(f"p{k} not on Gr(2,5)")
        d = pp.as_dict()
        if any(f.evaluate(d) != field.zero for f in forms):
            problems.append(f"p{k} not on L")
    if matrix_rank(form_matrix(forms), field) != 6:
        problems.append("L forms dependent")
    span = [[field.convert(c) for c in p.coords] for p in pts]
    if matrix_rank(span, field) != 4:
        problems.append("spanning points dependent")
    h = hilbert_function(Q.gens + forms, upto)
    want = [1, 4] + [5] * (upto - 1)
    if h != want:
        problems.append(f"hilbert function {h}, expected {want}")
    normalized = {PluckerPoint(p.coords).reduce_mod(101).normalized() for p in pts + [p5]}
    if len(normalized) != 5:
        problems.append("points not distinct over Fp:101")
    witness = {"hilbert_function": h}
    if problems:
        witness["problems"] = problems
    return _finish("L-intersection", params, not problems, witness, t0)


def section_forms(combination: Sequence[Sequence[Raw]], field: Field = QQ) -> list[Poly]:
    """Linear combinations (rows of a 5 x 6 matrix) of the six L forms."""
    base = L_forms(field)
    R = base[0].ring
    out = []
    for row in combination:
        f = R.zero()
        for c, g in zip(row, base):
            f = f + R.field.convert(c) * g
        out.append(f)
    return out


def drop_form(name: str) -> list[list[int]]:
    k = L_FORM_NAMES.index(name)
    return [[int(j == i) for j in range(6)] for i in range(6) if i != k]


def random_section(rng: random.Random, field: Field = QQ, bound: int = 5) -> list[list[int]]:
    """A random 5 x 6 integer combination of full rank over ``field``."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(6)] for _ in range(5)]
        if matrix_rank([[field.convert(v) for v in r] for r in rows], field) == 5:
            return rows


def section_curve(combination: Sequence[Sequence[Raw]], field: Field = QQ, upto: int = 5) -> list[int]:
    """Hilbert function of Gr(2,5) cut by five independent L forms (a hyperplane of P^4 sections)."""
    forms = section_forms(combination, field)
    if matrix_rank(form_matrix(forms), field) != len(forms):
        raise ValueError("dependent forms")
    return hilbert_function(plucker_ideal(field).gens + forms, upto)


def check_section_curve(drop: str | None = None, seed: int | None = None, field: Field = QQ, upto: int = 5,
                        mutate: bool = False) -> Verdict:
    """h(m) = 5m for a 4-plane through the P^3: a degree 5 curve of arithmetic genus 1.

    The section is given by dropping one named form or by a seeded random
    combination.  The mutated input keeps all six forms.
    """
    t0 = time.perf_counter()
    params = {"drop": drop, "seed": seed, "field": field.name, "upto": upto, "mutate": mutate}
    if mutate:
        comb = [[int(i == j) for j in range(6)] for i in range(6)]
    elif drop is not None:
        comb = drop_form(drop)
    else:
        comb = random_section(random.Random(seed), field)
    forms = section_forms(comb, field)
    if matrix_rank(form_matrix(forms), field) != len(forms):
        raise ValueError("dependent forms")
    h = hilbert_function(plucker_ideal(field).gens + forms, upto)
    want = [1] + [5 * m for m in range(1, upto + 1)]
    witness = {"hilbert_function": h, "combination": comb}
    if h != want:
        witness["expected"] = want
    return _finish("section-curve", params, h == want, witness, t0)
