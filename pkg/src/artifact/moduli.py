"""Coordinate presentations of the moduli of n-pointed curves and their universal curves.

Naming.  Full coordinates use ``a b c d``, ``c{i}_{j}`` for the pair
coefficients and ``d{i}_{j}`` (i < j) for the constants.  Reduced coordinates
(n >= 4) use ``a c cb`` together with ``c{i}``, ``cb{i}`` (i >= 4) and
``c{i}_{j}`` (4 <= i < j).  Curve coordinates are ``x2..xn`` and the
homogenized ones ``T X2..Xn``.

Rings built here default to weighted deg-lex with a layered precedence: the
coordinates introduced by the k-th marked point rank above those of earlier
points.  Under this order the recursive structure of the ideals is itself a
Groebner basis, which keeps Buchberger fast.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exact_math import QQ, Field, GF, Raw, matrix_rank
from .polyring import Ideal, Poly, PolyRing, apply_ring_map


# ------------------------------------------------------------------ names


def v_ci(i: int) -> str:
    return f"c{i}"


def v_cbi(i: int) -> str:
    return f"cb{i}"


def v_cij(i: int, j: int) -> str:
    return f"c{i}_{j}"


def v_dij(i: int, j: int) -> str:
    i, j = min(i, j), max(i, j)
    return f"d{i}_{j}"


def x_var(i: int) -> str:
    return f"x{i}"


def X_var(i: int) -> str:
    return f"X{i}"


# ------------------------------------------------------------------ reduced coordinates


def reduced_layout(n: int) -> list[tuple[str, int]]:
    """(name, weight) of the reduced coordinates, in ascending precedence."""
    if n < 4:
        raise ValueError("reduced coordinates need n >= 4")
    out = [("c", 2), ("cb", 2), ("a", 1)]
    for k in range(4, n + 1):
        out.append((v_ci(k), 1))
        out.append((v_cbi(k), 1))
        for i in range(4, k):
            out.append((v_cij(i, k), 1))
    return out


def reduced_ring(n: int, field: Field = QQ, order: str = "wdeglex", extra: Sequence[tuple[str, int]] = ()
                 ) -> PolyRing:
    layout = reduced_layout(n) + list(extra)
    names = [nm for nm, _ in layout]
    return PolyRing.make(names, [w for _, w in layout], field, order, names)


def c_pair(R: PolyRing, i: int, j: int) -> Poly:
    """c_ij for 4 <= i != j in reduced coordinates, using the alias when i > j."""
    if i < j:
        return R.var(v_cij(i, j))
    return (R.var("a") + R.var(v_ci(i)) + R.var(v_cbi(i)) + R.var(v_ci(j)) + R.var(v_cbi(j))
            - R.var(v_cij(j, i)))


def reduced_relations(R: PolyRing, n: int) -> tuple[list[Poly], list[str]]:
    a, c, cb = R.var("a"), R.var("c"), R.var("cb")
    ci = {i: R.var(v_ci(i)) for i in range(4, n + 1)}
    cbi = {i: R.var(v_cbi(i)) for i in range(4, n + 1)}
    gens, names = [], []
    for i, j in itertools.combinations(range(4, n + 1), 2):
        cij = c_pair(R, i, j)
        gens.append((ci[j] - ci[i]) * cij - (a + cbi[i] + ci[j] + cbi[j]) * ci[j] + c)
        names.append(f"p{i}_{j}")
        gens.append((cbi[i] - cbi[j]) * cij - (a + ci[i] + cbi[i] + ci[j]) * cbi[i] + cb)
        names.append(f"q{i}_{j}")
    for i, j, k in itertools.combinations(range(4, n + 1), 3):
        gens.append(c_pair(R, i, j) * c_pair(R, j, k) + c_pair(R, j, i) * c_pair(R, i, k)
                    - c_pair(R, i, k) * c_pair(R, j, k) + (a + ci[k] + cbi[k]) * ci[k] - c)
        names.append(f"t{i}_{j}_{k}")
    return gens, names


def u_n_reduced(n: int, field: Field = QQ, order: str = "wdeglex") -> Ideal:
    """Reduced presentation for n >= 4 (free polynomial ring when n = 4)."""
    R = reduced_ring(n, field, order)
    gens, names = reduced_relations(R, n)
    return Ideal(R, gens, names)


# ------------------------------------------------------------------ full coordinates


def full_pairs(n: int) -> list[tuple[int, int]]:
    """Ordered pairs (i, j) carrying a variable c_ij after normalization."""
    out = []
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            if i != j and j != 3 and (i, j) != (3, 2):
                out.append((i, j))
    return out


def full_layout(n: int) -> list[tuple[str, int]]:
    """(name, weight) of the full coordinates in ascending precedence.

    Coordinates that the linear generators solve for rank highest.
    """
    if n < 3:
        raise ValueError("full coordinates need n >= 3")
    kept = [("c", 2), ("b", 2), ("a", 1)]
    for k in range(4, n + 1):
        kept.append((v_cij(2, k), 1))
        kept.append((v_cij(k, 2), 1))
        for i in range(4, k):
            kept.append((v_cij(i, k), 1))
    solved = []
    for i, j in itertools.combinations(range(4, n + 1), 2):
        solved.append((v_cij(j, i), 1))
    for i in range(4, n + 1):
        solved.append((v_cij(3, i), 1))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        solved.append((v_dij(i, j), 2))
    for i in range(4, n + 1):
        solved.append((v_dij(2, i), 2))
    for i in range(4, n + 1):
        solved.append((v_dij(3, i), 2))
    solved.append(("d", 3))
    layout = kept + solved
    assert len(layout) == len(full_pairs(n)) + (n - 1) * (n - 2) // 2 - 1 + 4
    return layout


def full_ring(n: int, field: Field = QQ, order: str = "wdeglex", extra: Sequence[tuple[str, int]] = ()
              ) -> PolyRing:
    layout = full_layout(n) + list(extra)
    names = [nm for nm, _ in layout]
    return PolyRing.make(names, [w for _, w in layout], field, order, names)


def full_c(R: PolyRing, i: int, j: int) -> Poly:
    """c_ij in full coordinates; zero for the normalized ones."""
    if j == 3 or (i, j) == (3, 2):
        return R.zero()
    return R.var(v_cij(i, j))


def full_d(R: PolyRing, i: int, j: int) -> Poly:
    return R.var(v_dij(i, j))


def u_n_full(n: int, field: Field = QQ, order: str = "wdeglex") -> Ideal:
    """Ideal of the moduli space in full coordinates, n >= 3."""
    R = full_ring(n, field, order)
    a, b, c, d = (R.var(s) for s in "abcd")
    C = lambda i, j: full_c(R, i, j)  # noqa: E731
    D = lambda i, j: full_d(R, i, j)  # noqa: E731
    idx = range(4, n + 1)
    gens: list[Poly] = []
    names: list[str] = []

    def add(name, g):
        if g.is_zero() or any(g == h for h in gens):
            return
        gens.append(g)
        names.append(name)

    for i in idx:
        add(f"a{i}", a - C(3, i) + C(2, i) + C(i, 2))
        add(f"d2{i}", D(2, i) + c)
        add(f"d3{i}", D(3, i) - b + C(3, i) * C(i, 2))
        add(f"dd{i}", d + C(3, i) * c + C(2, i) * D(3, i))
    for i, j in itertools.permutations(idx, 2):
        if i < j:
            add(f"dij{i}_{j}", D(i, j) + c)
        add(f"s{i}_{j}", C(i, j) + C(j, i) - C(3, i) - C(2, j) - C(j, 2))
        add(f"u{i}_{j}", C(j, i) * C(2, i) - C(3, i) * C(2, i) - C(j, 2) * C(2, i) - C(j, i) * C(2, j)
            - D(2, j))
        add(f"v{i}_{j}", C(j, i) * C(i, 2) + C(i, j) * C(j, 2) - C(i, 2) * C(j, 2) - b - c)
    for i, j, k in itertools.permutations(idx, 3):
        add(f"w{i}_{j}_{k}", C(i, k) * C(j, k) - C(i, j) * C(j, k) - C(j, i) * C(i, k)
            - C(3, k) * C(2, k) - D(i, j))
    return Ideal(R, gens, names)


def full_to_reduced_map(n: int, field: Field = QQ) -> tuple[PolyRing, PolyRing, dict[str, Poly]]:
    """Images of the full coordinates in the reduced ring (n >= 4)."""
    F = full_ring(n, field)
    R = reduced_ring(n, field)
    a, c, cb = R.var("a"), R.var("c"), R.var("cb")
    b = cb - c
    ci = lambda i: R.var(v_ci(i))  # noqa: E731
    cbi = lambda i: R.var(v_cbi(i))  # noqa: E731
    img: dict[str, Poly] = {"a": a, "b": b, "c": c}
    for i in range(4, n + 1):
        img[v_cij(2, i)] = ci(i)
        img[v_cij(i, 2)] = cbi(i)
        img[v_cij(3, i)] = a + ci(i) + cbi(i)
        img[v_dij(2, i)] = -c
        img[v_dij(3, i)] = b - (a + ci(i) + cbi(i)) * cbi(i)
    for i, j in itertools.permutations(range(4, n + 1), 2):
        img[v_cij(i, j)] = c_pair(R, i, j)
        if i < j:
            img[v_dij(i, j)] = -c
    img["d"] = -a * c - cbi(4) * c - ci(4) * cb + (a + ci(4) + cbi(4)) * ci(4) * cbi(4)
    assert set(img) == set(F.names)
    return F, R, img


def reduced_to_full_map(n: int, field: Field = QQ) -> tuple[PolyRing, PolyRing, dict[str, Poly]]:
    R = reduced_ring(n, field)
    F = full_ring(n, field)
    img: dict[str, Poly] = {"a": F.var("a"), "c": F.var("c"), "cb": F.var("b") + F.var("c")}
    for i in range(4, n + 1):
        img[v_ci(i)] = F.var(v_cij(2, i))
        img[v_cbi(i)] = F.var(v_cij(i, 2))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        img[v_cij(i, j)] = F.var(v_cij(i, j))
    return R, F, img


# ------------------------------------------------------------------ low n presentations


def u_n_presentation(n: int, field: Field = QQ) -> Ideal:
    """The graded coordinate ring of the moduli space, any n >= 1."""
    if n == 1:
        return Ideal(PolyRing.make(["delta", "eps"], [4, 6], field, "wdeglex"), [])
    if n == 2:
        return Ideal(PolyRing.make(["alpha", "beta", "gamma"], [2, 3, 4], field, "wdeglex"), [])
    if n == 3:
        return Ideal(PolyRing.make(["a", "b", "c", "d"], [1, 2, 2, 3], field, "wdeglex"), [])
    return u_n_reduced(n, field)


# ------------------------------------------------------------------ universal curves


@dataclass
class CurveSpec:
    """Equations of the universal affine (or projective) curve over a base ring."""

    n: int
    ideal: Ideal
    base_names: list[str]
    curve_names: list[str]
    homogenized: bool = False


def _curve_ring(base: PolyRing, curve_vars: Sequence[tuple[str, int]]) -> PolyRing:
    """Base ring extended by curve variables that rank above all base variables."""
    names = list(base.names) + [n for n, _ in curve_vars]
    weights = list(base.weights) + [w for _, w in curve_vars]
    prec = [base.names[i] for i in base.ascending] + [n for n, _ in curve_vars]
    return PolyRing.make(names, weights, base.field, base.config.order, prec)


def curve_over_un(n: int, field: Field = QQ, coords: str = "auto", homogenized: bool = False) -> CurveSpec:
    """Universal curve: n = 1, 2 special models, n = 3 full, n >= 4 reduced or full."""
    if n == 1:
        base = u_n_presentation(1, field).ring
        R = _curve_ring(base, [("x", 2), ("y", 3)])
        x, y = R.var("x"), R.var("y")
        gens = [y ** 2 - x ** 3 - R.var("delta") * x - R.var("eps")]
        curve = ["x", "y"]
    elif n == 2:
        base = u_n_presentation(2, field).ring
        R = _curve_ring(base, [("x", 1), ("y", 2)])
        x, y = R.var("x"), R.var("y")
        al, be, ga = R.var("alpha"), R.var("beta"), R.var("gamma")
        gens = [y ** 2 - y * x ** 2 - al * (y - x ** 2) - be * x - ga]
        curve = ["x", "y"]
    else:
        if coords == "auto":
            coords = "reduced" if n >= 4 else "full"
        curve = [x_var(i) for i in range(2, n + 1)]
        if coords == "full":
            base_ideal = u_n_full(n, field) if n >= 4 else u_n_presentation(3, field)
            R = _curve_ring(base_ideal.ring, [(x, 1) for x in curve])
            gens = [R(g) for g in base_ideal.gens] + list(full_curve_relations(R, n).values())
        else:
            base_ideal = u_n_reduced(n, field)
            R = _curve_ring(base_ideal.ring, [(x, 1) for x in curve])
            gens = [R(g) for g in base_ideal.gens] + reduced_curve_relations(R, n)
    base_names = [nm for nm in R.names if nm not in curve]
    if not homogenized:
        return CurveSpec(n, Ideal(R, gens), base_names, curve, False)
    Xs = ["X" + x[1:] if x.startswith("x") else x.upper() for x in curve]
    Hvars = [("T", 1)] + [(X, R.weights[R.index[x]]) for X, x in zip(Xs, curve)]
    base_only = PolyRing.make(base_names, [R.weights[R.index[b]] for b in base_names], field,
                              R.config.order, [nm for nm in (R.names[i] for i in R.ascending) if nm in base_names])
    H = _curve_ring(base_only, Hvars)
    hom = []
    for g in gens:
        dx = max((sum(m[R.index[x]] * R.weights[R.index[x]] for x in curve) for m in g.terms), default=0)
        if dx == 0:
            hom.append(H(g))
            continue
        hom.append(_homogenize_weighted(R, H, g, curve, Xs))
    return CurveSpec(n, Ideal(H, hom), base_names, ["T"] + Xs, True)


def _homogenize_weighted(R: PolyRing, H: PolyRing, f: Poly, xs: Sequence[str], Xs: Sequence[str]) -> Poly:
    wx = {R.index[x]: R.weights[R.index[x]] for x in xs}
    degs = {m: sum(m[i] * w for i, w in wx.items()) for m in f.terms}
    top = max(degs.values())
    out: dict = {}
    for m, c in f.terms.items():
        t = [0] * H.nvars
        for k, e in enumerate(m):
            if e:
                nm = R.names[k]
                tgt = Xs[xs.index(nm)] if nm in xs else nm
                t[H.index[tgt]] += e
        t[H.index["T"]] += top - degs[m]
        out[tuple(t)] = c
    return Poly(H, out)


def full_curve_relations(R: PolyRing, n: int) -> dict[tuple, Poly]:
    """Curve relations in full coordinates, keyed by the pair (i, j) or ('cubic',)."""
    x = {i: R.var(x_var(i)) for i in range(2, n + 1)}
    rel: dict[tuple, Poly] = {}
    a, b, c, d = (R.var(s) for s in "abcd")
    for i, j in itertools.combinations(range(2, n + 1), 2):
        if (i, j) == (2, 3):
            continue
        rel[(i, j)] = x[i] * x[j] - (x[2] * x[3] + full_c(R, i, j) * x[j] + full_c(R, j, i) * x[i]
                                     + full_d(R, i, j))
    rel[("cubic",)] = x[2] * x[3] ** 2 - (x[2] ** 2 * x[3] + a * x[2] * x[3] + b * x[2] + c * x[3] + d)
    return rel


def reduced_curve_relations(R: PolyRing, n: int) -> list[Poly]:
    """Curve relations in reduced coordinates, n >= 4."""
    x = {i: R.var(x_var(i)) for i in range(2, n + 1)}
    a, c, cb = R.var("a"), R.var("c"), R.var("cb")
    out = []
    for i in range(4, n + 1):
        ci, cbi = R.var(v_ci(i)), R.var(v_cbi(i))
        out.append(x[2] * x[i] - (x[2] * x[3] + ci * x[i] + cbi * x[2] - c))
        out.append(x[3] * x[i] - (x[2] * x[3] + (a + ci + cbi) * (x[i] - cbi) + cb - c))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        out.append(x[i] * x[j] - (x[2] * x[3] + c_pair(R, i, j) * x[j] + c_pair(R, j, i) * x[i] - c))
    return out


def marked_points(n: int) -> dict[int, dict[str, int]]:
    """Marked points at infinity in homogeneous coordinates T, X2..Xn."""
    pts = {1: {"T": 0, **{X_var(i): 1 for i in range(2, n + 1)}}}
    for i in range(2, n + 1):
        pts[i] = {"T": 0, **{X_var(j): int(j == i) for j in range(2, n + 1)}}
    return pts


# ------------------------------------------------------------------ points and specializations


def marked_point_tangent_dim(n: int, point: Mapping[str, Raw], j: int, field: Field = QQ) -> int:
    """Zariski tangent dimension of the specialized projective curve at the marked point p_j.

    Works in the affine chart where the coordinate that is 1 at p_j (X2 for
    p_1, X_j otherwise) is set to 1.
    """
    spec = curve_over_un(n, field, homogenized=True)
    keep = spec.curve_names
    fib = specialize(spec.ideal, point, keep, field)
    chart = X_var(2) if j == 1 else X_var(j)
    pt = {k: field.convert(v) for k, v in marked_points(n)[j].items()}
    rest = [v for v in keep if v != chart]
    gens = [g for g in fib.gens if not g.is_zero()]
    rows = []
    for g in gens:
        rows.append([g.diff(v).evaluate(pt) for v in rest])
    rank = matrix_rank(rows, field) if rows else 0
    return len(rest) - rank


def specialize(ideal: Ideal, base_point: Mapping[str, Raw], keep: Sequence[str], field: Field | None = None,
               order: str | None = None) -> Ideal:
    """Substitute values for the base variables, keeping the listed variables."""
    field = field or ideal.ring.field
    src = ideal.ring
    order = order or src.config.order
    prec = [nm for nm in (src.names[i] for i in src.ascending) if nm in keep]
    T = PolyRing.make(list(keep), [src.weights[src.index[k]] for k in keep], field, order, prec)
    images = {}
    for nm in src.names:
        if nm in keep:
            images[nm] = T.var(nm)
        else:
            images[nm] = T.const(base_point[nm])
    gens = [apply_ring_map(g, images, T) for g in ideal.gens]
    gens = [g for g in gens if not g.is_zero()]
    return Ideal(T, gens)


def fiber_ideal(n: int, point: Mapping[str, Raw], field: Field = QQ, coords: str = "auto",
                order: str = "wdegrevlex") -> Ideal:
    """Affine curve over one point of the moduli space."""
    spec = curve_over_un(n, field, coords)
    return specialize(spec.ideal, point, spec.curve_names, field, order)


def zero_point(ring: PolyRing) -> dict[str, int]:
    return {nm: 0 for nm in ring.names}


def full_point_from_reduced(n: int, point: Mapping[str, Raw], field: Field = QQ) -> dict[str, Raw]:
    F, R, img = full_to_reduced_map(n, field)
    return {nm: img[nm].evaluate(point) for nm in F.names}


def reduced_point_from_full(n: int, point: Mapping[str, Raw], field: Field = QQ) -> dict[str, Raw]:
    R, F, img = reduced_to_full_map(n, field)
    return {nm: img[nm].evaluate(point) for nm in R.names}


def p_in_point(n: int, i: int) -> dict[str, int]:
    """Reduced coordinates of the special point P_in (n >= 6), scale fixed to 1."""
    if n < 6 or not (1 <= i <= n - 1):
        raise ValueError("need n >= 6 and 1 <= i <= n-1")
    pt = zero_point(reduced_ring(n))
    if i == 1:
        pt[v_ci(n)] = 1
        for k in range(4, n):
            pt[v_cij(k, n)] = 1
    elif i == 2:
        pt[v_ci(n)] = 1
        pt[v_cbi(n)] = -1
    elif i == 3:
        pt[v_cbi(n)] = 1
    else:
        pt[v_cij(i, n)] = 1
    return pt


def projective_coords(n: int, point: Mapping[str, Raw], field: Field = QQ) -> list[Raw]:
    """Chart y2 = c_n, y3 = c_n + cb_n, y_i = c_in on the projectivized normal space."""
    F = field
    y = [F.convert(point[v_ci(n)]), F.add(F.convert(point[v_ci(n)]), F.convert(point[v_cbi(n)]))]
    y += [F.convert(point[v_cij(i, n)]) for i in range(4, n)]
    return y


def wheel_point(n: int, coords: str = "full") -> dict[str, int]:
    """Parameters of the cycle of n rational curves."""
    if coords == "full" or n == 3:
        R = full_ring(n) if n >= 3 else None
        pt = zero_point(R)
        pt["a"] = -1
        for i, j in itertools.combinations(range(3, n + 1), 2):
            pt[v_cij(i, j)] = -1
        return pt
    pt = zero_point(reduced_ring(n))
    pt["a"] = -1
    for i, j in itertools.combinations(range(4, n + 1), 2):
        pt[v_cij(i, j)] = -1
    return pt


WHEEL_POINT_N2 = {"alpha": Fraction(1, 4), "beta": 0, "gamma": 0}


def component_ideals(n: int, i: int, field: Field = QQ) -> list[tuple[str, list[str]]]:
    """Components of the curve over P_in as (label, generator strings in x2..xn)."""
    pt = p_in_point(n, i)
    others = list(range(2, n))
    xs = [x_var(k) for k in range(2, n + 1)]
    xn = x_var(n)
    comps: list[tuple[str, list[str]]] = []

    if i == 1:
        cn = pt[v_ci(n)]
        eq = [f"x2 - {x_var(k)}" for k in range(3, n)] + [f"x2*{xn} - x2^2 - ({cn})*{xn}"]
        comps.append(("conic", eq))
        for k in others:
            comps.append((f"line{k}", [x_var(j) for j in range(2, n + 1) if j != k]))
    elif i == 2:
        cn = pt[v_ci(n)]
        comps.append(("conic", [x_var(k) for k in range(3, n)] + [f"x2*{xn} - ({cn})*({xn} - x2)"]))
        comps.append(("line1", [f"x2 - {x}" for x in xs[1:]]))
        for k in range(3, n):
            comps.append((f"line{k}", [x_var(j) for j in range(2, n + 1) if j != k]))
    elif i == 3:
        cbn = pt[v_cbi(n)]
        comps.append(("conic", [x_var(k) for k in [2] + list(range(4, n))]
                      + [f"x3*{xn} - ({cbn})*({xn} - ({cbn}))"]))
        comps.append(("line1", [f"x2 - {x_var(k)}" for k in range(3, n)] + [f"{xn} - x2 - ({cbn})"]))
        for k in [2] + list(range(4, n)):
            comps.append((f"line{k}", [x_var(j) for j in range(2, n) if j != k] + [f"{xn} - ({cbn})"]))
    else:
        cin = pt[v_cij(i, n)]
        comps.append(("conic", [x_var(k) for k in range(2, n) if k != i]
                      + [f"{x_var(i)}*{xn} - ({cin})*({xn} - {x_var(i)})"]))
        comps.append(("line1", [f"x2 - {x}" for x in xs[1:]]))
        for k in others:
            if k != i:
                comps.append((f"line{k}", [x_var(j) for j in range(2, n + 1) if j != k]))
    return comps


# ------------------------------------------------------------------ substitution isomorphism


def substitution_map(n: int, field: Field = QQ) -> tuple[PolyRing, PolyRing, dict[str, Poly]]:
    """Ring map from (coordinates of U_n, x2..xn) to coordinates of U_{n+1}."""
    if n < 3:
        raise ValueError("substitution map needs n >= 3")
    src = curve_over_un(n, field).ideal.ring
    tgt = reduced_ring(n + 1, field)
    m = n + 1
    a = tgt.var("a")
    img: dict[str, Poly] = {
        x_var(2): tgt.var(v_ci(m)),
        x_var(3): a + tgt.var(v_ci(m)) + tgt.var(v_cbi(m)),
    }
    for i in range(4, n + 1):
        img[x_var(i)] = tgt.var(v_cij(i, m))
    if n == 3:
        c, cb = tgt.var("c"), tgt.var("cb")
        c4, cb4 = tgt.var(v_ci(4)), tgt.var(v_cbi(4))
        img.update({"a": a, "b": cb - c, "c": c,
                    "d": -a * c - cb4 * c - c4 * cb + (a + c4 + cb4) * c4 * cb4})
    else:
        for nm in reduced_ring(n, field).names:
            img[nm] = tgt.var(nm)
    return src, tgt, img


# ------------------------------------------------------------------ symmetric group action


def _ident_images(R: PolyRing) -> dict[str, Poly]:
    return {nm: R.var(nm) for nm in R.names}


def transposition_2j(R: PolyRing, n: int, j: int, fixed_pair: str = "swap") -> dict[str, Poly]:
    """The transposition (2 j), j >= 4, on reduced coordinates.

    The images of c_j and cb_j are not pinned down by the formulas for the
    other coordinates; ``fixed_pair`` chooses between leaving them fixed
    ("fix") and exchanging them ("swap").
    """
    a, c, cb = R.var("a"), R.var("c"), R.var("cb")
    cj, cbj = R.var(v_ci(j)), R.var(v_cbi(j))
    img = _ident_images(R)
    s = a + cj + cbj
    img["a"] = -a - 2 * cj - 2 * cbj
    img["c"] = cb - cbj * s
    img["cb"] = c - cj * s
    for i in range(4, n + 1):
        if i == j:
            continue
        img[v_ci(i)] = c_pair(R, j, i)
        img[v_cbi(i)] = c_pair(R, i, j)
        # the swaps run both ways; the variable among c_ij, c_ji goes back
        if j < i:
            img[v_cij(j, i)] = R.var(v_ci(i))
        else:
            img[v_cij(i, j)] = R.var(v_cbi(i))
    if fixed_pair == "swap":
        img[v_ci(j)], img[v_cbi(j)] = cbj, cj
    elif fixed_pair != "fix":
        raise ValueError(fixed_pair)
    return img


def transposition_13(R: PolyRing, n: int) -> dict[str, Poly]:
    img = _ident_images(R)
    img["c"], img["cb"] = R.var("cb"), R.var("c")
    for i in range(4, n + 1):
        img[v_ci(i)], img[v_cbi(i)] = R.var(v_cbi(i)), R.var(v_ci(i))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        img[v_cij(i, j)] = c_pair(R, j, i)
    return img


def transposition_23(R: PolyRing, n: int) -> dict[str, Poly]:
    a, c, cb = R.var("a"), R.var("c"), R.var("cb")
    img = _ident_images(R)
    img["a"] = -a
    img["c"] = c - cb
    img["cb"] = -cb
    for i in range(4, n + 1):
        img[v_ci(i)] = a + R.var(v_ci(i)) + R.var(v_cbi(i))
        img[v_cbi(i)] = -R.var(v_cbi(i))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        img[v_cij(i, j)] = R.var(v_cij(i, j)) - R.var(v_cbi(i))
    return img


def subscript_permutation(R: PolyRing, n: int, perm: Mapping[int, int]) -> dict[str, Poly]:
    """Permutation of the labels >= 4 acting on subscripts."""
    img = _ident_images(R)
    p = lambda k: perm.get(k, k)  # noqa: E731
    for i in range(4, n + 1):
        img[v_ci(i)] = R.var(v_ci(p(i)))
        img[v_cbi(i)] = R.var(v_cbi(p(i)))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        img[v_cij(i, j)] = c_pair(R, p(i), p(j))
    return img


def compose_maps(R: PolyRing, *maps: Mapping[str, Poly]) -> dict[str, Poly]:
    """Images of the composite ring map; the first map is substituted first."""
    cur = _ident_images(R)
    for mp in maps:
        cur = {nm: apply_ring_map(mp[nm], cur, R) for nm in R.names}
    return cur


def sn_action(n: int, i: int, j: int, field: Field = QQ, fixed_pair: str = "swap") -> dict[str, Poly]:
    """Ring map of the transposition (i j) on the reduced ring of U_n."""
    i, j = min(i, j), max(i, j)
    R = reduced_ring(n, field)
    if (i, j) == (1, 3):
        return transposition_13(R, n)
    if (i, j) == (2, 3):
        return transposition_23(R, n)
    if i == 2:
        return transposition_2j(R, n, j, fixed_pair)
    if i >= 4:
        return subscript_permutation(R, n, {i: j, j: i})
    if i == 3:
        t23 = transposition_23(R, n)
        return compose_maps(R, t23, transposition_2j(R, n, j, fixed_pair), t23)
    if i == 1 and j == 2:
        t13 = transposition_13(R, n)
        return compose_maps(R, t13, transposition_23(R, n), t13)
    t13 = transposition_13(R, n)
    return compose_maps(R, t13, sn_action(n, 3, j, field, fixed_pair), t13)


# ------------------------------------------------------------------ wheel


def wheel_parametrization(n: int) -> dict[int, dict[str, tuple[int, int]]]:
    """Component k -> {x_j: (constant, u coefficient)} with x_j = constant + coefficient * u."""
    comps: dict[int, dict[str, tuple[int, int]]] = {}
    for k in range(1, n + 1):
        xs: dict[str, tuple[int, int]] = {}
        xs[x_var(2)] = (0, 1) if k == 1 else (1, -1) if k == 2 else (0, 0)
        for j in range(3, n + 1):
            if k == 1:
                xs[x_var(j)] = (-1, 1)
            elif k < j:
                xs[x_var(j)] = (0, 0)
            elif k == j:
                xs[x_var(j)] = (0, -1)
            else:
                xs[x_var(j)] = (-1, 0)
        comps[k] = xs
    return comps


def wheel_relations(n: int, field: Field = QQ) -> Ideal:
    R = PolyRing.make([x_var(i) for i in range(2, n + 1)], field=field)
    x = {i: R.var(x_var(i)) for i in range(2, n + 1)}
    gens = [x[2] * x[j] - x[2] * x[3] for j in range(4, n + 1)]
    gens += [x[i] * x[j] - x[2] * x[3] + x[j] for i, j in itertools.combinations(range(3, n + 1), 2)]
    gens.append(x[2] * x[3] ** 2 - x[2] ** 2 * x[3] + x[2] * x[3])
    return Ideal(R, gens)


def c1n_membership(germs: Sequence[Sequence[Raw]], field: Field = QQ) -> bool:
    """Branch germs (coefficient lists f_i(t)) of a function on the elliptic n-fold point."""
    F = field
    vals = [F.convert(g[0]) if len(g) else F.zero for g in germs]
    ders = [F.convert(g[1]) if len(g) > 1 else F.zero for g in germs]
    if any(v != vals[0] for v in vals):
        return False
    total = F.zero
    for dv in ders[1:]:
        total = F.add(total, dv)
    return ders[0] == total


# ------------------------------------------------------------------ random points


def random_point_un(n: int, rng: random.Random, p: int = 101, max_tries: int = 50) -> dict[str, int] | None:
    """Random GF(p)-point of U_n (n >= 5) grown by walking fibres of the universal curves."""
    F = GF(p)
    R5 = reduced_ring(5, F)
    pt = {nm: rng.randrange(p) for nm in R5.names if nm not in ("c", "cb")}
    # solve the two linear relations for c and cb
    c45 = pt[v_cij(4, 5)]
    a = pt["a"]
    c4, cb4, c5, cb5 = pt["c4"], pt["cb4"], pt["c5"], pt["cb5"]
    pt["c"] = (-(c5 - c4) * c45 + (a + cb4 + c5 + cb5) * c5) % p
    pt["cb"] = (-(cb4 - cb5) * c45 + (a + c4 + cb4 + c5) * cb4) % p
    for m in range(5, n):
        pts = fiber_points(m, pt, p, rng, limit=1, max_tries=max_tries)
        if not pts:
            return None
        xpt = pts[0]
        new = dict(pt)
        new[v_ci(m + 1)] = xpt[2]
        new[v_cbi(m + 1)] = (xpt[3] - pt["a"] - xpt[2]) % p
        for i in range(4, m + 1):
            new[v_cij(i, m + 1)] = xpt[i]
        pt = new
    return pt


def fiber_points(n: int, point: Mapping[str, int], p: int, rng: random.Random | None = None,
                 limit: int | None = None, max_tries: int | None = None) -> list[dict[int, int]]:
    """GF(p)-points (x2..xn) on the affine fibre over a reduced-coordinate point (n >= 4).

    Enumerates x2, x3; the relation for x2*x_i determines x_i whenever
    x2 != c_i, and the remaining relations are then checked.
    """
    F = GF(p)
    spec = fiber_ideal(n, point, F, "reduced")
    gens = spec.gens
    ring = spec.ring
    c = {i: point[v_ci(i)] % p for i in range(4, n + 1)}
    cb = {i: point[v_cbi(i)] % p for i in range(4, n + 1)}
    cc = point["c"] % p
    pairs = [(x2, x3) for x2 in range(p) for x3 in range(p)]
    if rng is not None:
        rng.shuffle(pairs)
    out = []
    tries = 0
    for x2, x3 in pairs:
        if any(x2 == c[i] for i in c):
            continue
        tries += 1
        xs = {2: x2, 3: x3}
        for i in range(4, n + 1):
            xs[i] = (x2 * x3 + cb[i] * x2 - cc) * pow(x2 - c[i], -1, p) % p
        vals = [xs[int(nm[1:])] for nm in ring.names]
        if all(g.evaluate(vals) == 0 for g in gens):
            out.append(xs)
            if limit is not None and len(out) >= limit:
                break
        if max_tries is not None and tries >= max_tries * p and not out:
            break
    return out


# ------------------------------------------------------------------ characteristic p vector fields


@dataclass(frozen=True)
class Branch:
    """One branch of a normalization: images of x and y as Laurent dicts in ``param``."""

    param: str
    x: Mapping[int, int]
    y: Mapping[int, int]


@dataclass(frozen=True)
class VectorFieldPair:
    """Downstairs field P d/dx + Q d/dy and its lift, one Laurent coefficient per branch."""

    label: str
    P: str
    Q: str
    lift: tuple[Mapping[int, int], ...]


CHARP_CASES = {
    "cusp@2": 2,
    "cusp@3": 3,
    "tacnode@2": 2,
}


def normalization(case: str) -> tuple[str, list[Branch]]:
    """Defining equation and normalization branches."""
    kind = case.split("@")[0]
    if kind == "cusp":
        return "y^2 - x^3", [Branch("t", {2: 1}, {3: 1})]
    if kind == "tacnode":
        return "y^2 - y*x^2", [Branch("t", {1: 1}, {2: 1}), Branch("s", {1: 1}, {})]
    raise ValueError(case)


def charp_vector_fields(case: str) -> list[VectorFieldPair]:
    """The printed table of downstairs fields and their lifts."""
    if case == "cusp@2":
        return [
            VectorFieldPair("x^2 d/dy", "0", "x^2", ({2: 1},)),
            VectorFieldPair("y d/dy", "0", "y", ({1: 1},)),
            VectorFieldPair("x d/dy", "0", "x", ({0: 1},)),
            VectorFieldPair("d/dy", "0", "1", ({-2: 1},)),
        ]
    if case == "cusp@3":
        return [
            VectorFieldPair("x^2 d/dx", "x^2", "0", ({2: 1},)),
            VectorFieldPair("x d/dx", "x", "0", ({1: 1},)),
            VectorFieldPair("y d/dx", "y", "0", ({0: 1},)),
            VectorFieldPair("d/dx", "1", "0", ({-1: 1},)),
        ]
    if case == "tacnode@2":
        return [
            VectorFieldPair("y d/dx", "y", "0", ({2: 1}, {})),
            VectorFieldPair("(x^2 - y) d/dx", "x^2 - y", "0", ({}, {2: 1})),
            VectorFieldPair("x d/dx", "x", "0", ({1: 1}, {1: 1})),
            VectorFieldPair("d/dx", "1", "0", ({0: 1}, {0: 1})),
        ]
    raise ValueError(f"unknown case {case!r}")


def lift_vector_field(case: str, P: str, Q: str, p: int | None = None) -> tuple[dict[int, int], ...]:
    """Lift of P d/dx + Q d/dy to each normalization branch, computed over GF(p).

    On a branch with parameter t the lift is f d/dt with f = v(x) / x'(t)
    when x'(t) != 0, otherwise f = v(y) / y'(t).
    """
    p = p or CHARP_CASES[case]
    eq, branches = normalization(case)
    R = PolyRing.make(["x", "y"], field=GF(p))
    Pp, Qp = R.parse(P), R.parse(Q)
    out = []
    for br in branches:
        vx = laurent_pullback(Pp, br, p)
        vy = laurent_pullback(Qp, br, p)
        dx, dy = laurent_derivative(br.x, p), laurent_derivative(br.y, p)
        num, den = (vx, dx) if dx else (vy, dy)
        if not den:
            raise ValueError("branch map has zero derivative")
        out.append(laurent_divide_monomial(num, den, p))
    return tuple(out)


def laurent_pullback(f: Poly, br: Branch, p: int) -> dict[int, int]:
    """nu^* f on one branch as a Laurent dict with coefficients mod p."""
    out: dict[int, int] = {}
    ix, iy = f.ring.index["x"], f.ring.index["y"]
    for m, c in f.terms.items():
        term = {0: int(c) % p}
        for _ in range(m[ix]):
            term = laurent_mul(term, br.x, p)
        for _ in range(m[iy]):
            term = laurent_mul(term, br.y, p)
        for e, v in term.items():
            out[e] = (out.get(e, 0) + v) % p
    return {e: v for e, v in out.items() if v}


def laurent_mul(f: Mapping[int, int], g: Mapping[int, int], p: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, v1 in f.items():
        for e2, v2 in g.items():
            out[e1 + e2] = (out.get(e1 + e2, 0) + v1 * v2) % p
    return {e: v for e, v in out.items() if v}


def laurent_derivative(f: Mapping[int, int], p: int) -> dict[int, int]:
    out = {e - 1: (e * v) % p for e, v in f.items()}
    return {e: v for e, v in out.items() if v}


def laurent_divide_monomial(num: Mapping[int, int], den: Mapping[int, int], p: int) -> dict[int, int]:
    if len(den) != 1:
        raise ValueError("divisor must be a monomial")
    (e0, v0), = den.items()
    inv = pow(v0, -1, p)
    return {e - e0: (v * inv) % p for e, v in num.items() if v % p}


# ------------------------------------------------------------------ rewriting on the universal curve


class CurveRewriter:
    """Reduction of curve polynomials by the oriented relations x_i x_j -> ..., x2 x3^2 -> ....

    Elements are dicts from exponent tuples in x2..xn to coefficient
    polynomials in a base ring.  Monomials are compared deg-lex with x_n
    largest.  ``coeff_reduce`` (if given) is applied to coefficients of the
    final normal form.
    """

    def __init__(self, ring: PolyRing, n: int, relations: Mapping[tuple, Poly],
                 coeff_reduce: Callable[[Poly], Poly] | None = None):
        self.n = n
        self.xnames = [x_var(i) for i in range(2, n + 1)]
        self.xidx = [ring.index[x] for x in self.xnames]
        bnames = [nm for nm in ring.names if nm not in self.xnames]
        self.bidx = [ring.index[b] for b in bnames]
        self.base = PolyRing.make(bnames, [ring.weights[i] for i in self.bidx], ring.field, ring.config.order,
                                  [ring.names[i] for i in ring.ascending if ring.names[i] in bnames])
        self.coeff_reduce = coeff_reduce
        self.rules: dict[tuple, tuple[tuple, dict[tuple, Poly]]] = {}
        for key, rel in relations.items():
            lhs = self._lhs_of(key)
            parts = self.split(rel)
            if parts.get(lhs) != self.base.one():
                raise ValueError(f"relation {key} is not monic in its leading monomial")
            rhs = {m: -c for m, c in parts.items() if m != lhs}
            self.rules[key] = (lhs, rhs)

    def _lhs_of(self, key: tuple) -> tuple:
        e = [0] * (self.n - 1)
        if key == ("cubic",):
            e[0], e[1] = 1, 2
        else:
            e[key[0] - 2] += 1
            e[key[1] - 2] += 1
        return tuple(e)

    @staticmethod
    def order_key(m: tuple) -> tuple:
        return sum(m), tuple(reversed(m))

    def split(self, f: Poly) -> dict[tuple, Poly]:
        acc: dict[tuple, dict] = {}
        for m, c in f.terms.items():
            xe = tuple(m[i] for i in self.xidx)
            be = tuple(m[i] for i in self.bidx)
            acc.setdefault(xe, {})[be] = c
        return {xe: Poly(self.base, t) for xe, t in acc.items()}

    def monomial(self, exps: Sequence[int]) -> dict[tuple, Poly]:
        return {tuple(exps): self.base.one()}

    def _applicable(self, m: tuple) -> list[tuple]:
        return [k for k, (lhs, _) in self.rules.items() if all(a <= b for a, b in zip(lhs, m))]

    def _apply(self, elt: dict[tuple, Poly], m: tuple, key: tuple) -> None:
        lhs, rhs = self.rules[key]
        coeff = elt.pop(m)
        shift = tuple(b - a for a, b in zip(lhs, m))
        for r, c in rhs.items():
            t = tuple(x + y for x, y in zip(r, shift))
            v = elt.get(t, self.base.zero()) + coeff * c
            if v.is_zero():
                elt.pop(t, None)
            else:
                elt[t] = v

    def normal_form(self, elt: Mapping[tuple, Poly], first: tuple | None = None) -> dict[tuple, Poly]:
        """Normal form; ``first`` names the rule applied to the top monomial before the default strategy."""
        cur = {m: c for m, c in elt.items() if not c.is_zero()}
        if first is not None:
            top = max(cur, key=self.order_key)
            if first not in self._applicable(top):
                raise ValueError(f"rule {first} does not apply to {top}")
            self._apply(cur, top, first)
        while True:
            red = [m for m in cur if self._applicable(m)]
            if not red:
                break
            m = max(red, key=self.order_key)
            key = max(self._applicable(m), key=lambda k: self.order_key(self.rules[k][0]))
            self._apply(cur, m, key)
        if self.coeff_reduce is not None:
            cur = {m: self.coeff_reduce(c) for m, c in cur.items()}
            cur = {m: c for m, c in cur.items() if not c.is_zero()}
        return cur

    def rules_dividing(self, m: tuple) -> list[tuple]:
        return self._applicable(m)

    def to_poly(self, elt: Mapping[tuple, Poly], ring: PolyRing) -> Poly:
        """Reassemble an element as a polynomial of ``ring`` (containing base and curve names)."""
        out = ring.zero()
        for xe, c in elt.items():
            mono = ring.one()
            for nm, e in zip(self.xnames, xe):
                if e:
                    mono = mono * ring.var(nm) ** e
            out = out + ring(c) * mono
        return out

    def format(self, elt: Mapping[tuple, Poly]) -> str:
        if not elt:
            return "0"
        parts = []
        for xe in sorted(elt, key=self.order_key, reverse=True):
            mono = "*".join(f"{nm}^{e}" if e > 1 else nm for nm, e in zip(self.xnames, xe) if e) or "1"
            parts.append(f"({elt[xe]})*{mono}")
        return " + ".join(parts)


def symbolic_rewriter(n: int, field: Field = QQ, coeff_reduce: Callable[[Poly], Poly] | None = None
                      ) -> tuple[CurveRewriter, PolyRing]:
    """Rewriter with free full-coordinate coefficients (n >= 4)."""
    R = _curve_ring(full_ring(n, field), [(x, 1) for x in (x_var(i) for i in range(2, n + 1))])
    return CurveRewriter(R, n, full_curve_relations(R, n), coeff_reduce), R


def point_rewriter(n: int, point: Mapping[str, Raw], field: Field = QQ) -> CurveRewriter:
    """Rewriter whose coefficients are evaluated at a full-coordinate point."""
    xs = [x_var(i) for i in range(2, n + 1)]
    R = _curve_ring(full_ring(n, field), [(x, 1) for x in xs])
    T = PolyRing.make(xs, field=field, order="wdeglex", precedence=xs)
    images = {nm: (T.var(nm) if nm in xs else T.const(point[nm])) for nm in R.names}
    rels = {k: apply_ring_map(f, images, T) for k, f in full_curve_relations(R, n).items()}
    return CurveRewriter(T, n, rels)
