"""Weighted multivariate polynomials over Q or GF(p) and Groebner bases.

Monomials are exponent tuples.  A ring fixes variable names, positive integer
weights, the coefficient field and a monomial order.  Two orders exist:
weighted degree-lex and weighted degree-revlex; ties inside one weighted degree
are broken by a precedence list of variables, given from smallest to largest.

Polynomials are stored as ``dict[exponent tuple, raw coefficient]``; the
``Poly`` class wraps such a dict with operator support.
"""

from __future__ import annotations

import ast
import itertools
import json
import operator
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .exact_math import QQ, Field, Raw, field_from_name, rank_and_kernel, SparseEchelon

MAX_EXPONENT = 255
ORDER_KINDS = ("wdeglex", "wdegrevlex")

_add = operator.add
_sub = operator.sub


class ExponentOverflowError(OverflowError):
    pass


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class RingConfig:
    """Description of a polynomial ring.

    ``precedence`` lists variable names from smallest to largest; None means
    the first declared variable is the largest.
    """

    names: tuple[str, ...]
    weights: tuple[int, ...]
    field: Field = QQ
    order: str = "wdegrevlex"
    precedence: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.order not in ORDER_KINDS:
            raise ValueError(f"unknown order {self.order!r}")
        if self.precedence is not None and sorted(self.precedence) != sorted(self.names):
            raise ValueError("precedence must be a permutation of the variable names")


class PolyRing:
    def __init__(self, config: RingConfig):
        self.config = config
        self.names = config.names
        self.weights = config.weights
        self.field = config.field
        self.nvars = len(config.names)
        self.index = {n: i for i, n in enumerate(config.names)}
        if config.precedence is None:
            asc = list(range(self.nvars))[::-1]
        else:
            asc = [self.index[n] for n in config.precedence]
        self.ascending = tuple(asc)
        self.zero_mono = (0,) * self.nvars
        self._key_cache: dict[tuple, tuple] = {}
        self._mask_cache: dict[tuple, int] = {}
        desc = asc[::-1]
        w = self.weights
        if config.order == "wdeglex":
            def make_key(m):
                return (sum(map(operator.mul, w, m)), tuple([m[i] for i in desc]))
        else:
            def make_key(m):
                return (sum(map(operator.mul, w, m)), tuple([-m[i] for i in asc]))
        self._make_key = make_key

    # ------------------------------------------------------------ basics
    @classmethod
    def make(cls, names: Sequence[str], weights: Sequence[int] | None = None, field: Field = QQ,
             order: str = "wdegrevlex", precedence: Sequence[str] | None = None) -> "PolyRing":
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        prec = tuple(precedence) if precedence is not None else None
        return cls(RingConfig(tuple(names), weights, field, order, prec))

    def with_changes(self, **changes) -> "PolyRing":
        cfg = self.config
        data = dict(names=cfg.names, weights=cfg.weights, field=cfg.field, order=cfg.order,
                    precedence=cfg.precedence)
        data.update(changes)
        if "precedence" in data and data["precedence"] is not None:
            data["precedence"] = tuple(data["precedence"])
        return PolyRing(RingConfig(**data))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.config == self.config

    def __hash__(self):
        return hash(self.config)

    def __repr__(self):
        return f"PolyRing({self.field.name}, {','.join(self.names)}, {self.config.order})"

    def key(self, m: tuple) -> tuple:
        k = self._key_cache.get(m)
        if k is None:
            k = self._make_key(m)
            self._key_cache[m] = k
        return k

    def mask(self, m: tuple) -> int:
        k = self._mask_cache.get(m)
        if k is None:
            k = 0
            for i, e in enumerate(m):
                if e:
                    k |= 1 << i
            self._mask_cache[m] = k
        return k

    def mono_degree(self, m: tuple) -> int:
        return self.key(m)[0]

    def var(self, name: str) -> "Poly":
        i = self.index[name]
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): self.field.one})

    def gens(self) -> list["Poly"]:
        return [self.var(n) for n in self.names]

    def const(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {self.zero_mono: c} if c != 0 else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): self.field.convert(coeff)})

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                return self.from_dict_by_name(x.to_named())
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    # ------------------------------------------------------------ parsing
    def parse(self, text: str) -> "Poly":
        """Parse ``+ - * ^`` expressions with parentheses and rational constants."""
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
        return self._eval_ast(tree.body)

    def _eval_ast(self, node) -> "Poly":
        if isinstance(node, ast.BinOp):
            a = self._eval_ast(node.left)
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ValueError("exponents must be integer literals")
                return a ** e.value
            b = self._eval_ast(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                c = b.constant_value()
                if c is None:
                    raise ValueError("division only by constants")
                return a * self.field.inv(c)
            raise ValueError(f"unsupported operator {node.op}")
        if isinstance(node, ast.UnaryOp):
            v = self._eval_ast(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            raise ValueError("unsupported unary operator")
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in self.index:
                raise KeyError(f"unknown variable {node.id!r}")
            return self.var(node.id)
        raise ValueError(f"cannot parse {ast.dump(node)}")

    def from_dict_by_name(self, named: Mapping[tuple, Raw]) -> "Poly":
        """Build from ``{((name, exp), ...): coeff}``; missing names raise."""
        out: dict[tuple, Raw] = {}
        F = self.field
        for nm, c in named.items():
            m = [0] * self.nvars
            for n, e in nm:
                m[self.index[n]] += e
            t = tuple(m)
            v = F.add(out.get(t, F.zero), F.convert(c))
            if v == 0:
                out.pop(t, None)
            else:
                out[t] = v
        return Poly(self, out)

    # ------------------------------------------------------------ raw dict arithmetic
    def _add_scaled(self, acc: dict, p: Mapping, c: Raw, shift: tuple | None = None) -> None:
        """acc += c * x^shift * p  (in place)."""
        F = self.field
        get = acc.get
        if shift is None:
            for m, v in p.items():
                nv = F.add(get(m, 0), F.mul(c, v))
                if nv == 0:
                    acc.pop(m, None)
                else:
                    acc[m] = nv
        else:
            for m, v in p.items():
                t = tuple(map(_add, m, shift))
                nv = F.add(get(t, 0), F.mul(c, v))
                if nv == 0:
                    acc.pop(t, None)
                else:
                    acc[t] = nv

    def _mul(self, p: Mapping, q: Mapping) -> dict:
        out: dict = {}
        for m, v in q.items():
            self._add_scaled(out, p, v, m)
        return out

    def leading_monomial(self, p: Mapping) -> tuple:
        return max(p, key=self.key)


def _check_exponents(terms: Mapping[tuple, Raw]) -> None:
    for m in terms:
        if m and max(m) > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent above {MAX_EXPONENT} in {m}")


class Poly:
    """A polynomial in a ``PolyRing``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise RingMismatchError("polynomials over different fields")
                raise RingMismatchError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        acc = dict(self.terms)
        self.ring._add_scaled(acc, o.terms, self.ring.field.one)
        return Poly(self.ring, acc)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        acc = dict(self.terms)
        self.ring._add_scaled(acc, o.terms, self.ring.field.neg(self.ring.field.one))
        return Poly(self.ring, acc)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            o = self._coerce(other)
            out = self.ring._mul(self.terms, o.terms)
            _check_exponents(out)
            return Poly(self.ring, out)
        F = self.ring.field
        c = F.convert(other)
        if c == 0:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Raw | None:
        if not self.terms:
            return self.ring.field.zero
        if len(self.terms) == 1 and self.ring.zero_mono in self.terms:
            return self.terms[self.ring.zero_mono]
        return None

    def constant_term(self) -> Raw:
        return self.terms.get(self.ring.zero_mono, self.ring.field.zero)

    def lm(self) -> tuple:
        return self.ring.leading_monomial(self.terms)

    def lc(self) -> Raw:
        return self.terms[self.lm()]

    def degree(self) -> int:
        """Largest weighted degree of a term; -1 for zero."""
        if not self.terms:
            return -1
        return max(self.ring.mono_degree(m) for m in self.terms)

    def degrees(self) -> set[int]:
        return {self.ring.mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.lc())

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.names[i])
        return used

    def evaluate(self, point: Mapping[str, Raw] | Sequence[Raw]) -> Raw:
        """Evaluate at a full point (mapping by name or sequence by index)."""
        F = self.ring.field
        if isinstance(point, Mapping):
            vals = [F.convert(point[n]) for n in self.ring.names]
        else:
            vals = [F.convert(x) for x in point]
        total = F.zero
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    t = F.mul(t, _fpow(F, vals[i], e))
            total = F.add(total, t)
        return total

    def diff(self, name: str) -> "Poly":
        i = self.ring.index[name]
        F = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] -= 1
                v = F.mul(c, F.convert(e))
                if v != 0:
                    out[tuple(mm)] = v
        return Poly(self.ring, out)

    def to_named(self) -> dict[tuple, Raw]:
        names = self.ring.names
        return {tuple((names[i], e) for i, e in enumerate(m) if e): c for m, c in self.terms.items()}

    def sorted_terms(self) -> list[tuple[tuple, Raw]]:
        return sorted(self.terms.items(), key=lambda mc: self.ring.key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (self.ring.names[i] if e == 1 else f"{self.ring.names[i]}^{e}")
                for i, e in enumerate(m) if e
            )
            cs = F.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if "/" in cs and mono:
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]

    __repr__ = __str__


def _fpow(F: Field, x: Raw, e: int) -> Raw:
    r = F.one
    while e:
        if e & 1:
            r = F.mul(r, x)
        e >>= 1
        if e:
            x = F.mul(x, x)
    return r


# ------------------------------------------------------------------ Groebner bases


@dataclass
class BuchbergerConfig:
    """Knobs for ``groebner``.  ``degree_cap`` bounds the weighted degree of pairs."""

    degree_cap: int | None = None
    reduce_result: bool = True


@dataclass
class GroebnerBasis:
    ring: PolyRing
    polys: list[Poly]
    complete: bool
    degree_cap: int | None
    homogeneous: bool
    stats: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        return "complete" if self.complete else "truncated"

    def leading_monomials(self) -> list[tuple]:
        return [p.lm() for p in self.polys]

    def reduce(self, f: Poly) -> Poly:
        red = self.__dict__.get("_reducer")
        if red is None:
            red = self.__dict__["_reducer"] = _Reducer(self.ring, [g.terms for g in self.polys])
        return Poly(self.ring, red.reduce(f.terms))

    def contains(self, f: Poly) -> bool | None:
        """Membership: True, False, or None when the basis cannot decide."""
        r = self.reduce(f)
        if r.is_zero():
            return True
        if self.complete:
            return False
        if self.homogeneous and self.degree_cap is not None and f.degree() <= self.degree_cap:
            return False
        return None


class _Reducer:
    """Reduction of raw dicts modulo a list of monic raw dicts."""

    def __init__(self, ring: PolyRing, basis: Sequence[Mapping]):
        self.ring = ring
        self.entries = []
        for g in basis:
            if not g:
                continue
            lm = ring.leading_monomial(g)
            lc = g[lm]
            if lc != 1:
                inv = ring.field.inv(lc)
                g = {m: ring.field.mul(v, inv) for m, v in g.items()}
            self.entries.append((lm, ring.mask(lm), g))

    def add(self, g: Mapping) -> None:
        lm = self.ring.leading_monomial(g)
        self.entries.append((lm, self.ring.mask(lm), g))

    def find(self, m: tuple):
        mm = self.ring.mask(m)
        for lm, mask, g in self.entries:
            if mask & ~mm == 0:
                for a, b in zip(lm, m):
                    if a > b:
                        break
                else:
                    return lm, g
        return None

    def reduce(self, p: Mapping, full: bool = True, quotients: list | None = None) -> dict:
        ring = self.ring
        F = ring.field
        key = ring.key
        p = dict(p)
        rem: dict = {}
        while p:
            m = max(p, key=key)
            hit = self.find(m)
            if hit is None:
                if not full:
                    rem.update(p)
                    return rem
                rem[m] = p.pop(m)
                continue
            lm, g = hit
            c = p[m]
            shift = tuple(map(_sub, m, lm))
            if quotients is not None:
                quotients.append((g, shift, c))
            ring._add_scaled(p, g, F.neg(c), shift)
        return rem


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def groebner(gens: Sequence[Poly], config: BuchbergerConfig | None = None, ring: PolyRing | None = None
             ) -> GroebnerBasis:
    """Buchberger's algorithm with the Gebauer-Moeller criteria.

    Pairs are processed by smallest lcm (normal strategy).  Pairs whose lcm
    has weighted degree above ``degree_cap`` are left unprocessed and the
    result is marked truncated.
    """
    import heapq

    config = config or BuchbergerConfig()
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    F = ring.field
    key = ring.key
    cap = config.degree_cap
    homogeneous = all(g.is_homogeneous() for g in gens)

    polys: list[dict] = []
    lms: list[tuple] = []
    active: list[int] = []
    reducer = _Reducer(ring, [])
    heap: list = []
    live: dict[tuple[int, int], tuple] = {}
    deferred = 0
    stats = {"pairs": 0, "zero": 0}

    def monic(p: dict) -> dict:
        lm = ring.leading_monomial(p)
        lc = p[lm]
        if lc == 1:
            return p
        inv = F.inv(lc)
        return {m: F.mul(v, inv) for m, v in p.items()}

    def rebuild_reducer():
        reducer.entries = [(lms[i], ring.mask(lms[i]), polys[i]) for i in active]

    def update(h: dict):
        nonlocal active
        hi = len(polys)
        hlm = ring.leading_monomial(h)
        polys.append(h)
        lms.append(hlm)
        # new candidate pairs (g, h)
        cand = {g: _lcm(lms[g], hlm) for g in active}
        keep = {}
        items = list(cand.items())
        for g, l in items:
            if _coprime(lms[g], hlm):
                keep[g] = l
                continue
            dominated = False
            for g2, l2 in items:
                if g2 != g and l2 != l and _divides(l2, l):
                    dominated = True
                    break
                if g2 < g and l2 == l:
                    dominated = True
                    break
            if not dominated:
                keep[g] = l
        new_pairs = {(g, hi): l for g, l in keep.items() if not _coprime(lms[g], hlm)}
        # chain criterion on old pairs
        for (a, b), l in list(live.items()):
            if _divides(hlm, l) and _lcm(lms[a], hlm) != l and _lcm(lms[b], hlm) != l:
                del live[(a, b)]
        for pr, l in new_pairs.items():
            live[pr] = l
            heapq.heappush(heap, (key(l), pr))
        active = [g for g in active if not _divides(hlm, lms[g])] + [hi]
        rebuild_reducer()

    start = sorted((monic(dict(g.terms)) for g in gens if g.terms), key=lambda p: key(ring.leading_monomial(p)))
    for g in start:
        h = reducer.reduce(g)
        if h:
            update(monic(h))

    skipped: list = []
    while heap:
        k, pr = heapq.heappop(heap)
        l = live.pop(pr, None)
        if l is None:
            continue
        if cap is not None and k[0] > cap:
            skipped.append(pr)
            deferred += 1
            continue
        a, b = pr
        stats["pairs"] += 1
        s = {}
        ring._add_scaled(s, polys[a], F.one, tuple(map(_sub, l, lms[a])))
        ring._add_scaled(s, polys[b], F.neg(F.one), tuple(map(_sub, l, lms[b])))
        h = reducer.reduce(s)
        if h:
            update(monic(h))
        else:
            stats["zero"] += 1

    basis = [polys[i] for i in active]
    if config.reduce_result:
        basis = _interreduce(ring, basis)
    out = [Poly(ring, p) for p in sorted(basis, key=lambda p: key(ring.leading_monomial(p)))]
    stats["deferred"] = deferred
    return GroebnerBasis(ring, out, deferred == 0, cap, homogeneous, stats)


def _interreduce(ring: PolyRing, basis: list[dict]) -> list[dict]:
    basis = [b for b in basis if b]
    lms = [ring.leading_monomial(b) for b in basis]
    minimal = [b for i, b in enumerate(basis)
               if not any(j != i and _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i)
                          for j in range(len(basis)))]
    out = []
    for i, b in enumerate(minimal):
        others = _Reducer(ring, [g for j, g in enumerate(minimal) if j != i])
        lm = ring.leading_monomial(b)
        tail = {m: v for m, v in b.items() if m != lm}
        red = others.reduce(tail)
        red[lm] = b[lm]
        out.append(red)
    return out


def normal_form(f: Poly, basis: Sequence[Poly]) -> tuple[Poly, list[Poly]]:
    """Remainder and quotients with ``f = sum(q_i * g_i) + r``."""
    ring = f.ring
    F = ring.field
    raw = [g.terms for g in basis]
    red = _Reducer(ring, [])
    lc_inv = []
    for g in raw:
        lm = ring.leading_monomial(g)
        inv = F.inv(g[lm])
        lc_inv.append(inv)
        red.entries.append((lm, ring.mask(lm), {m: F.mul(v, inv) for m, v in g.items()}))
    steps: list = []
    r = red.reduce(f.terms, quotients=steps)
    qs = [dict() for _ in basis]
    ident = {id(e[2]): i for i, e in enumerate(red.entries)}
    for g, shift, c in steps:
        i = ident[id(g)]
        v = F.mul(c, lc_inv[i])
        nv = F.add(qs[i].get(shift, 0), v)
        if nv == 0:
            qs[i].pop(shift, None)
        else:
            qs[i][shift] = nv
    return Poly(ring, r), [Poly(ring, q) for q in qs]


@dataclass
class Membership:
    verdict: str  # "true" | "false" | "unknown"
    remainder: Poly
    quotients: list[Poly] | None = None
    basis: list[Poly] | None = None


def ideal_member(f: Poly, gens: Sequence[Poly], degree_cap: int | None = None,
                 basis: GroebnerBasis | None = None) -> Membership:
    """Decide ``f in <gens>``, with a quotient certificate on success."""
    if basis is None:
        basis = groebner(list(gens), BuchbergerConfig(degree_cap=degree_cap), ring=f.ring)
    r, qs = normal_form(f, basis.polys)
    if r.is_zero():
        return Membership("true", r, qs, basis.polys)
    dec = basis.contains(f)
    return Membership("false" if dec is False else "unknown", r)


def default_degree_cap(target_degree: int) -> int:
    return 2 * target_degree + 2


# ------------------------------------------------------------------ Hilbert functions


def _minimalize(gens: Iterable[tuple]) -> list[tuple]:
    gs = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gs:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _poly_mul_int(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def hilbert_numerator(monomials: Iterable[tuple], weights: Sequence[int]) -> dict[int, int]:
    """Numerator N(t) with HS(S/J) = N(t) / prod(1 - t^w_i) for a monomial ideal J."""
    memo: dict[frozenset, dict[int, int]] = {}

    def deg(m):
        return sum(map(operator.mul, weights, m))

    def rec(gens: tuple[tuple, ...]) -> dict[int, int]:
        fs = frozenset(gens)
        if fs in memo:
            return memo[fs]
        if not gens:
            res = {0: 1}
        else:
            counts = [0] * len(weights)
            for g in gens:
                for i, e in enumerate(g):
                    if e:
                        counts[i] += 1
            best = max(range(len(weights)), key=lambda i: counts[i])
            if counts[best] <= 1:
                res = {0: 1}
                for g in gens:
                    res = _poly_mul_int(res, {0: 1, deg(g): -1})
            else:
                x = tuple(1 if i == best else 0 for i in range(len(weights)))
                plus = _minimalize([g for g in gens if g[best] == 0] + [x])
                colon = _minimalize([tuple(e - 1 if (i == best and e) else e for i, e in enumerate(g))
                                     for g in gens])
                a = rec(tuple(plus))
                b = rec(tuple(colon))
                w = weights[best]
                res = dict(a)
                for k, v in b.items():
                    res[k + w] = res.get(k + w, 0) + v
                res = {k: v for k, v in res.items() if v}
        memo[fs] = res
        return res

    return rec(tuple(_minimalize(monomials)))


def series_coefficients(numer: Mapping[int, int], weights: Sequence[int], upto: int) -> list[int]:
    """Coefficients 0..upto of N(t) / prod(1 - t^w)."""
    coeffs = [0] * (upto + 1)
    for k, v in numer.items():
        if k <= upto:
            coeffs[k] += v
    for w in weights:
        for d in range(w, upto + 1):
            coeffs[d] += coeffs[d - w]
    return coeffs


def standard_monomial_counts(basis: GroebnerBasis | Sequence[tuple], upto: int,
                             weights: Sequence[int] | None = None, cumulative: bool = False
                             ) -> list[int]:
    """Number of standard monomials in each weighted degree 0..upto."""
    if isinstance(basis, GroebnerBasis):
        lms = basis.leading_monomials()
        weights = basis.ring.weights
    else:
        lms = list(basis)
        if weights is None:
            raise ValueError("weights required with raw monomials")
    counts = series_coefficients(hilbert_numerator(lms, weights), weights, upto)
    if cumulative:
        counts = list(itertools.accumulate(counts))
    return counts


def monomials_of_degree(weights: Sequence[int], d: int) -> list[tuple]:
    out: list[tuple] = []
    n = len(weights)

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                out.append(tuple(cur))
            return
        w = weights[i]
        for e in range(left // w + 1):
            cur.append(e)
            rec(i + 1, left - e * w, cur)
            cur.pop()

    rec(0, d, [])
    return out


# ------------------------------------------------------------------ maps, Jacobians, tangent data


def apply_ring_map(f: Poly, images: Mapping[str, Poly], target: PolyRing | None = None) -> Poly:
    """Substitute ``images[name]`` for each variable of f's ring.

    Variables without an image must exist in ``target`` and map to themselves.
    """
    if target is None:
        target = next(iter(images.values())).ring if images else f.ring
    src = f.ring
    ims: list[Poly] = []
    for n in src.names:
        if n in images:
            im = images[n]
            ims.append(im if isinstance(im, Poly) else target(im))
        else:
            ims.append(target.var(n))
    F = target.field
    powers: dict[tuple[int, int], dict] = {}

    def power(i, e):
        k = (i, e)
        if k not in powers:
            if e == 1:
                powers[k] = ims[i].terms
            else:
                powers[k] = target._mul(power(i, e - 1), ims[i].terms)
        return powers[k]

    out: dict = {}
    for m, c in f.terms.items():
        term = {target.zero_mono: F.convert(src.field.to_scalar(c))}
        for i, e in enumerate(m):
            if e:
                term = target._mul(term, power(i, e))
        target._add_scaled(out, term, F.one)
    _check_exponents(out)
    return Poly(target, out)


def jacobian(gens: Sequence[Poly]) -> list[list[Poly]]:
    ring = gens[0].ring
    return [[g.diff(n) for n in ring.names] for g in gens]


def jacobian_at(gens: Sequence[Poly], point: Mapping[str, Raw]) -> tuple[list[list[Raw]], int]:
    """Evaluated Jacobian matrix and its rank."""
    J = [[d.evaluate(point) for d in row] for row in jacobian(gens)]
    field = gens[0].ring.field
    rank = rank_and_kernel(J, field)[0] if J else 0
    return J, rank


def linear_part(gens: Sequence[Poly]) -> list[list[Raw]]:
    """Coefficients of the degree-one monomials; needs zero constant terms."""
    rows = []
    for g in gens:
        if g.constant_term() != 0:
            raise ValueError(f"generator {g} has a nonzero constant term")
        ring = g.ring
        row = [ring.field.zero] * ring.nvars
        for m, c in g.terms.items():
            if sum(m) == 1:
                row[m.index(1)] = c
        rows.append(row)
    return rows


def tangent_dimension_at_origin(ring: PolyRing, gens: Sequence[Poly]) -> int:
    if not gens:
        return ring.nvars
    return ring.nvars - rank_and_kernel(linear_part(gens), ring.field)[0]


def cotangent_weights(ring: PolyRing, gens: Sequence[Poly]) -> dict[int, int]:
    """Weights of a minimal set of algebra generators of the quotient ring.

    Needs homogeneous generators without constant terms.  In weight w this is
    the number of weight-w variables minus the rank of the linear parts of the
    weight-w generators.
    """
    out: dict[int, int] = {}
    for w in sorted(set(ring.weights)):
        nv = sum(1 for x in ring.weights if x == w)
        rows = [r for g, r in zip(gens, linear_part(gens)) if g.degree() == w] if gens else []
        rows = [[r[i] for i in range(ring.nvars) if ring.weights[i] == w] for r in rows]
        rk = rank_and_kernel(rows, ring.field)[0] if rows else 0
        if nv - rk:
            out[w] = nv - rk
    return out


def homogeneity_check(gens: Sequence[Poly]) -> list[tuple[int, list[int]]]:
    """(index, degrees) for each generator that is not weighted-homogeneous."""
    return [(i, sorted(g.degrees())) for i, g in enumerate(gens) if not g.is_homogeneous()]


def minimal_generator_degrees(gens: Sequence[Poly], upto: int | None = None) -> dict[int, int]:
    """Degree multiset of a minimal homogeneous generating set.

    Per degree d this is dim I_d - dim (m I)_d, computed from the spans of
    monomial multiples of the generators.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return {}
    if homogeneity_check(gens):
        raise ValueError("generators must be homogeneous")
    ring = gens[0].ring
    if upto is None:
        upto = max(g.degree() for g in gens)
    out: dict[int, int] = {}
    mono_cache: dict[int, list[tuple]] = {}
    for d in range(1, upto + 1):
        col: dict[tuple, int] = {}
        ech_all = SparseEchelon(ring.field)
        ech_m = SparseEchelon(ring.field)
        pure: list[dict] = []
        for g in gens:
            e = d - g.degree()
            if e < 0:
                continue
            if e not in mono_cache:
                mono_cache[e] = monomials_of_degree(ring.weights, e)
            for t in mono_cache[e]:
                row = {}
                for m, c in g.terms.items():
                    mm = tuple(map(_add, m, t))
                    j = col.setdefault(mm, len(col))
                    row[j] = c
                if e == 0:
                    pure.append(row)
                else:
                    ech_m.add(dict(row))
                    ech_all.add(row)
        for row in pure:
            ech_all.add(row)
        k = ech_all.rank - ech_m.rank
        if k:
            out[d] = k
    return out


# ------------------------------------------------------------------ text and JSON formats


@dataclass
class Ideal:
    """Named generators in a ring; the unit of emit/parse."""

    ring: PolyRing
    gens: list[Poly]
    names: list[str] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.names:
            self.names = [f"g{i + 1}" for i in range(len(self.gens))]

    def groebner(self, degree_cap: int | None = None) -> GroebnerBasis:
        return groebner(self.gens, BuchbergerConfig(degree_cap=degree_cap), ring=self.ring)


def ring_header(ring: PolyRing) -> str:
    vars_ = ",".join(f"{n}:{w}" for n, w in zip(ring.names, ring.weights))
    prec = "<".join(ring.names[i] for i in ring.ascending)
    return f"ring {ring.field.name} vars {vars_} order {ring.config.order} prec {prec}"


def ideal_to_text(ideal: Ideal) -> str:
    lines = [ring_header(ideal.ring)]
    for name, g in zip(ideal.names, ideal.gens):
        lines.append(f"gen {name} = {g}")
    return "\n".join(lines) + "\n"


def parse_ring_header(line: str) -> PolyRing:
    toks = line.split()
    if not toks or toks[0] != "ring":
        raise ValueError("header must start with 'ring'")
    field = field_from_name(toks[1])
    opts = dict(zip(toks[2::2], toks[3::2]))
    names, weights = [], []
    for item in opts["vars"].split(","):
        n, w = item.split(":")
        names.append(n)
        weights.append(int(w))
    prec = opts.get("prec")
    return PolyRing.make(names, weights, field, opts.get("order", "wdegrevlex"),
                         prec.split("<") if prec else None)


def ideal_from_text(text: str) -> Ideal:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    ring = parse_ring_header(lines[0])
    names, gens = [], []
    for ln in lines[1:]:
        if not ln.startswith("gen "):
            raise ValueError(f"bad generator line {ln!r}")
        name, expr = ln[4:].split("=", 1)
        names.append(name.strip())
        gens.append(ring.parse(expr))
    return Ideal(ring, gens, names)


def ideal_to_json(ideal: Ideal) -> str:
    ring = ideal.ring
    F = ring.field
    doc = {
        "ring": {
            "field": F.name,
            "vars": [{"name": n, "weight": w} for n, w in zip(ring.names, ring.weights)],
            "order": {"kind": ring.config.order, "prec": [ring.names[i] for i in ring.ascending]},
        },
        "gens": [
            {"name": name, "terms": [{"coeff": F.to_scalar(c).serialize(), "exps": list(m)}
                                     for m, c in g.sorted_terms()]}
            for name, g in zip(ideal.names, ideal.gens)
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def ideal_from_json(text: str) -> Ideal:
    doc = json.loads(text)
    r = doc["ring"]
    field = field_from_name(r["field"])
    order = r.get("order", {})
    ring = PolyRing.make([v["name"] for v in r["vars"]], [v["weight"] for v in r["vars"]], field,
                         order.get("kind", "wdegrevlex"), order.get("prec"))
    gens, names = [], []
    for g in doc["gens"]:
        terms = {}
        for t in g["terms"]:
            c = field.convert(t["coeff"])
            if c != 0:
                terms[tuple(t["exps"])] = c
        _check_exponents(terms)
        gens.append(Poly(ring, terms))
        names.append(g["name"])
    return Ideal(ring, gens, names)


def ideal_to_cas(ideal: Ideal) -> str:
    """Macaulay2-flavoured plain text."""
    ring = ideal.ring
    F = ring.field
    base = "QQ" if F.characteristic == 0 else f"ZZ/{F.characteristic}"
    order = "GLex" if ring.config.order == "wdeglex" else "GRevLex"
    ordered = [ring.names[i] for i in ring.ascending][::-1]
    wts = ",".join(str(ring.weights[ring.index[n]]) for n in ordered)
    lines = [f"R = {base}[{','.join(ordered)}, Degrees=>{{{wts}}}, MonomialOrder=>{order}];"]
    body = ",\n  ".join(str(g) for g in ideal.gens)
    lines.append(f"I = ideal(\n  {body});")
    return "\n".join(lines) + "\n"
