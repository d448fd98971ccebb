"""Rewriting in path algebras of quivers.

Paths are written right to left: the word ``B1*A1`` means A1 first, then
B1, and is stored as the tuple ``("B1", "A1")``.  The product ``u*v`` of
two paths is nonzero only when v ends where u starts.

Words are compared by length, then lexicographically (left to right) using
a precedence list of arrows, smallest first.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .exact_math import QQ, Field, Raw, SparseEchelon

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int = 0


@dataclass
class Quiver:
    vertices: list[str]
    arrows: dict[str, Arrow] = dc_field(default_factory=dict)

    def add_arrow(self, name: str, source: str, target: str, degree: int = 0) -> None:
        if name in self.arrows:
            raise ValueError(f"duplicate arrow {name}")
        if source not in self.vertices or target not in self.vertices:
            raise ValueError(f"arrow {name}: unknown vertex")
        self.arrows[name] = Arrow(name, source, target, degree)

    def out_of(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows.values() if a.source == v]


@dataclass(frozen=True)
class PathWord:
    """A path; ``arrows`` is in written order (last applied first)."""

    arrows: tuple[str, ...]
    source: str
    target: str

    @property
    def length(self) -> int:
        return len(self.arrows)

    def degree(self, Q: Quiver) -> int:
        return sum(Q.arrows[a].degree for a in self.arrows)

    def __str__(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


def trivial(v: str) -> PathWord:
    return PathWord((), v, v)


def path(Q: Quiver, arrows: Sequence[str]) -> PathWord | None:
    """The path with the given written arrows, or None if not composable."""
    if not arrows:
        raise ValueError("use trivial(v) for the empty path")
    arrows = tuple(arrows)
    for left, right in zip(arrows, arrows[1:]):
        if Q.arrows[right].target != Q.arrows[left].source:
            return None
    return PathWord(arrows, Q.arrows[arrows[-1]].source, Q.arrows[arrows[0]].target)


def compose(u: PathWord, v: PathWord) -> PathWord | None:
    """u*v: first v, then u."""
    if v.target != u.source:
        return None
    return PathWord(u.arrows + v.arrows, v.source, u.target)


Element = dict  # PathWord -> coefficient


def _add(acc: dict, w: PathWord, c: Raw, F: Field) -> None:
    v = F.add(acc.get(w, F.zero), c)
    if v == F.zero:
        acc.pop(w, None)
    else:
        acc[w] = v


@dataclass(frozen=True)
class RewriteRule:
    lhs: PathWord
    rhs: tuple[tuple[PathWord, Raw], ...]

    def __str__(self) -> str:
        r = " + ".join(f"{c}*{w}" for w, c in self.rhs) or "0"
        return f"{self.lhs} -> {r}"


@dataclass
class RewriteSystem:
    quiver: Quiver
    rules: list[RewriteRule]
    precedence: list[str]
    field: Field = QQ
    completed: bool = False
    truncated: bool = False

    def __post_init__(self):
        if sorted(self.precedence) != sorted(self.quiver.arrows):
            raise ValueError("precedence must list every arrow once")
        self._rank = {a: i for i, a in enumerate(self.precedence)}
        for r in self.rules:
            for w, _ in r.rhs:
                if (w.source, w.target, w.degree(self.quiver)) != (r.lhs.source, r.lhs.target,
                                                                 r.lhs.degree(self.quiver)):
                    raise ValueError(f"rule {r} is not homogeneous")
                if not self.less(w, r.lhs):
                    raise ValueError(f"rule {r} is not order-decreasing")

    def key(self, w: PathWord) -> tuple:
        return len(w.arrows), tuple(self._rank[a] for a in w.arrows)

    def less(self, u: PathWord, v: PathWord) -> bool:
        return self.key(u) < self.key(v)

    def with_rules(self, rules: list[RewriteRule], **kw) -> "RewriteSystem":
        return RewriteSystem(self.quiver, rules, list(self.precedence), self.field, **kw)

    # -------------------------------------------------------- reduction
    def _find_redex(self, w: PathWord, rightmost: bool = False) -> tuple[int, RewriteRule] | None:
        n = len(w.arrows)
        starts = range(n - 1, -1, -1) if rightmost else range(n)
        for s in starts:
            for r in self.rules:
                L = len(r.lhs.arrows)
                if L and w.arrows[s:s + L] == r.lhs.arrows:
                    return s, r
        return None

    def _replace(self, w: PathWord, s: int, r: RewriteRule) -> list[tuple[PathWord, Raw]]:
        L = len(r.lhs.arrows)
        pre, post = w.arrows[:s], w.arrows[s + L:]
        out = []
        for u, c in r.rhs:
            arrows = pre + u.arrows + post
            out.append((PathWord(arrows, w.source, w.target) if arrows else trivial(w.source), c))
        return out

    def nf(self, elt: Mapping[PathWord, Raw] | PathWord, rightmost: bool = False,
           max_steps: int = 1_000_000) -> dict[PathWord, Raw]:
        """Normal form; every step replaces a word by strictly smaller ones."""
        F = self.field
        if isinstance(elt, PathWord):
            elt = {elt: F.one}
        todo = {w: F.convert(c) for w, c in elt.items() if F.convert(c) != F.zero}
        done: dict[PathWord, Raw] = {}
        steps = 0
        while todo:
            w = max(todo, key=self.key)
            c = todo.pop(w)
            hit = self._find_redex(w, rightmost)
            if hit is None:
                _add(done, w, c, F)
                continue
            steps += 1
            if steps > max_steps:
                raise RuntimeError("reduction did not terminate within the step bound")
            for u, d in self._replace(w, *hit):
                _add(todo, u, F.mul(c, d), F)
        return done

    def is_normal(self, w: PathWord) -> bool:
        return self._find_redex(w) is None

    def multiply(self, a: Mapping[PathWord, Raw], b: Mapping[PathWord, Raw]) -> dict[PathWord, Raw]:
        """nf(a*b) with a applied after b."""
        F = self.field
        acc: dict[PathWord, Raw] = {}
        for u, c in a.items():
            for v, d in b.items():
                w = _compose_any(u, v)
                if w is not None:
                    _add(acc, w, F.mul(c, d), F)
        return self.nf(acc)


def _compose_any(u: PathWord, v: PathWord) -> PathWord | None:
    if v.target != u.source:
        return None
    if not u.arrows:
        return v
    if not v.arrows:
        return u
    return compose(u, v)


def make_rule(S_or_order, lhs_combo: Mapping[PathWord, Raw], field: Field = QQ) -> RewriteRule | None:
    """Orient a relation (sum = 0) so its largest word becomes the lhs; None for the zero relation."""
    key = S_or_order.key
    F = field
    combo = {w: F.convert(c) for w, c in lhs_combo.items() if F.convert(c) != F.zero}
    if not combo:
        return None
    top = max(combo, key=key)
    inv = F.inv(combo[top])
    rhs = tuple(sorted(((w, F.neg(F.mul(c, inv))) for w, c in combo.items() if w != top),
                       key=lambda t: key(t[0]), reverse=True))
    return RewriteRule(top, rhs)


def system_from_relations(Q: Quiver, relations: Iterable[Mapping[PathWord, Raw]], precedence: Sequence[str],
                          field: Field = QQ) -> RewriteSystem:
    S = RewriteSystem(Q, [], list(precedence), field)
    rules = [r for r in (make_rule(S, rel, field) for rel in relations) if r is not None]
    return S.with_rules(rules)


# ------------------------------------------------------------ completion


def _overlaps(r1: RewriteRule, r2: RewriteRule) -> list[tuple[PathWord, int]]:
    """Words w = l1-prefix + l2 where a proper suffix of l1 equals a prefix of l2, or l2 inside l1.

    Returns (w, offset of l2 in w).
    """
    a, b = r1.lhs.arrows, r2.lhs.arrows
    out = []
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            arrows = a + b[k:]
            out.append((PathWord(arrows, r2.lhs.source, r1.lhs.target), len(a) - k))
    if r1 is not r2 and len(b) <= len(a):
        for s in range(len(a) - len(b) + 1):
            if a[s:s + len(b)] == b:
                out.append((r1.lhs, s))
    return out


def _interreduce(S: RewriteSystem) -> RewriteSystem:
    rules = sorted(S.rules, key=lambda r: S.key(r.lhs))
    kept: list[RewriteRule] = []
    for r in rules:
        T = S.with_rules(kept)
        if T._find_redex(r.lhs) is not None:
            rel = T.nf({r.lhs: S.field.one, **{w: S.field.neg(c) for w, c in r.rhs}})
            new = make_rule(S, rel, S.field)
            if new is not None:
                kept.append(new)
            continue
        kept.append(r)
    # fully reduce right-hand sides
    final = []
    for r in kept:
        others = S.with_rules([k for k in kept if k is not r])
        rhs = others.nf(dict(r.rhs)) if r.rhs else {}
        final.append(RewriteRule(r.lhs, tuple(sorted(rhs.items(), key=lambda t: S.key(t[0]), reverse=True))))
    return S.with_rules(final)


def complete(S: RewriteSystem, max_len: int = 12) -> RewriteSystem:
    """Resolve overlap ambiguities until confluent, ignoring overlaps longer than ``max_len``."""
    F = S.field
    cur = _interreduce(S)
    truncated = False
    while True:
        new_rel = None
        for r1, r2 in itertools.product(cur.rules, repeat=2):
            for w, off in _overlaps(r1, r2):
                if len(w.arrows) > max_len:
                    truncated = True
                    continue
                # r1 always sits at the start of the overlap word
                one = cur.nf(dict(cur._replace(w, 0, r1)))
                two = cur.nf(dict(cur._replace(w, off, r2)))
                diff = dict(one)
                for u, c in two.items():
                    _add(diff, u, F.neg(c), F)
                if diff:
                    new_rel = diff
                    break
            if new_rel is not None:
                break
        if new_rel is None:
            break
        rule = make_rule(cur, new_rel, F)
        cur = _interreduce(cur.with_rules(cur.rules + [rule]))
    if truncated:
        log.warning("completion truncated at overlap length %d", max_len)
    return cur.with_rules(cur.rules, completed=not truncated, truncated=truncated)


# ------------------------------------------------------------ bases


def normal_words(S: RewriteSystem, max_degree: int, max_len: int = 12) -> list[PathWord]:
    """Normal-form paths of internal degree <= max_degree and length <= max_len."""
    Q = S.quiver
    out = [trivial(v) for v in Q.vertices]
    frontier = []
    for a in Q.arrows.values():
        w = PathWord((a.name,), a.source, a.target)
        if a.degree <= max_degree and S.is_normal(w):
            frontier.append(w)
    while frontier:
        out.extend(frontier)
        nxt = []
        for w in frontier:
            if len(w.arrows) >= max_len:
                continue
            for a in Q.out_of(w.target):
                u = PathWord((a.name,) + w.arrows, w.source, a.target)
                if u.degree(Q) <= max_degree and S.is_normal(u):
                    nxt.append(u)
        frontier = nxt
    return out


def basis_by_degree(S: RewriteSystem, max_degree: int, max_len: int = 12) -> dict[tuple[str, str, int], list[PathWord]]:
    """Normal words grouped by (source, target, internal degree)."""
    if not S.completed:
        raise ValueError("basis enumeration needs a completed system")
    out: dict[tuple[str, str, int], list[PathWord]] = {}
    for w in normal_words(S, max_degree, max_len):
        out.setdefault((w.source, w.target, w.degree(S.quiver)), []).append(w)
    return out


def all_paths(Q: Quiver, max_len: int) -> list[PathWord]:
    out = [trivial(v) for v in Q.vertices]
    frontier = [PathWord((a.name,), a.source, a.target) for a in Q.arrows.values()]
    for _ in range(max_len):
        out.extend(frontier)
        frontier = [PathWord((a.name,) + w.arrows, w.source, a.target) for w in frontier
                    for a in Q.out_of(w.target)]
    return out


def graded_quotient_dims(Q: Quiver, relations: Sequence[Mapping[PathWord, Raw]], max_len: int,
                         field: Field = QQ) -> list[int]:
    """dim of (kQ / two-sided ideal) in each path length, by linear algebra on path spans.

    Relations must be homogeneous in path length.
    """
    paths = all_paths(Q, max_len)
    by_len: dict[int, list[PathWord]] = {}
    for p in paths:
        by_len.setdefault(len(p.arrows), []).append(p)
    dims = []
    for L in range(max_len + 1):
        words = by_len.get(L, [])
        index = {w: i for i, w in enumerate(words)}
        ech = SparseEchelon(field)
        for rel in relations:
            lens = {len(w.arrows) for w in rel}
            if len(lens) != 1:
                raise ValueError("relation not homogeneous in length")
            (rl,) = lens
            if rl > L:
                continue
            for lp in range(L - rl + 1):
                for u in by_len.get(lp, [trivial(v) for v in Q.vertices] if lp == 0 else []):
                    for v in by_len.get(L - rl - lp, [trivial(x) for x in Q.vertices]
                                        if L - rl - lp == 0 else []):
                        row = {}
                        for w, c in rel.items():
                            x = _compose_any(u, w)
                            y = _compose_any(x, v) if x is not None else None
                            if y is not None:
                                k = index[y]
                                row[k] = field.add(row.get(k, field.zero), field.convert(c))
                        row = {k: c for k, c in row.items() if c != field.zero}
                        if row:
                            ech.add(row)
        dims.append(len(words) - ech.rank)
    return dims


# ------------------------------------------------------------ the algebra E_{1,n}


def e_quiver(n: int) -> Quiver:
    """Central vertex v0 with A_i: v0 -> vi (degree 0) and B_i: vi -> v0 (degree 1)."""
    Q = Quiver([f"v{i}" for i in range(n + 1)])
    for i in range(1, n + 1):
        Q.add_arrow(f"A{i}", "v0", f"v{i}", 0)
    for i in range(1, n + 1):
        Q.add_arrow(f"B{i}", f"v{i}", "v0", 1)
    return Q


def e_precedence(n: int) -> list[str]:
    """A1 < B1 < A2 < B2 < ...: orients B_i A_i -> B1 A1."""
    out = []
    for i in range(1, n + 1):
        out += [f"A{i}", f"B{i}"]
    return out


def e_relations(n: int, field: Field = QQ) -> list[dict[PathWord, Raw]]:
    Q = e_quiver(n)
    F = field
    rels = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                rels.append({path(Q, [f"A{i}", f"B{j}"]): F.one})
    for i in range(2, n + 1):
        rels.append({path(Q, [f"B{i}", f"A{i}"]): F.one, path(Q, ["B1", "A1"]): F.neg(F.one)})
    return rels


def e_system(n: int, field: Field = QQ) -> RewriteSystem:
    return system_from_relations(e_quiver(n), e_relations(n, field), e_precedence(n), field)


# ------------------------------------------------------------ text format


_VERTEX_RANGE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.\1?(\d+)$")


def quiver_to_text(Q: Quiver, relations: Sequence[Mapping[PathWord, Raw]] = (), field: Field = QQ) -> str:
    lines = ["vertex " + " ".join(Q.vertices)]
    for a in Q.arrows.values():
        lines.append(f"arrow {a.name}: {a.source}->{a.target} deg {a.degree}")
    for rel in relations:
        terms = []
        for w, c in sorted(rel.items(), key=lambda t: str(t[0])):
            terms.append(f"{field.format(c)}*{w}")
        lines.append("rel " + " + ".join(terms) + " = 0")
    return "\n".join(lines) + "\n"


def quiver_from_text(text: str, field: Field = QQ) -> tuple[Quiver, list[dict[PathWord, Raw]]]:
    """Parse ``vertex``, ``arrow NAME: S->T deg D`` and ``rel LHS = RHS`` lines."""
    Q: Quiver | None = None
    rels_raw: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        if kw == "vertex":
            names: list[str] = []
            for tok in rest.split():
                m = _VERTEX_RANGE.match(tok)
                if m:
                    names += [f"{m.group(1)}{k}" for k in range(int(m.group(2)), int(m.group(3)) + 1)]
                else:
                    names.append(tok)
            Q = Quiver(names)
        elif kw == "arrow":
            if Q is None:
                raise ValueError("arrow before vertex line")
            m = re.match(r"^(\w+)\s*:\s*(\w+)\s*->\s*(\w+)(?:\s+deg\s+(-?\d+))?$", rest)
            if not m:
                raise ValueError(f"bad arrow line: {raw!r}")
            Q.add_arrow(m.group(1), m.group(2), m.group(3), int(m.group(4) or 0))
        elif kw == "rel":
            lhs, _, rhs = rest.partition("=")
            rels_raw.append((lhs, rhs or "0"))
        else:
            raise ValueError(f"unknown line: {raw!r}")
    if Q is None:
        raise ValueError("no vertex line")
    rels = []
    for lhs, rhs in rels_raw:
        acc: dict[PathWord, Raw] = {}
        for w, c in _parse_combo(Q, lhs, field):
            _add(acc, w, c, field)
        for w, c in _parse_combo(Q, rhs, field):
            _add(acc, w, field.neg(c), field)
        rels.append(acc)
    return Q, rels


def _parse_combo(Q: Quiver, text: str, field: Field) -> list[tuple[PathWord, Raw]]:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return []
    out = []
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
        factors = body.split("*")
        coeff = field.one
        arrows = []
        for f in factors:
            if f in Q.arrows:
                arrows.append(f)
            else:
                coeff = field.mul(coeff, field.convert(_number(f)))
        if sign == "-":
            coeff = field.neg(coeff)
        w = path(Q, arrows)
        if w is None:
            raise ValueError(f"not a path: {body}")
        out.append((w, coeff))
    return out


def _number(tok: str):
    from fractions import Fraction
    return Fraction(tok)
