"""Exact scalars and exact linear algebra over Q and GF(p).

Two layers live here.  ``Scalar`` is the user-facing value type with a field
tag, which refuses to mix fields.  ``Field`` objects do arithmetic on raw
values (``int``/``Fraction`` for Q, ``int`` residues for GF(p)) and are what
the polynomial and cochain code uses in inner loops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Raw = Union[int, Fraction]

MAX_MODULUS = 1 << 61


class FieldMismatchError(ValueError):
    """Raised when values from different fields meet in one operation."""


def _q_norm(x: Raw) -> Raw:
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Arithmetic on raw coefficient values."""

    characteristic: int = 0
    name: str = "?"

    zero: Raw = 0
    one: Raw = 1

    def convert(self, x) -> Raw:
        raise NotImplementedError

    def add(self, a: Raw, b: Raw) -> Raw:
        raise NotImplementedError

    def sub(self, a: Raw, b: Raw) -> Raw:
        raise NotImplementedError

    def mul(self, a: Raw, b: Raw) -> Raw:
        raise NotImplementedError

    def neg(self, a: Raw) -> Raw:
        raise NotImplementedError

    def inv(self, a: Raw) -> Raw:
        raise NotImplementedError

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def random_element(self, rng: random.Random, bound: int = 10) -> Raw:
        raise NotImplementedError

    def to_scalar(self, a: Raw) -> "Scalar":
        raise NotImplementedError

    def format(self, a: Raw) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<Field {self.name}>"


class RationalField(Field):
    characteristic = 0
    name = "Q"

    def convert(self, x) -> Raw:
        if isinstance(x, Scalar):
            if x.modulus is not None:
                raise FieldMismatchError(f"cannot read {x} as a rational")
            return _q_norm(x.value)
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return _q_norm(x)
        if isinstance(x, str):
            return parse_scalar(x, self).value if "mod" in x else _q_norm(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to Q")

    def add(self, a, b):
        r = a + b
        return r.numerator if type(r) is Fraction and r.denominator == 1 else r

    def sub(self, a, b):
        r = a - b
        return r.numerator if type(r) is Fraction and r.denominator == 1 else r

    def mul(self, a, b):
        r = a * b
        return r.numerator if type(r) is Fraction and r.denominator == 1 else r

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if a == 1 or a == -1:
            return a
        return _q_norm(Fraction(1) / a)

    def div(self, a, b):
        if b == 1:
            return a
        if b == -1:
            return -a
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return _q_norm(Fraction(a) / b)

    def random_element(self, rng, bound=10):
        return rng.randint(-bound, bound)

    def to_scalar(self, a):
        return Scalar(Fraction(a))

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if not (2 <= p < MAX_MODULUS) or not is_probable_prime(p):
            raise ValueError(f"modulus {p} is not a prime below 2^61")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"

    def convert(self, x) -> int:
        p = self.p
        if isinstance(x, Scalar):
            if x.modulus is None:
                return self.convert(x.value)
            if x.modulus != p:
                raise FieldMismatchError(f"cannot read {x} in GF({p})")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            if "mod" in x:
                return self.convert(parse_scalar(x))
            return self.convert(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to GF({p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def random_element(self, rng, bound=None):
        return rng.randrange(self.p)

    def to_scalar(self, a):
        return Scalar(a % self.p, self.p)

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse ``Q`` or ``Fp:<p>``."""
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown field {name!r}; expected Q or Fp:<p>")


@dataclass(frozen=True)
class Scalar:
    """An exact field element.  ``modulus`` is None for rationals."""

    value: Raw
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is None:
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", Fraction(self.value))
        else:
            if not (2 <= self.modulus < MAX_MODULUS):
                raise ValueError(f"modulus {self.modulus} out of range")
            object.__setattr__(self, "value", int(self.value) % self.modulus)

    @property
    def field(self) -> Field:
        return QQ if self.modulus is None else GF(self.modulus)

    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.modulus != self.modulus:
                raise FieldMismatchError(f"{self} and {other} live in different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field.convert(other), self.modulus)
        return NotImplemented

    def _wrap(self, raw) -> "Scalar":
        return Scalar(raw, self.modulus)

    def __add__(self, other):
        o = self._other(other)
        return self._wrap(self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(o.value, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return self._wrap(self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return self._wrap(self.field.div(self.value, o.value))

    def __rtruediv__(self, other):
        o = self._other(other)
        return self._wrap(self.field.div(o.value, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def serialize(self) -> str:
        if self.modulus is None:
            return f"{self.value.numerator}/{self.value.denominator}"
        return f"{self.value} mod {self.modulus}"

    def __str__(self) -> str:
        return self.serialize()


def parse_scalar(text: str, field: Field | None = None) -> Scalar:
    """Parse ``num/den``, an integer, or ``r mod p``; optionally coerce to ``field``."""
    text = text.strip()
    if " mod " in text:
        r, p = text.split(" mod ")
        s = Scalar(int(r), int(p))
    else:
        s = Scalar(Fraction(text))
    if field is None:
        return s
    return field.to_scalar(field.convert(s))


# ---------------------------------------------------------------- dense algebra


def _to_field_rows(rows: Sequence[Sequence], field: Field) -> list[list[Raw]]:
    return [[field.convert(x) for x in row] for row in rows]


def rank_and_kernel(rows: Sequence[Sequence], field: Field = QQ) -> tuple[int, list[list[Raw]]]:
    """Rank of the matrix and a basis of its right kernel, via Gauss-Jordan."""
    m = _to_field_rows(rows, field)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(m[i][fc])
        kernel.append(v)
    return len(pivots), kernel


def bareiss_rank(rows: Sequence[Sequence[Raw]]) -> int:
    """Fraction-free rank over Q.  Rows are cleared to integers first."""
    m: list[list[int]] = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // _gcd(den, x.denominator)
        m.append([int(x * den) for x in fr])
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            mi_new = mi[:]
            for j in range(c, ncols):
                mi_new[j] = (p * mi[j] - f * m[r][j]) // prev
            m[i] = mi_new
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def matrix_rank(rows: Sequence[Sequence], field: Field = QQ) -> int:
    if isinstance(field, RationalField):
        return bareiss_rank(_to_field_rows(rows, field))
    return rank_and_kernel(rows, field)[0]


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, field: Field = QQ) -> list[Raw] | None:
    """One solution of ``rows @ x = rhs`` or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m = _to_field_rows(aug, field)
    ncols = len(m[0]) - 1 if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


# ---------------------------------------------------------------- sparse algebra


class SparseEchelon:
    """Incremental row echelon form over a field for sparse rows.

    Rows are dicts ``column -> value``.  Each stored row has pivot value one
    at its smallest column; ``add`` reduces an incoming row against them.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict[int, Raw]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict[int, Raw]) -> dict[int, Raw]:
        F = self.field
        row = {c: v for c, v in row.items() if v != 0}
        done: dict[int, Raw] = {}
        while row:
            c = min(row)
            piv = self.rows.get(c)
            if piv is None:
                done[c] = row.pop(c)
                continue
            f = row[c]
            for cc, vv in piv.items():
                nv = F.sub(row.get(cc, 0), F.mul(f, vv))
                if nv == 0:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
        return done

    def add(self, row: dict[int, Raw]) -> bool:
        """Insert a row; return True if it increased the rank."""
        red = self.reduce(row)
        if not red:
            return False
        c = min(red)
        inv = self.field.inv(red[c])
        self.rows[c] = {cc: self.field.mul(v, inv) for cc, v in red.items()}
        return True


def sparse_rank(rows: Iterable[dict[int, Raw]], field: Field) -> int:
    ech = SparseEchelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank


def random_matrix(nrows: int, ncols: int, rng: random.Random, bound: int = 5) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)]
