"""Exact ground fields: Q, Q(sqrt 2) and F2(t1, t2, t3).

Elements are plain Python objects with the usual arithmetic operators:

* ``Q``      -- :class:`gmpy2.mpq`
* ``QSQRT2`` -- :class:`QSqrt2Element`, ``u + v*sqrt(2)`` with rational ``u, v``
* ``F2T``    -- :class:`F2Rational`, a reduced quotient of polynomials over GF(2)

Each field is described by a :class:`Field` instance which knows how to build
constants, draw random elements and serialize to JSON.
"""

from __future__ import annotations

import random
from functools import cached_property

import flint
from gmpy2 import mpq

_MPQ = type(mpq(0))

__all__ = [
    "DivisionByZero",
    "UnsupportedField",
    "Field",
    "Q",
    "QSQRT2",
    "F2T",
    "FIELDS",
    "QSqrt2Element",
    "F2Rational",
    "field_of",
    "invert",
    "galois_conjugate",
    "canonicalize",
]


class DivisionByZero(ZeroDivisionError):
    pass


class UnsupportedField(TypeError):
    pass


# ---------------------------------------------------------------------------
# Q(sqrt 2)


class QSqrt2Element:
    """``u + v*sqrt(2)`` with ``u, v`` rational."""

    __slots__ = ("u", "v")

    def __init__(self, u=0, v=0):
        self.u = mpq(u)
        self.v = mpq(v)

    @classmethod
    def _raw(cls, u, v):
        # u, v are already mpq
        x = object.__new__(cls)
        x.u = u
        x.v = v
        return x

    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt2Element):
            return other
        if isinstance(other, (int, _MPQ)):
            return QSqrt2Element(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSqrt2Element._raw(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSqrt2Element._raw(self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return QSqrt2Element._raw(-self.u, -self.v)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSqrt2Element._raw(
            self.u * other.u + 2 * self.v * other.v,
            self.u * other.v + self.v * other.u,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.u * self.u - 2 * self.v * self.v
        if not n:
            raise DivisionByZero("inverse of zero in Q(sqrt 2)")
        return QSqrt2Element._raw(self.u / n, -self.v / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def conjugate(self):
        return QSqrt2Element._raw(self.u, -self.v)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        if not self.v:
            return hash(self.u)
        return hash((self.u, self.v))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __repr__(self):
        if not self.v:
            return str(self.u)
        return f"({self.u}+{self.v}*sqrt2)"


# ---------------------------------------------------------------------------
# F2(t1, t2, t3)

_F2CTX = flint.nmod_mpoly_ctx.get(("t1", "t2", "t3"), modulus=2)
_PZERO = _F2CTX.from_dict({})
_PONE = _F2CTX.from_dict({(0, 0, 0): 1})


class F2Rational:
    """Reduced quotient ``num/den`` of polynomials over GF(2) in t1, t2, t3.

    Over GF(2) the only unit is 1, so ``gcd(num, den) == 1`` already pins a
    unique representative; zero is stored as ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced=False):
        if den is None:
            den = _PONE
        if den.is_zero():
            raise DivisionByZero("zero denominator in F2(t1,t2,t3)")
        if num.is_zero():
            num, den = _PZERO, _PONE
        elif not reduced and not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        self.num = num
        self.den = den

    @classmethod
    def from_monomials(cls, num, den=((0, 0, 0),)):
        """Build from exponent-vector lists (coefficient 1 each, repeats cancel)."""
        return cls(_poly_from_monomials(num), _poly_from_monomials(den))

    @staticmethod
    def _coerce(other):
        if isinstance(other, F2Rational):
            return other
        if isinstance(other, int):
            return F2Rational(_PONE if other % 2 else _PZERO)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return F2Rational(self.num + other.num, self.den)
        if self.den.is_one():
            return F2Rational(self.num * other.den + other.num, other.den, reduced=True)
        if other.den.is_one():
            return F2Rational(self.num + other.num * self.den, self.den, reduced=True)
        return F2Rational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return F2T.zero
        if self.den.is_one() and other.den.is_one():
            return F2Rational(self.num * other.num, _PONE, reduced=True)
        return F2Rational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in F2(t1,t2,t3)")
        return F2Rational(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        if self.den.is_one():
            return f"({self.num})"
        return f"({self.num})/({self.den})"


def _poly_from_monomials(monos):
    d = {}
    for m in monos:
        m = tuple(int(e) for e in m)
        d[m] = (d.get(m, 0) + 1) % 2
    return _F2CTX.from_dict({m: 1 for m, c in d.items() if c})


def _poly_monomials(p):
    return sorted([int(e) for e in m] for m in p.monoms())


# ---------------------------------------------------------------------------
# field descriptors


class Field:
    """Descriptor of one of the three ground fields."""

    kind: str
    name: str
    characteristic: int
    variables: tuple[str, ...] = ()

    def __repr__(self):
        return f"<Field {self.name}>"

    def __reduce__(self):
        return (_field_by_name, (self.name,))

    @cached_property
    def zero(self):
        return self.from_int(0)

    @cached_property
    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def random(self, rng: random.Random, height: int = 10):
        raise NotImplementedError

    def random_nonzero(self, rng, height=10):
        while True:
            x = self.random(rng, height)
            if x:
                return x

    def to_json(self, x):
        raise NotImplementedError

    def from_json(self, obj):
        raise NotImplementedError

    def half(self):
        if self.characteristic == 2:
            raise DivisionByZero("2 is not invertible in characteristic 2")
        return self.one / self.from_int(2)


class _Rationals(Field):
    kind = "Rationals"
    name = "q"
    characteristic = 0

    def from_int(self, n):
        return mpq(n)

    def contains(self, x):
        return type(x) is _MPQ

    def random(self, rng, height=10):
        return mpq(rng.randint(-height, height), rng.randint(1, height))

    def to_json(self, x):
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, obj):
        return mpq(obj)

    def canonical(self, x):
        return mpq(x.numerator, x.denominator)


class _RealQuadratic(Field):
    kind = "RealQuadratic"
    name = "qsqrt2"
    characteristic = 0

    def from_int(self, n):
        return QSqrt2Element(n, 0)

    @cached_property
    def sqrt2(self):
        return QSqrt2Element(0, 1)

    def contains(self, x):
        return isinstance(x, QSqrt2Element)

    def random(self, rng, height=10):
        return QSqrt2Element(Q.random(rng, height), Q.random(rng, height))

    def to_json(self, x):
        return [Q.to_json(x.u), Q.to_json(x.v)]

    def from_json(self, obj):
        u, v = obj
        return QSqrt2Element(mpq(u), mpq(v))

    def canonical(self, x):
        return QSqrt2Element(Q.canonical(x.u), Q.canonical(x.v))


class _Char2Function(Field):
    kind = "Char2Function"
    name = "f2t"
    characteristic = 2
    variables = ("t1", "t2", "t3")

    def from_int(self, n):
        return F2Rational(_PONE if n % 2 else _PZERO)

    def gen(self, i):
        """The indeterminate ``t_{i+1}``."""
        return F2Rational(_F2CTX.gens()[i])

    def contains(self, x):
        return isinstance(x, F2Rational)

    def random_poly(self, rng, degree=2, terms=4):
        monos = [
            (a, b, c)
            for a in range(degree + 1)
            for b in range(degree + 1 - a)
            for c in range(degree + 1 - a - b)
        ]
        k = rng.randint(0, terms)
        return _F2CTX.from_dict({m: 1 for m in rng.sample(monos, k)})

    def random_nonzero_poly(self, rng, degree=2, terms=4):
        while True:
            p = self.random_poly(rng, degree, terms)
            if not p.is_zero():
                return p

    def random(self, rng, height=10):
        # height is meaningless here; degree <= 2 and <= 4 monomials
        return F2Rational(self.random_poly(rng), self.random_nonzero_poly(rng))

    def to_json(self, x):
        return {"num": _poly_monomials(x.num), "den": _poly_monomials(x.den)}

    def from_json(self, obj):
        return F2Rational(_poly_from_monomials(obj["num"]), _poly_from_monomials(obj["den"]))

    def canonical(self, x):
        return F2Rational(x.num, x.den)


Q = _Rationals()
QSQRT2 = _RealQuadratic()
F2T = _Char2Function()
FIELDS = {f.name: f for f in (Q, QSQRT2, F2T)}


def _field_by_name(name):
    return FIELDS[name]


def field_of(x) -> Field:
    if isinstance(x, QSqrt2Element):
        return QSQRT2
    if isinstance(x, F2Rational):
        return F2T
    if isinstance(x, (int, _MPQ)):
        return Q
    raise UnsupportedField(f"not a field element: {x!r}")


def invert(x):
    """Multiplicative inverse; raises :class:`DivisionByZero` on zero."""
    if not x:
        raise DivisionByZero("inverse of zero")
    if isinstance(x, (QSqrt2Element, F2Rational)):
        return x.inverse()
    return mpq(1) / mpq(x)


def galois_conjugate(x):
    """The non-trivial automorphism sqrt(2) -> -sqrt(2) of Q(sqrt 2)."""
    if not isinstance(x, QSqrt2Element):
        raise UnsupportedField(f"no Galois involution on {field_of(x).name}")
    return x.conjugate()


def canonicalize(x):
    return field_of(x).canonical(x)

