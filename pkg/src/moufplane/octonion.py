"""Octonion division algebras built by Cayley-Dickson doubling.

Two constructions are provided:

* characteristic 0: three doublings of the ground field with parameters
  ``mu = (mu1, mu2, mu3)``; the default ``(-1, -1, -1)`` gives the norm
  ``sum x_i**2``.
* characteristic 2: start from the separable quadratic algebra
  ``k[x]/(x^2 + x + alpha)`` and double by ``beta`` then ``gamma``.  With the
  defaults ``alpha, beta, gamma = t1, t2, t3`` the basis
  ``e0..e7 = e, x, j, xj, l, xl, jl, (xj)l`` is a symplectic basis.

The doubling rule is ``(a, b)(c, d) = (ac + mu d~ b, da + b c~)`` and the
conjugate of ``(a, b)`` is ``(a~, -b)``.

The multiplication kernel is compiled from the structure-constant table so
that products cost one pass of field operations; :mod:`moufplane.oracle`
keeps an independent nested-pair implementation to check it against.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import linalg
from .fields import F2T, Field, FIELDS, DivisionByZero, galois_conjugate

__all__ = [
    "AlgebraMismatch",
    "NormIsotropic",
    "SingularFrame",
    "IncompatibleField",
    "Algebra",
    "Octonion",
    "SubalgebraFrame",
    "Eta",
    "default_algebra",
    "quaternion_frame",
    "singular_frame",
    "make_eta",
    "multiply",
    "conjugate",
    "quadratic_data",
    "inverse",
    "eta_apply",
    "decompose",
    "bilinear",
]


class AlgebraMismatch(ValueError):
    pass


class NormIsotropic(ArithmeticError):
    """A nonzero element of norm zero: the algebra is not a division algebra."""


class IncompatibleField(ValueError):
    """The requested construction does not exist over this field."""


class SingularFrame(ValueError):
    pass


# ---------------------------------------------------------------------------
# structure constants


def _lin_mul(u, v, table):
    """Product of two sparse vectors ``{index: coeff}`` using ``table``."""
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in table[i][j].items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: c for k, c in out.items() if c}


def _lin_conj(u, conj):
    out = {}
    for i, a in u.items():
        for k, c in conj[i].items():
            out[k] = out.get(k, 0) + a * c
    return {k: c for k, c in out.items() if c}


def _double(table, conj, mu):
    """Cayley-Dickson double of an algebra given by basis tables."""
    n = len(table)

    def hi(u):
        return {k + n: c for k, c in u.items()}

    new = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(2 * n):
        for j in range(2 * n):
            a = {i: 1} if i < n else {}
            b = {i - n: 1} if i >= n else {}
            c = {j: 1} if j < n else {}
            d = {j - n: 1} if j >= n else {}
            first = _lin_mul(a, c, table)
            for k, v in _lin_mul(_lin_conj(d, conj), b, table).items():
                first[k] = first.get(k, 0) + mu * v
            second = _lin_mul(d, a, table)
            for k, v in _lin_mul(b, _lin_conj(c, conj), table).items():
                second[k] = second.get(k, 0) + v
            prod = {k: v for k, v in first.items() if v}
            prod.update(hi({k: v for k, v in second.items() if v}))
            new[i][j] = prod
    newconj = [dict(conj[i]) for i in range(n)] + [{i + n: -1} for i in range(n)]
    return new, newconj


def _build_table(base_table, base_conj, mus):
    table, conj = base_table, base_conj
    for mu in mus:
        table, conj = _double(table, conj, mu)
    return table, conj


# ---------------------------------------------------------------------------
# algebra descriptor


class Algebra:
    """An octonion algebra over one of the ground fields.

    ``construction`` is ``"CayleyDickson0"`` (params ``mu1, mu2, mu3``) or
    ``"CayleyDickson2"`` (params ``alpha, beta, gamma``).
    """

    def __init__(self, field: Field, construction: str, params):
        self.field = field
        self.construction = construction
        self.params = tuple(params)
        if any(not p for p in self.params):
            raise ValueError("doubling parameters must be nonzero")
        one = field.one
        if construction == "CayleyDickson0":
            if field.characteristic == 2:
                raise ValueError("CayleyDickson0 needs characteristic 0")
            base = [[{0: one}]]
            bconj = [{0: one}]
            mus = self.params
        elif construction == "CayleyDickson2":
            if field.characteristic != 2:
                raise ValueError("CayleyDickson2 needs characteristic 2")
            alpha, beta, gamma = self.params
            # k[x]/(x^2 + x + alpha): x*x = -alpha - x, conj(x) = 1 - x
            base = [
                [{0: one}, {1: one}],
                [{1: one}, {0: -alpha, 1: -one}],
            ]
            bconj = [{0: one}, {0: one, 1: -one}]
            mus = (beta, gamma)
        else:
            raise ValueError(f"unknown construction {construction!r}")
        table, conj = _build_table(base, bconj, mus)
        zero = field.zero
        lift = lambda c: field.from_int(c) if isinstance(c, int) else c
        self.table = [[{k: lift(c) for k, c in cell.items() if c != zero} for cell in row] for row in table]
        self.conj_table = [{k: lift(c) for k, c in cell.items()} for cell in conj]
        self._trace_vec = self._compute_trace_vec()
        self._norm_form = self._compute_norm_form()
        self._mul, self._norm = _compile(self.table, self._norm_form, field)
        self.dim = 8
        self.key = (field.name, construction, tuple(map(repr, self.params)))

    def __repr__(self):
        return f"<Algebra {self.construction} over {self.field.name} {self.params}>"

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __reduce__(self):
        return (Algebra, (self.field, self.construction, self.params))

    # -- construction helpers

    def _compute_trace_vec(self):
        # T(e_i) = e0-coefficient of e_i + conj(e_i)
        out = []
        for i in range(8):
            t = self.field.zero
            if i == 0:
                t = t + self.field.one
            t = t + self.conj_table[i].get(0, self.field.zero)
            out.append(t)
        return tuple(out)

    def _compute_norm_form(self):
        # N(x) = e0-coefficient of x * conj(x); collect q[i, j] for i <= j
        f = self.field
        form = {}
        for i in range(8):
            for j in range(8):
                # e_i * conj(e_j)
                acc = f.zero
                for jj, c in self.conj_table[j].items():
                    acc = acc + c * self.table[i][jj].get(0, f.zero)
                if acc:
                    key = (min(i, j), max(i, j))
                    form[key] = form.get(key, f.zero) + acc
        return {k: v for k, v in form.items() if v}

    # -- elements

    def element(self, coords) -> "Octonion":
        coords = tuple(coords)
        if len(coords) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return Octonion(coords, self)

    def scalar(self, s) -> "Octonion":
        z = self.field.zero
        return Octonion((s, z, z, z, z, z, z, z), self)

    def basis(self, i) -> "Octonion":
        f = self.field
        return Octonion(tuple(f.one if k == i else f.zero for k in range(8)), self)

    @property
    def zero(self):
        return Octonion((self.field.zero,) * 8, self)

    @property
    def one(self):
        return self.scalar(self.field.one)

    def random(self, rng, height: int = 10) -> "Octonion":
        """Eight random coordinates.

        Over F2(t1,t2,t3) the coordinates share one random denominator, which
        keeps degrees of iterated products small.
        """
        f = self.field
        if f is F2T:
            from .fields import F2Rational

            den = f.random_nonzero_poly(rng)
            return Octonion(tuple(F2Rational(f.random_poly(rng), den) for _ in range(8)), self)
        return Octonion(tuple(f.random(rng, height) for _ in range(8)), self)

    def random_nonzero(self, rng, height=10):
        while True:
            x = self.random(rng, height)
            if x:
                return x

    def structure_csv(self) -> str:
        """Structure constants as CSV: row e_i, column e_j.

        Each cell is a signed basis label such as ``-e3`` when ``e_i e_j = -e3``;
        products with other coefficients are written as ``coeff*e_k`` terms
        joined by ``+``.
        """
        f = self.field
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [f"e{j}" for j in range(8)])
        for i in range(8):
            row = [f"e{i}"]
            for j in range(8):
                cell = self.table[i][j]
                if len(cell) == 1:
                    (k, c), = cell.items()
                    if c == f.one:
                        row.append(f"e{k}")
                        continue
                    if c == -f.one:
                        row.append(f"-e{k}")
                        continue
                row.append("+".join(f"{c!r}*e{k}" for k, c in sorted(cell.items())) or "0")
            w.writerow(row)
        return buf.getvalue()


def _mul_source(table, const_of, unit):
    """Python source of the product kernel plus its named constants.

    ``const_of`` maps a table coefficient to the object used in the kernel and
    ``unit`` tells which coefficients are +1.
    """
    consts = {}
    lines = ["def mul(x, y):", "    x0, x1, x2, x3, x4, x5, x6, x7 = x", "    y0, y1, y2, y3, y4, y5, y6, y7 = y"]
    out_terms = [dict() for _ in range(8)]
    for i in range(8):
        for j in range(8):
            for k, c in table[i][j].items():
                out_terms[k].setdefault(repr(c), (c, []))[1].append(f"x{i}*y{j}")
    exprs = []
    for k in range(8):
        parts = []
        for _, (c, terms) in out_terms[k].items():
            s = " + ".join(terms)
            if unit(c):
                parts.append(f"+ ({s})")
            elif unit(-c):
                parts.append(f"- ({s})")
            else:
                name = f"c{len(consts)}"
                consts[name] = const_of(c)
                parts.append(f"+ {name}*({s})")
        body = " ".join(parts) if parts else "+ zero"
        body = body[2:] if body.startswith("+ ") else "zero " + body
        exprs.append(body)
    lines.append("    return (" + ",\n            ".join(exprs) + ")")
    return "\n".join(lines), consts


def _norm_source(form, const_of, unit):
    consts = {}
    parts = []
    for (i, j), c in sorted(form.items()):
        term = f"x{i}*x{j}"
        if unit(c):
            parts.append(term)
        else:
            name = f"c{len(consts)}"
            consts[name] = const_of(c)
            parts.append(f"{name}*{term}")
    return "def norm(x):\n    x0, x1, x2, x3, x4, x5, x6, x7 = x\n    return " + " + ".join(parts), consts


def _exec(src, consts, name, zero):
    ns = dict(consts, zero=zero)
    exec(src, ns)
    return ns[name]


def _compile_generic(table, form, field):
    one = field.one
    unit = lambda c: c == one  # noqa: E731
    ident = lambda c: c  # noqa: E731
    mul = _exec(*_mul_source(table, ident, unit), "mul", field.zero)
    norm = _exec(*_norm_source(form, ident, unit), "norm", field.zero)
    return mul, norm


def _compile_qsqrt2(table, form, field):
    # x = X + sqrt2 Y with rational X, Y; three rational products per product
    if any(c.v for row in table for cell in row for c in cell.values()):
        return _compile_generic(table, form, field)
    from gmpy2 import mpq

    from .fields import QSqrt2Element

    rat = lambda c: c.u  # noqa: E731
    unit = lambda c: c.u == 1  # noqa: E731
    rmul = _exec(*_mul_source(table, rat, unit), "mul", mpq(0))
    rnorm_src, rnorm_consts = _norm_source(form, rat, unit)
    rnorm = _exec(rnorm_src, rnorm_consts, "norm", mpq(0))
    bil_src = rnorm_src.replace("def norm(x):", "def bil(x, y):").replace(
        "    x0, x1, x2, x3, x4, x5, x6, x7 = x", "    x0, x1, x2, x3, x4, x5, x6, x7 = x\n    y0, y1, y2, y3, y4, y5, y6, y7 = y"
    )
    # polar form of the norm: sum c (x_i y_j + x_j y_i)
    import re

    bil_src = re.sub(r"x(\d)\*x(\d)", r"(x\1*y\2 + y\1*x\2)", bil_src)
    rbil = _exec(bil_src, rnorm_consts, "bil", mpq(0))

    raw = QSqrt2Element._raw

    def split(x):
        return tuple(a.u for a in x), tuple(a.v for a in x)

    def mul(x, y):
        xu, xv = split(x)
        yu, yv = split(y)
        p = rmul(xu, yu)
        r = rmul(xv, yv)
        s = rmul(tuple(a + b for a, b in zip(xu, xv)), tuple(a + b for a, b in zip(yu, yv)))
        return tuple(raw(a + 2 * b, c - a - b) for a, b, c in zip(p, r, s))

    def norm(x):
        xu, xv = split(x)
        # N(X + sqrt2 Y) = N(X) + 2 N(Y) + sqrt2 <X, Y>
        return raw(rnorm(xu) + 2 * rnorm(xv), rbil(xu, xv))

    return mul, norm


def _compile_f2t(table, form, field):
    # common denominator: multiply numerators as polynomials, reduce once
    consts = [c for row in table for cell in row for c in cell.values()] + list(form.values())
    if any(not c.den.is_one() for c in consts):
        return _compile_generic(table, form, field)
    from .fields import _PZERO, F2Rational

    poly = lambda c: c.num  # noqa: E731
    unit = lambda c: c.num.is_one()  # noqa: E731
    pmul = _exec(*_mul_source(table, poly, unit), "mul", _PZERO)
    pnorm = _exec(*_norm_source(form, poly, unit), "norm", _PZERO)

    def common(x):
        d = x[0].den
        for a in x[1:]:
            e = a.den
            if e != d and not e.is_one():
                if d.is_one():
                    d = e
                else:
                    g = d.gcd(e)
                    d = d * (e / g) if not g.is_one() else d * e
        if d.is_one():
            return tuple(a.num for a in x), d
        return tuple(a.num if a.den == d else a.num * (d / a.den) for a in x), d

    def mul(x, y):
        nx, dx = common(x)
        ny, dy = common(y)
        d = dx * dy
        return tuple(F2Rational(n, d) for n in pmul(nx, ny))

    def norm(x):
        nx, dx = common(x)
        return F2Rational(pnorm(nx), dx * dx)

    return mul, norm


def _compile(table, form, field):
    if field.kind == "RealQuadratic":
        return _compile_qsqrt2(table, form, field)
    if field.kind == "Char2Function":
        return _compile_f2t(table, form, field)
    return _compile_generic(table, form, field)


@lru_cache(maxsize=None)
def default_algebra(field: Field | str) -> Algebra:
    """The fixed division algebra used for each ground field."""
    if isinstance(field, str):
        field = FIELDS[field]
    if field.characteristic == 2:
        return Algebra(field, "CayleyDickson2", (field.gen(0), field.gen(1), field.gen(2)))
    m = -field.one
    return Algebra(field, "CayleyDickson0", (m, m, m))


# ---------------------------------------------------------------------------
# elements


class Octonion:
    __slots__ = ("c", "alg")

    def __init__(self, coords, alg: Algebra):
        self.c = coords
        self.alg = alg

    def _check(self, other):
        if other.alg is not self.alg and other.alg != self.alg:
            raise AlgebraMismatch(f"{self.alg!r} vs {other.alg!r}")

    def __add__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        self._check(other)
        return Octonion(tuple(a + b for a, b in zip(self.c, other.c)), self.alg)

    def __sub__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        self._check(other)
        return Octonion(tuple(a - b for a, b in zip(self.c, other.c)), self.alg)

    def __neg__(self):
        return Octonion(tuple(-a for a in self.c), self.alg)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            self._check(other)
            return Octonion(self.alg._mul(self.c, other.c), self.alg)
        return Octonion(tuple(a * other for a in self.c), self.alg)

    def __rmul__(self, scalar):
        return Octonion(tuple(scalar * a for a in self.c), self.alg)

    def __truediv__(self, other):
        if isinstance(other, Octonion):
            return self * other.inverse()
        return self * (self.alg.field.one / other)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.c == other.c and (self.alg is other.alg or self.alg == other.alg)

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        terms = [f"{a!r}*e{i}" for i, a in enumerate(self.c) if a]
        return "Oct(" + (" + ".join(terms) or "0") + ")"

    def trace(self):
        acc = self.alg.field.zero
        for a, t in zip(self.c, self.alg._trace_vec):
            if t and a:
                acc = acc + t * a
        return acc

    def norm(self):
        return self.alg._norm(self.c)

    def conj(self):
        t = self.trace()
        c = self.c
        return Octonion((t - c[0],) + tuple(-a for a in c[1:]), self.alg)

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of the zero octonion")
        n = self.norm()
        if not n:
            raise NormIsotropic(f"nonzero octonion of norm 0: {self!r}")
        inv = self.alg.field.one / n
        return Octonion(tuple(a * inv for a in self.conj().c), self.alg)

    def is_scalar(self):
        return not any(self.c[1:])

    def scalar_part(self):
        return self.c[0]

    def to_json(self):
        f = self.alg.field
        return {"alg": self.alg.field.name, "c": [f.to_json(a) for a in self.c]}


def multiply(x: Octonion, y: Octonion) -> Octonion:
    return x * y


def conjugate(x: Octonion) -> Octonion:
    return x.conj()


def quadratic_data(x: Octonion):
    """``(N(x), T(x))`` as field scalars."""
    return x.norm(), x.trace()


def inverse(x: Octonion) -> Octonion:
    return x.inverse()


def bilinear(x: Octonion, y: Octonion):
    """Polar form ``<x, y> = N(x + y) - N(x) - N(y)`` (equals ``T(x conj(y))``)."""
    return (x + y).norm() - x.norm() - y.norm()


def octonion_from_json(obj) -> Octonion:
    f = FIELDS[obj["alg"]]
    return default_algebra(f).element(f.from_json(a) for a in obj["c"])


# ---------------------------------------------------------------------------
# subalgebra frames


@dataclass(frozen=True, eq=False)
class SubalgebraFrame:
    """A 4-dimensional subalgebra ``D`` plus a complement generator.

    ``kind == "quaternion_perp"``: ``O = D + c D`` with ``c`` in ``D^perp``
    and ``beta = N(c)``.  ``kind == "totally_singular"``: ``O = D + D z``
    with ``T(z) = 1`` (characteristic 2 only).
    """

    kind: str
    d_basis: tuple
    gen: Octonion
    beta: object = None
    _inv: list = dc_field(default=None, repr=False)

    def __post_init__(self):
        cols = list(self.d_basis) + [self._outer(d) for d in self.d_basis]
        alg = self.gen.alg
        mat = [[cols[j].c[i] for j in range(8)] for i in range(8)]
        try:
            inv = linalg.inverse(mat, alg.field)
        except linalg.SingularMatrix as exc:
            raise SingularFrame("frame vectors do not span O") from exc
        object.__setattr__(self, "_inv", inv)
        object.__setattr__(self, "_cols", cols)

    @property
    def alg(self):
        return self.gen.alg

    def _outer(self, d):
        return self.gen * d if self.kind == "quaternion_perp" else d * self.gen

    def coordinates(self, x: Octonion):
        """Coordinates of ``x`` in the frame basis ``(D-basis, outer D-basis)``."""
        return linalg.matvec(self._inv, list(x.c), self.alg.field)

    def from_d(self, coords4) -> Octonion:
        alg = self.alg
        acc = alg.zero
        for a, d in zip(coords4, self.d_basis):
            if a:
                acc = acc + a * d
        return acc

    def to_d(self, x: Octonion):
        """Coordinates of an element of ``D`` in the D-basis."""
        co = self.coordinates(x)
        if any(co[4:]):
            raise ValueError("element is not in D")
        return co[:4]

    def decompose(self, x: Octonion):
        co = self.coordinates(x)
        return self.from_d(co[:4]), self.from_d(co[4:])

    def compose(self, x1: Octonion, x2: Octonion) -> Octonion:
        return x1 + self._outer(x2)

    def in_d(self, x: Octonion) -> bool:
        return not any(self.coordinates(x)[4:])


def decompose(x: Octonion, frame: SubalgebraFrame):
    """``(x1, x2)`` with ``x = x1 + c x2`` (resp. ``x1 + x2 z``), ``x1, x2`` in D."""
    return frame.decompose(x)


@lru_cache(maxsize=None)
def quaternion_frame(alg: Algebra) -> SubalgebraFrame:
    """``D = span(e0..e3)``, ``c = e4``, ``beta = N(e4)``."""
    c = alg.basis(4)
    return SubalgebraFrame("quaternion_perp", tuple(alg.basis(i) for i in range(4)), c, c.norm())


@lru_cache(maxsize=None)
def singular_frame(alg: Algebra) -> SubalgebraFrame:
    """``D = span(e, j, l, jl) = span(e0, e2, e4, e6)`` and ``z = e1``."""
    if alg.field.characteristic != 2:
        raise IncompatibleField("a totally singular frame needs characteristic 2")
    return SubalgebraFrame("totally_singular", tuple(alg.basis(i) for i in (0, 2, 4, 6)), alg.basis(1))


# ---------------------------------------------------------------------------
# the automorphisms eta


@dataclass(frozen=True, eq=False)
class Eta:
    """Involutive automorphism driving a polarity of type I, II, III or IV."""

    kind: str
    alg: Algebra
    frame: SubalgebraFrame | None = None
    matrix: list | None = dc_field(default=None, repr=False)

    @property
    def linear(self) -> bool:
        return self.kind != "II"

    def __call__(self, x: Octonion) -> Octonion:
        if x.alg is not self.alg and x.alg != self.alg:
            raise AlgebraMismatch("eta applied outside its algebra")
        if self.kind == "I":
            return x
        if self.kind == "II":
            return Octonion(tuple(galois_conjugate(a) for a in x.c), x.alg)
        return Octonion(tuple(linalg.matvec(self.matrix, list(x.c), self.alg.field)), x.alg)

    def scalar(self, s):
        """Action on the centre (only type II moves scalars)."""
        return galois_conjugate(s) if self.kind == "II" else s


def _frame_eta_matrix(frame: SubalgebraFrame, kind: str):
    f = frame.alg.field
    cols = frame._cols
    images = []
    for i, col in enumerate(cols):
        if kind == "III":
            images.append(col if i < 4 else -col)
        else:
            # d' z  ->  d' conj(z)
            d = frame.d_basis[i - 4] if i >= 4 else None
            images.append(col if i < 4 else d * frame.gen.conj())
    # matrix sending e_j -> eta(e_j): eta = Img * inv
    img = [[images[j].c[i] for j in range(8)] for i in range(8)]
    return linalg.matmul(img, frame._inv, f)


@lru_cache(maxsize=None)
def make_eta(kind: str, alg: Algebra, frame: SubalgebraFrame | None = None) -> Eta:
    """Build the automorphism of the given type over ``alg``.

    Type II needs the field Q(sqrt 2); type III needs characteristic != 2;
    type IV needs characteristic 2.
    """
    kind = kind.upper()
    ch = alg.field.characteristic
    if kind == "I":
        return Eta("I", alg)
    if kind == "II":
        if alg.field.kind != "RealQuadratic":
            raise IncompatibleField("type II needs a separable quadratic extension (field qsqrt2)")
        return Eta("II", alg)
    if kind == "III":
        if ch == 2:
            raise IncompatibleField("type III needs characteristic != 2")
        frame = frame or quaternion_frame(alg)
        return Eta("III", alg, frame, _frame_eta_matrix(frame, "III"))
    if kind == "IV":
        if ch != 2:
            raise IncompatibleField("type IV needs characteristic 2")
        frame = frame or singular_frame(alg)
        return Eta("IV", alg, frame, _frame_eta_matrix(frame, "IV"))
    raise ValueError(f"unknown eta type {kind!r}")


def eta_apply(eta: Eta, x: Octonion) -> Octonion:
    return eta(x)
