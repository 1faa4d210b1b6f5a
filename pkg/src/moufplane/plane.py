"""The coordinate model of the octonion projective plane.

Points are ``(a, b)``, ``(c)`` or ``(inf)``; lines are ``[m, k]``, ``[l]`` or
``[inf]``.  Incidence::

    (a,b) on [m,k]  <=>  m a + b = k        (c) on [m,k]  <=>  c = m
    (a,b) on [l]    <=>  a = l              (c) on [inf]  always
    (inf) on [l]    always                  (inf) on [inf]

Besides incidence this module holds the collineations used to build Moufang
sets: the root elements ``x(A, B, M)``, the involution ``sigma`` and its
eta-twisted variant, the coordinate change ``conjugating_transform`` and the
type II polarity ``psi_coord_apply`` in coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .octonion import Algebra, AlgebraMismatch, Eta, Octonion, octonion_from_json

__all__ = [
    "OutsideDomain",
    "PlanePoint",
    "PlaneLine",
    "RootElement",
    "affine_point",
    "ideal_point",
    "inf_point",
    "affine_line",
    "vertical_line",
    "inf_line",
    "incident",
    "root_apply",
    "root_compose",
    "sigma_apply",
    "sigma_eta_apply",
    "eta_collineation",
    "conjugating_transform",
    "conjugating_transform_inverse",
    "psi_coord_apply",
    "element_from_json",
]


class OutsideDomain(ArithmeticError):
    """A partial map was applied where its formula needs a missing inverse."""


@dataclass(frozen=True)
class PlanePoint:
    kind: str  # "affine" | "ideal" | "inf"
    coords: tuple
    alg: Algebra

    @property
    def a(self):
        return self.coords[0]

    @property
    def b(self):
        return self.coords[1]

    @property
    def c(self):
        return self.coords[0]

    def to_json(self):
        if self.kind == "affine":
            return {"t": "affine", "a": self.a.to_json(), "b": self.b.to_json()}
        if self.kind == "ideal":
            return {"t": "ideal", "c": self.c.to_json()}
        return {"t": "inf"}

    def __repr__(self):
        if self.kind == "affine":
            return f"({self.a!r}, {self.b!r})"
        if self.kind == "ideal":
            return f"({self.c!r})"
        return "(inf)"


@dataclass(frozen=True)
class PlaneLine:
    kind: str  # "affine" | "vertical" | "inf"
    coords: tuple
    alg: Algebra

    @property
    def m(self):
        return self.coords[0]

    @property
    def k(self):
        return self.coords[1]

    @property
    def l(self):  # noqa: E743
        return self.coords[0]

    def to_json(self):
        if self.kind == "affine":
            return {"t": "affine", "m": self.m.to_json(), "k": self.k.to_json()}
        if self.kind == "vertical":
            return {"t": "vertical", "l": self.l.to_json()}
        return {"t": "inf"}

    def __repr__(self):
        if self.kind == "affine":
            return f"[{self.m!r}, {self.k!r}]"
        if self.kind == "vertical":
            return f"[{self.l!r}]"
        return "[inf]"


def affine_point(a: Octonion, b: Octonion) -> PlanePoint:
    if a.alg != b.alg:
        raise AlgebraMismatch("point coordinates from different algebras")
    return PlanePoint("affine", (a, b), a.alg)


def ideal_point(c: Octonion) -> PlanePoint:
    return PlanePoint("ideal", (c,), c.alg)


def affine_line(m: Octonion, k: Octonion) -> PlaneLine:
    if m.alg != k.alg:
        raise AlgebraMismatch("line coordinates from different algebras")
    return PlaneLine("affine", (m, k), m.alg)


def vertical_line(l: Octonion) -> PlaneLine:  # noqa: E741
    return PlaneLine("vertical", (l,), l.alg)


def inf_point(alg: Algebra) -> PlanePoint:
    return PlanePoint("inf", (), alg)


def inf_line(alg: Algebra) -> PlaneLine:
    return PlaneLine("inf", (), alg)


def element_from_json(obj, line: bool, alg: Algebra):
    """Inverse of ``to_json``; ``alg`` is needed for the coordinate-free ``inf``."""
    t = obj["t"]
    if line:
        if t == "affine":
            return affine_line(octonion_from_json(obj["m"]), octonion_from_json(obj["k"]))
        if t == "vertical":
            return vertical_line(octonion_from_json(obj["l"]))
        return inf_line(alg)
    if t == "affine":
        return affine_point(octonion_from_json(obj["a"]), octonion_from_json(obj["b"]))
    if t == "ideal":
        return ideal_point(octonion_from_json(obj["c"]))
    return inf_point(alg)


def _same_alg(p, L):
    if p.alg is not L.alg and p.alg != L.alg:
        raise AlgebraMismatch("point and line over different algebras")


def incident(p: PlanePoint, L: PlaneLine) -> bool:
    _same_alg(p, L)
    if p.kind == "affine":
        if L.kind == "affine":
            return L.m * p.a + p.b == L.k
        if L.kind == "vertical":
            return p.a == L.l
        return False
    if p.kind == "ideal":
        if L.kind == "affine":
            return p.c == L.m
        return L.kind == "inf"
    return L.kind != "affine"


# ---------------------------------------------------------------------------
# root elements


@dataclass(frozen=True)
class RootElement:
    """``x(A, B, M)``: the product of the three root collineations."""

    A: Octonion
    B: Octonion
    M: Octonion

    def to_json(self):
        return {"A": self.A.to_json(), "B": self.B.to_json(), "M": self.M.to_json()}


def root_apply(g: RootElement, x):
    """Apply ``x(A, B, M)`` to a point or a line.

    ``(c) -> (c + M)`` and ``[l] -> [l + A]``; the two infinite elements are
    fixed.
    """
    A, B, M = g.A, g.B, g.M
    if isinstance(x, PlanePoint):
        if x.kind == "affine":
            return affine_point(x.a + A, x.b + B - M * x.a)
        if x.kind == "ideal":
            return ideal_point(x.c + M)
        return x
    if x.kind == "affine":
        return affine_line(x.m + M, x.k + B + x.m * A + M * A)
    if x.kind == "vertical":
        return vertical_line(x.l + A)
    return x


def root_compose(g: RootElement, h: RootElement) -> RootElement:
    """The root element acting as ``g`` followed by ``h``."""
    return RootElement(g.A + h.A, g.B + h.B - h.M * g.A, g.M + h.M)


# ---------------------------------------------------------------------------
# sigma


def sigma_apply(x, complete: bool = False):
    """``(a,b) -> (-a b^-1, b^-1)``, ``[m,k] -> [k^-1 m, k^-1]``.

    Only affine elements with ``b != 0`` (resp. ``k != 0``) are in the domain
    of the defining formula.  With ``complete=True`` the remaining elements
    are sent to their images under the unique collineation extending it.
    """
    if isinstance(x, PlanePoint):
        if x.kind == "affine" and x.b:
            binv = x.b.inverse()
            return affine_point(-(x.a * binv), binv)
        if not complete:
            raise OutsideDomain(f"sigma is not defined by formula at {x!r}")
        if x.kind == "affine":
            if x.a:
                return ideal_point(x.a.inverse())
            return inf_point(x.alg)
        if x.kind == "ideal":
            if x.c:
                return affine_point(x.c.inverse(), x.c.alg.zero)
            return x
        return affine_point(x.alg.zero, x.alg.zero)
    if x.kind == "affine" and x.k:
        kinv = x.k.inverse()
        return affine_line(kinv * x.m, kinv)
    if not complete:
        raise OutsideDomain(f"sigma is not defined by formula at {x!r}")
    if x.kind == "affine":
        if x.m:
            return vertical_line(x.m.inverse())
        return inf_line(x.alg)
    if x.kind == "vertical":
        if x.l:
            return affine_line(x.l.inverse(), x.l.alg.zero)
        return x
    return affine_line(x.alg.zero, x.alg.zero)


def eta_collineation(eta: Eta, x):
    """The collineation induced by applying ``eta`` to every coordinate."""
    if not x.coords:
        return x
    return type(x)(x.kind, tuple(eta(v) for v in x.coords), x.alg)


def sigma_eta_apply(eta: Eta, x, complete: bool = False):
    """``(a,b) -> (-eta(a b^-1), eta(b)^-1)``, ``[m,k] -> [eta(k^-1 m), eta(k)^-1]``."""
    return eta_collineation(eta, sigma_apply(x, complete=complete))


# ---------------------------------------------------------------------------
# coordinate change relating the two descriptions of a type II polarity


def conjugating_transform(x):
    if isinstance(x, PlanePoint):
        if x.kind == "affine":
            return affine_point(x.b, -x.a)
        if x.kind == "ideal":
            if x.c:
                return ideal_point(-x.c.inverse())
            return inf_point(x.alg)
        return ideal_point(x.alg.zero)
    if x.kind == "affine":
        if x.m:
            minv = x.m.inverse()
            return affine_line(-minv, -(minv * x.k))
        return vertical_line(x.k)
    if x.kind == "vertical":
        return affine_line(x.l.alg.zero, -x.l)
    return x


def conjugating_transform_inverse(x):
    if isinstance(x, PlanePoint):
        if x.kind == "affine":
            return affine_point(-x.b, x.a)
        if x.kind == "ideal":
            if x.c:
                return ideal_point(-x.c.inverse())
            return inf_point(x.alg)
        return ideal_point(x.alg.zero)
    if x.kind == "affine":
        if x.m:
            minv = x.m.inverse()
            return affine_line(-minv, minv * x.k)
        return vertical_line(-x.k)
    if x.kind == "vertical":
        return affine_line(x.l.alg.zero, x.l)
    return x


# ---------------------------------------------------------------------------
# type II polarity in coordinates


def psi_coord_apply(eta: Eta, x):
    """The type II polarity ``T Psi T^-1`` written out clause by clause."""
    if eta.kind != "II":
        raise ValueError("psi is the type II polarity")
    if isinstance(x, PlanePoint):
        if x.kind == "affine":
            a, b = x.a, x.b
            if b:
                binv = b.inverse()
                return affine_line(eta(b.conj()).inverse(), -eta((a * binv).conj()))
            return vertical_line(-eta(a.conj()))
        if x.kind == "ideal":
            c = x.c
            if c:
                return affine_line(c.alg.zero, eta(c.conj()).inverse())
            return inf_line(x.alg)
        return affine_line(x.alg.zero, x.alg.zero)
    if x.kind == "affine":
        m, k = x.m, x.k
        if m:
            minv = m.inverse()
            return affine_point(-eta((minv * k).conj()), eta(m.conj()).inverse())
        if k:
            return ideal_point(eta(k.conj()).inverse())
        return inf_point(x.alg)
    if x.kind == "vertical":
        return affine_point(-eta(x.l.conj()), x.l.alg.zero)
    return ideal_point(x.alg.zero)
