"""Polarities of the coordinate plane induced by an automorphism eta.

All four types share one rule::

    (a, b) <-> [eta(conj a), -eta(conj b)]
    (c)    <-> [eta(conj c)]
    (inf)  <-> [inf]

so a :class:`Polarity` is nothing but its ``eta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .octonion import Algebra, Eta, Octonion, default_algebra, make_eta
from .plane import (
    PlaneLine,
    PlanePoint,
    affine_line,
    affine_point,
    inf_line,
    inf_point,
    ideal_point,
    vertical_line,
)

__all__ = [
    "Polarity",
    "WrongType",
    "NO_SOLUTION",
    "POLARITY_TYPES",
    "make_polarity",
    "polarity_apply",
    "is_absolute",
    "absolute_fiber_solve",
    "fixed_space",
    "absolute_defect",
]

POLARITY_TYPES = ("i", "ii", "iii", "iv")


class WrongType(ValueError):
    pass


class _NoSolution:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NoSolution"

    def __bool__(self):
        return False


NO_SOLUTION = _NoSolution()


@dataclass(frozen=True, eq=False)
class Polarity:
    eta: Eta

    @property
    def kind(self) -> str:
        return self.eta.kind

    @property
    def alg(self) -> Algebra:
        return self.eta.alg

    def __call__(self, x):
        return polarity_apply(self, x)


@lru_cache(maxsize=None)
def make_polarity(kind: str, field) -> Polarity:
    """Polarity of type ``i``..``iv`` on the default algebra over ``field``."""
    if kind.lower() not in POLARITY_TYPES:
        raise WrongType(f"unknown polarity type {kind!r}")
    return Polarity(make_eta(kind.upper(), default_algebra(field)))


def polarity_apply(psi: Polarity, x):
    eta = psi.eta
    if isinstance(x, PlanePoint):
        if x.kind == "affine":
            return affine_line(eta(x.a.conj()), -eta(x.b.conj()))
        if x.kind == "ideal":
            return vertical_line(eta(x.c.conj()))
        return inf_line(x.alg)
    if isinstance(x, PlaneLine):
        if x.kind == "affine":
            return affine_point(eta(x.m.conj()), -eta(x.k.conj()))
        if x.kind == "vertical":
            return ideal_point(eta(x.l.conj()))
        return inf_point(x.alg)
    raise TypeError(f"not a plane element: {x!r}")


def absolute_defect(eta: Eta, a: Octonion, b: Octonion) -> Octonion:
    """``eta(conj a) a + eta(conj b) + b``; zero exactly on absolute points."""
    return eta(a.conj()) * a + eta(b.conj()) + b


def is_absolute(psi: Polarity, p: PlanePoint) -> bool:
    if p.kind == "affine":
        return not absolute_defect(psi.eta, p.a, p.b)
    # an ideal point (c) never lies on the vertical line [eta(conj c)]
    return p.kind == "inf"


@lru_cache(maxsize=None)
def _fiber_system(eta: Eta):
    """Matrix of the k-linear map ``y -> eta(conj y) + y`` in the basis e0..e7."""
    alg = eta.alg
    cols = []
    for j in range(8):
        e = alg.basis(j)
        cols.append((eta(e.conj()) + e).c)
    return [[cols[j][i] for j in range(8)] for i in range(8)]


def absolute_fiber_solve(psi: Polarity, a: Octonion):
    """Some ``b`` making ``(a, b)`` absolute, or :data:`NO_SOLUTION`.

    Outside characteristic 2 the answer is ``-1/2 eta(conj a) a``.  In
    characteristic 2 the linear system is solved with every free variable
    set to zero.
    """
    eta = psi.eta
    alg = a.alg
    w = eta(a.conj()) * a
    f = alg.field
    if f.characteristic != 2:
        return -(f.half() * w)
    if eta.kind == "II":
        raise WrongType("type II is not k-linear here")
    sol = linalg.solve(_fiber_system(eta), [-v for v in w.c], f)
    if sol is None:
        return NO_SOLUTION
    return alg.element(sol)


def fixed_space(eta: Eta):
    """Basis of the kernel of ``y -> eta(conj y) + y`` (type IV only)."""
    if eta.kind != "IV":
        raise WrongType("the fixed space is computed for type IV only")
    alg = eta.alg
    return [alg.element(v) for v in linalg.nullspace(_fiber_system(eta), alg.field)]
