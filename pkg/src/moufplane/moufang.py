"""Moufang sets attached to the polarities, and the classical models they match.

A Moufang set here is given by a group ``U`` and a permutation ``tau`` of
``U \\ {0}``; the carrier is ``X = U + {inf}`` with ``tau`` extended by
``0 <-> inf``.  Every construction exposes the same small interface (a
"bundle"): ``zero``, ``member``, ``add``, ``neg``, ``tau``, ``random``.

Bundles provided:

* :class:`PolarityBundle` -- absolute points ``(a, b)`` of a polarity,
  ``(a,b) + (c,d) = (a + c, b + d - eta(conj c) a)``;
* :class:`F4Bundle` -- the octonion Moufang set of type F4;
* :class:`HermitianBundle` -- the hermitian Moufang set over a quaternion
  subalgebra, linked to type III by :func:`chi_iso`;
* :class:`ProjectiveSubBundle` -- ``y -> -y^-1`` on the five-dimensional
  subspace that carries type IV.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .fields import DivisionByZero
from .octonion import Algebra, Octonion, SubalgebraFrame
from .plane import (
    PlanePoint,
    RootElement,
    affine_point,
    inf_point,
    root_apply,
    sigma_apply,
    sigma_eta_apply,
)
from .polarity import NO_SOLUTION, Polarity, _fiber_system, absolute_defect, absolute_fiber_solve, fixed_space

__all__ = [
    "MembershipViolated",
    "ZeroElement",
    "FrameMismatch",
    "OutsideSubspace",
    "WitnessFailure",
    "INFINITY",
    "UElem",
    "HermElem",
    "PolarityBundle",
    "F4Bundle",
    "HermitianBundle",
    "ProjectiveSubBundle",
    "build_from_polarity",
    "u_add",
    "u_negate",
    "tau_polarity",
    "hermitian_op",
    "tau_hermitian",
    "chi_iso",
    "chi_inverse",
    "f4_membership",
    "projective_tau",
    "alpha_apply",
    "tau_extended",
    "check_sharp_transitivity",
    "check_root_conjugation",
]


class MembershipViolated(AssertionError):
    pass


class ZeroElement(ArithmeticError):
    pass


class FrameMismatch(ValueError):
    pass


class OutsideSubspace(ValueError):
    pass


class WitnessFailure(AssertionError):
    pass


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    def to_json(self):
        return "inf"


INFINITY = _Infinity()


def _json(x):
    return x.to_json() if hasattr(x, "to_json") else repr(x)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class UElem:
    a: Octonion
    b: Octonion

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    def __repr__(self):
        return f"U({self.a!r}, {self.b!r})"


@dataclass(frozen=True)
class HermElem:
    """``(a1, a2, t)`` with all three entries in the quaternion subalgebra."""

    a1: Octonion
    a2: Octonion
    t: Octonion

    def to_json(self):
        return {"a1": self.a1.to_json(), "a2": self.a2.to_json(), "t": self.t.to_json()}


# ---------------------------------------------------------------------------
# the polarity bundles


class PolarityBundle:
    """``(U, +, tau)`` read off from the absolute points of a polarity.

    Type III uses the eta-twisted ``tau(a,b) = (-eta(a b^-1), eta(b)^-1)``;
    the other types use ``tau(a,b) = (-a b^-1, b^-1)``.
    """

    def __init__(self, polarity: Polarity):
        self.polarity = polarity
        self.eta = polarity.eta
        self.alg: Algebra = polarity.alg
        self.kind = polarity.kind

    def __repr__(self):
        return f"<PolarityBundle type {self.kind} over {self.alg.field.name}>"

    @property
    def zero(self) -> UElem:
        z = self.alg.zero
        return UElem(z, z)

    def member(self, x: UElem) -> bool:
        return not absolute_defect(self.eta, x.a, x.b)

    def _checked(self, x: UElem) -> UElem:
        if not self.member(x):
            raise MembershipViolated(f"{x!r} is not in U for type {self.kind}")
        return x

    def add(self, x: UElem, y: UElem) -> UElem:
        return self._checked(UElem(x.a + y.a, x.b + y.b - self.eta(y.a.conj()) * x.a))

    def neg(self, x: UElem) -> UElem:
        return UElem(-x.a, -x.b - self.eta(x.a.conj()) * x.a)

    def tau(self, x: UElem) -> UElem:
        if not x.b:
            raise ZeroElement("tau is defined on U minus the identity")
        binv = x.b.inverse()
        if self.kind == "III":
            out = UElem(-self.eta(x.a * binv), self.eta(x.b).inverse())
        else:
            out = UElem(-(x.a * binv), binv)
        return self._checked(out)

    def tau_inverse(self, x: UElem) -> UElem:
        return self.tau(x)

    # -- geometry

    def root_element(self, x: UElem) -> RootElement:
        """The collineation ``x(A, B, M)`` with ``A = a``, ``B = b``, ``M = eta(conj a)``."""
        return RootElement(x.a, x.b, self.eta(x.a.conj()))

    def to_point(self, x) -> PlanePoint:
        if x is INFINITY:
            return inf_point(self.alg)
        return affine_point(x.a, x.b)

    def from_point(self, p: PlanePoint):
        if p.kind == "inf":
            return INFINITY
        if p.kind != "affine":
            raise MembershipViolated(f"{p!r} is not an absolute point")
        return self._checked(UElem(p.a, p.b))

    def sigma(self, p):
        """The collineation that restricts to the extended ``tau``."""
        if self.kind == "III":
            return sigma_eta_apply(self.eta, p, complete=True)
        return sigma_apply(p, complete=True)

    # -- sampling

    @cached_property
    def _skew_basis(self):
        f = self.alg.field
        return [self.alg.element(v) for v in linalg.nullspace(_fiber_system(self.eta), f)]

    def _random_skew(self, rng):
        # elements s with eta(conj s) + s = 0
        f = self.alg.field
        if f.characteristic != 2:
            y = self.alg.random(rng)
            return y - self.eta(y.conj())
        # polynomial coefficients keep denominators from piling up
        from .fields import F2Rational

        acc = self.alg.zero
        for v in self._skew_basis:
            acc = acc + F2Rational(f.random_poly(rng)) * v
        return acc

    def random(self, rng: random.Random) -> UElem:
        if self.kind == "IV":
            return UElem(self.alg.zero, self._random_skew(rng))
        while True:
            a = self.alg.random(rng)
            b = absolute_fiber_solve(self.polarity, a)
            if b is not NO_SOLUTION:
                return UElem(a, b + self._random_skew(rng))

    def random_nonzero(self, rng):
        while True:
            x = self.random(rng)
            if x.a or x.b:
                return x


def build_from_polarity(polarity: Polarity) -> PolarityBundle:
    return PolarityBundle(polarity)


def u_add(bundle: PolarityBundle, x: UElem, y: UElem) -> UElem:
    return bundle.add(x, y)


def u_negate(bundle: PolarityBundle, x: UElem) -> UElem:
    return bundle.neg(x)


def tau_polarity(bundle: PolarityBundle, x: UElem) -> UElem:
    return bundle.tau(x)


# ---------------------------------------------------------------------------
# type F4


def f4_membership(a: Octonion, b: Octonion) -> bool:
    return not (a.norm() + b.trace())


class F4Bundle:
    """``U = {(a, b) : N(a) + T(b) = 0}`` with ``(a,b)(c,d) = (a + c, b + d - conj(c) a)``."""

    kind = "F4"

    def __init__(self, alg: Algebra):
        self.alg = alg

    @property
    def zero(self):
        z = self.alg.zero
        return UElem(z, z)

    def member(self, x):
        return f4_membership(x.a, x.b)

    def add(self, x, y):
        return UElem(x.a + y.a, x.b + y.b - y.a.conj() * x.a)

    def neg(self, x):
        return UElem(-x.a, -x.b - x.a.conj() * x.a)

    def tau(self, x):
        if not x.b:
            raise ZeroElement("tau is defined on U minus the identity")
        binv = x.b.inverse()
        return UElem(-(x.a * binv), binv)

    def random(self, rng):
        alg = self.alg
        a = alg.random(rng)
        y = alg.random(rng)
        # w has nonzero trace (e0 outside characteristic 2); y - T(y)/T(w) w is traceless
        w = next(alg.basis(i) for i in range(8) if alg._trace_vec[i])
        tw = w.trace()
        return UElem(a, (-a.norm() / tw) * w + y - (y.trace() / tw) * w)


# ---------------------------------------------------------------------------
# hermitian


class HermitianBundle:
    """``T = {(a1, a2, t) : N(a1) + beta N(a2) = T(t)}`` over ``D``.

    Product ``(a, t)(b, u) = (a + b, t + u + h(b, a))`` with
    ``h(a, b) = conj(a1) b1 + beta conj(a2) b2`` and
    ``tau(a, t) = (a t^-1, t^-1)`` (componentwise right multiplication).
    """

    kind = "Hermitian"

    def __init__(self, frame: SubalgebraFrame):
        if frame.kind != "quaternion_perp":
            raise FrameMismatch("the hermitian model needs a quaternion frame")
        if frame.alg.field.characteristic == 2:
            raise FrameMismatch("the hermitian model is used outside characteristic 2")
        self.frame = frame
        self.alg = frame.alg
        self.beta = frame.beta

    @property
    def zero(self):
        z = self.alg.zero
        return HermElem(z, z, z)

    def h(self, a1, a2, b1, b2) -> Octonion:
        return a1.conj() * b1 + self.beta * (a2.conj() * b2)

    def q(self, a1, a2):
        """The pseudoquadratic form ``(N(a1) + beta N(a2)) / 2`` as an element of D."""
        return self.alg.scalar((a1.norm() + self.beta * a2.norm()) * self.alg.field.half())

    def member(self, x: HermElem) -> bool:
        fr = self.frame
        if not (fr.in_d(x.a1) and fr.in_d(x.a2) and fr.in_d(x.t)):
            return False
        return x.a1.norm() + self.beta * x.a2.norm() == x.t.trace()

    def add(self, x: HermElem, y: HermElem) -> HermElem:
        out = HermElem(x.a1 + y.a1, x.a2 + y.a2, x.t + y.t + self.h(y.a1, y.a2, x.a1, x.a2))
        if not self.member(out):
            raise MembershipViolated(f"{out!r} left the hermitian group")
        return out

    def neg(self, x: HermElem) -> HermElem:
        return HermElem(-x.a1, -x.a2, x.t.conj())

    def tau(self, x: HermElem) -> HermElem:
        if not x.t:
            raise ZeroElement("tau needs t != 0")
        tinv = x.t.inverse()
        return HermElem(x.a1 * tinv, x.a2 * tinv, tinv)

    def _random_d(self, rng):
        f = self.alg.field
        return self.frame.from_d([f.random(rng) for _ in range(4)])

    def random(self, rng) -> HermElem:
        a1 = self._random_d(rng)
        a2 = self._random_d(rng)
        d = self._random_d(rng)
        half = self.alg.field.half()
        pure = d - self.alg.scalar(d.trace() * half)
        t = self.q(a1, a2) + pure
        return HermElem(a1, a2, t)


def hermitian_op(bundle: HermitianBundle, x: HermElem, y: HermElem) -> HermElem:
    return bundle.add(x, y)


def tau_hermitian(bundle: HermitianBundle, x: HermElem) -> HermElem:
    return bundle.tau(x)


def _check_frame(herm: HermitianBundle, target: PolarityBundle):
    fr = target.eta.frame
    if target.kind != "III" or fr is None:
        raise FrameMismatch("chi maps into a type III bundle")
    if fr is not herm.frame and (fr.d_basis != herm.frame.d_basis or fr.gen != herm.frame.gen):
        raise FrameMismatch("hermitian and polarity frames differ")


def chi_iso(herm: HermitianBundle, target: PolarityBundle, x: HermElem) -> UElem:
    """``(a1, a2, t) -> (a1 + c conj(a2), (-t + beta N(a2)) + c (-a1 conj(a2)))``."""
    _check_frame(herm, target)
    fr = herm.frame
    a2bar = x.a2.conj()
    a = fr.compose(x.a1, a2bar)
    b = fr.compose(herm.alg.scalar(herm.beta * x.a2.norm()) - x.t, -(x.a1 * a2bar))
    return UElem(a, b)


def chi_inverse(herm: HermitianBundle, target: PolarityBundle, u: UElem) -> HermElem:
    _check_frame(herm, target)
    fr = herm.frame
    a1, a2bar = fr.decompose(u.a)
    b1, _ = fr.decompose(u.b)
    a2 = a2bar.conj()
    t = herm.alg.scalar(herm.beta * a2.norm()) - b1
    return HermElem(a1, a2, t)


# ---------------------------------------------------------------------------
# projective sub-Moufang set (type IV)


class ProjectiveSubBundle:
    """``U`` = a subspace of O closed under inversion, ``tau(y) = -y^-1``."""

    kind = "ProjectiveSub"

    def __init__(self, alg: Algebra, basis):
        self.alg = alg
        self.basis = list(basis)
        self._cols = [[v.c[i] for v in self.basis] for i in range(8)]

    @classmethod
    def from_polarity(cls, polarity: Polarity):
        return cls(polarity.alg, fixed_space(polarity.eta))

    @property
    def dimension(self) -> int:
        return linalg.rank(self._cols, self.alg.field)

    @property
    def zero(self):
        return self.alg.zero

    def member(self, y: Octonion) -> bool:
        return linalg.solve(self._cols, list(y.c), self.alg.field) is not None

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def tau(self, y: Octonion) -> Octonion:
        if not self.member(y):
            raise OutsideSubspace(f"{y!r} is outside the subspace")
        return projective_tau(y)

    def random(self, rng):
        f = self.alg.field
        acc = self.alg.zero
        for v in self.basis:
            acc = acc + f.random(rng) * v
        return acc


def projective_tau(y: Octonion) -> Octonion:
    try:
        return -y.inverse()
    except DivisionByZero as exc:
        raise ZeroElement("tau needs a nonzero element") from exc


# ---------------------------------------------------------------------------
# carrier permutations


def _is_zero(bundle, x) -> bool:
    return x == bundle.zero


def alpha_apply(bundle, u, x):
    """The root-group element ``alpha_u``: ``inf`` fixed, ``x -> x + u``."""
    if x is INFINITY:
        return x
    return bundle.add(x, u)


def tau_extended(bundle, x):
    if x is INFINITY:
        return bundle.zero
    if _is_zero(bundle, x):
        return INFINITY
    return bundle.tau(x)


def _report(check, bundle, samples, seed, failure):
    out = {
        "check": check,
        "type": getattr(bundle, "kind", None),
        "field": bundle.alg.field.name,
        "samples": samples,
        "seed": seed,
        "pass": failure is None,
    }
    if failure is not None:
        out["counterexample"] = failure
    return out


def check_sharp_transitivity(bundle, pairs, seed=None, rng=None):
    """For each ``(p, q)`` the witness ``u = -p + q`` satisfies ``p + u = q``.

    For polarity bundles the witness is also applied as the collineation
    ``x(A, B, M)`` to the plane point of ``p``.  Uniqueness: a sampled nonzero
    ``w`` must move ``p``.
    """
    rng = rng or random.Random(seed)
    failure = None
    for p, q in pairs:
        u = bundle.add(bundle.neg(p), q)
        problem = None
        if not bundle.member(u):
            problem = "witness outside U"
        elif alpha_apply(bundle, u, p) != q:
            problem = "witness does not map p to q"
        elif isinstance(bundle, PolarityBundle):
            if root_apply(bundle.root_element(u), bundle.to_point(p)) != bundle.to_point(q):
                problem = "root collineation of the witness does not map p to q"
        if problem is None:
            w = bundle.random(rng)
            if w != bundle.zero and alpha_apply(bundle, w, p) == p:
                problem = "a nonzero element fixes p"
                u = w
        if problem is not None:
            failure = {"reason": problem, "p": _json(p), "q": _json(q), "witness": _json(u)}
            break
    return _report("sharp-transitivity", bundle, len(pairs), seed, failure)


def check_root_conjugation(bundle: PolarityBundle, samples, seed=None):
    """``tau^-1 alpha_a tau`` evaluated as a word equals the conjugated collineation.

    ``samples`` is a list of ``(a, x)`` with ``a`` in ``U*`` and ``x`` in the
    carrier.  The word is evaluated on carriers; independently the plane
    collineation ``sigma x(a) sigma`` is applied to the point of ``x``.
    """
    failure = None
    for a, x in samples:
        problem = None
        word = tau_extended(bundle, alpha_apply(bundle, a, tau_extended(bundle, x)))
        if tau_extended(bundle, alpha_apply(bundle, a, tau_extended(bundle, bundle.zero))) != bundle.zero:
            problem = "conjugate does not fix 0"
        else:
            g = bundle.root_element(a)
            img = bundle.sigma(root_apply(g, bundle.sigma(bundle.to_point(x))))
            try:
                geo = bundle.from_point(img)
            except MembershipViolated:
                geo = None
            if geo != word:
                problem = "word and collineation disagree"
        if problem is not None:
            failure = {"reason": problem, "a": _json(a), "x": _json(x), "word": _json(word)}
            break
    return _report("root-conjugation", bundle, len(samples), seed, failure)
