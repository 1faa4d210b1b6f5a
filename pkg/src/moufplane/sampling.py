"""Seeded sampling of plane elements and matrices.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937).  A
check named ``name`` run with seed ``s`` uses ``derive_seed(s, name)``: the
first 8 bytes (big endian) of ``BLAKE2b(f"{s}:{name}")``.
"""

from __future__ import annotations

import hashlib
import random

from .fields import F2Rational
from .jordan import HermMat
from .octonion import Algebra
from .plane import (
    affine_line,
    affine_point,
    ideal_point,
    inf_line,
    inf_point,
    vertical_line,
)

POINT_KINDS = ("affine", "ideal", "inf")
LINE_KINDS = ("affine", "vertical", "inf")


def derive_seed(seed: int, name: str) -> int:
    h = hashlib.blake2b(f"{seed}:{name}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def rng_for(seed: int, name: str) -> random.Random:
    return random.Random(derive_seed(seed, name))


def random_point(alg: Algebra, rng, kind=None):
    kind = kind or rng.choice(("affine", "affine", "affine", "ideal", "inf"))
    if kind == "affine":
        return affine_point(alg.random(rng), alg.random(rng))
    if kind == "ideal":
        return ideal_point(alg.random(rng))
    return inf_point(alg)


def random_line(alg: Algebra, rng, kind=None):
    kind = kind or rng.choice(("affine", "affine", "affine", "vertical", "inf"))
    if kind == "affine":
        return affine_line(alg.random(rng), alg.random(rng))
    if kind == "vertical":
        return vertical_line(alg.random(rng))
    return inf_line(alg)


def random_element(alg: Algebra, rng):
    if rng.random() < 0.5:
        return random_point(alg, rng)
    return random_line(alg, rng)


def flag_through(alg: Algebra, rng, pkind: str, lkind: str):
    """An incident point-line pair of the given kinds, or ``None`` if none exists."""
    if lkind == "affine":
        m, k = alg.random(rng), alg.random(rng)
        if pkind == "affine":
            a = alg.random(rng)
            return affine_point(a, k - m * a), affine_line(m, k)
        if pkind == "ideal":
            return ideal_point(m), affine_line(m, k)
        return None
    if lkind == "vertical":
        l = alg.random(rng)  # noqa: E741
        if pkind == "affine":
            return affine_point(l, alg.random(rng)), vertical_line(l)
        if pkind == "inf":
            return inf_point(alg), vertical_line(l)
        return None
    if pkind == "ideal":
        return ideal_point(alg.random(rng)), inf_line(alg)
    if pkind == "inf":
        return inf_point(alg), inf_line(alg)
    return None


def point_line_pairs(alg: Algebra, rng, n: int):
    """``n`` pairs cycling through all nine kind combinations, half of them flags."""
    combos = [(p, l) for p in POINT_KINDS for l in LINE_KINDS]
    out = []
    for i in range(n):
        pk, lk = combos[i % 9]
        pair = flag_through(alg, rng, pk, lk) if (i // 9) % 2 == 0 else None
        if pair is None:
            pair = (random_point(alg, rng, pk), random_line(alg, rng, lk))
        out.append(pair)
    return out


def random_integral(alg: Algebra, rng):
    """An octonion with polynomial coordinates (characteristic 2 only)."""
    f = alg.field
    return alg.element(F2Rational(f.random_poly(rng)) for _ in range(8))


def random_herm(alg: Algebra, rng) -> HermMat:
    """A random hermitian matrix.

    In characteristic 2 the entries are polynomials: the cubic-norm
    identities are homogeneous, so clearing denominators loses nothing and
    keeps the rational-function arithmetic free of gcd computations.
    """
    f = alg.field
    if f.characteristic == 2:
        return HermMat(
            tuple(F2Rational(f.random_poly(rng)) for _ in range(3)),
            tuple(random_integral(alg, rng) for _ in range(3)),
        )
    return HermMat(tuple(f.random(rng) for _ in range(3)), tuple(alg.random(rng) for _ in range(3)))
