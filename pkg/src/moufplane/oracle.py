"""Slow reference multiplication for differential testing.

Octonions are unfolded into nested pairs ``((((x0, x1), (x2, x3)), ...)))``
and multiplied with the doubling rule directly, recursion all the way down to
the ground field.  Nothing here shares code with the compiled kernel in
:mod:`moufplane.octonion`; the structure table produced by this module is
therefore an independent derivation.
"""

from __future__ import annotations


class _Level:
    """One step of the doubling tower: multiplication and conjugation on pairs."""

    def __init__(self, below, mu):
        self.below = below
        self.mu = mu

    def mul(self, x, y):
        a, b = x
        c, d = y
        B = self.below
        return (
            B.add(B.mul(a, c), B.scale(self.mu, B.mul(B.conj(d), b))),
            B.add(B.mul(d, a), B.mul(b, B.conj(c))),
        )

    def conj(self, x):
        a, b = x
        return (self.below.conj(a), self.below.neg(b))

    def add(self, x, y):
        return (self.below.add(x[0], y[0]), self.below.add(x[1], y[1]))

    def neg(self, x):
        return (self.below.neg(x[0]), self.below.neg(x[1]))

    def scale(self, s, x):
        return (self.below.scale(s, x[0]), self.below.scale(s, x[1]))

    def nest(self, flat):
        h = len(flat) // 2
        return (self.below.nest(flat[:h]), self.below.nest(flat[h:]))

    def flat(self, x):
        return self.below.flat(x[0]) + self.below.flat(x[1])


class _Scalars:
    def mul(self, x, y):
        return x * y

    def conj(self, x):
        return x

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def scale(self, s, x):
        return s * x

    def nest(self, flat):
        return flat[0]

    def flat(self, x):
        return (x,)


class _Etale:
    """``k[x]/(x^2 + x + alpha)`` with elements stored as ``(a, b) = a + b x``."""

    def __init__(self, alpha):
        self.alpha = alpha

    def mul(self, x, y):
        a, b = x
        c, d = y
        bd = b * d
        return (a * c - self.alpha * bd, a * d + b * c - bd)

    def conj(self, x):
        a, b = x
        return (a + b, -b)

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def scale(self, s, x):
        return (s * x[0], s * x[1])

    def nest(self, flat):
        return (flat[0], flat[1])

    def flat(self, x):
        return (x[0], x[1])


def tower(alg):
    """The doubling tower for an :class:`~moufplane.octonion.Algebra`."""
    if alg.construction == "CayleyDickson0":
        level = _Scalars()
        mus = alg.params
    else:
        alpha, beta, gamma = alg.params
        level = _Etale(alpha)
        mus = (beta, gamma)
    for mu in mus:
        level = _Level(level, mu)
    return level


def slow_product(x, y):
    """Coordinates of ``x*y`` computed by recursive doubling."""
    t = tower(x.alg)
    return t.flat(t.mul(t.nest(x.c), t.nest(y.c)))


def slow_table(alg):
    """Structure constants ``e_i e_j`` as coordinate tuples."""
    t = tower(alg)
    basis = [alg.basis(i).c for i in range(8)]
    return [[t.flat(t.mul(t.nest(a), t.nest(b))) for b in basis] for a in basis]


def table_product(x, y, table):
    """Triple loop over a structure table given as coordinate tuples."""
    f = x.alg.field
    out = [f.zero] * 8
    for i, a in enumerate(x.c):
        if not a:
            continue
        for j, b in enumerate(y.c):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(table[i][j]):
                if c:
                    out[k] = out[k] + ab * c
    return tuple(out)
