import random

import pytest
from gmpy2 import mpq

from moufplane.fields import F2T, Q, QSQRT2
from moufplane.moufang import (
    INFINITY,
    F4Bundle,
    FrameMismatch,
    HermElem,
    HermitianBundle,
    MembershipViolated,
    OutsideSubspace,
    ProjectiveSubBundle,
    UElem,
    ZeroElement,
    alpha_apply,
    build_from_polarity,
    check_root_conjugation,
    check_sharp_transitivity,
    chi_inverse,
    chi_iso,
    f4_membership,
    hermitian_op,
    projective_tau,
    tau_extended,
    tau_hermitian,
    tau_polarity,
    u_add,
    u_negate,
)
from moufplane.octonion import default_algebra, quaternion_frame, singular_frame
from moufplane.plane import ideal_point
from moufplane.polarity import make_polarity

QA = default_algebra(Q)
FA = default_algebra(F2T)
E1 = QA.basis(1)
HALF = QA.scalar(mpq(-1, 2))

BUNDLES = [("i", Q, 60), ("ii", QSQRT2, 30), ("iii", Q, 60), ("iv", F2T, 12), ("i", F2T, 6)]
IDS = [f"{k}-{f.name}" for k, f, _ in BUNDLES]


def bundle(kind, field):
    return build_from_polarity(make_polarity(kind, field))


def herm_bundle():
    return HermitianBundle(quaternion_frame(QA))


# ---------------------------------------------------------------------------
# examples


def test_u_add_examples():
    b = bundle("i", Q)
    x = UElem(E1, HALF)
    assert u_add(b, x, b.zero) == x
    assert u_add(b, x, x) == UElem(E1 + E1, QA.scalar(mpq(-2)))
    iv = bundle("iv", F2T)
    rng = random.Random(1)
    y1, y2 = iv.random(rng), iv.random(rng)
    assert y1.a == FA.zero
    assert u_add(iv, y1, y2) == UElem(FA.zero, y1.b + y2.b)


def test_u_negate_examples():
    b = bundle("i", Q)
    assert u_negate(b, UElem(E1, HALF)) == UElem(-E1, HALF)
    assert u_negate(b, b.zero) == b.zero
    iii = bundle("iii", Q)
    s = QA.basis(1)
    assert iii.member(UElem(QA.zero, s))
    assert u_negate(iii, UElem(QA.zero, s)) == UElem(QA.zero, -s)


def test_tau_examples():
    b = bundle("i", Q)
    assert tau_polarity(b, UElem(QA.zero, E1)) == UElem(QA.zero, -E1)
    with pytest.raises(ZeroElement):
        tau_polarity(b, b.zero)
    iv = bundle("iv", F2T)
    y = iv.random_nonzero(random.Random(2))
    assert tau_polarity(iv, y) == UElem(FA.zero, y.b.inverse())


def test_membership_violation_raised():
    b = bundle("i", Q)
    with pytest.raises(MembershipViolated):
        u_add(b, UElem(E1, QA.zero), b.zero)
    with pytest.raises(MembershipViolated):
        b.from_point(ideal_point(QA.zero))


def test_hermitian_examples():
    h = herm_bundle()
    one, z = QA.one, QA.zero
    assert h.beta == 1 and h.frame.gen == QA.basis(4)
    assert h.h(z, one, z, one) == one
    x = h.random(random.Random(3))
    assert hermitian_op(h, x, h.zero) == x
    t = QA.basis(2) + QA.scalar(mpq(3))
    t0 = HermElem(z, z, t)
    assert tau_hermitian(h, t0) == HermElem(z, z, t.inverse())
    with pytest.raises(ZeroElement):
        tau_hermitian(h, h.zero)


def test_chi_examples():
    h = herm_bundle()
    iii = bundle("iii", Q)
    z = QA.zero
    assert chi_iso(h, iii, h.zero) == iii.zero
    a1 = QA.basis(1) + QA.basis(2)
    t = QA.scalar(a1.norm() * mpq(1, 2)) + QA.basis(3)
    x = HermElem(a1, z, t)
    assert h.member(x)
    assert chi_iso(h, iii, x) == UElem(a1, -t)
    with pytest.raises(FrameMismatch):
        chi_iso(h, bundle("i", Q), x)
    with pytest.raises(FrameMismatch):
        HermitianBundle(singular_frame(FA))


def test_f4_and_projective_examples():
    assert f4_membership(QA.zero, QA.zero)
    assert f4_membership(E1, HALF)
    assert not f4_membership(E1, QA.zero)
    assert projective_tau(QA.one) == -QA.one
    with pytest.raises(ZeroElement):
        projective_tau(QA.zero)
    sub = ProjectiveSubBundle.from_polarity(make_polarity("iv", F2T))
    with pytest.raises(OutsideSubspace):
        sub.tau(next(v for v in (FA.basis(i) for i in range(8)) if not sub.member(v)))


def test_carrier_endpoints():
    b = bundle("i", Q)
    assert tau_extended(b, INFINITY) == b.zero
    assert tau_extended(b, b.zero) is INFINITY
    assert alpha_apply(b, UElem(E1, HALF), INFINITY) is INFINITY
    assert alpha_apply(b, UElem(E1, HALF), b.zero) == UElem(E1, HALF)
    assert INFINITY.to_json() == "inf"


# ---------------------------------------------------------------------------
# group structure


@pytest.mark.parametrize("kind,field,n", BUNDLES, ids=IDS)
def test_group_axioms_and_tau(kind, field, n):
    b = bundle(kind, field)
    rng = random.Random(4)
    for _ in range(n):
        x, y, z = b.random(rng), b.random(rng), b.random(rng)
        assert b.member(x)
        assert b.add(b.add(x, y), z) == b.add(x, b.add(y, z))
        assert b.add(x, b.neg(x)) == b.zero == b.add(b.neg(x), x)
        if x.b:
            assert b.tau(b.tau(x)) == x
        else:
            assert not x.a
    if kind == "iv":
        x, y = b.random(rng), b.random(rng)
        assert b.add(x, y) == b.add(y, x)


@pytest.mark.parametrize("kind,field,n", BUNDLES, ids=IDS)
def test_sharp_transitivity(kind, field, n):
    b = bundle(kind, field)
    rng = random.Random(5)
    pairs = [(b.random(rng), b.random(rng)) for _ in range(n // 2)]
    pairs.append((pairs[0][0], pairs[0][0]))
    report = check_sharp_transitivity(b, pairs, seed=5)
    assert report["pass"], report
    assert report["samples"] == len(pairs) and report["type"] == kind.upper()


def test_sharp_transitivity_witness_from_origin():
    b = bundle("i", Q)
    p = b.random(random.Random(6))
    assert b.add(b.neg(b.zero), p) == p
    assert b.add(b.neg(p), p) == b.zero


@pytest.mark.parametrize("kind,field,n", [c for c in BUNDLES if c[1] is not F2T or c[0] == "iv"], ids=lambda x: str(x))
def test_root_conjugation(kind, field, n):
    b = bundle(kind, field)
    rng = random.Random(7)
    samples = [(b.random_nonzero(rng), INFINITY if i == 0 else b.random(rng)) for i in range(n // 3)]
    report = check_root_conjugation(b, samples, seed=7)
    assert report["pass"], report


def test_root_conjugation_detects_bad_tau():
    class Broken(type(bundle("i", Q))):
        def tau(self, x):
            return UElem(-x.a, x.b)

    b = Broken(make_polarity("i", Q))
    rng = random.Random(8)
    report = check_root_conjugation(b, [(b.random_nonzero(rng), b.random(rng)) for _ in range(5)])
    assert not report["pass"] and "reason" in report["counterexample"]


def test_type_i_is_f4():
    b, f4 = bundle("i", Q), F4Bundle(QA)
    rng = random.Random(9)
    for _ in range(60):
        x, y = f4.random(rng), b.random(rng)
        assert f4.member(x) and b.member(x) and f4.member(y)
        assert b.add(x, y) == f4.add(x, y)
        assert b.neg(x) == f4.neg(x)
        assert b.tau(x) == f4.tau(x)


def test_f4_random_char2():
    f4 = F4Bundle(FA)
    x = f4.random(random.Random(10))
    assert f4.member(x)


def test_type_iv_is_projective():
    b = bundle("iv", F2T)
    sub = ProjectiveSubBundle.from_polarity(b.polarity)
    rng = random.Random(11)
    for _ in range(10):
        x, y = b.random_nonzero(rng), b.random(rng)
        assert sub.member(x.b)
        assert b.add(x, y).b == sub.add(x.b, y.b)
        assert b.tau(x).b == -sub.tau(x.b)  # char 2: -y^-1 = y^-1
        assert projective_tau(projective_tau(x.b)) == x.b


def test_hermitian_bundle_isomorphism():
    h, iii = herm_bundle(), bundle("iii", Q)
    rng = random.Random(12)
    for _ in range(60):
        x, y = h.random(rng), h.random(rng)
        assert h.member(x)
        u = chi_iso(h, iii, x)
        assert iii.member(u)
        assert chi_inverse(h, iii, u) == x
        assert chi_iso(h, iii, h.add(x, y)) == iii.add(u, chi_iso(h, iii, y))
        assert h.add(x, h.neg(x)) == h.zero
        if x.t:
            assert chi_iso(h, iii, h.tau(x)) == iii.tau(u)
            assert h.tau(h.tau(x)) == x
        a2n = x.a2.norm()
        lhs = (QA.scalar(h.beta * a2n) - x.t).norm() + h.beta * (x.a1 * x.a2.conj()).norm()
        assert lhs == x.t.norm()
    u = iii.random(rng)
    assert chi_iso(h, iii, chi_inverse(h, iii, u)) == u


def test_json_shapes():
    b = bundle("ii", QSQRT2)
    x = b.random(random.Random(13))
    assert set(x.to_json()) == {"a", "b"}
    h = herm_bundle().random(random.Random(14))
    assert set(h.to_json()) == {"a1", "a2", "t"}
