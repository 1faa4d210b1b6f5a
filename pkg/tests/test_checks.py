import random

import pytest

from moufplane import faults
from moufplane.checks import (
    CHECKS,
    FIELD_CHECKS,
    POLARITY_CHECKS,
    CheckContext,
    Counterexample,
    compatible,
    incompatibility,
    require,
    run_check,
    stream_name,
    to_jsonable,
)
from moufplane.fields import F2T, Q, QSQRT2
from moufplane.sampling import derive_seed, flag_through, point_line_pairs, rng_for
from moufplane.octonion import default_algebra


def test_registry_shape():
    assert set(FIELD_CHECKS) | set(POLARITY_CHECKS) == set(CHECKS)
    assert not set(FIELD_CHECKS) & set(POLARITY_CHECKS)
    for spec in CHECKS.values():
        assert spec.doc and callable(spec.run)
    assert CHECKS["twisted-psi"].types == ("ii",)
    assert CHECKS["type-iv-structure"].types == ("iv",)


def test_compatibility_rules():
    assert compatible("i", Q) and compatible("i", F2T)
    assert incompatibility("ii", Q) and compatible("ii", QSQRT2)
    assert incompatibility("iii", F2T) and compatible("iii", QSQRT2)
    assert incompatibility("iv", Q) and compatible("iv", F2T)


def test_derive_seed_is_stable():
    assert derive_seed(42, "x") == derive_seed(42, "x")
    assert derive_seed(42, "x") != derive_seed(42, "y")
    assert derive_seed(42, "x") != derive_seed(43, "x")
    assert 0 <= derive_seed(2**64 - 1, "x") < 2**64
    assert rng_for(7, "a").random() == rng_for(7, "a").random()
    assert stream_name("polarity", Q, "i") == "polarity/q/i"
    assert stream_name("cubic-norm", F2T, None) == "cubic-norm/f2t/-"


def test_flags_and_pairs():
    alg = default_algebra(Q)
    rng = random.Random(1)
    assert flag_through(alg, rng, "affine", "inf") is None
    assert flag_through(alg, rng, "ideal", "vertical") is None
    assert flag_through(alg, rng, "inf", "affine") is None
    kinds = {(p.kind, L.kind) for p, L in point_line_pairs(alg, rng, 18)}
    assert len(kinds) == 9


def test_require_and_jsonable():
    require(True, "fine")
    with pytest.raises(Counterexample) as info:
        require(False, "broken", x=default_algebra(Q).one)
    assert info.value.reason == "broken"
    data = to_jsonable(info.value.data)
    assert data["x"]["c"][0] == "1/1"


def test_context_notes_inputs():
    ctx = CheckContext(Q, "i", 3, random.Random(0))
    ctx.note(a=1)
    assert ctx.current == {"a": 1}
    assert ctx.bundle.kind == "I"


def test_run_check_report_fields():
    r = run_check("eta", "q", "iii", samples=5, seed=9)
    assert r["pass"] and r["status"] == "passed"
    assert r["seed"] == derive_seed(9, "eta/q/iii")
    assert (r["check"], r["type"], r["field"], r["samples"]) == ("eta", "iii", "q", 5)


def test_run_check_is_deterministic():
    assert run_check("polarity", "qsqrt2", "ii", 8, 3) == run_check("polarity", "qsqrt2", "ii", 8, 3)


CASES = [(n, f, None) for n in FIELD_CHECKS for f in ("q", "qsqrt2", "f2t")]
CASES += [(n, f, k) for n in POLARITY_CHECKS for k in CHECKS[n].types for f in ("q", "qsqrt2", "f2t")
          if compatible(k, {"q": Q, "qsqrt2": QSQRT2, "f2t": F2T}[f])]


@pytest.mark.parametrize("name,field,kind", CASES, ids=[f"{n}-{f}-{k or '-'}" for n, f, k in CASES])
def test_every_check_passes(name, field, kind):
    samples = 3 if field == "f2t" else 12
    r = run_check(name, field, kind, samples=samples, seed=11)
    assert r["pass"], r


@pytest.mark.parametrize("name,kind", [("phi-incidence", None), ("cubic-norm", None), ("polarity", "i"), ("polarity", "iii")])
def test_fault_is_caught(name, kind):
    with faults.injected("adjoint-sign"):
        r = run_check(name, "q", kind, samples=20, seed=1)
    assert not r["pass"] and r["status"] == "failed"
    assert r["counterexample"]["reason"]
    assert run_check(name, "q", kind, samples=20, seed=1)["pass"]


def test_fault_from_environment(monkeypatch):
    monkeypatch.setenv("MOUFPLANE_FAULT", "adjoint-sign")
    assert faults.active("adjoint-sign")
    assert "adjoint-sign" in faults.enabled()
    monkeypatch.delenv("MOUFPLANE_FAULT")
    assert not faults.active("adjoint-sign")


def test_unexpected_exception_becomes_failure(monkeypatch):
    spec = CHECKS["eta"]

    def boom(ctx):
        ctx.note(step=1)
        raise RuntimeError("kaboom")

    monkeypatch.setitem(CHECKS, "eta", spec.__class__(spec.name, boom, spec.scope, spec.types, spec.doc))
    r = run_check("eta", "q", "i", 2, 0)
    assert not r["pass"]
    assert "kaboom" in r["counterexample"]["reason"]
