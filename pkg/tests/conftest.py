import random

import pytest
from gmpy2 import mpq
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from moufplane.fields import F2T, Q, QSQRT2, QSqrt2Element
from moufplane.octonion import default_algebra

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


rationals = st.builds(mpq, st.integers(-40, 40), st.integers(1, 40))
qsqrt2_elems = st.builds(QSqrt2Element, rationals, rationals)
# F2(t) elements come from the library's own sampler, driven by a seed
f2t_elems = st.integers(0, 2**32).map(lambda s: F2T.random(random.Random(s)))

FIELD_STRATEGIES = {"q": rationals, "qsqrt2": qsqrt2_elems, "f2t": f2t_elems}


def octonions(field):
    alg = default_algebra(field)
    return st.lists(FIELD_STRATEGIES[field.name], min_size=8, max_size=8).map(alg.element)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(params=[Q, QSQRT2, F2T], ids=lambda f: f.name)
def field(request):
    return request.param


@pytest.fixture
def alg(field):
    return default_algebra(field)


QALG = default_algebra(Q)


def e(i, alg=QALG):
    return alg.basis(i)


def q(x):
    return mpq(x)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
