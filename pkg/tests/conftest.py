from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from okaforge.algebra import GaussianRational, Polynomial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, st.integers(-8, 8), st.integers(1, 8))
gaussian_ints = st.builds(GaussianRational, small_ints, small_ints)
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(lambda g: not g.is_zero())


@st.composite
def polynomials(draw, max_degree=4, coeffs=gaussians):
    cs = draw(st.lists(coeffs, min_size=1, max_size=max_degree + 1))
    return Polynomial(cs)


@st.composite
def distinct_points(draw, min_size=1, max_size=4, elements=gaussians):
    return draw(st.lists(elements, min_size=min_size, max_size=max_size, unique=True))


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


@pytest.fixture
def Z():
    from okaforge.algebra import RationalFunction

    return RationalFunction.identity()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
