from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from okaforge.algebra import FactoredRational, GaussianRational as GR, Polynomial, RationalFunction
from okaforge.domains import Hole, PuncturedCircularDomain
from okaforge.doublepoints import DoublePointReport, FINITE, Pair
from okaforge.errors import AmbiguousBoundary, InvalidParameter, PreconditionError, ShiftTooLarge
from okaforge.maps import MapPair
from okaforge.projection import (
    boundary_clearance,
    build_reshape,
    is_generic_d,
    pick_generic_d,
    remediate_thetas,
    theta_certificate,
)

from conftest import nonzero_gaussians

Z = RationalFunction.identity()
I = GR(0, 1)


def poles(*pts, scale=1):
    return FactoredRational(scale, [(GR.coerce(p), -1) for p in pts])


def test_theta_fails_for_i_and_2i():
    cert = theta_certificate(poles(I, 2 * I), [I, 2 * I])
    assert cert.verdict == "fail"
    assert cert.theta == [I, -I]
    assert cert.failing_pairs == [(0, 1)]


def test_theta_fails_for_i_and_1_plus_i():
    b = [I, GR(1, 1)]
    cert = theta_certificate(poles(*b), b)
    assert cert.theta == [GR(-1), GR(1)] and not cert.passed


def test_extra_puncture_on_the_line_does_not_help():
    # 10 + i lies on the horizontal line through i and 1 + i
    b = [I, GR(1, 1)]
    assert not theta_certificate(poles(*b).times(GR(10, 1)), b).passed
    assert theta_certificate(poles(*b).times(GR(10, 2)), b).passed


def test_theta_needs_simple_poles():
    with pytest.raises(InvalidParameter):
        theta_certificate(FactoredRational(1, [(I, -2)]), [I])


def test_first_component_flavor():
    f = (Z - GR(9, 4)) / ((Z - I) * (Z - 2 * I))
    cert = theta_certificate(f, [I, 2 * I])
    assert cert.flavor == "C" and cert.passed


@settings(max_examples=30)
@given(nonzero_gaussians, st.lists(st.builds(GR, st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=4, unique=True))
def test_theta_invariant_under_rescaling(scale, b):
    g = poles(*b)
    assert theta_certificate(g, b).verdict == theta_certificate(poles(*b, scale=scale), b).verdict


def test_remediation():
    b = [I, 2 * I]
    g2, d, cert = remediate_thetas(poles(*b), b)
    assert cert.passed and d is not None and d.norm() >= 64
    assert g2.multiplicity(d) == 1
    assert theta_certificate(g2, b).passed
    with pytest.raises(PreconditionError):
        remediate_thetas(g2, b)
    same, none, vacuous = remediate_thetas(poles(I), [I])
    assert none is None and vacuous.passed


def test_generic_d_examples():
    assert is_generic_d(GR(11, 1), [I, -I], 10)
    assert not is_generic_d(GR(0, 11), [I, -I], 10)
    assert not is_generic_d(GR(5), [GR(0), GR(1)], 1)
    assert is_generic_d(GR(5, 1), [GR(0), GR(1)], 1)
    assert is_generic_d(GR(8), [I], 8)


@given(st.integers(0, 500))
def test_pick_generic_d_is_deterministic_and_generic(seed):
    pts = [I, GR(0, Fraction(1, 4)), GR(Fraction(1, 2), Fraction(1, 8))]
    d = pick_generic_d(pts, 8, seed=seed)
    assert d == pick_generic_d(pts, 8, seed=seed)
    assert is_generic_d(d, pts, 8)


def _report(*pairs):
    rep = DoublePointReport(FINITE)
    for xv, yv in pairs:
        rep.pairs.append(Pair(mpmath.mpc(xv), mpmath.mpc(yv), 0.0, 1e-20))
    return rep


def test_boundary_clearance():
    D = PuncturedCircularDomain([Hole(GR(0), Fraction(1, 4))], [GR(Fraction(1, 2))])
    psi = MapPair(Z, FactoredRational(1, [(I, -1)]))
    assert boundary_clearance(psi, _report(), D) == (True, [])
    assert boundary_clearance(psi, _report((0.5j, -0.6)), D)[0]
    ok, wit = boundary_clearance(psi, _report((1j, 0.5)), D)
    assert not ok and wit[0]["circle"] == "unit circle"
    ok, wit = boundary_clearance(psi, _report((0.25, 0.6)), D)
    assert not ok and wit[0]["circle"] == "hole 0"


def test_boundary_clearance_ambiguity():
    D = PuncturedCircularDomain([], [])
    rep = DoublePointReport(FINITE)
    rep.pairs.append(Pair(mpmath.mpc(1.0 + 1e-5), mpmath.mpc(0.3), 0.0, 1e-3))
    with pytest.raises(AmbiguousBoundary):
        boundary_clearance(MapPair(Z, FactoredRational(1, [(I, -1)])), rep, D)
    with pytest.raises(PreconditionError):
        boundary_clearance(None, DoublePointReport("InfiniteCommonComponent"), D)


def test_reshape_closed_form():
    r = build_reshape([GR(0)], GR(1), GR(Fraction(99, 100)))
    assert r.v == Polynomial([GR(0), GR(Fraction(1, 99))])
    assert r.rho(GR(Fraction(99, 100))) == GR(1)
    assert r.derivative_bound == pytest.approx(1 / 99, rel=1e-9)


def test_reshape_identity_and_errors():
    r = build_reshape([GR(0)], GR(1), GR(1))
    assert r.v.is_zero() and r.rho(GR(3, 2)) == GR(3, 2)
    with pytest.raises(InvalidParameter):
        build_reshape([GR(0), GR(Fraction(1, 2))], GR(1), GR(Fraction(1, 2)))
    with pytest.raises(ShiftTooLarge):
        build_reshape([GR(0)], GR(1), GR(Fraction(1, 10)))


@settings(max_examples=25)
@given(st.lists(st.builds(GR, st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=3, unique=True),
       st.integers(90, 99))
def test_reshape_vanishes_at_punctures(pts, j):
    x = GR(0, 1)
    xj = GR(0, Fraction(j, 100))
    if xj in pts:
        return
    try:
        r = build_reshape(pts, x, xj)
    except ShiftTooLarge:
        return
    assert r.rho(xj) == x
    for p in pts:
        assert r.v(p).is_zero()
