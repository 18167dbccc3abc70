import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from okaforge.algebra import GaussianRational as GR, Polynomial
from okaforge.errors import AmbiguousRoot
from okaforge.numeric import CertifiedRoot, filter_points, find_roots

from conftest import small_ints


def test_z_squared_plus_one():
    roots = find_roots(Polynomial([GR(1), GR(0), GR(1)]), precision=64)
    assert len(roots) == 2
    assert all(r.radius < 1e-20 for r in roots)
    assert any(r.contains(GR(0, 1)) for r in roots) and any(r.contains(GR(0, -1)) for r in roots)


def test_triple_root_reported_once():
    roots = find_roots(Polynomial.linear(GR(1)) ** 3)
    assert len(roots) == 1 and roots[0].multiplicity == 3
    assert roots[0].contains(GR(1))


def test_callable_coefficients_with_pi():
    # z^2 + 2 pi i z - 1: roots -pi i +- sqrt(1 - pi^2)
    def coeffs(prec):
        with mpmath.workprec(prec):
            return [mpmath.mpc(-1), 2j * mpmath.pi, mpmath.mpc(1)]

    roots = find_roots(coeffs, precision=64)
    with mpmath.workprec(200):
        expected = [-1j * mpmath.pi + s * mpmath.sqrt(1 - mpmath.pi ** 2) for s in (1, -1)]
        for e in expected:
            assert min(abs(r.center - e) for r in roots) < 1e-15


@settings(max_examples=40)
@given(st.lists(st.builds(GR, small_ints, small_ints), min_size=1, max_size=6, unique=True))
def test_discs_contain_exact_roots_and_are_disjoint(points):
    roots = find_roots(Polynomial.from_roots(points))
    assert len(roots) == len(points)
    for p in points:
        assert sum(r.contains(p) for r in roots) == 1
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            assert abs(roots[i].center - roots[j].center) > roots[i].radius + roots[j].radius


def test_radius_target_tightens():
    p = Polynomial.from_roots([GR(1, 1), GR(-2), GR(0, 3)])
    roots = find_roots(p, radius_target=1e-40)
    assert all(r.radius < 1e-40 for r in roots)


def test_filter_points_splits_and_flags_ambiguity():
    roots = find_roots(Polynomial.from_roots([GR(0), GR(2)]))
    kept, matched = filter_points(roots, [GR(0)], 1e-10)
    assert len(kept) == 1 and kept[0].contains(GR(2))
    assert matched[0][1] == GR(0)
    fuzzy = [CertifiedRoot(mpmath.mpc(1e-3), mpmath.mpf(1e-2))]
    with pytest.raises(AmbiguousRoot):
        filter_points(fuzzy, [GR(0)], 5e-3)


def test_to_json_is_stable():
    r = find_roots(Polynomial([GR(-2), GR(0), GR(1)]))[0]
    assert r.to_json() == r.to_json()
