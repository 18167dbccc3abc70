import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from okaforge.algebra import BivariatePolynomial, FactoredRational, GaussianRational as GR, Polynomial, RationalFunction
from okaforge.domains import PuncturedPlane
from okaforge.doublepoints import (
    FINITE,
    INFINITE,
    TRUNCATED,
    check_fiber_injectivity,
    common_component,
    double_points,
    enumerate_exp,
    enumerate_rational,
    fiber_values_regular,
    find_regular_value,
    is_regular_value,
    pair_system,
)
from okaforge.errors import InvalidParameter, PreconditionError
from okaforge.maps import PI_SCALAR, ExpLinear, MapPair, Scalar

Z = RationalFunction.identity()
x, y = BivariatePolynomial.x(), BivariatePolynomial.y()
PI_I = Scalar(GR(0, 1), 1)


def plane(*pts):
    return PuncturedPlane([GR(p) for p in pts])


def fr(*factors):
    return FactoredRational(1, [(GR(r), m) for r, m in factors])


def proportional(A, B):
    """``A = c B`` for a nonzero constant ``c``."""
    (i, j), a = next(iter(A.terms.items()))
    b = B.terms.get((i, j))
    return b is not None and A == B.scale(a / b)


# -- pair systems ----------------------------------------------------------------------------


def test_pair_system_examples():
    assert proportional(pair_system(Z * Z, fr((0, 3))).Ftilde, x + y)
    assert proportional(pair_system(Z + 1 / Z, fr((0, 1))).Ftilde, x * y - 1)
    assert proportional(pair_system(Z, fr((0, 3))).Gtilde, x * x + x * y + y * y)


def test_pair_system_rejects_constants():
    with pytest.raises(InvalidParameter):
        pair_system(RationalFunction(Polynomial.constant(2)), fr((0, 1)))


@pytest.mark.parametrize("f,finiteness", [
    (1 / ((Z - 1) * (Z + 1)), INFINITE),
    (1 / ((Z - 1) * (Z - 2)), FINITE),
    (1 / ((Z - 1) * (Z + 1) ** 2), FINITE),
])
def test_common_component_examples(f, finiteness):
    verdict = common_component(pair_system(f, fr((0, 2))))
    assert verdict.finiteness == finiteness
    if finiteness == INFINITE:
        assert proportional(verdict.witness, x + y)


@settings(max_examples=20)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=3), st.lists(st.integers(-4, 4), min_size=2, max_size=3))
def test_even_pairs_share_a_component(pc, gc):
    # f and g both functions of z^2
    f = RationalFunction(Polynomial([GR(c) if k % 2 == 0 else GR(0) for k, c in enumerate(sum(([c, 0] for c in pc), []))]))
    if f.is_constant():
        return
    g = fr((1, 1), (-1, 1))  # z^2 - 1
    assert common_component(pair_system(f, g)).finiteness == INFINITE


# -- rational enumeration -----------------------------------------------------------------------


@pytest.mark.parametrize("f,punctures", [
    (1 / ((Z - 1) * (Z + 1) ** 2), (0, 1, -1)),
    ((Z ** 3 + GR(Fraction(1, 3), 2)) / ((Z - 1) * (Z + 1)), (0, 1, -1)),
    (1 / ((Z - 1) * (Z - 2)), (0, 1, 2)),
])
def test_embeddings_have_no_pairs(f, punctures):
    report = enumerate_rational(f, fr((0, 2)), plane(*punctures))
    assert report.finiteness == FINITE and report.pairs == []


def test_enumeration_needs_finite_verdict():
    with pytest.raises(PreconditionError):
        enumerate_rational(1 / ((Z - 1) * (Z + 1)), fr((0, 2)), plane(0, 1, -1))


def test_known_pairs_are_found():
    # f = z^2, g = z^3 - 3z: y = -x and x^3 - 3x = 0 give the pair (-sqrt3, sqrt3)
    f = Z * Z
    g3 = RationalFunction(Polynomial([GR(0), GR(-3), GR(0), GR(1)]))
    report = enumerate_rational(f, g3, plane())
    assert len(report.pairs) == 1
    p = report.pairs[0]
    assert abs(abs(p.x) - mpmath.sqrt(3)) < 1e-10 and abs(p.x + p.y) < 1e-10
    assert report.max_residual <= 1e-10


def test_swap_symmetry_of_report():
    f = Z ** 3 - 2 * Z
    g = RationalFunction(Polynomial([GR(1), GR(1), GR(0), GR(1)]))
    forward = enumerate_rational(f, g, plane())
    backward = enumerate_rational(g, f, plane())
    key = lambda p: (round(float(p.x.real), 8), round(float(p.x.imag), 8), round(float(p.y.real), 8), round(float(p.y.imag), 8))
    assert sorted(map(key, forward.pairs)) == sorted(map(key, backward.pairs))
    seen = set()
    for p in forward.pairs:
        k = frozenset([key(p)[:2], key(p)[2:]])
        assert k not in seen
        seen.add(k)


def test_double_points_dispatch():
    r = double_points(MapPair(1 / ((Z - 1) * (Z + 1)), fr((0, 2))), plane(0, 1, -1))
    assert r.finiteness == INFINITE and r.witness is not None
    r = double_points(MapPair(Z, ExpLinear(1)), plane(0), K=3)
    assert r.finiteness == TRUNCATED and r.pairs == []


# -- exponential branch ----------------------------------------------------------------------------


def test_inverse_sum_first_shift():
    report = enumerate_exp(Z + 1 / Z, PI_I, plane(0), K=1)
    got = sorted((float(p.x.real), float(p.y.real)) for p in report.pairs)
    s2 = 2 ** 0.5
    want = sorted([(-1 - s2, 1 - s2), (-1 + s2, 1 + s2)])
    assert [v for pair in got for v in pair] == pytest.approx([v for pair in want for v in pair], abs=1e-12)


def test_null_construction_pairs_match_quadratic():
    report = enumerate_exp((Z - 1) ** 2 / Z, Scalar(GR(1)), plane(0), K=1)
    with mpmath.workprec(200):
        roots = [1j * (-mpmath.pi + s * mpmath.sqrt(mpmath.pi ** 2 - 1)) for s in (1, -1)]
        xs = [p.x if abs(p.y - p.x - 2j * mpmath.pi) < 1e-10 else p.y for p in report.pairs]
        for r in roots:
            assert min(abs(v - r) for v in xs) < 1e-10


def test_enumerate_exp_monotone_in_K():
    f = (Z - 1) ** 2 / Z
    short = enumerate_exp(f, Scalar(GR(1)), plane(0), K=3)
    longer = enumerate_exp(f, Scalar(GR(1)), plane(0), K=4)
    key = lambda p: (p.k, mpmath.nstr(p.x, 15), mpmath.nstr(p.y, 15))
    assert [key(p) for p in short.pairs] == [key(p) for p in longer.pairs if p.k <= 3]


def test_enumerate_exp_validates():
    with pytest.raises(InvalidParameter):
        enumerate_exp(Z, PI_SCALAR, plane(0), K=0)


def test_exp_shift_hitting_a_puncture_is_excluded():
    # f = z(z - 2): f(z) = f(z + 2) at z = 0, a puncture; the shift by 2 comes from lam = pi i
    report = enumerate_exp(Z * (Z - 2), PI_I, plane(0), K=1)
    assert report.pairs == []
    assert report.excluded


# -- regular values and fibres ------------------------------------------------------------------------


def test_regular_value_examples():
    G = FactoredRational(1, [(GR(0), 1), (GR(1), 1)])
    assert not is_regular_value(G, plane(), GR(Fraction(-1, 4)))[0]
    assert is_regular_value(G, plane(), GR(2))[0]
    a = find_regular_value(fr((0, 2)), plane(0, 1, -1), seed=3)
    assert is_regular_value(fr((0, 2)), plane(0, 1, -1), a)[0]


def test_mobius_every_value_is_regular():
    g = fr((1, 1), (2, -1))
    a = find_regular_value(g, plane(1, 2), seed=0)
    assert is_regular_value(g, plane(1, 2), a)[0]


def test_fiber_injectivity_examples():
    sq = fr((0, 2))
    bad = check_fiber_injectivity(Z * Z, sq, GR(4))
    assert not bad.passed and bad.collision is not None
    assert sorted(round(float(v.real)) for v in bad.collision) == [-2, 2]
    good = check_fiber_injectivity((Z ** 3 + 1) / ((Z - 1) * (Z + 1)), sq, GR(9))
    assert good.passed
    assert check_fiber_injectivity(Z, sq, GR(9)).passed


def test_fiber_values_regular():
    f = (Z ** 3 + 1) / ((Z - 1) * (Z + 1))
    assert fiber_values_regular(f, fr((0, 2)), GR(9))


@settings(max_examples=15)
@given(st.integers(0, 1000))
def test_report_json_is_deterministic(seed):
    rng = random.Random(seed)
    c = GR(rng.randint(-3, 3), rng.randint(1, 3))
    f = (Z ** 3 + c) / ((Z - 1) * (Z + 1))
    a = enumerate_rational(f, fr((0, 2)), plane(0, 1, -1)).to_json()
    b = enumerate_rational(f, fr((0, 2)), plane(0, 1, -1)).to_json()
    assert a == b
