import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from okaforge.algebra import FactoredRational, GaussianRational as GR, Polynomial, RationalFunction
from okaforge.domains import PuncturedPlane, WindingClass
from okaforge.errors import InvalidParameter
from okaforge.maps import PI_SCALAR, ExpLinear, MapPair, Scalar
from okaforge.numeric import find_roots
from okaforge.verifiers import (
    check_immersion,
    check_injective_by_form,
    check_properness,
    check_winding,
    guard_not_proper_first,
    guard_symmetry,
)

from conftest import nonzero_gaussians, small_ints

Z = RationalFunction.identity()


def plane(*pts):
    return PuncturedPlane([GR(p) for p in pts])


def fr(*factors):
    return FactoredRational(1, [(GR(r), m) for r, m in factors])


# -- immersion -----------------------------------------------------------------------------


def test_identity_first_component_is_immersion():
    assert check_immersion(MapPair(Z, fr((0, 3))), plane(0)).passed


def test_common_critical_point_fails_with_witness():
    cert = check_immersion(MapPair(Z * Z, fr((1, 2), (-1, 2))), plane(1, -1))
    assert cert.verdict == "fail"
    assert cert.witnesses[0]["point"] == GR(0).to_json()


def test_literal_critical_point_at_puncture_is_harmless():
    # (z^2, (z-1)^2) on C minus {1}: g'/g has no zero, so no common critical point
    assert check_immersion(MapPair(Z * Z, fr((1, 2))), plane(1)).passed


def test_null_construction_is_immersion():
    psi = MapPair((Z - 1) ** 2 / Z, ExpLinear(1))
    assert check_immersion(psi, plane(0)).passed


@settings(max_examples=30)
@given(st.lists(st.builds(GR, small_ints, small_ints), min_size=2, max_size=4, unique=True),
       st.lists(st.builds(GR, small_ints, small_ints), min_size=1, max_size=3))
def test_immersion_matches_numeric_oracle(g_roots, f_roots):
    # zeros of the C*-component sit at punctures, as they must
    X = PuncturedPlane(g_roots)
    f = RationalFunction(Polynomial.from_roots(f_roots)) * Z
    g = FactoredRational(1, [(r, 1 + k % 2) for k, r in enumerate(g_roots)])
    cert = check_immersion(MapPair(f, g), X)
    Nf, Ng = f.derivative_numerator(), g.log_derivative_numerator()
    common = False
    if Ng.degree >= 1:
        for r in find_roots(Ng):
            x = r.center
            if min(abs(x - a.to_mpc()) for a in g_roots) < 1e-8:
                continue
            if abs(f.derivative().eval_mp(x)) < 1e-8 and abs(g.to_rational().derivative().eval_mp(x)) < 1e-8:
                common = True
    assert cert.passed == (not common)


# -- properness ----------------------------------------------------------------------------


def test_section2_example_is_proper():
    f = 1 / ((Z - 1) * (Z - 2))
    assert check_properness(MapPair(f, fr((0, 2))), plane(0, 1, 2)).passed


def test_single_factor_is_proper():
    assert check_properness(MapPair(Z, fr((3, 1))), plane(3)).passed


def test_finite_at_puncture_fails():
    cert = check_properness(MapPair((Z - 1) / Z, fr((2, 1))), plane(0, 3))
    assert cert.verdict == "fail"
    assert any(w.get("point") == GR(3).to_json() for w in cert.witnesses)


def test_exp_does_not_count_as_escape_at_a_puncture():
    cert = check_properness(MapPair(Z, ExpLinear(1)), plane(0))
    assert cert.verdict == "fail"


@settings(max_examples=30)
@given(nonzero_gaussians, st.builds(GR, small_ints, small_ints))
def test_properness_invariant_under_affine_change(alpha, beta):
    X = plane(0, 1, 2)
    cases = [MapPair(1 / ((Z - 1) * (Z - 2)), fr((0, 2))), MapPair((Z - 1) / Z, fr((2, 1)))]
    phi_inv = (Z - beta) / RationalFunction(Polynomial.constant(alpha))
    for psi in cases:
        first = psi.first.compose(phi_inv)
        second = FactoredRational(1, [(alpha * r + beta, m) for r, m in psi.second.factors])
        Y = PuncturedPlane([alpha * a + beta for a in X.punctures])
        assert check_properness(MapPair(first, second), Y).verdict == check_properness(psi, X).verdict


# -- injectivity by form and winding ---------------------------------------------------------


def test_injective_by_form():
    assert check_injective_by_form(MapPair(Z, fr((0, 2)))).passed
    assert check_injective_by_form(MapPair(Z * Z, fr((1, 1), (-1, -1)))).passed
    cert = check_injective_by_form(MapPair(Z + 1 / Z, ExpLinear(Scalar(GR(0, 1), 1))))
    assert cert.verdict == "fail" and cert.witnesses


def test_winding_certificate():
    X = plane(0, 1)
    psi = MapPair(Z, fr((0, 2), (1, -1)))
    assert check_winding(psi, X, WindingClass([2, -1])).passed
    bad = check_winding(psi, X, WindingClass([1, -1]))
    assert bad.verdict == "fail" and bad.witnesses[0]["puncture"] == 0


# -- guards -----------------------------------------------------------------------------------


@pytest.mark.parametrize("f,outcome", [
    (Z + 1 / Z, "NotInjectivePair"),
    ((Z * Z + 1) / Z, "NotInjectivePair"),
    (Z, "Pass"),
])
def test_guard_not_proper_first(f, outcome):
    cert = guard_not_proper_first(f)
    assert cert.outcome == outcome
    if outcome == "Pass":
        assert "essential" in cert.note


def test_guard_not_proper_first_rejects_poles_off_zero():
    with pytest.raises(InvalidParameter):
        guard_not_proper_first(1 / (Z - 1))


@pytest.mark.parametrize("f,sigma,outcome", [
    (Z + 1 / Z, 1 / Z, "NoNullInjectionWithThisF"),
    (Z + 1 / Z, Z, "Trivial"),
    (Z * Z, 1 / Z, "NotASymmetry"),
])
def test_guard_symmetry(f, sigma, outcome):
    assert guard_symmetry(f, sigma).outcome == outcome


def test_guard_symmetry_needs_self_map():
    with pytest.raises(InvalidParameter):
        guard_symmetry(Z, Z + 1)


def test_blocking_guard_agrees_with_enumeration():
    from okaforge.doublepoints import enumerate_exp

    f = Z + 1 / Z
    assert guard_not_proper_first(f).outcome == "NotInjectivePair"
    for lam in (Scalar(GR(1, 2)), PI_SCALAR, Scalar(GR(0, 1))):
        report = enumerate_exp(f, lam, plane(0), K=2)
        assert report.pairs
        assert all(p.residual < 1e-8 for p in report.pairs)
