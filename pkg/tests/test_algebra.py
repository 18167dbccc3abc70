from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from okaforge.algebra import (
    BivariatePolynomial,
    FactoredRational,
    GaussianRational as GR,
    Polynomial,
    RationalFunction,
    bivariate_gcd,
    parse_gaussian,
    poly_gcd,
    resultant_in_y,
    squarefree_decomposition,
)
from okaforge.errors import DegenerateInput

from conftest import gaussians, nonzero_gaussians, polynomials, small_ints

X, Y, ZS = sympy.symbols("x y z")


def to_sympy(F):
    return sum(sympy.Rational(c.re.numerator, c.re.denominator) * X ** i * Y ** j
               + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator) * X ** i * Y ** j
               for (i, j), c in F.terms.items())


def poly_to_sympy(p, var=X):
    return sum((sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator))
               * var ** k for k, c in enumerate(p.coeffs))


# -- Gaussian rationals -----------------------------------------------------------------


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == GR(0)


@given(nonzero_gaussians)
def test_inverse(a):
    assert a * a.inverse() == GR(1)
    assert (a.conj() * a).im == 0


@given(gaussians)
def test_json_and_expr_round_trip(a):
    assert GR.from_json(a.to_json()) == a


@pytest.mark.parametrize("text,expected", [
    ("3", GR(3)), ("-1/2", GR(Fraction(-1, 2))), ("i", GR(0, 1)), ("-i", GR(0, -1)),
    ("2-3/4i", GR(2, Fraction(-3, 4))), ("1/2+i", GR(Fraction(1, 2), 1)),
])
def test_parse_gaussian(text, expected):
    assert parse_gaussian(text) == expected


def test_parse_gaussian_rejects_garbage():
    with pytest.raises(ValueError):
        parse_gaussian("1+")


# -- univariate polynomials -------------------------------------------------------------


@given(polynomials(), polynomials())
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polynomials(3), polynomials(3), polynomials(2))
def test_gcd_contains_common_factor(a, b, c):
    if c.degree < 1 or a.is_zero() or b.is_zero():
        return
    g = poly_gcd(a * c, b * c)
    assert c.divides(g)
    assert g.divides(a * c) and g.divides(b * c)


@given(st.lists(st.builds(GR, small_ints, small_ints), min_size=1, max_size=5))
def test_squarefree_decomposition_rebuilds(roots):
    p = Polynomial.from_roots(roots)
    parts = squarefree_decomposition(p)
    rebuilt = Polynomial((1,))
    for f, k in parts:
        rebuilt = rebuilt * f ** k
    assert rebuilt == p.monic()
    for r in set(roots):
        assert p.multiplicity(r) == roots.count(r)


def test_shift_and_compose():
    p = Polynomial([GR(1), GR(0), GR(1)])  # z^2 + 1
    assert p.shift(GR(2)) == p.compose(Polynomial([GR(2), GR(1)]))


# -- rational functions -------------------------------------------------------------------


def test_rational_orders_and_mobius():
    z = RationalFunction.identity()
    f = 1 / ((z - 1) * (z + 1) ** 2)
    assert f.order_at(GR(-1)) == -2
    assert f.order_at_infinity() == 3
    assert ((z - 1) / (z + 2)).mobius_coefficients() is not None
    assert (z * z).mobius_coefficients() is None


@given(nonzero_gaussians, st.lists(st.tuples(st.builds(GR, small_ints, small_ints), st.integers(-3, 3)), max_size=4))
def test_factored_rational_round_trip(scale, factors):
    g = FactoredRational(scale, factors)
    rf = g.to_rational()
    back = FactoredRational.from_rational(rf, g.roots)
    assert back.to_rational() == rf
    assert FactoredRational.from_json(g.to_json()) == g


def test_log_derivative_numerator():
    g = FactoredRational(GR(1), [(GR(0), 2), (GR(1), -1)])  # z^2/(z-1)
    # g'/g = 2/z - 1/(z-1) = (z - 2)/(z(z-1))
    assert g.log_derivative_numerator() == Polynomial([GR(-2), GR(1)])


# -- bivariate layer ---------------------------------------------------------------------------


def test_divided_difference():
    z = RationalFunction.identity()
    f = z + 1 / z
    p, q = f.num, f.den
    P = BivariatePolynomial.from_univariate(p, "x") * BivariatePolynomial.from_univariate(q, "y")
    Q = BivariatePolynomial.from_univariate(p, "y") * BivariatePolynomial.from_univariate(q, "x")
    F = (P - Q).divide_by_x_minus_y()
    assert sympy.expand(to_sympy(F) - (X * Y - 1)) == 0


@given(polynomials(2, gaussians), polynomials(2, gaussians), polynomials(2, gaussians), polynomials(2, gaussians))
def test_resultant_matches_sympy(a, b, c, d):
    F = BivariatePolynomial.from_univariate(a, "x") + BivariatePolynomial.from_univariate(b, "y") * BivariatePolynomial.y()
    G = BivariatePolynomial.from_univariate(c, "x") * BivariatePolynomial.y() ** 2 + BivariatePolynomial.from_univariate(d, "y")
    if F.degree_y < 1 or G.degree_y < 1:
        return
    R = resultant_in_y(F, G, normalize=False)
    expected = sympy.expand(sympy.resultant(to_sympy(F), to_sympy(G), Y))
    assert sympy.expand(poly_to_sympy(R) - expected) == 0


def test_resultant_monic_by_default():
    F = BivariatePolynomial.x() * 3 - BivariatePolynomial.y()
    G = BivariatePolynomial.y() ** 2 - BivariatePolynomial.constant(1)
    R = resultant_in_y(F, G)
    assert R.lc == GR(1)
    assert R == Polynomial([GR(Fraction(-1, 9)), GR(0), GR(1)])


def test_resultant_needs_y():
    with pytest.raises(DegenerateInput):
        resultant_in_y(BivariatePolynomial.x(), BivariatePolynomial.y())


def test_bivariate_gcd_detects_common_factor():
    x, y = BivariatePolynomial.x(), BivariatePolynomial.y()
    common = x + y
    A = common * (x * y - 1)
    B = common * (x - 2 * y + 3)
    g = bivariate_gcd(A, B)
    assert g.total_degree == 1
    assert sympy.simplify(to_sympy(g) / (X + Y)).is_number
    assert bivariate_gcd(x * y - 1, x - y + 3).is_constant()
