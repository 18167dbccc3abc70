"""Exact arithmetic over the Gaussian rationals."""

from .gaussian import GaussianRational, GR, parse_gaussian, ZERO, ONE, I
from .polynomial import Polynomial, poly_gcd, squarefree_decomposition, squarefree_part, Z
from .rational import RationalFunction, FactoredRational
from .bivariate import BivariatePolynomial, resultant_in_y, bivariate_gcd, resultant_vanishes

__all__ = [
    "GaussianRational",
    "GR",
    "parse_gaussian",
    "ZERO",
    "ONE",
    "I",
    "Polynomial",
    "poly_gcd",
    "squarefree_decomposition",
    "squarefree_part",
    "Z",
    "RationalFunction",
    "FactoredRational",
    "BivariatePolynomial",
    "resultant_in_y",
    "bivariate_gcd",
    "resultant_vanishes",
]
