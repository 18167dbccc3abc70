"""Univariate polynomials over the Gaussian rationals."""

from math import comb

import mpmath

from .gaussian import GaussianRational, ONE, ZERO

__all__ = ["Polynomial", "poly_gcd", "squarefree_decomposition", "Z"]


class Polynomial:
    """Dense polynomial, coefficients stored lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _trusted(cls, cs):
        cs = list(cs)
        while cs and cs[-1].is_zero():
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-GaussianRational.coerce(r), 1))
        return p

    @classmethod
    def linear(cls, root):
        """``z - root``."""
        return cls((-GaussianRational.coerce(root), 1))

    # -- basic properties ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, GaussianRational)):
            return self.coeffs == Polynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self.to_expr()!r})"

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Polynomial._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._trusted([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_poly(other) - self

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        if len(b) == 1:
            s = b[0]
            return Polynomial._trusted([c * s for c in a])
        if len(a) == 1:
            s = a[0]
            return Polynomial._trusted([c * s for c in b])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Polynomial._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, s):
        s = GaussianRational.coerce(s)
        return Polynomial._trusted([c * s for c in self.coeffs])

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = other.lc.inverse()
        if len(rem) - 1 < db:
            return Polynomial(), self
        quot = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            q = c * inv_lc
            quot[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - q * bc[j]
        return Polynomial._trusted(quot), Polynomial._trusted(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other):
        """True if ``self`` divides ``other``."""
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.lc.inverse())

    def derivative(self):
        return Polynomial._trusted([c * k for k, c in enumerate(self.coeffs)][1:])

    # -- evaluation ------------------------------------------------------------
    def __call__(self, z):
        z = GaussianRational.coerce(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_mp(self, z):
        acc = mpmath.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_mpc()
        return acc

    def compose(self, other):
        other = _coerce_poly(other)
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial((c,))
        return acc

    def shift(self, s):
        """``p(z + s)`` for an exact shift ``s``."""
        s = GaussianRational.coerce(s)
        n = len(self.coeffs)
        out = [ZERO] * n
        spow = [ONE]
        for _ in range(n):
            spow.append(spow[-1] * s)
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for j in range(k + 1):
                out[j] = out[j] + c * comb(k, j) * spow[k - j]
        return Polynomial._trusted(out)

    def multiplicity(self, root):
        """Order of vanishing at an exact point."""
        if self.is_zero():
            raise ValueError("zero polynomial has no finite order")
        lin = Polynomial.linear(root)
        k, p = 0, self
        while True:
            q, r = divmod(p, lin)
            if not r.is_zero():
                return k
            k, p = k + 1, q

    def to_mp_coeffs(self):
        return [c.to_mpc() for c in self.coeffs]

    def to_complex_coeffs(self):
        return [complex(c) for c in self.coeffs]

    def to_expr(self, var="z"):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(c.to_expr())
            elif c == ONE:
                terms.append(mono)
            elif c == -ONE:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c.to_expr()}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, obj):
        return cls([GaussianRational.from_json(c) for c in obj])


def _coerce_poly(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, GaussianRational)):
        return Polynomial((value,))
    try:
        return Polynomial((GaussianRational.coerce(value),))
    except TypeError:
        return NotImplemented


Z = Polynomial((0, 1))


def poly_gcd(a, b):
    """Monic greatest common divisor; raises if both inputs are zero."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_decomposition(p):
    """Yun's algorithm: list of ``(factor, multiplicity)`` with monic coprime factors."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b_next = b.exact_div(a)
        c = d.exact_div(a)
        if a.degree > 0:
            out.append((a.monic(), k))
        b = b_next
        d = c - b.derivative()
        k += 1
    return out


def squarefree_part(p):
    return p.exact_div(poly_gcd(p, p.derivative())).monic()
