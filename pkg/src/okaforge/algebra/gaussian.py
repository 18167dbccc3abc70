"""Exact complex numbers with rational real and imaginary parts.

A value is stored as ``(a + b*i) / d`` with integers ``a, b`` and ``d > 0``
and ``gcd(a, b, d) == 1``, so structural equality is value equality.
"""

import re
from fractions import Fraction
from math import gcd

import mpmath

__all__ = ["GaussianRational", "GR", "parse_gaussian"]


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class GaussianRational:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                re = re + GaussianRational(0, im)
            self._a, self._b, self._d = re._a, re._b, re._d
            self._hash = None
            return
        if isinstance(re, str) and im == 0:
            z = parse_gaussian(re)
            self._a, self._b, self._d = z._a, z._b, z._d
            self._hash = None
            return
        fr, fi = _as_fraction(re), _as_fraction(im)
        d = fr.denominator * fi.denominator // gcd(fr.denominator, fi.denominator)
        self._set(fr.numerator * (d // fr.denominator), fi.numerator * (d // fi.denominator), d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d
        self._hash = None

    @classmethod
    def _raw(cls, a, b, d):
        z = cls.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        z._set(a, b, d)
        return z

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact; pass a GaussianRational")
        return cls(value)

    # -- accessors ---------------------------------------------------------
    @property
    def re(self):
        return Fraction(self._a, self._d)

    @property
    def im(self):
        return Fraction(self._b, self._d)

    @property
    def parts(self):
        """``(a, b, d)`` with value ``(a + b*i) / d``."""
        return self._a, self._b, self._d

    def is_zero(self):
        return self._a == 0 and self._b == 0

    def __bool__(self):
        return not self.is_zero()

    def conj(self):
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self):
        """Squared modulus, an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def is_real(self):
        return self._b == 0

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = other._a, other._b, other._d
        if d1 == d2:
            return GaussianRational._raw(a1 + a2, b1 + b2, d1)
        return GaussianRational._raw(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return GaussianRational(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = other._a, other._b, other._d
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(a * d, -b * d, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def sort_key(self):
        return (self.re, self.im)

    # -- conversion ----------------------------------------------------------
    def to_mpc(self):
        return mpmath.mpc(mpmath.mpf(self._a) / self._d, mpmath.mpf(self._b) / self._d)

    def __complex__(self):
        return complex(self._a / self._d, self._b / self._d)

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        if re_ == 0:
            return _imag_str(im_)
        sign = "+" if im_ > 0 else "-"
        return f"{re_}{sign}{_imag_str(abs(im_))}"

    def to_expr(self):
        """Infix form accepted by the map-expression grammar."""
        re_, im_ = self.re, self.im
        if im_ == 0 and re_ >= 0 and re_.denominator == 1:
            return str(re_.numerator)
        parts = []
        if re_ != 0 or im_ == 0:
            parts.append(_frac_expr(re_))
        if im_ != 0:
            coeff = "" if abs(im_) == 1 else _frac_expr(abs(im_)) + "*"
            sign = "-" if im_ < 0 else ("+" if parts else "")
            parts.append(f"{sign}{coeff}i")
        return "(" + "".join(parts) + ")"

    def to_json(self):
        return {"re": _frac_json(self.re), "im": _frac_json(self.im)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, (int, str)):
            return cls.coerce(obj) if isinstance(obj, int) else parse_gaussian(obj)
        return cls(Fraction(str(obj.get("re", "0"))), Fraction(str(obj.get("im", "0"))))


def _frac_json(q):
    return f"{q.numerator}/{q.denominator}"


def _frac_expr(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _imag_str(q):
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{q}i"


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)

GR = GaussianRational

_TERM = re.compile(r"\s*([+-]?)\s*((?:\d+(?:/\d+)?)?)\s*(\*?\s*i)?\s*")


def parse_gaussian(text):
    """Parse forms such as ``3``, ``-1/2``, ``i``, ``2-3/4i``, ``1/2+i``, ``-i``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian rational")
    re_part, im_part = Fraction(0), Fraction(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        sign, num, imag = m.groups()
        if not num and not imag:
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        if seen and not sign:
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        value = Fraction(num) if num else Fraction(1)
        if sign == "-":
            value = -value
        if imag:
            im_part += value
        else:
            re_part += value
        seen = True
        pos = m.end()
    return GaussianRational(re_part, im_part)
