"""Rational functions in lowest terms, and rational functions in factored form."""

from dataclasses import dataclass

from .gaussian import GaussianRational, ONE
from .polynomial import Polynomial, poly_gcd

__all__ = ["RationalFunction", "FactoredRational"]


class RationalFunction:
    """``num / den`` with ``den`` monic and ``gcd(num, den) == 1``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial.constant(num)
        den = Polynomial((1,)) if den is None else den
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial((1,))
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != ONE:
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def identity(cls):
        return cls(Polynomial((0, 1)))

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.to_expr()!r})"

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self):
        return self.den.degree == 0

    def __add__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce_rf(other))

    def __rsub__(self, other):
        return _coerce_rf(other) - self

    def __mul__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("only integer powers are supported")
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def derivative_numerator(self):
        """``p'q - pq'`` for ``self = p/q``."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def __call__(self, z):
        z = GaussianRational.coerce(z)
        d = self.den(z)
        if d.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(z) / d

    def eval_mp(self, z):
        return self.num.eval_mp(z) / self.den.eval_mp(z)

    def order_at(self, point):
        """Order of vanishing at a finite point (negative for poles)."""
        return self.num.multiplicity(point) - self.den.multiplicity(point)

    def order_at_infinity(self):
        return self.den.degree - self.num.degree

    def compose(self, other):
        """Exact ``self(other(z))`` for a rational ``other``."""
        other = _coerce_rf(other)
        u, v = other.num, other.den
        d = max(self.num.degree, self.den.degree)
        upow = [Polynomial((1,))]
        vpow = [Polynomial((1,))]
        for _ in range(d):
            upow.append(upow[-1] * u)
            vpow.append(vpow[-1] * v)

        def homog(p):
            acc = Polynomial()
            for k, c in enumerate(p.coeffs):
                if not c.is_zero():
                    acc = acc + (upow[k] * vpow[d - k]).scale(c)
            return acc

        return RationalFunction(homog(self.num), homog(self.den))

    def mobius_coefficients(self):
        """``(a, b, c, d)`` with ``self = (a z + b)/(c z + d)`` if degrees allow, else None."""
        if self.num.degree > 1 or self.den.degree > 1:
            return None
        return self.num[1], self.num[0], self.den[1], self.den[0]

    def to_expr(self):
        if self.den.degree == 0:
            return self.num.to_expr()
        return f"({self.num.to_expr()})/({self.den.to_expr()})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(Polynomial.from_json(obj["num"]), Polynomial.from_json(obj.get("den", [{"re": "1/1", "im": "0/1"}])))


def _coerce_rf(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    if isinstance(value, FactoredRational):
        return value.to_rational()
    return RationalFunction(Polynomial.constant(GaussianRational.coerce(value)))


@dataclass(frozen=True)
class FactoredRational:
    """``scale * prod (z - root)^mult`` with distinct roots and nonzero multiplicities."""

    scale: GaussianRational
    factors: tuple

    def __init__(self, scale=ONE, factors=()):
        scale = GaussianRational.coerce(scale)
        if scale.is_zero():
            raise ValueError("factored rational needs a nonzero scale")
        merged = {}
        order = []
        for root, mult in factors:
            root = GaussianRational.coerce(root)
            if not isinstance(mult, int):
                raise TypeError("multiplicities must be integers")
            if root not in merged:
                order.append(root)
                merged[root] = 0
            merged[root] += mult
        clean = tuple((r, merged[r]) for r in order if merged[r] != 0)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "factors", clean)

    @property
    def roots(self):
        return [r for r, _ in self.factors]

    def multiplicity(self, point):
        point = GaussianRational.coerce(point)
        for r, m in self.factors:
            if r == point:
                return m
        return 0

    def order_at_infinity(self):
        return -sum(m for _, m in self.factors)

    def is_constant(self):
        return not self.factors

    def numerator(self):
        p = Polynomial.constant(self.scale)
        for r, m in self.factors:
            if m > 0:
                p = p * Polynomial.linear(r) ** m
        return p

    def denominator(self):
        q = Polynomial((1,))
        for r, m in self.factors:
            if m < 0:
                q = q * Polynomial.linear(r) ** (-m)
        return q

    def to_rational(self):
        return RationalFunction(self.numerator(), self.denominator())

    def log_derivative_numerator(self):
        """Numerator of ``g'/g = sum m_j / (z - r_j)`` over the common denominator ``prod (z - r_j)``."""
        acc = Polynomial()
        roots = self.roots
        for j, (r, m) in enumerate(self.factors):
            term = Polynomial.constant(m)
            for i, other in enumerate(roots):
                if i != j:
                    term = term * Polynomial.linear(other)
            acc = acc + term
        return acc

    def times(self, root, mult=1):
        return FactoredRational(self.scale, self.factors + ((GaussianRational.coerce(root), mult),))

    def __call__(self, z):
        z = GaussianRational.coerce(z)
        acc = self.scale
        for r, m in self.factors:
            acc = acc * (z - r) ** m
        return acc

    def eval_mp(self, z):
        acc = self.scale.to_mpc()
        for r, m in self.factors:
            acc *= (z - r.to_mpc()) ** m
        return acc

    def residue_factor(self, point):
        """Exact value at ``point`` of ``self * (z - point)^(-mult)``."""
        point = GaussianRational.coerce(point)
        acc = self.scale
        for r, m in self.factors:
            if r != point:
                acc = acc * (point - r) ** m
        return acc

    @classmethod
    def from_rational(cls, rf, roots):
        """Rebuild a factored form from a rational function whose zeros/poles are the given exact roots."""
        factors = []
        num, den = rf.num, rf.den
        for r in roots:
            k = num.multiplicity(r) if not num.is_zero() else 0
            j = den.multiplicity(r)
            if k - j:
                factors.append((r, k - j))
            lin = Polynomial.linear(r)
            num = num.exact_div(lin ** k)
            den = den.exact_div(lin ** j)
        if num.degree != 0 or den.degree != 0:
            raise ValueError("rational function has zeros/poles outside the supplied roots")
        return cls(num.lc / den.lc, factors)

    def to_expr(self):
        parts = []
        if self.scale != ONE or not self.factors:
            parts.append(self.scale.to_expr())
        for r, m in self.factors:
            base = "z" if r.is_zero() else f"(z-{r.to_expr()})"
            parts.append(base if m == 1 else f"{base}^({m})" if m < 0 else f"{base}^{m}")
        return "*".join(parts)

    def to_json(self):
        return {
            "scale": self.scale.to_json(),
            "factors": [{"root": r.to_json(), "mult": m} for r, m in self.factors],
        }

    @classmethod
    def from_json(cls, obj):
        scale = GaussianRational.from_json(obj.get("scale", {"re": "1/1", "im": "0/1"}))
        return cls(scale, [(GaussianRational.from_json(f["root"]), int(f["mult"])) for f in obj.get("factors", [])])
