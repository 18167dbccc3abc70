"""Bivariate polynomials over the Gaussian rationals, resultants and gcds.

Monomials are keyed by ``(i, j)`` meaning ``x**i * y**j``.
"""

import random
from math import comb, factorial, gcd

from ..errors import DegenerateInput
from .gaussian import GaussianRational, ONE, ZERO
from .polynomial import Polynomial, poly_gcd

__all__ = [
    "BivariatePolynomial",
    "resultant_in_y",
    "bivariate_gcd",
    "sylvester_matrix",
]


class BivariatePolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if not c.is_zero():
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, terms):
        b = cls.__new__(cls)
        b.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        return b

    @classmethod
    def x(cls):
        return cls({(1, 0): ONE})

    @classmethod
    def y(cls):
        return cls({(0, 1): ONE})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def from_univariate(cls, p, var="x"):
        if var == "x":
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    @classmethod
    def from_shift(cls, p):
        """``p(x + y)``."""
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c.is_zero():
                continue
            for j in range(k + 1):
                key = (k - j, j)
                terms[key] = terms.get(key, ZERO) + c * comb(k, j)
        return cls._trusted(terms)

    @classmethod
    def from_y_coefficients(cls, polys):
        """Inverse of :meth:`y_coefficients`."""
        terms = {}
        for j, p in enumerate(polys):
            for i, c in enumerate(p.coeffs):
                if not c.is_zero():
                    terms[(i, j)] = c
        return cls._trusted(terms)

    # -- structure -------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(k == (0, 0) for k in self.terms)

    @property
    def degree_x(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def degree_y(self):
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def leading_term(self):
        """Leading ``(key, coeff)`` in lex order with x > y."""
        key = max(self.terms)
        return key, self.terms[key]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.leading_term()[1].inverse()
        return BivariatePolynomial._trusted({k: c * inv for k, c in self.terms.items()})

    def y_coefficients(self):
        """List of x-polynomials, index = power of y."""
        dy = self.degree_y
        width = [0] * (dy + 1)
        for (i, j), _ in self.terms.items():
            width[j] = max(width[j], i + 1)
        rows = [[ZERO] * w for w in width]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return [Polynomial._trusted(r) for r in rows]

    def swap(self):
        return BivariatePolynomial._trusted({(j, i): c for (i, j), c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, BivariatePolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BivariatePolynomial({self.to_expr()!r})"

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _coerce_bi(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BivariatePolynomial._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial._trusted({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce_bi(other))

    def __rsub__(self, other):
        return _coerce_bi(other) - self

    def __mul__(self, other):
        other = _coerce_bi(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                v = c1 * c2
                out[k] = out[k] + v if k in out else v
        return BivariatePolynomial._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = BivariatePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, s):
        s = GaussianRational.coerce(s)
        return BivariatePolynomial._trusted({k: c * s for k, c in self.terms.items()})

    def divide_by_x_minus_y(self):
        """Exact quotient by ``x - y``; raises if the division is not exact."""
        # synthetic division in y by (y - x) over Q(i)[x]: self = -(y - x) * Q
        rows = self.y_coefficients()
        n = len(rows) - 1
        if n < 0:
            return BivariatePolynomial()
        xs = Polynomial((0, 1))
        quot = [None] * n
        carry = Polynomial()
        for j in range(n, 0, -1):
            carry = rows[j] + carry * xs
            quot[j - 1] = carry
        remainder = rows[0] + carry * xs
        if not remainder.is_zero():
            raise ArithmeticError("polynomial is not divisible by x - y")
        # self = (y - x) * sum quot[j] y^j ; return quotient for (x - y)
        return -BivariatePolynomial.from_y_coefficients(quot)

    # -- evaluation ------------------------------------------------------------
    def eval_x(self, x0):
        """Specialise ``x = x0`` (exact) to a polynomial in y."""
        x0 = GaussianRational.coerce(x0)
        return Polynomial([p(x0) for p in self.y_coefficients()])

    def eval_y(self, y0):
        return self.swap().eval_x(y0)

    def __call__(self, x0, y0):
        x0, y0 = GaussianRational.coerce(x0), GaussianRational.coerce(y0)
        return self.eval_x(x0)(y0)

    def eval_mp(self, x, y):
        acc = 0
        for (i, j), c in self.terms.items():
            acc += c.to_mpc() * x ** i * y ** j
        return acc

    def y_coefficients_mp(self, x):
        """Numeric y-coefficients at a numeric ``x``."""
        return [p.eval_mp(x) for p in self.y_coefficients()]

    def partial_x(self):
        return BivariatePolynomial._trusted({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def partial_y(self):
        return BivariatePolynomial._trusted({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def to_expr(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if s
            )
            if not mono:
                parts.append(c.to_expr())
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                parts.append(f"{c.to_expr()}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self):
        return [
            {"x": i, "y": j, "c": self.terms[(i, j)].to_json()}
            for (i, j) in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, obj):
        return cls({(t["x"], t["y"]): GaussianRational.from_json(t["c"]) for t in obj})


def _coerce_bi(value):
    if isinstance(value, BivariatePolynomial):
        return value
    if isinstance(value, Polynomial):
        return BivariatePolynomial.from_univariate(value)
    return BivariatePolynomial.constant(GaussianRational.coerce(value))


# -- Gaussian integer helpers ------------------------------------------------------
# Gaussian integers are (a, b) tuples meaning a + b*i.


def _gi_mul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gi_exact_div(u, v):
    n = v[0] * v[0] + v[1] * v[1]
    a = u[0] * v[0] + u[1] * v[1]
    b = u[1] * v[0] - u[0] * v[1]
    qa, ra = divmod(a, n)
    qb, rb = divmod(b, n)
    if ra or rb:
        raise ArithmeticError("inexact Gaussian integer division")
    return (qa, qb)


def _integer_form(F):
    """Scale F to Gaussian-integer coefficients; returns (scale, {key: (a, b)})."""
    den = 1
    for c in F.terms.values():
        d = c.parts[2]
        den = den * d // gcd(den, d)
    out = {}
    for k, c in F.terms.items():
        a, b, d = c.parts
        f = den // d
        out[k] = (a * f, b * f)
    return den, out


def _gi_rows_at(F_int, dy, x0):
    """y-coefficients (list, index = power of y) of an integer-form polynomial at integer x0."""
    row = [(0, 0)] * (dy + 1)
    for (i, j), (a, b) in F_int.items():
        p = x0 ** i
        ra, rb = row[j]
        row[j] = (ra + a * p, rb + b * p)
    return row


def sylvester_matrix(f, g):
    """Sylvester matrix of two coefficient lists (lowest degree first), formal degrees."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = f[0] * 0 if not isinstance(f[0], tuple) else (0, 0)
    rows = []
    fh = list(reversed(f))
    gh = list(reversed(g))
    for k in range(n):
        rows.append([zero] * k + fh + [zero] * (size - k - m - 1))
    for k in range(m):
        rows.append([zero] * k + gh + [zero] * (size - k - n - 1))
    return rows


def _bareiss_det_gi(M):
    """Fraction-free determinant over Z[i]."""
    n = len(M)
    if n == 0:
        return (1, 0)
    M = [list(r) for r in M]
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if M[k][k] == (0, 0):
            for r in range(k + 1, n):
                if M[r][k] != (0, 0):
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        pivot = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                t1 = _gi_mul(pivot, rowi[j])
                t2 = _gi_mul(mik, rowk[j])
                num = (t1[0] - t2[0], t1[1] - t2[1])
                rowi[j] = num if prev == (1, 0) else _gi_exact_div(num, prev)
            rowi[k] = (0, 0)
        prev = pivot
    d = M[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def _interpolate_integer(values):
    """Integer polynomial through (k, values[k]), k = 0..D, via forward differences."""
    diffs = list(values)
    D = len(values) - 1
    deltas = [diffs[0]]
    for k in range(1, D + 1):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        deltas.append(diffs[0])
    coeffs = [0] * (D + 1)
    falling = [1]  # coefficients of x(x-1)...(x-k+1)
    for k in range(D + 1):
        c, r = divmod(deltas[k], factorial(k))
        if r:
            raise ArithmeticError("interpolated polynomial is not integral")
        if c:
            for t, fc in enumerate(falling):
                coeffs[t] += c * fc
        # falling *= (x - k)
        nxt = [0] * (len(falling) + 1)
        for t, fc in enumerate(falling):
            nxt[t + 1] += fc
            nxt[t] -= k * fc
        falling = nxt
    return coeffs


def resultant_in_y(F, G, normalize=True):
    """Resultant of F and G with respect to y, as a polynomial in x.

    The Sylvester determinant is computed fraction-free (Bareiss) over the
    Gaussian integers at integer nodes and interpolated exactly. With
    ``normalize`` the result is made monic (zero stays zero); otherwise the
    raw Sylvester determinant is returned.
    """
    if F.is_zero() or G.is_zero():
        raise DegenerateInput("resultant of a zero polynomial")
    m, n = F.degree_y, G.degree_y
    if m < 1 or n < 1:
        raise DegenerateInput("both inputs need positive degree in y")
    sF, Fi = _integer_form(F)
    sG, Gi = _integer_form(G)
    bound = min(n * max(F.degree_x, 0) + m * max(G.degree_x, 0), F.total_degree * G.total_degree)
    re_vals, im_vals = [], []
    for x0 in range(bound + 1):
        rf = _gi_rows_at(Fi, m, x0)
        rg = _gi_rows_at(Gi, n, x0)
        det = _bareiss_det_gi(sylvester_matrix(rf, rg))
        re_vals.append(det[0])
        im_vals.append(det[1])
    re_c = _interpolate_integer(re_vals)
    im_c = _interpolate_integer(im_vals)
    coeffs = [GaussianRational._raw(a, b, 1) for a, b in zip(re_c, im_c)]
    R = Polynomial._trusted(coeffs)
    if R.is_zero():
        return R
    if normalize:
        return R.monic()
    scale = GaussianRational(sF) ** n * GaussianRational(sG) ** m
    return R.scale(scale.inverse())


def resultant_vanishes(F, G, trials=3, seed=0):
    """Probabilistic-free shortcut: False as soon as one specialisation is nonzero.

    Returns True only after computing the full resultant, so the answer is exact.
    """
    m, n = F.degree_y, G.degree_y
    sF, Fi = _integer_form(F)
    sG, Gi = _integer_form(G)
    rng = random.Random(seed)
    for _ in range(trials):
        x0 = rng.randint(10 ** 6, 10 ** 9)
        det = _bareiss_det_gi(sylvester_matrix(_gi_rows_at(Fi, m, x0), _gi_rows_at(Gi, n, x0)))
        if det != (0, 0):
            return False
    return resultant_in_y(F, G).is_zero()


# -- gcd over Q(i)[x][y] ------------------------------------------------------------


def _content(rows):
    g = Polynomial()
    for p in rows:
        if not p.is_zero():
            g = p.monic() if g.is_zero() else poly_gcd(g, p)
            if g.degree == 0:
                return g
    return g


def _primitive(rows):
    c = _content(rows)
    if c.is_zero():
        return rows, c
    if c.degree == 0:
        return rows, Polynomial((1,))
    return [p.exact_div(c) for p in rows], c


def _trim(rows):
    rows = list(rows)
    while rows and rows[-1].is_zero():
        rows.pop()
    return rows


def _prem(a, b):
    """Pseudo-remainder of a by b, both lists of x-polynomials indexed by y-power."""
    a = _trim(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        new = [p * lb for p in a]
        for j, bc in enumerate(b):
            new[j + shift] = new[j + shift] - la * bc
        a = _trim(new)
    return a


def bivariate_gcd(F, G):
    """A gcd of F and G (unit-normalised, monic in lex order with x > y)."""
    if F.is_zero() and G.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if F.is_zero():
        return G.monic()
    if G.is_zero():
        return F.monic()
    rf, rg = _trim(F.y_coefficients()), _trim(G.y_coefficients())
    pf, cf = _primitive(rf)
    pg, cg = _primitive(rg)
    cont = poly_gcd(cf, cg)
    if len(pf) > 1 and len(pg) > 1 and not resultant_vanishes(F, G):
        return BivariatePolynomial.from_univariate(cont).monic()
    if len(pf) < len(pg):
        pf, pg = pg, pf
    a, b = pf, pg
    while True:
        if len(b) == 1:
            # b is free of y, so the primitive parts are coprime
            prim = [Polynomial((1,))]
            break
        r = _prem(a, b)
        if not r:
            prim = b
            break
        r, _ = _primitive(r)
        a, b = b, r
    prim, _ = _primitive(prim)
    out = BivariatePolynomial.from_y_coefficients([p * cont for p in prim])
    return out.monic()
