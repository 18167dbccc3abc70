"""Restricted infix grammar for map expressions.

Accepted: the variable ``z``, the unit ``i``, integers, ``+ - * / ^``,
parentheses, implicit multiplication (``2z``, ``(z-1)(z+1)``) and ``exp(...)``
as a whole second component. ``pi`` may appear only inside ``exp``.
"""

import re
from fractions import Fraction

import mpmath

from ..algebra import GaussianRational, Polynomial, RationalFunction, FactoredRational, squarefree_decomposition
from ..errors import ParseError
from ..maps import ExpLinear, MapPair, Scalar
from ..numeric import find_roots

__all__ = ["parse_expression", "parse_map", "parse_second", "factor_linear", "parse_points"]

GR = GaussianRational

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\*\*|[-+*/^(),]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num:
            out.append(("num", int(num)))
        elif name:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


# Values are dicts {pi_power: RationalFunction}; pi only survives inside exp().


def _const(c):
    return {0: RationalFunction(Polynomial.constant(GR.coerce(c)))}


def _clean(v):
    return {k: f for k, f in v.items() if not f.num.is_zero()}


def _add(a, b):
    out = dict(a)
    for k, f in b.items():
        out[k] = out[k] + f if k in out else f
    return _clean(out)


def _neg(a):
    return {k: -f for k, f in a.items()}


def _mul(a, b):
    out = {}
    for i, f in a.items():
        for j, g in b.items():
            out[i + j] = out[i + j] + f * g if i + j in out else f * g
    return _clean(out)


def _pure(a, what):
    if not a:
        return RationalFunction(Polynomial())
    if set(a) != {0}:
        raise ParseError(f"pi may only appear inside exp(); found it in {what}")
    return a[0]


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.exp_depth = 0
        self.saw_exp = False

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want} in {self.text!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def at_end(self):
        return self.i >= len(self.toks)

    # expr := ['-'|'+'] term (('+'|'-') term)*
    def expr(self):
        sign = None
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = self.take()[1]
        v = self.term()
        if sign == "-":
            v = _neg(v)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = _add(v, w if op == "+" else _neg(w))
        return v

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "name") or (kind == "op" and val == "(")

    # term := power (('*'|'/'|implicit) power)*
    def term(self):
        v = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                w = self.power()
                if val == "*":
                    v = _mul(v, w)
                else:
                    d = _pure(w, "a denominator")
                    if d.num.is_zero():
                        raise ParseError("division by zero")
                    v = _mul(v, {0: 1 / d})
            elif self._starts_factor():
                v = _mul(v, self.power())
            else:
                return v

    # power := atom ['^' ['-'] atom]
    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            e = _pure(self.atom(), "an exponent")
            if not e.is_polynomial() or e.num.degree > 0 or e.num[0].im != 0 or e.num[0].re.denominator != 1:
                raise ParseError("exponents must be integers")
            n = int(e.num[0].re)
            n = -n if neg else n
            if n < 0:
                return {0: _pure(base, "a negative power") ** n}
            out = _const(1)
            for _ in range(n):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return _const(val)
        if kind == "name":
            self.take()
            if val == "z":
                return {0: RationalFunction.identity()}
            if val == "i":
                return _const(GR(0, 1))
            if val == "pi":
                if not self.exp_depth:
                    raise ParseError("pi may only appear inside exp()")
                return {1: RationalFunction(Polynomial.constant(1))}
            if val == "exp":
                return self.exp_call()
            raise ParseError(f"unknown identifier {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected {val!r} in {self.text!r}")

    def exp_call(self):
        self.take("op", "(")
        self.exp_depth += 1
        arg = self.expr()
        self.exp_depth -= 1
        self.take("op", ")")
        if len(arg) != 1:
            raise ParseError("exp() argument must be lam*z with lam a Gaussian rational, optionally times pi")
        (pw, f), = arg.items()
        if pw > 1 or not f.is_polynomial() or f.num.degree != 1 or not f.num[0].is_zero():
            raise ParseError("exp() argument must be lam*z with lam a Gaussian rational, optionally times pi")
        self.saw_exp = True
        return {"exp": ExpLinear(Scalar(f.num[1], pw))}


def _parse_component(text):
    p = _Parser(text)
    v = p.expr()
    if not p.at_end():
        raise ParseError(f"trailing input in {text!r}")
    return v


def parse_expression(text) -> RationalFunction:
    """Parse a rational function of ``z`` over Q(i)."""
    v = _parse_component(text)
    if "exp" in v:
        raise ParseError("exp() is only allowed as the whole second component")
    return _pure(v, "a rational expression")


def _to_fraction(x):
    return Fraction(mpmath.nstr(x, 40, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)).limit_denominator(10 ** 12)


def factor_linear(rf: RationalFunction) -> FactoredRational:
    """Exact factorisation into linear factors over Q(i); ParseError when it does not split."""
    if rf.num.is_zero():
        raise ParseError("the second component must be nonzero")
    factors = []
    scale = rf.num.lc / rf.den.lc
    for poly, sign in ((rf.num, 1), (rf.den, -1)):
        if poly.degree <= 0:
            continue
        for part, mult in squarefree_decomposition(poly):
            rest = part
            while rest.degree > 0:
                if rest.degree == 1:
                    root = -rest[0] / rest[1]
                else:
                    approx = find_roots(rest)[0].center
                    root = GR(_to_fraction(approx.real), _to_fraction(approx.imag))
                    if not rest(root).is_zero():
                        raise ParseError("the second component must split into linear factors over Q(i)")
                factors.append((root, sign * mult))
                rest = rest.exact_div(Polynomial.linear(root))
    factors.sort(key=lambda rm: (rm[0].sort_key(), rm[1]))
    return FactoredRational(scale, factors)


def parse_second(text):
    v = _parse_component(text)
    if "exp" in v:
        return v["exp"]
    return factor_linear(_pure(v, "the second component"))


def _split_pair(text):
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("a map is written '(first, second)'")
    inner = s[1:-1]
    depth = 0
    for k, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                break
        elif ch == "," and depth == 0:
            return inner[:k], inner[k + 1:]
    raise ParseError("a map is written '(first, second)'")


def parse_map(text) -> MapPair:
    first, second = _split_pair(text)
    f = parse_expression(first)
    g = parse_second(second)
    try:
        return MapPair(f, g)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_points(text):
    """Comma-separated Gaussian rationals, e.g. ``0,1,-1/2+i``."""
    from ..algebra import parse_gaussian

    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.split(","):
        try:
            out.append(parse_gaussian(part))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return out
