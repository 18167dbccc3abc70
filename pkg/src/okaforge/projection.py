"""Checkable pieces of the nice projection property, and the boundary reshaping map.

A component with a simple pole at each marked boundary point ``b_i`` sends the
boundary curve through ``b_i`` to infinity along the direction of
``u_i = (h * (z - b_i))(b_i)``, up to sign. Directions are distinct modulo pi
exactly when ``Im(u_i * conj(u_j)) != 0``, which is decided in Q(i).
"""

from dataclasses import dataclass, field
import math
import random
from fractions import Fraction
from typing import List, Optional

import mpmath

from .algebra import FactoredRational, GaussianRational, Polynomial, RationalFunction
from .errors import (
    AmbiguousBoundary,
    InvalidParameter,
    PreconditionError,
    SearchExhausted,
    ShiftTooLarge,
)
from .numeric import mp_to_json

__all__ = [
    "ProjectionCertificate",
    "ReshapeMap",
    "theta_certificate",
    "remediate_thetas",
    "pick_generic_d",
    "is_generic_d",
    "boundary_clearance",
    "build_reshape",
    "direction_values",
]

GR = GaussianRational


@dataclass
class ProjectionCertificate:
    flavor: str  # "CStar" (second component) or "C" (first component)
    verdict: str
    theta: List[GaussianRational] = field(default_factory=list)
    failing_pairs: List[tuple] = field(default_factory=list)
    escape: List[dict] = field(default_factory=list)
    pattern: str = "distinct-directions"
    d: Optional[GaussianRational] = None
    d_witnesses: List[dict] = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        out = {
            "flavor": self.flavor,
            "verdict": self.verdict,
            "pattern": self.pattern,
            "theta": [u.to_json() for u in self.theta],
            "failing_pairs": [list(p) for p in self.failing_pairs],
            "escape": self.escape,
        }
        if self.d is not None:
            out["d"] = self.d.to_json()
            out["d_witnesses"] = self.d_witnesses
        return out


def _direction(component, b):
    """Exact ``(component * (z - b))(b)`` for a simple pole at ``b``."""
    if isinstance(component, FactoredRational):
        if component.multiplicity(b) != -1:
            raise InvalidParameter(f"component has no simple pole at {b}")
        return component.residue_factor(b)
    if isinstance(component, RationalFunction):
        if component.order_at(b) != -1:
            raise InvalidParameter(f"component has no simple pole at {b}")
        rest = component.den.exact_div(Polynomial.linear(b))
        return component.num(b) / rest(b)
    raise InvalidParameter("unsupported component type")


def direction_values(component, b):
    return [_direction(component, GR.coerce(p)) for p in b]


def _parallel(u, v):
    return (u * v.conj()).im == 0


def theta_certificate(component, b, flavor=None) -> ProjectionCertificate:
    """Pairwise distinctness of boundary escape directions modulo pi.

    ``component`` is the second component (a factored rational, flavor CStar)
    or the first component (a rational function, flavor C).
    """
    b = [GR.coerce(p) for p in b]
    if flavor is None:
        flavor = "CStar" if isinstance(component, FactoredRational) else "C"
    us = direction_values(component, b)
    failing = [(i, j) for i in range(len(us)) for j in range(i + 1, len(us)) if _parallel(us[i], us[j])]
    escape = [{"point": p.to_json(), "order": -1} for p in b]
    return ProjectionCertificate(flavor, "fail" if failing else "pass", us, failing, escape)


def is_generic_d(d, points, min_modulus):
    """``|d| >= min_modulus``, ``d`` not a point, and off every real line through two points."""
    d = GR.coerce(d)
    min_modulus = Fraction(min_modulus)
    if d.norm() < min_modulus ** 2 and min_modulus > 0:
        return False
    if d in points:
        return False
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if ((d - points[i]) * (points[j] - points[i]).conj()).im == 0:
                return False
    return True


def pick_generic_d(points, min_modulus, seed=0, avoid=()):
    """Seeded lattice search over rings of growing modulus for a generic far point."""
    points = [GR.coerce(p) for p in points]
    if len(set(points)) != len(points):
        raise InvalidParameter("points must be pairwise distinct")
    avoid = set(GR.coerce(p) for p in avoid)
    rng = random.Random(seed)
    base = max(1, math.ceil(Fraction(min_modulus)))
    ring = 0
    while True:
        r = base + ring
        for _ in range(32):
            a = rng.randint(-r - 1, r + 1)
            bb = rng.randint(-r - 1, r + 1)
            d = GR(a, bb)
            if d in avoid:
                continue
            if is_generic_d(d, points, min_modulus):
                return d
        ring += max(1, r // 4)


def _times_linear(component, d):
    if isinstance(component, FactoredRational):
        return component.times(d, 1)
    return component * RationalFunction(Polynomial.linear(d))


def remediate_thetas(component, b, avoid=(), seed=0, budget=32):
    """Multiply by ``(z - d)`` for a generic far ``d`` until the directions separate.

    Returns ``(component', d, certificate)``; ``d`` is None when there is at
    most one marked point (nothing to separate).
    """
    b = [GR.coerce(p) for p in b]
    cert = theta_certificate(component, b)
    if len(b) < 2:
        return component, None, cert
    if cert.passed:
        raise PreconditionError("directions already separated; nothing to remediate")
    min_modulus = Fraction(8)
    log = []
    for attempt in range(budget):
        d = pick_generic_d(b, min_modulus, seed=seed + attempt, avoid=list(avoid))
        candidate = _times_linear(component, d)
        new = theta_certificate(candidate, b)
        if new.passed:
            new.d = d
            new.d_witnesses = [
                {"pair": [i, j], "im": str(((d - b[i]) * (b[j] - b[i]).conj()).im)}
                for i in range(len(b)) for j in range(i + 1, len(b))
            ]
            return candidate, d, new
        log.append({"d": d.to_json(), "failing_pairs": [list(p) for p in new.failing_pairs]})
        min_modulus *= 2
    raise SearchExhausted("no separating d found within the budget", log)


def _circles(domain):
    out = [(GR(0), Fraction(1), "unit circle")]
    for i, h in enumerate(getattr(domain, "holes", ())):
        out.append((h.center, h.radius, f"hole {i}"))
    return out


def boundary_clearance(psi, report, domain, max_radius=1e-6):
    """``(passed, witnesses)``: no identified-pair coordinate lies on a boundary circle."""
    if report.finiteness != "Finite":
        raise PreconditionError("boundary clearance needs a Finite double-point report")
    witnesses = []
    for idx, pair in enumerate(report.pairs):
        rad = mpmath.mpf(pair.radius)
        for which, z in (("x", pair.x), ("y", pair.y)):
            for c, r, name in _circles(domain):
                gap = abs(abs(z - c.to_mpc()) - mpmath.mpf(r.numerator) / r.denominator)
                if gap <= rad:
                    if rad > max_radius:
                        raise AmbiguousBoundary(f"pair {idx} too coarse to decide against the {name}")
                    witnesses.append({"pair": idx, "coordinate": which, "point": mp_to_json(z, 20),
                                      "circle": name})
    return not witnesses, witnesses


@dataclass(frozen=True)
class ReshapeMap:
    v: Polynomial
    x: GaussianRational
    x_j: GaussianRational
    derivative_bound: float

    def rho(self, z):
        z = GR.coerce(z)
        return z + self.v(z)

    def to_json(self):
        return {"v": self.v.to_expr(), "x": self.x.to_json(), "x_j": self.x_j.to_json(),
                "derivative_bound": self.derivative_bound}


def _sup_derivative_on_disc(v, samples):
    """Upper bound for ``max |v'|`` on the closed unit disc (maximum principle + sampling)."""
    dv = v.derivative()
    if dv.degree <= 0:
        return abs(complex(dv[0])) if dv.degree == 0 else 0.0
    d2 = dv.derivative()
    m2 = sum(abs(complex(c)) for c in d2.coeffs)
    cs = [complex(c) for c in dv.coeffs]
    best = 0.0
    for k in range(samples):
        t = 2 * math.pi * k / samples
        z = complex(math.cos(t), math.sin(t))
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        best = max(best, abs(acc))
    # distance along the circle to the nearest sample is at most pi / samples
    return best + m2 * math.pi / samples * (1 + 1e-12) + 1e-15


def build_reshape(punctures, x, x_j, samples=512):
    """``v = ((x - x_j) / w(x_j)) w`` with ``w = prod (z - puncture)``, so ``rho(x_j) = x``."""
    x, x_j = GR.coerce(x), GR.coerce(x_j)
    w = Polynomial.from_roots([GR.coerce(p) for p in punctures])
    wx = w(x_j)
    if wx.is_zero():
        raise InvalidParameter("interior approximant is a puncture")
    v = w.scale((x - x_j) / wx)
    bound = _sup_derivative_on_disc(v, samples)
    if bound >= 1:
        raise ShiftTooLarge(f"sup |v'| bound {bound:.3g} >= 1; choose x_j closer to x")
    return ReshapeMap(v, x, x_j, bound)
