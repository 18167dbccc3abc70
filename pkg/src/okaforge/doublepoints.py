"""Identified pairs of a map: finiteness decision and certified enumeration.

Rational pairs are handled by exact elimination: with ``F~`` and ``G~`` the
diagonal-free numerators of ``f(x) - f(y)`` and ``g(x) - g(y)``, the set of
identified pairs is finite exactly when ``F~`` and ``G~`` share no component,
and the x-coordinates of pairs are roots of ``Res_y(F~, G~)``.

For an exponential second component ``exp(lam z)`` the pairs are ``(z, z + s)``
with ``s = 2 pi i k / lam`` and ``f(z) = f(z + s)``, enumerated for ``k = 1..K``.
"""

from dataclasses import dataclass, field
import random
from typing import List, Optional

import mpmath

from .algebra import (
    BivariatePolynomial,
    FactoredRational,
    GaussianRational,
    Polynomial,
    RationalFunction,
    bivariate_gcd,
    poly_gcd,
    resultant_in_y,
    squarefree_part,
)
from .errors import (
    AmbiguousFiber,
    InternalInconsistency,
    InvalidParameter,
    PreconditionError,
)
from .maps import ExpLinear, MapPair, Scalar
from .numeric import filter_points, find_roots, mp_to_json
from .verifiers import point_polynomial, strip_points

__all__ = [
    "FINITE",
    "INFINITE",
    "TRUNCATED",
    "PairSystem",
    "Pair",
    "DoublePointReport",
    "ComponentVerdict",
    "FiberVerdict",
    "pair_system",
    "common_component",
    "enumerate_rational",
    "enumerate_exp",
    "double_points",
    "is_regular_value",
    "find_regular_value",
    "check_fiber_injectivity",
    "fiber_values_regular",
]

FINITE = "Finite"
INFINITE = "InfiniteCommonComponent"
TRUNCATED = "CountableTruncated"

DEFAULT_TOL = 1e-10
DEFAULT_K = 10


def _as_rational(h):
    if isinstance(h, FactoredRational):
        return h.to_rational()
    if isinstance(h, RationalFunction):
        return h
    raise InvalidParameter(f"expected a rational function, got {type(h).__name__}")


def _cross(num, den):
    """``num(x) den(y) - num(y) den(x)`` as a bivariate polynomial."""
    nx = BivariatePolynomial.from_univariate(num, "x")
    dx = BivariatePolynomial.from_univariate(den, "x")
    ny = BivariatePolynomial.from_univariate(num, "y")
    dy = BivariatePolynomial.from_univariate(den, "y")
    return nx * dy - ny * dx


def _diagonal_free(h):
    rf = _as_rational(h)
    if rf.is_constant():
        raise InvalidParameter("pair system needs nonconstant components")
    return _cross(rf.num, rf.den).divide_by_x_minus_y()


@dataclass(frozen=True)
class PairSystem:
    Ftilde: BivariatePolynomial
    Gtilde: BivariatePolynomial

    def to_json(self):
        return {"Ftilde": self.Ftilde.to_expr(), "Gtilde": self.Gtilde.to_expr()}


def pair_system(f, g) -> PairSystem:
    return PairSystem(_diagonal_free(f), _diagonal_free(g))


@dataclass(frozen=True)
class ComponentVerdict:
    finiteness: str
    witness: Optional[BivariatePolynomial] = None

    def to_json(self):
        out = {"finiteness": self.finiteness}
        if self.witness is not None:
            out["witness"] = self.witness.to_expr()
        return out


def common_component(system: PairSystem) -> ComponentVerdict:
    h = bivariate_gcd(system.Ftilde, system.Gtilde)
    if h.is_constant():
        return ComponentVerdict(FINITE)
    return ComponentVerdict(INFINITE, h)


@dataclass
class Pair:
    x: mpmath.mpc
    y: mpmath.mpc
    residual: float
    radius: float
    k: Optional[int] = None

    def to_json(self):
        out = {"x": mp_to_json(self.x, 25), "y": mp_to_json(self.y, 25),
               "residual": _fmt(self.residual), "radius": _fmt(self.radius)}
        if self.k is not None:
            out["k"] = self.k
        return out


def _fmt(v):
    return mpmath.nstr(mpmath.mpf(v), 4, min_fixed=0, max_fixed=0)


@dataclass
class DoublePointReport:
    finiteness: str
    pairs: List[Pair] = field(default_factory=list)
    excluded: List[dict] = field(default_factory=list)
    K: Optional[int] = None
    witness: Optional[BivariatePolynomial] = None
    tol: float = DEFAULT_TOL

    @property
    def max_residual(self):
        return max((float(p.residual) for p in self.pairs), default=0.0)

    def pairs_for(self, k):
        return [p for p in self.pairs if p.k == k]

    def to_json(self):
        out = {"finiteness": self.finiteness}
        if self.K is not None:
            out["K"] = self.K
        if self.witness is not None:
            out["witness"] = self.witness.to_expr()
        out["pair_count"] = len(self.pairs)
        out["pairs"] = [p.to_json() for p in self.pairs]
        out["excluded"] = self.excluded
        out["tol"] = self.tol
        return out


# -- rational branch -----------------------------------------------------------------


def _newton_polish(F, G, x, y, steps=8):
    """Newton iterations on the bivariate system; returns the input unchanged if singular."""
    Fx, Fy, Gx, Gy = F.partial_x(), F.partial_y(), G.partial_x(), G.partial_y()
    for _ in range(steps):
        a, b = F.eval_mp(x, y), G.eval_mp(x, y)
        j11, j12, j21, j22 = Fx.eval_mp(x, y), Fy.eval_mp(x, y), Gx.eval_mp(x, y), Gy.eval_mp(x, y)
        det = j11 * j22 - j12 * j21
        if det == 0:
            break
        dx = (a * j22 - b * j12) / det
        dy = (j11 * b - j21 * a) / det
        x, y = x - dx, y - dy
        if abs(dx) + abs(dy) <= mpmath.mpf(2) ** (-mpmath.mp.prec + 8) * (1 + abs(x) + abs(y)):
            break
    return x, y


def _abs_size(F, x, y):
    ax, ay = abs(x), abs(y)
    return sum(abs(c.to_mpc()) * ax ** i * ay ** j for (i, j), c in F.terms.items()) or mpmath.mpf(1)


def _residual(f, g, x, y):
    return abs(f.eval_mp(x) - f.eval_mp(y)) + abs(g.eval_mp(x) - g.eval_mp(y))


def _near_any(z, points, tol):
    return any(abs(z - p) <= tol for p in points)


def _dedupe(pairs, tol):
    out = []
    for p in pairs:
        dup = False
        for q in out:
            if (abs(p.x - q.x) <= tol and abs(p.y - q.y) <= tol) or (abs(p.x - q.y) <= tol and abs(p.y - q.x) <= tol):
                dup = True
                break
        if not dup:
            out.append(p)
    return out


def _canonical(pair):
    """Order each pair so ``x`` is lexicographically below ``y``."""
    if (float(pair.x.real), float(pair.x.imag)) > (float(pair.y.real), float(pair.y.imag)):
        pair.x, pair.y = pair.y, pair.x
    return pair


def _sort_pairs(pairs):
    return sorted(pairs, key=lambda p: (p.k or 0, float(p.x.real), float(p.x.imag), float(p.y.real), float(p.y.imag)))


def enumerate_rational(f, g, domain, tol=DEFAULT_TOL, precision=128, system=None):
    """All identified pairs of ``(f, g)`` on a punctured plane, with certificates."""
    f, g = _as_rational(f), _as_rational(g)
    system = system or pair_system(f, g)
    verdict = common_component(system)
    if verdict.finiteness != FINITE:
        raise PreconditionError("identified pairs form a curve; enumeration needs a Finite verdict")
    F, G = system.Ftilde, system.Gtilde
    report = DoublePointReport(FINITE, tol=tol)
    if F.degree_y < 1 or G.degree_y < 1:
        # one component is injective (Mobius): no identified pairs at all
        return report
    R = resultant_in_y(F, G)
    if R.is_zero():
        raise InternalInconsistency("elimination polynomial vanishes identically for a Finite system")
    punctures = list(domain.punctures)
    rest = strip_points(R, punctures)
    if rest.degree < R.degree:
        report.excluded.append({"reason": "x at a puncture (removed exactly)", "degree": R.degree - rest.degree})
    if rest.degree <= 0:
        return report
    rest = squarefree_part(rest)
    pts_mp = [a.to_mpc() for a in punctures]
    candidates = []
    with mpmath.workprec(precision + 32):
        xs = find_roots(rest, precision=precision, radius_target=tol / 10)
        for xr in xs:
            x = xr.center
            ycoef = F.y_coefficients_mp(x)
            while ycoef and abs(ycoef[-1]) <= abs(xr.radius) * (1 + sum(abs(c) for c in ycoef)):
                ycoef.pop()
            if len(ycoef) < 2:
                continue
            try:
                ys = find_roots(lambda _p, cs=ycoef: cs, precision=precision // 2, max_precision=precision // 2)
            except Exception:
                continue
            thresh = mpmath.mpf(2) ** (-(precision // 3))
            for yr in ys:
                y = yr.center
                if abs(G.eval_mp(x, y)) > thresh * _abs_size(G, x, y):
                    continue
                px, py = _newton_polish(F, G, x, y)
                if abs(px - x) <= 10 * (xr.radius + tol):
                    x1, y1 = px, py
                else:
                    x1, y1 = x, y
                candidates.append((x1, y1, xr.radius))
        for x, y, rad in candidates:
            if abs(x - y) <= tol:
                continue
            if _near_any(y, pts_mp, tol) or _near_any(x, pts_mp, tol):
                report.excluded.append({"x": mp_to_json(x, 20), "y": mp_to_json(y, 20),
                                        "reason": "coordinate at a puncture"})
                continue
            res = _residual(f, g, x, y)
            if res > tol:
                continue
            report.pairs.append(_canonical(Pair(x, y, float(res), float(rad))))
    report.pairs = _sort_pairs(_dedupe(report.pairs, max(tol * 1e3, 1e-8)))
    return report


# -- exponential branch --------------------------------------------------------------


def _shift_system(f):
    """``N(z, s) = p(z) q(z + s) - p(z + s) q(z)`` with ``x = z`` and ``y = s``."""
    p, q = f.num, f.den
    P = BivariatePolynomial.from_univariate(p, "x")
    Q = BivariatePolynomial.from_univariate(q, "x")
    return P * BivariatePolynomial.from_shift(q) - BivariatePolynomial.from_shift(p) * Q


def _z_coefficients(N):
    """Coefficients in z (= x) as polynomials in s (= y)."""
    return N.swap().y_coefficients()


def enumerate_exp(f, lam, domain, K=DEFAULT_K, tol=DEFAULT_TOL, precision=64):
    """Identified pairs of ``(f, exp(lam z))`` for shifts ``k = 1..K``."""
    f = _as_rational(f)
    lam = lam if isinstance(lam, Scalar) else Scalar(lam)
    if lam.is_zero():
        raise InvalidParameter("lam must be nonzero")
    if K < 1:
        raise InvalidParameter("K must be a positive integer")
    report = DoublePointReport(TRUNCATED, K=K, tol=tol)
    if f.is_constant():
        raise InvalidParameter("first component must be nonconstant")
    zc = _z_coefficients(_shift_system(f))
    punctures = list(domain.punctures)
    second = ExpLinear(lam)
    exact_shift = lam.pi_power == 1
    for k in range(1, K + 1):
        if exact_shift:
            s_exact = GaussianRational(0, 2 * k) / lam.coeff
            poly = Polynomial([c(s_exact) for c in zc])
            if poly.is_zero():
                raise InternalInconsistency("f(z) - f(z + s) vanishes identically")
            stripped = strip_points(poly, punctures + [a - s_exact for a in punctures])
            if stripped.degree < poly.degree:
                report.excluded.append({"k": k, "reason": "coordinate at a puncture (removed exactly)",
                                        "degree": poly.degree - stripped.degree})
            if stripped.degree < 1:
                continue
            roots = find_roots(stripped, precision=precision, radius_target=tol / 10)
        else:
            # s is transcendental, so a coefficient vanishes at s only if it is identically zero
            live = [c for c in zc]
            while live and live[-1].is_zero():
                live.pop()
            if len(live) < 2:
                continue
            shift_coeff = GaussianRational(0, 2 * k) / lam.coeff

            def coeffs(prec, live=live, shift_coeff=shift_coeff):
                with mpmath.workprec(prec):
                    s = shift_coeff.to_mpc() * mpmath.pi
                    return [c.eval_mp(s) for c in live]

            roots = find_roots(coeffs, precision=precision, radius_target=tol / 10)
        with mpmath.workprec(max(precision, 64) + 64):
            s = 2j * mpmath.pi * k / lam.to_mpc()
            if exact_shift:
                s = (GaussianRational(0, 2 * k) / lam.coeff).to_mpc()
            kept, matched = filter_points(roots, punctures, tol)
            for r, a in matched:
                report.excluded.append({"k": k, "x": mp_to_json(r.center, 20), "reason": "x at a puncture"})
            shifted = [a.to_mpc() - s for a in punctures]
            for r in kept:
                x = r.center
                if _near_any(x, shifted, tol + r.radius):
                    report.excluded.append({"k": k, "x": mp_to_json(x, 20), "reason": "y at a puncture"})
                    continue
                y = x + s
                res = abs(f.eval_mp(x) - f.eval_mp(y)) + abs(second.eval_mp(x) - second.eval_mp(y))
                report.pairs.append(Pair(x, y, float(res), float(r.radius), k))
    report.pairs = _sort_pairs(report.pairs)
    return report


def double_points(psi: MapPair, domain, tol=DEFAULT_TOL, K=DEFAULT_K, precision=64):
    """Dispatch on the second component; an infinite family yields a report carrying the witness."""
    if psi.is_exponential:
        return enumerate_exp(psi.first, psi.second.lam, domain, K=K, tol=tol, precision=precision)
    if psi.first.is_constant():
        # only the second component separates points
        system = PairSystem(BivariatePolynomial.constant(0), _diagonal_free(psi.second))
        return DoublePointReport(INFINITE, witness=system.Gtilde, tol=tol)
    system = pair_system(psi.first, psi.second)
    verdict = common_component(system)
    if verdict.finiteness == INFINITE:
        return DoublePointReport(INFINITE, witness=verdict.witness, tol=tol)
    return enumerate_rational(psi.first, psi.second, domain, tol=tol, precision=max(precision, 128), system=system)


# -- regular values and fibres -----------------------------------------------------------


def _fiber_polynomial(g, a):
    rf = _as_rational(g)
    return rf.num - rf.den.scale(a), max(rf.num.degree, rf.den.degree)


def is_regular_value(g, domain, a):
    """``(ok, reason)``: fibre of ``a`` is simple, complete in C and avoids every puncture."""
    a = GaussianRational.coerce(a)
    Ga, full = _fiber_polynomial(g, a)
    if Ga.degree < 1:
        return False, "empty fibre"
    if Ga.degree < full:
        return False, "fibre point at infinity"
    if poly_gcd(Ga, Ga.derivative()).degree > 0:
        return False, "critical value (repeated fibre point)"
    if domain.punctures and poly_gcd(Ga, point_polynomial(domain.punctures)).degree > 0:
        return False, "fibre meets a puncture"
    return True, ""


def _candidate_values(seed):
    rng = random.Random(seed)
    while True:
        den = rng.randint(1, 4)
        re_, im_ = rng.randint(-12, 12), rng.randint(-12, 12)
        if re_ == 0 and im_ == 0:
            continue
        yield GaussianRational(re_, im_) / den


def find_regular_value(g, domain, seed=0, max_tries=500):
    if _as_rational(g).is_constant():
        raise InvalidParameter("g must be nonconstant")
    gen = _candidate_values(seed)
    for _ in range(max_tries):
        a = next(gen)
        if is_regular_value(g, domain, a)[0]:
            return a
    raise InternalInconsistency("no regular value found among the seeded candidates")


def _cross_full(f):
    rf = _as_rational(f)
    return _cross(rf.num, rf.den)


def fiber_values_regular(f, g, a):
    """Exact test that ``f(x)`` is a regular value of ``f`` for every ``x`` in the fibre ``g = a``.

    Violations are the roots of ``gcd(G_a(x), Res_y(p(x)q(y) - p(y)q(x), N_f(y)))``.
    """
    rf = _as_rational(f)
    Ga, _ = _fiber_polynomial(g, a)
    Nf = rf.derivative_numerator()
    if Nf.degree < 1:
        return True
    P = _cross_full(rf)
    if P.degree_y < 1:
        return True
    R = resultant_in_y(P, BivariatePolynomial.from_univariate(Nf, "y"))
    if R.is_zero():
        return False
    return poly_gcd(Ga, R).degree == 0


@dataclass
class FiberVerdict:
    passed: bool
    fiber: list
    collision: Optional[tuple] = None
    reason: str = ""

    def to_json(self):
        out = {"verdict": "pass" if self.passed else "fail",
               "fiber": [mp_to_json(z, 20) for z in self.fiber]}
        if self.collision is not None:
            out["collision"] = [mp_to_json(z, 20) for z in self.collision]
        if self.reason:
            out["reason"] = self.reason
        return out


def check_fiber_injectivity(f, g, a, precision=64):
    """Does ``f`` separate the points of the fibre ``g^{-1}(a)``?

    The decision is exact: a collision ``f(x_i) = f(x_j)`` (or a critical point
    of ``f`` on the fibre) makes ``G_a(x)`` share a root with
    ``Res_y(F~(x, y), G_a(y))``. Certified fibre roots then locate the pair.
    """
    rf = _as_rational(f)
    a = GaussianRational.coerce(a)
    Ga, _ = _fiber_polynomial(g, a)
    if Ga.degree < 1:
        raise InvalidParameter("fibre is empty")
    fiber_roots = find_roots(Ga, precision=precision)
    fiber = [r.center for r in fiber_roots]
    if rf.is_constant():
        return FiberVerdict(len(fiber) < 2, fiber, tuple(fiber[:2]) if len(fiber) >= 2 else None,
                            "constant f" if len(fiber) >= 2 else "")
    F = _diagonal_free(rf)
    if F.degree_y < 1 or Ga.degree < 2:
        return FiberVerdict(True, fiber)
    R = resultant_in_y(F, BivariatePolynomial.from_univariate(Ga, "y"))
    H = poly_gcd(Ga, R) if not R.is_zero() else Ga
    if H.degree == 0:
        return FiberVerdict(True, fiber)
    # locate the offending pair numerically, escalating precision
    for prec in (precision, 256, 1024):
        with mpmath.workprec(prec + 32):
            roots = find_roots(Ga, precision=prec)
            zs = [r.center for r in roots]
            vals = [rf.eval_mp(z) for z in zs]
            eps = mpmath.mpf(2) ** (-(prec // 2))
            best = None
            for i in range(len(zs)):
                for j in range(i + 1, len(zs)):
                    gap = abs(vals[i] - vals[j])
                    if gap <= eps * (1 + abs(vals[i]) + abs(vals[j])):
                        if best is None or gap < best[0]:
                            best = (gap, zs[i], zs[j])
            if best is not None:
                return FiberVerdict(False, fiber, (best[1], best[2]), "f collides on the fibre")
    if poly_gcd(H, rf.derivative_numerator()).degree > 0:
        return FiberVerdict(False, fiber, None, "critical point of f on the fibre")
    raise AmbiguousFiber("exact test reports a collision that numerics cannot locate")
