"""Exact certificates for candidate maps, plus the two nonexistence guards on C*."""

from dataclasses import dataclass, field
from typing import List, Optional

from .algebra import GaussianRational, Polynomial, RationalFunction, poly_gcd
from .domains import PuncturedCircularDomain, WindingClass, classify_map
from .errors import InvalidParameter, InvalidSecondComponent
from .maps import MapPair
from .numeric import find_roots, mp_to_json

__all__ = [
    "Certificate",
    "PASS",
    "FAIL",
    "WARN",
    "check_immersion",
    "check_properness",
    "check_injective_by_form",
    "check_winding",
    "guard_not_proper_first",
    "guard_symmetry",
    "strip_points",
    "point_polynomial",
]

PASS, FAIL, WARN = "pass", "fail", "warn"


@dataclass
class Certificate:
    kind: str  # Immersion, Properness, Winding, InjectiveByForm, Guard
    verdict: str
    witnesses: List[dict] = field(default_factory=list)
    outcome: Optional[str] = None
    note: str = ""

    @property
    def passed(self):
        return self.verdict == PASS

    def to_json(self):
        out = {"kind": self.kind, "verdict": self.verdict}
        if self.outcome is not None:
            out["outcome"] = self.outcome
        out["witnesses"] = self.witnesses
        if self.note:
            out["note"] = self.note
        return out


# -- shared helpers ----------------------------------------------------------------


def point_polynomial(points):
    """``prod (z - a)`` over distinct exact points."""
    return Polynomial.from_roots(list(dict.fromkeys(points)))


def strip_points(h, points):
    """Divide out of ``h`` every factor ``(z - a)`` with ``a`` in ``points``, to full multiplicity."""
    if h.is_zero() or not points:
        return h
    P = point_polynomial(points)
    while h.degree > 0:
        g = poly_gcd(h, P)
        if g.degree == 0:
            break
        h = h.exact_div(g)
    return h


def _root_witnesses(h, reason):
    """Witnesses for the roots of ``h``: exact when linear, certified discs otherwise."""
    if h.degree == 1:
        root = -h[0] / h[1]
        return [{"point": root.to_json(), "reason": reason}]
    out = []
    for r in find_roots(h):
        out.append({"approx": mp_to_json(r.center, 20), "radius": float(r.radius), "reason": reason})
    return out


def _exact_in_closure(domain, z):
    """Exact membership of a Gaussian rational in the bordered closure used for circular domains."""
    if isinstance(domain, PuncturedCircularDomain):
        if z in domain.punctures or z in domain.marked_points():
            return False
        if z.norm() > 1:
            return False
        for h in domain.holes:
            if (z - h.center).norm() < h.radius ** 2:
                return False
        return True
    return z not in domain.punctures


def _disc_position(domain, center, radius):
    """'inside', 'outside' or 'ambiguous' for a certified disc versus the closure of a circular domain."""
    az = abs(center)
    if az - radius > 1:
        return "outside"
    inside = az + radius <= 1
    for h in domain.holes:
        d = abs(center - h.center.to_mpc())
        r = float(h.radius)
        if d + radius < r:
            return "outside"
        if d - radius < r:
            inside = False
    return "inside" if inside else "ambiguous"


def _allowed_points(domain):
    pts = list(domain.punctures)
    if isinstance(domain, PuncturedCircularDomain):
        pts += domain.marked_points() + [h.center for h in domain.holes]
    return pts


def _bad_roots(domain, h, reason):
    """Roots of ``h`` that lie in the domain: (witnesses, ambiguous) after exact stripping."""
    rest = strip_points(h, _allowed_points(domain))
    if rest.degree <= 0:
        return [], []
    if not isinstance(domain, PuncturedCircularDomain):
        return _root_witnesses(rest, reason), []
    bad, unsure = [], []
    if rest.degree == 1:
        z = -rest[0] / rest[1]
        if _exact_in_closure(domain, z):
            bad.append({"point": z.to_json(), "reason": reason})
        return bad, unsure
    for r in find_roots(rest):
        pos = _disc_position(domain, r.center, r.radius)
        w = {"approx": mp_to_json(r.center, 20), "radius": float(r.radius), "reason": reason}
        if pos == "inside":
            bad.append(w)
        elif pos == "ambiguous":
            unsure.append(w)
    return bad, unsure


# -- map certificates --------------------------------------------------------------


def check_immersion(psi: MapPair, domain) -> Certificate:
    """Both component derivatives never vanish together on the domain.

    With ``N_f = p'q - pq'`` and ``N_g`` the numerator of ``g'/g``, the common
    critical points are the roots of ``gcd(N_f, N_g)``; those at punctures (or
    outside the closure of a circular domain) are harmless.
    """
    if psi.is_exponential:
        return Certificate("Immersion", PASS, note="exp(lam z) has nowhere vanishing derivative")
    Nf = psi.first.derivative_numerator()
    Ng = psi.second.log_derivative_numerator()
    if Nf.is_zero() or Ng.is_zero():
        other = Ng if Nf.is_zero() else Nf
        if other.is_zero():
            return Certificate("Immersion", FAIL, [{"reason": "both components constant"}])
        h = other
    else:
        h = poly_gcd(Nf, Ng)
    bad, unsure = _bad_roots(domain, h, "common critical point")
    if bad:
        return Certificate("Immersion", FAIL, bad, note=f"gcd of derivative numerators: {h.to_expr()}")
    if unsure:
        return Certificate("Immersion", WARN, unsure, note="common critical point near the boundary")
    return Certificate("Immersion", PASS)


def _boundary_points(domain):
    if isinstance(domain, PuncturedCircularDomain):
        return [(a, "puncture") for a in domain.punctures] + [(b, "boundary") for b in domain.marked_points()]
    return [(a, "puncture") for a in domain.punctures]


def check_properness(psi: MapPair, domain) -> Certificate:
    """Order conditions at every puncture (and marked boundary point, and at infinity for planes)."""
    witnesses = []
    first, second = psi.first, psi.second
    # holomorphy on the domain: poles of the first component, zeros/poles of the second
    bad, unsure = _bad_roots(domain, first.den, "pole of first component in the domain")
    witnesses += bad
    if not psi.is_exponential:
        for root, _ in second.factors:
            if _exact_in_closure(domain, root):
                witnesses.append({"point": root.to_json(), "reason": "zero/pole of second component in the domain"})
    for a, role in _boundary_points(domain):
        o1 = first.order_at(a)
        o2 = 0 if psi.is_exponential else second.multiplicity(a)
        if not (o1 < 0 or o2 != 0):
            witnesses.append({"point": a.to_json(), "role": role, "order_first": o1, "order_second": o2,
                              "reason": "both components finite and nonzero"})
    if not isinstance(domain, PuncturedCircularDomain):
        o1 = first.order_at_infinity()
        o2 = 0 if psi.is_exponential else second.order_at_infinity()
        if not (o1 < 0 or o2 != 0):
            witnesses.append({"point": "infinity", "order_first": o1, "order_second": o2,
                              "reason": "no component escapes at infinity"})
    if witnesses:
        return Certificate("Properness", FAIL, witnesses)
    if unsure:
        return Certificate("Properness", WARN, unsure)
    return Certificate("Properness", PASS)


def _injective_form(rf):
    coeffs = rf.mobius_coefficients()
    if coeffs is None:
        return None
    a, b, c, d = coeffs
    if (a * d - b * c).is_zero():
        return None
    return "affine" if c.is_zero() else "mobius"


def check_injective_by_form(psi: MapPair) -> Certificate:
    """Pass when one component is affine or Mobius (so injective on all of its domain)."""
    form = _injective_form(psi.first)
    if form:
        return Certificate("InjectiveByForm", PASS, [{"component": "first", "form": form}])
    if not psi.is_exponential:
        second = psi.second
        form = _injective_form(second.to_rational())
        if form:
            return Certificate("InjectiveByForm", PASS, [{"component": "second", "form": form}])
    witnesses = [{"component": "first", "degree": max(psi.first.num.degree, psi.first.den.degree)}]
    if psi.is_exponential:
        witnesses.append({"component": "second", "form": "exp", "reason": "periodic"})
    else:
        rf = psi.second.to_rational()
        witnesses.append({"component": "second", "degree": max(rf.num.degree, rf.den.degree)})
    return Certificate("InjectiveByForm", FAIL, witnesses)


def check_winding(psi: MapPair, domain, expected: WindingClass) -> Certificate:
    try:
        got = classify_map(psi, domain)
    except InvalidSecondComponent as exc:
        return Certificate("Winding", FAIL, [{"reason": str(exc)}])
    witnesses = []
    for j, (k, e) in enumerate(zip(got.puncture_windings, expected.puncture_windings)):
        if k != e:
            witnesses.append({"puncture": j, "found": k, "expected": e})
    for i, (k, e) in enumerate(zip(got.hole_windings, expected.hole_windings)):
        if k != e:
            witnesses.append({"hole": i, "found": k, "expected": e})
    if witnesses:
        return Certificate("Winding", FAIL, witnesses)
    return Certificate("Winding", PASS, [{"windings": got.to_json()}])


# -- nonexistence guards on C* -------------------------------------------------------

ESSENTIAL_NOTE = ("f is not proper on C*; a proper injection (f, e^g) would still need "
                  "an essential singularity of f at 0 or infinity")


def _poles_only_at_zero(f):
    den = strip_points(f.den, [GaussianRational(0)])
    return den.degree == 0


def guard_not_proper_first(f: RationalFunction) -> Certificate:
    """Block first components that are proper on C* (poles at both 0 and infinity)."""
    if not _poles_only_at_zero(f):
        raise InvalidParameter("f must be holomorphic on C* (poles only at 0)")
    o0 = f.order_at(GaussianRational(0))
    oinf = f.order_at_infinity()
    orders = {"order_at_0": o0, "order_at_infinity": oinf}
    if o0 < 0 and oinf < 0:
        return Certificate("Guard", FAIL, [orders], outcome="NotInjectivePair",
                           note="f is proper on C*, so no injection (f, e^g) of C* exists")
    return Certificate("Guard", PASS, [orders], outcome="Pass", note=ESSENTIAL_NOTE)


def _monomial(rf):
    """``(c, k)`` with ``rf = c z^k`` or None."""
    num, den = rf.num, rf.den
    if num.is_zero():
        return None
    nz = [k for k, c in enumerate(num.coeffs) if not c.is_zero()]
    dz = [k for k, c in enumerate(den.coeffs) if not c.is_zero()]
    if len(nz) != 1 or len(dz) != 1:
        return None
    return num[nz[0]], nz[0] - dz[0]


def guard_symmetry(f: RationalFunction, sigma: RationalFunction) -> Certificate:
    """A nontrivial self-map sigma of C* with f o sigma = f rules out injections (f, e^g)."""
    mono = _monomial(sigma)
    if mono is None:
        raise InvalidParameter("sigma must map C* to C* (a monomial c z^k)")
    if sigma == RationalFunction.identity():
        return Certificate("Guard", PASS, [{"sigma": sigma.to_expr()}], outcome="Trivial")
    composed = f.compose(sigma)
    if composed == f:
        return Certificate("Guard", FAIL, [{"sigma": sigma.to_expr(), "f_of_sigma": composed.to_expr()}],
                           outcome="NoNullInjectionWithThisF",
                           note="f o sigma = f with sigma != id")
    return Certificate("Guard", PASS, [{"sigma": sigma.to_expr(), "f_of_sigma": composed.to_expr()}],
                       outcome="NotASymmetry")
